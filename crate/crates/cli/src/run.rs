use std::collections::BTreeSet;
use std::fmt::Display;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use somos_core::curves::{
    curve_with_point, gap_vs_order, make_curve, Coord, CurvePoint, CurveSpec,
};
use somos_core::divis::{cavachi_check, closure_oracle, conjecture_check, is_prime, poly_div_grid};
use somos_core::eds::{
    antisymmetry_violations, companion5_j_check, companion5_ratio_check, companion_pair,
    coprime_violations, divisibility_violations, eds_extend, eds_residual_violations, is_proper,
    parity_violations, v_k_check, verify_companion, verify_family_for, verify_family_fora2,
    EdsSpec,
};
use somos_core::exactring::parse_int;
use somos_core::somos::{
    extend_with_budget, invariants4, invariants5, period_mod, symmetry_check, verify_transform,
    Budget, InvariantValue, SeqWindow, SomosSpec, SymmetryRule, TransformKind, TransformParams,
};
use somos_core::{LaurentElem, Rat, Ring, SparsePoly};

use crate::args::*;
use crate::error::{CliError, CliResult};
use crate::window::{rat, rat_spec, Window};

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn strings<R: Display>(w: &SeqWindow<R>) -> Vec<String> {
    w.terms.iter().map(|x| x.to_string()).collect()
}

fn int(field: &str, s: &str) -> CliResult<BigInt> {
    parse_int(s).map_err(|e| CliError::in_field(field, e))
}

/// Runs one subcommand and returns its result payload.
pub fn run(cmd: &Command) -> CliResult<Value> {
    match cmd {
        Command::Seq(a) => seq(a),
        Command::Invariants(a) => invariants(a),
        Command::Symmetry(a) => symmetry(a),
        Command::Period(a) => period(a),
        Command::Transform(a) => transform(a),
        Command::Eds(a) => eds(a),
        Command::Companion(a) => companion(a),
        Command::Gaps(a) => gaps(a),
        Command::Robinson(a) => robinson(a),
        Command::Polydiv(a) => polydiv(a),
        Command::Laurent(a) => laurent(a),
        Command::Closure(a) => closure(a),
        Command::Conjecture(a) => conjecture(a),
        Command::Cavachi(a) => cavachi(a),
        Command::CurveOrder(a) => curve_order(a),
        Command::GapVsOrder(a) => gap_order(a),
        Command::Batch(_) => Err(CliError::config("command", "batch runs cannot nest")),
    }
}

fn symbolic_spec(a: &SpecArgs) -> CliResult<SomosSpec<SparsePoly>> {
    if !a.init.is_empty() || a.through_zeros {
        return Err(CliError::config(
            "init",
            "symbolic runs use unit initial values",
        ));
    }
    if a.k < 2 {
        return Err(CliError::config("k", "k must be at least 2"));
    }
    Ok(SomosSpec::symbolic_unit(a.k))
}

fn symbolic_window(
    a: &SpecArgs,
    lo: i64,
    hi: i64,
    budget: u64,
) -> CliResult<SeqWindow<SparsePoly>> {
    let spec = symbolic_spec(a)?;
    Ok(extend_with_budget(&spec, lo, hi, Budget::index(budget))?)
}

fn seq(a: &SeqArgs) -> CliResult<Value> {
    let (lo, hi) = (a.window.from, a.window.to);
    let (terms, integral) = if a.symbolic {
        (strings(&symbolic_window(&a.spec, lo, hi, a.budget)?), false)
    } else {
        let w = Window::build(&a.spec, lo, hi)?;
        (w.strings(), w.integral())
    };
    Ok(json!({ "lo": lo, "hi": hi, "integral": integral, "terms": terms }))
}

fn invariant_parts<R: Display>(v: &InvariantValue<R>) -> (String, String) {
    match v {
        InvariantValue::Four { t, i } => (t.to_string(), i.to_string()),
        InvariantValue::Five { s, j } => (s.to_string(), j.to_string()),
    }
}

fn invariant_at<R: Ring>(
    spec: &SomosSpec<R>,
    w: &SeqWindow<R>,
    at: i64,
) -> somos_core::Result<InvariantValue<R>> {
    match spec.k {
        4 => invariants4(spec, w, at),
        5 => invariants5(spec, w, at),
        k => Err(somos_core::ArithError::InvalidArgument(format!(
            "no invariant for k = {k}"
        ))),
    }
}

type Walk = (Vec<(i64, (String, String))>, Vec<i64>);

/// Invariant values at each position; zero terms are skipped.
fn walk<R: Ring + Display>(
    spec: &SomosSpec<R>,
    w: &SeqWindow<R>,
    positions: std::ops::RangeInclusive<i64>,
) -> somos_core::Result<Walk> {
    let (mut values, mut skipped) = (Vec::new(), Vec::new());
    for at in positions {
        match invariant_at(spec, w, at) {
            Ok(v) => values.push((at, invariant_parts(&v))),
            Err(somos_core::ArithError::ZeroDivisor) => skipped.push(at),
            Err(e) => return Err(e),
        }
    }
    Ok((values, skipped))
}

fn invariants(a: &InvariantsArgs) -> CliResult<Value> {
    let k = a.spec.k as i64;
    if k != 4 && k != 5 {
        return Err(CliError::config(
            "k",
            "invariants exist for k = 4 and k = 5",
        ));
    }
    if a.to < a.from {
        return Err(CliError::config("to", "empty range"));
    }
    let names = if k == 4 { ("t", "i") } else { ("s", "j") };
    let positions = a.from..=a.to;
    let (values, skipped) = if a.symbolic {
        let spec = symbolic_spec(&a.spec)?;
        let w = extend_with_budget(&spec, a.from, a.to + k - 1, Budget::UNLIMITED)?;
        walk(&spec, &w, positions)?
    } else {
        let spec = rat_spec(&a.spec)?;
        let w = Window::build(&a.spec, a.from, a.to + k - 1)?;
        // Integer quotients avoid rational normalization; T and S are often integral.
        let int_values = match &w {
            Window::Int(iw) if spec.alpha.is_integer() && spec.beta.is_integer() => {
                walk(&spec.map(|x| x.to_integer()), iw, positions.clone())
            }
            _ => Err(somos_core::ArithError::NotDivisible),
        };
        match int_values {
            Err(somos_core::ArithError::NotDivisible) => walk(&spec, &w.to_rat(), positions)?,
            other => other?,
        }
    };
    let distinct: BTreeSet<&String> = values.iter().map(|(_, (_, c))| c).collect();
    let first = values
        .first()
        .map(|(_, (x, c))| json!({ names.0: x, names.1: c }));
    let violations: Vec<i64> = values
        .iter()
        .filter(|(_, (_, c))| Some(c) != values.first().map(|(_, (_, c0))| c0))
        .map(|(at, _)| *at)
        .collect();
    Ok(json!({
        "k": k,
        "first": first,
        "constant": distinct.len() == 1,
        "positions": values.len(),
        "skipped": skipped,
        "violations": violations,
    }))
}

fn symmetry(a: &SymmetryArgs) -> CliResult<Value> {
    let rule = match a.rule {
        RuleArg::Palindrome => SymmetryRule::Palindrome { k: a.spec.k },
        RuleArg::FibonacciSign => SymmetryRule::FibonacciSign,
    };
    let (lo, hi) = (a.window.from, a.window.to);
    let report = if a.symbolic {
        symmetry_check(&symbolic_window(&a.spec, lo, hi, a.budget)?, rule)
    } else {
        match Window::build(&a.spec, lo, hi)? {
            Window::Int(w) => symmetry_check(&w, rule),
            Window::Rat(w) => symmetry_check(&w, rule),
        }
    };
    let mut v = to_value(&report);
    v["holds"] = json!(report.holds());
    Ok(v)
}

fn period(a: &PeriodArgs) -> CliResult<Value> {
    let m = int("modulus", &a.modulus)?;
    if m < BigInt::from(1) {
        return Err(CliError::config("modulus", "modulus must be positive"));
    }
    let w = Window::build(&a.spec, a.window.from, a.window.to)?;
    Ok(to_value(&period_mod(w.as_int("period")?, &m, a.spec.k)))
}

fn transform(a: &TransformArgs) -> CliResult<Value> {
    let opt = |field: &str, s: &Option<String>| s.as_deref().map(|s| rat(field, s)).transpose();
    let params = TransformParams {
        alpha: opt("alpha", &a.alpha)?,
        beta: opt("beta", &a.beta)?,
        gamma: opt("gamma", &a.gamma)?,
        delta: opt("delta", &a.delta)?,
        a: opt("a", &a.a)?,
        b: opt("b", &a.b)?,
        c: opt("c", &a.c)?,
    };
    let kind = match a.kind {
        TransformArg::Mg => TransformKind::Mg,
        TransformArg::Mgs => TransformKind::Mgs,
        TransformArg::Somos5Abcba => TransformKind::Somos5Abcba,
        TransformArg::SignTwist => TransformKind::SignTwist,
    };
    let report = verify_transform(kind, &params, a.n_max)?;
    let mut v = to_value(&report);
    v["holds"] = json!(report.holds());
    Ok(v)
}

fn eds(a: &EdsArgs) -> CliResult<Value> {
    if a.init.len() != 4 {
        return Err(CliError::config("init", "an EDS needs four initial values"));
    }
    let init: Vec<BigInt> = a
        .init
        .iter()
        .map(|s| int("init", s))
        .collect::<CliResult<_>>()?;
    let init: [BigInt; 4] = init.try_into().expect("four values");
    let spec = EdsSpec::new(
        init[0].clone(),
        init[1].clone(),
        init[2].clone(),
        init[3].clone(),
    );
    let w = eds_extend(&spec, a.from, a.to)?;
    let grid = 1..=a.grid;
    let families = [
        verify_family_for(&w, grid.clone(), grid.clone()),
        verify_family_fora2(&w, grid.clone(), grid),
    ];
    let v_k: Vec<_> = (2..=a.k_max).map(|k| v_k_check(&w, k)).collect();
    let families_v: Vec<Value> = families
        .iter()
        .map(|f| {
            let mut v = to_value(f);
            v["holds"] = json!(f.holds());
            v
        })
        .collect();
    Ok(json!({
        "lo": w.lo,
        "hi": w.hi(),
        "proper": is_proper(&init),
        "terms": strings(&w),
        "residual_violations": eds_residual_violations(&spec, &w),
        "antisymmetry_violations": antisymmetry_violations(&w),
        "coprime_violations": coprime_violations(&w),
        "divisibility_violations": divisibility_violations(&w),
        "v_k": v_k,
        "families": families_v,
    }))
}

fn companion_report<R: Ring + Display>(
    k: usize,
    alpha: &R,
    beta: &R,
    m_max: i64,
) -> CliResult<Value> {
    let pair = companion_pair(k, alpha, beta, m_max)?;
    let grid = 1..=m_max;
    let families: Vec<Value> = verify_companion(&pair, grid.clone(), grid)
        .iter()
        .map(|f| {
            let mut v = to_value(f);
            v["holds"] = json!(f.holds());
            v
        })
        .collect();
    let parity: Vec<Vec<i64>> = pair.companions.iter().map(parity_violations).collect();
    let companions: Vec<Vec<String>> = pair.companions.iter().map(strings).collect();
    let mut v = json!({
        "k": k,
        "m_max": m_max,
        "tau": strings(&pair.tau),
        "companions": companions,
        "families": families,
        "parity_violations": parity,
    });
    if k == 5 {
        v["ratio_checks"] = to_value(&companion5_ratio_check(alpha, beta, m_max)?);
        v["j_matches_h0_h1"] = json!(companion5_j_check(alpha, beta)?);
    }
    Ok(v)
}

fn companion(a: &CompanionArgs) -> CliResult<Value> {
    if a.k != 4 && a.k != 5 {
        return Err(CliError::config(
            "k",
            "companions exist for k = 4 and k = 5",
        ));
    }
    if a.symbolic {
        let spec = SomosSpec::symbolic_unit(a.k);
        companion_report(a.k, &spec.alpha, &spec.beta, a.m_max)
    } else {
        companion_report(
            a.k,
            &rat("alpha", &a.alpha)?,
            &rat("beta", &a.beta)?,
            a.m_max,
        )
    }
}

fn prime(field: &str, p: u64) -> CliResult<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(CliError::config(field, format!("{p} is not prime")))
    }
}

fn gaps(a: &GapsArgs) -> CliResult<Value> {
    prime("p", a.p)?;
    let w = Window::build(&a.spec, a.window.from, a.window.to)?;
    Ok(to_value(&w.gap_scan(a.p, a.rmax)?))
}

fn robinson(a: &RobinsonArgs) -> CliResult<Value> {
    if a.primes.is_empty() {
        return Err(CliError::config("primes", "no primes given"));
    }
    for &p in &a.primes {
        prime("primes", p)?;
    }
    let w = Window::build(&a.spec, a.window.from, a.window.to)?;
    Ok(to_value(&w.robinson(&a.primes, a.rmax)?))
}

fn polydiv(a: &PolydivArgs) -> CliResult<Value> {
    let checks = poly_div_grid(a.k, &a.n, &a.l, Budget::index(a.budget))?;
    let holds = checks.iter().all(|c| c.divides);
    Ok(json!({ "k": a.k, "holds": holds, "checks": checks }))
}

fn laurent(a: &LaurentArgs) -> CliResult<Value> {
    if !(2..=5).contains(&a.k) {
        return Err(CliError::config("k", "Laurent windows need 2 ≤ k ≤ 5"));
    }
    let spec = SomosSpec::<LaurentElem>::symbolic_laurent(a.k);
    let w = extend_with_budget(&spec, a.from, a.to, Budget::index(a.budget))?;
    let terms: Vec<Value> = w
        .iter()
        .map(|(n, x)| {
            json!({
                "n": n,
                "denominator": x.den().to_string(),
                "numerator_terms": x.num().len(),
                "term": x.to_string(),
            })
        })
        .collect();
    Ok(json!({ "k": a.k, "lo": w.lo, "hi": w.hi(), "exact": true, "terms": terms }))
}

fn closure(a: &ClosureArgs) -> CliResult<Value> {
    if a.lo > a.hi {
        return Err(CliError::config("lo", "empty range"));
    }
    let seeds: Vec<Vec<i64>> = if a.random > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(a.rng_seed);
        (0..a.random)
            .map(|_| {
                let len = rng.gen_range(1..=5);
                (0..len).map(|_| rng.gen_range(-100..=100)).collect()
            })
            .collect()
    } else if a.seed.is_empty() {
        return Err(CliError::config("seed", "give --seed or --random"));
    } else {
        vec![a.seed.clone()]
    };
    let results: Vec<Value> = seeds
        .iter()
        .map(|s| {
            let r = closure_oracle(s, a.lo, a.hi);
            let mut v = to_value(&r);
            v["satisfies_lemma"] = json!(r.satisfies_lemma());
            v
        })
        .collect();
    let holds = results.iter().all(|r| r["satisfies_lemma"] == json!(true));
    Ok(json!({ "lo": a.lo, "hi": a.hi, "holds": holds, "results": results }))
}

fn conjecture(a: &ConjectureArgs) -> CliResult<Value> {
    let w = Window::build(&a.spec, 1, a.to)?;
    Ok(to_value(&conjecture_check(
        a.spec.k,
        a.n,
        a.m_max,
        w.as_int("conjecture")?,
        a.index_limit,
    )?))
}

fn cavachi(a: &CavachiArgs) -> CliResult<Value> {
    let r = cavachi_check(
        a.n.clone(),
        a.m.clone(),
        a.exceptional_m.clone(),
        a.index_limit,
    )?;
    let mut v = to_value(&r);
    v["holds"] = json!(r.holds());
    Ok(v)
}

fn load_curve(a: &CurveArgs) -> CliResult<(CurveSpec, CurvePoint)> {
    if a.p == 2 || !is_prime(a.p) {
        return Err(CliError::config(
            "p",
            format!("{} is not an odd prime", a.p),
        ));
    }
    if a.c.len() != 4 {
        return Err(CliError::config(
            "c",
            "a cubic needs four coefficients c3,c2,c1,c0",
        ));
    }
    let c: Vec<Rat> = a.c.iter().map(|s| rat("c", s)).collect::<CliResult<_>>()?;
    let c: [Rat; 4] = c.try_into().expect("four coefficients");
    let x: Coord = a.x.parse().map_err(|e| CliError::in_field("x", e))?;
    let y: Coord = a.y.parse().map_err(|e| CliError::in_field("y", e))?;
    match &a.adjoin {
        Some(d) => {
            let d = rat("adjoin", d)?;
            let curve = make_curve(&c, a.p, Some(&d))?;
            let pt = curve.point(&x, &y)?;
            Ok((curve, pt))
        }
        None => Ok(curve_with_point(&c, a.p, &x, &y)?),
    }
}

/// Point counts are exhaustive, so only small fields get one.
const COUNT_LIMIT: u64 = 100_000;

fn curve_order(a: &CurveOrderArgs) -> CliResult<Value> {
    let (curve, pt) = load_curve(&a.curve)?;
    let order = curve.point_order(&pt)?;
    let count = (curve.field.size() <= COUNT_LIMIT).then(|| curve.count_points());
    Ok(json!({
        "curve": curve.summary(),
        "point": pt.to_string(),
        "order": order,
        "order_bound": curve.order_bound(),
        "smooth_points": count,
    }))
}

fn gap_order(a: &GapVsOrderArgs) -> CliResult<Value> {
    let (curve, pt) = load_curve(&a.curve)?;
    let w = Window::build(&a.spec, a.window.from, a.window.to)?;
    let scan = w.gap_scan(a.curve.p, a.r)?;
    let report = scan
        .report(a.r)
        .ok_or_else(|| CliError::config("r", "r must be at least 1"))?;
    Ok(json!({
        "curve": curve.summary(),
        "point": pt.to_string(),
        "gap": report,
        "comparison": gap_vs_order(report, &curve, &pt)?,
    }))
}
