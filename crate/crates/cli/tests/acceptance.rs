//! Acceptance suite: one line per criterion, exact comparisons only.
//!
//! Run with `cargo test -p somos-cli --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use somos_core::curves::{curve_with_point, gap_vs_order, Coord};
use somos_core::divis::{
    cavachi_check, closure_oracle, conjecture_check, equivalence_pattern_check, fibonacci,
    gap_scan, poly_div_grid,
};
use somos_core::eds::{
    antisymmetry_violations, companion_pair, coprime_violations, eds_extend, v_k_check,
    verify_companion, verify_family_for, verify_family_fora2, EdsSpec,
};
use somos_core::exactring::Var;
use somos_core::somos::{
    extend, extend_through_zeros, extend_with_budget, invariants4, invariants5, period_mod,
    residual_violations, symmetry_check, verify_transform, Budget, SeqWindow, SomosSpec,
    SymmetryRule, TransformKind, TransformParams,
};
use somos_core::{LaurentElem, Rat, Ring, SparsePoly};

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(big(n), big(d))
}

fn coord(s: &str) -> Coord {
    s.parse().unwrap()
}

fn somos4(alpha: i64, beta: i64, init: [i64; 4], lo: i64, hi: i64) -> SeqWindow<BigInt> {
    let spec = SomosSpec::new(4, big(alpha), big(beta), init.map(big).to_vec()).unwrap();
    extend(&spec, lo, hi).unwrap()
}

fn unit_poly(k: usize, lo: i64, hi: i64) -> SeqWindow<SparsePoly> {
    extend_with_budget(&SomosSpec::symbolic_unit(k), lo, hi, Budget::default()).unwrap()
}

/// Forward Somos-k over ℤ written out directly.
fn oracle(k: usize, len: usize) -> Vec<i64> {
    let mut t = vec![1i64; k];
    let h = k / 2;
    while t.len() < len {
        let n = t.len();
        t.push((t[n - 1] * t[n - k + 1] + t[n - h] * t[n - k + h]) / t[n - k]);
    }
    t
}

fn c1_sequences() {
    let w4 = somos4(1, 1, [1; 4], 1, 12);
    let expect4 = [1, 1, 1, 1, 2, 3, 7, 23, 59, 314, 1529, 8209];
    assert_eq!(w4.terms, expect4.map(big).to_vec());
    assert_eq!(oracle(4, 12), expect4.to_vec());
    let w5 = extend(&SomosSpec::unit(5, big(1), big(1)), 1, 11).unwrap();
    let expect5 = [1, 1, 1, 1, 1, 2, 3, 5, 11, 37, 83];
    assert_eq!(w5.terms, expect5.map(big).to_vec());
    assert_eq!(oracle(5, 11), expect5.to_vec());
}

fn c2_powers_of_two() {
    let w = somos4(1, 1, [1; 4], -50, 200);
    let s = gap_scan(&w, 2, 2).unwrap();
    let mult5: Vec<i64> = (-50..=200).filter(|n: &i64| n.rem_euclid(5) == 0).collect();
    assert_eq!(s.report(1).unwrap().occurrences, mult5);
    assert!(s.report(2).unwrap().occurrences.is_empty());
    assert!(s.valuation_profile.values().all(|v| *v == Some(1)));
    let r = period_mod(&w, &big(4), 4);
    assert_eq!(r.period, Some(10));
    assert!(!r.contains_zero);
}

fn c3_polynomial_divisibility() {
    let ls = [-2, -1, 1, 2];
    let four = poly_div_grid(4, &(5..=10).collect::<Vec<_>>(), &ls, Budget::index(40)).unwrap();
    let five = poly_div_grid(5, &(6..=10).collect::<Vec<_>>(), &ls, Budget::index(40)).unwrap();
    assert_eq!(four.len(), 24);
    assert_eq!(five.len(), 20);
    for c in four.iter().chain(&five) {
        assert_eq!(c.m, c.n + c.l * (2 * c.n - c.k as i64 - 1));
        assert!(c.divides, "k={} n={} l={}", c.k, c.n, c.l);
    }
}

fn c4_symmetry_and_laurent() {
    for k in [4usize, 5] {
        let w = unit_poly(k, k as i64 + 1 - 20, 20);
        let r = symmetry_check(&w, SymmetryRule::Palindrome { k });
        assert!(r.holds(), "k={k} {:?}", r.violations);
        assert!(r.pairs.iter().any(|&(i, _)| i == 20));

        let spec = SomosSpec::<LaurentElem>::symbolic_laurent(k);
        let lw = extend_with_budget(&spec, 1, 20, Budget::default()).unwrap();
        assert_eq!(lw.hi(), 20);
        assert!(residual_violations(&spec, &lw).is_empty());
        for (n, x) in lw.iter() {
            let den = x.den();
            assert!(den.exp(Var::Alpha) == 0 && den.exp(Var::Beta) == 0, "n={n}");
            let init_vars = (k + 1..=5).map(Var::initial);
            assert!(init_vars
                .into_iter()
                .all(|v| den.exp(v) == 0 && x.num().degree_in(v) == 0));
        }
    }
}

fn c5_invariants() {
    let a = SparsePoly::var(Var::Alpha);
    let b = SparsePoly::var(Var::Beta);
    let i_expect = a.plus(&b).square().plus(&b);
    let j_expect = a
        .times(&SparsePoly::from_i64(2))
        .plus(&b)
        .times(&a.plus(&SparsePoly::one()));
    let s4 = SomosSpec::symbolic_unit(4);
    let s5 = SomosSpec::symbolic_unit(5);
    let w4 = unit_poly(4, 1, 10);
    let w5 = unit_poly(5, 1, 10);
    for at in 1..=4 {
        assert_eq!(*invariants4(&s4, &w4, at).unwrap().combined(), i_expect);
        assert_eq!(*invariants5(&s5, &w5, at).unwrap().combined(), j_expect);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..25 {
        let (al, be) = (rng.gen_range(1..=50), rng.gen_range(1..=50));
        for k in [4usize, 5] {
            // Integer windows: the exact quotient fails unless T (or S) is integral.
            let spec = SomosSpec::unit(k, big(al), big(be));
            let w = extend(&spec, 1, 100 + k as i64 - 1).unwrap();
            let value = |at| match k {
                4 => invariants4(&spec, &w, at).unwrap().combined().clone(),
                _ => invariants5(&spec, &w, at).unwrap().combined().clone(),
            };
            let first = value(1);
            let direct = match k {
                4 => big((al + be) * (al + be) + be),
                _ => big((2 * al + be) * (al + 1)),
            };
            assert_eq!(first, direct);
            assert!(
                (2..=100).all(|at| value(at) == first),
                "k={k} alpha={al} beta={be}"
            );
        }
    }
}

fn c6_companions() {
    let s = SomosSpec::symbolic_unit(4);
    let pair = companion_pair(4, &s.alpha, &s.beta, 10).unwrap();
    for f in verify_companion(&pair, 1..=10, 1..=10) {
        assert!(f.holds(), "{:?} {:?}", f.family, f.violations);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let (al, be) = (rng.gen_range(1..=50), rng.gen_range(1..=50));
        let pair = companion_pair(5, &rat(al, 1), &rat(be, 1), 10).unwrap();
        assert_eq!(pair.companions.len(), 2);
        for f in verify_companion(&pair, 1..=10, 1..=10) {
            assert!(f.holds(), "alpha={al} beta={be} {:?}", f.family);
        }
    }
}

fn c7_eds() {
    let spec = EdsSpec::new(big(1), big(1), big(-1), big(1));
    let w = eds_extend(&spec, -30, 30).unwrap();
    assert_eq!(w.terms.len(), 61);
    assert!(antisymmetry_violations(&w).is_empty());
    for k in 2..=8 {
        let r = v_k_check(&w, k);
        assert_eq!(r.unit, [2, 3, 4, 6].contains(&k), "k={k}");
        assert!(r.holds, "k={k}");
        if !r.unit {
            let multiples: Vec<i64> = (-30..=30).filter(|m: &i64| m.rem_euclid(k) == 0).collect();
            assert_eq!(r.members, multiples);
        }
    }
    assert!(coprime_violations(&w).is_empty());
    for f in [
        verify_family_for(&w, 1..=30, 1..=30),
        verify_family_fora2(&w, 1..=30, 1..=30),
    ] {
        assert!(f.holds() && f.checked > 0, "{:?}", f.violations);
    }
}

fn c8_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let len = rng.gen_range(1..=5);
        let seed: Vec<i64> = (0..len).map(|_| rng.gen_range(-100..=100)).collect();
        let r = closure_oracle(&seed, -2000, 2000);
        assert!(r.satisfies_lemma(), "{seed:?}");
        let mut distinct = seed.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() > 1 {
            let g = distinct.windows(2).fold(0i64, |g, w| g.gcd(&(w[1] - w[0])));
            assert_eq!(r.difference, Some(g));
            assert_eq!(
                r.closure.len() as i64,
                (2000 - r.closure[0]) / g + 1 + (r.closure[0] + 2000) / g
            );
        } else {
            assert_eq!(r.closure, distinct);
        }
    }
}

fn c9_alpha4_beta9() {
    let w = somos4(4, 9, [1, 3, 3, 1], 1, 320);
    let three = gap_scan(&w, 3, 2).unwrap();
    assert!(!three.valuation_profile.is_empty());
    assert!(three.valuation_profile.values().all(|v| *v == Some(1)));
    let five = gap_scan(&w, 5, 4).unwrap();
    assert_eq!(
        (1..=4).map(|r| five.gap(r)).collect::<Vec<_>>(),
        [Some(7), Some(7), Some(7), Some(35)]
    );
    let c = [
        rat(4, 1),
        rat(0, 1),
        rat(-12428112196, 19683),
        rat(1385503884676628, 14348907),
    ];
    let (curve, pt) = curve_with_point(&c, 5, &coord("55750/243"), &coord("2")).unwrap();
    assert_eq!(curve.point_order(&pt).unwrap(), 7);
    let cmp = gap_vs_order(five.report(1).unwrap(), &curve, &pt).unwrap();
    assert!(cmp.equal);
}

fn c10_alpha2_beta5() {
    let spec = SomosSpec::new(4, big(2), big(5), [1, 3, 2, 5].map(big).to_vec())
        .unwrap()
        .to_rat();
    let w = extend(&spec, 1, 200).unwrap();
    let s = gap_scan(&w, 7, 3).unwrap();
    assert!(!s.valuation_profile.is_empty());
    assert!(s.valuation_profile.values().all(|v| *v == Some(2)));
    assert_eq!(s.gap(1), Some(10));
    let c = [
        rat(4, 1),
        rat(0, 1),
        rat(-48492460561, 38880000),
        Rat::new(big(10678311547192441), big(1259712000000)),
    ];
    for y in ["sqrt:2", "-sqrt:2"] {
        let (curve, pt) = curve_with_point(&c, 7, &coord("223081/21600"), &coord(y)).unwrap();
        assert!(!curve.field.is_extension());
        assert_eq!(curve.point_order(&pt).unwrap(), 10);
        assert!(
            gap_vs_order(s.report(1).unwrap(), &curve, &pt)
                .unwrap()
                .equal
        );
    }
}

fn c11_unit_curve_link() {
    let w = somos4(1, 1, [1; 4], -20, 200);
    let c = [rat(4, 1), rat(0, 1), rat(-4, 1), rat(1, 1)];
    for (p, gap) in [(3u64, 7i64), (7, 9), (11, 17)] {
        let s = gap_scan(&w, p, 1).unwrap();
        assert_eq!(s.gap(1), Some(gap), "p={p}");
        let (curve, pt) = curve_with_point(&c, p, &coord("1"), &coord("1")).unwrap();
        assert_eq!(curve.point_order(&pt).unwrap() as i64, gap, "p={p}");
    }
}

fn c12_fibonacci() {
    let spec = SomosSpec::new(
        4,
        rat(-1, 1),
        rat(2, 1),
        [1, 1, 2, 3].map(|v| rat(v, 1)).to_vec(),
    )
    .unwrap();
    let w = extend_through_zeros(&spec, -30, 30).unwrap();
    for (n, x) in w.iter() {
        let f = Rat::from(fibonacci(n.unsigned_abs()));
        let sign = if n < 0 && n.rem_euclid(2) == 0 { -1 } else { 1 };
        assert_eq!(*x, f.times(&rat(sign, 1)), "n={n}");
    }
    assert!(symmetry_check(&w, SymmetryRule::FibonacciSign).holds());
    let r = cavachi_check(4..=9, [1, 2], 1..=6, 200_000).unwrap();
    assert!(r.holds());
    let s = gap_scan(&w, 3, 1).unwrap();
    assert_eq!(s.gap(1), Some(4));
    let c = [rat(4, 1), rat(-5, 1), rat(0, 1), rat(0, 1)];
    let (curve, pt) = curve_with_point(&c, 3, &coord("1"), &coord("sqrt:-1")).unwrap();
    assert!(curve.singular);
    assert_eq!(curve.point_order(&pt).unwrap(), 4);
    assert!(
        gap_vs_order(s.report(1).unwrap(), &curve, &pt)
            .unwrap()
            .equal
    );
}

fn c13_equivalent_sequences() {
    for kind in [
        TransformKind::Mg,
        TransformKind::Mgs,
        TransformKind::Somos5Abcba,
        TransformKind::SignTwist,
    ] {
        let r = verify_transform(kind, &TransformParams::default(), 12).unwrap();
        assert!(!r.numeric);
        assert_eq!(r.checks.last().unwrap().n, 12);
        assert!(r.holds(), "{kind:?}");
    }
    let r = equivalence_pattern_check(3, 5..=9, Budget::index(40)).unwrap();
    assert!(r.holds(), "{:?}", r.violations);
}

fn c14_conjecture_report() {
    let w = somos4(1, 1, [1; 4], 1, 200);
    let r = conjecture_check(4, 6, 1, &w, 100_000).unwrap();
    let predicted: Vec<Option<i64>> = r.entries.iter().map(|e| e.predicted_l).collect();
    assert_eq!(predicted, [Some(34), Some(97)]);
    let direct = |m: i64| -> Vec<i64> {
        w.iter()
            .filter(|(_, x)| x.is_multiple_of(&big(m)))
            .map(|(i, _)| i)
            .collect()
    };
    assert_eq!(r.entries[0].occurrences, direct(3));
    assert_eq!(r.entries[1].occurrences, direct(9));
    assert!(r.entries[1]
        .occurrences
        .iter()
        .all(|i| r.entries[0].occurrences.contains(i)));
    assert!(r.nested);
    for e in &r.entries {
        let l = e.predicted_l.unwrap();
        assert_eq!(e.observed, Some(e.occurrences.contains(&l)));
    }
}

fn c15_determinism() {
    let configs: [&[&str]; 4] = [
        &[
            "seq", "--k", "4", "--alpha", "1", "--beta", "1", "--init", "1,1,1,1", "--from", "1",
            "--to", "12",
        ],
        &["robinson", "--format", "csv"],
        &[
            "curve-order",
            "--p",
            "5",
            "--c",
            "4,0,-12428112196/19683,1385503884676628/14348907",
            "--x",
            "55750/243",
            "--y",
            "2",
        ],
        &["companion", "--symbolic", "--format", "text"],
    ];
    for args in configs {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_somos"))
                .args(args)
                .output()
                .unwrap()
        };
        let (a, b) = (run(), run());
        assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

fn main() {
    let criteria: [(&str, fn()); 15] = [
        ("Somos-4 and Somos-5 unit windows", c1_sequences),
        (
            "powers of 2 in unit Somos-4, period mod 4",
            c2_powers_of_two,
        ),
        (
            "polynomial divisibility by exact division",
            c3_polynomial_divisibility,
        ),
        (
            "symbolic palindromes and Laurent windows",
            c4_symmetry_and_laurent,
        ),
        ("invariants I and J", c5_invariants),
        ("companion identities", c6_companions),
        ("EDS (1,1,-1,1) battery", c7_eds),
        ("closure oracle on 200 seeds", c8_closure),
        ("alpha=4, beta=9 gaps and point order 7", c9_alpha4_beta9),
        (
            "alpha=2, beta=5 sevens and point order 10",
            c10_alpha2_beta5,
        ),
        ("unit Somos-4 gaps equal point orders", c11_unit_curve_link),
        ("Fibonacci battery", c12_fibonacci),
        ("equivalent sequences", c13_equivalent_sequences),
        ("conjecture report for n=6", c14_conjecture_report),
        ("byte-identical CLI reports", c15_determinism),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (desc, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(check));
        let secs = start.elapsed().as_secs_f64();
        match ok {
            Ok(()) => println!("criterion {}: PASS {desc} ({secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {}: FAIL {desc} ({secs:.2}s): {msg}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
