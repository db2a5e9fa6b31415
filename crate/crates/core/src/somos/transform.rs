use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ArithError, Result};
use crate::exactring::{LaurentElem, Monomial, Rat, SparsePoly, Var};

use super::{extend_through_zeros, extend_with_budget, Budget, SomosSpec};

/// The equivalence transforms between Somos sequences with different initial
/// values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformKind {
    /// Initials `1, γ, γ, 1`.
    Mg,
    /// Initials `δ, γ, γ, δ`.
    Mgs,
    /// Somos-5 initials `a, b, c, b, a`.
    Somos5Abcba,
    /// Initials `1, −1, −1, 1`.
    SignTwist,
}

/// Numeric transform parameters; `None` leaves a parameter symbolic.
///
/// Numeric mode needs `alpha` and `beta` together with every parameter the
/// transform uses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformParams {
    #[serde(default, with = "opt_rat")]
    pub alpha: Option<Rat>,
    #[serde(default, with = "opt_rat")]
    pub beta: Option<Rat>,
    #[serde(default, with = "opt_rat")]
    pub gamma: Option<Rat>,
    #[serde(default, with = "opt_rat")]
    pub delta: Option<Rat>,
    #[serde(default, with = "opt_rat")]
    pub a: Option<Rat>,
    #[serde(default, with = "opt_rat")]
    pub b: Option<Rat>,
    #[serde(default, with = "opt_rat")]
    pub c: Option<Rat>,
}

mod opt_rat {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::exactring::{fmt_rat, parse_rat, Rat};

    pub fn serialize<S: Serializer>(x: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&fmt_rat(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_rat(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformCheck {
    pub n: i64,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformReport {
    pub kind: TransformKind,
    pub numeric: bool,
    pub checks: Vec<TransformCheck>,
}

impl TransformReport {
    pub fn holds(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.equal)
    }
}

/// `(A_n, B_n, C_n)` of the Somos-5 `a, b, c, b, a` transform.
pub fn abcba_exponents(n: i64) -> (i64, i64, i64) {
    let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
    let q = 2 * n * n - 12 * n;
    let a8 = q + 17 - sign;
    let c8 = q + 13 + 3 * sign;
    debug_assert!(a8 % 8 == 0 && c8 % 8 == 0);
    (a8 / 8, (1 + sign) / 2, c8 / 8)
}

/// `∏ v^e` with signed exponents.
fn signed_monomial(parts: &[(Var, i64)]) -> LaurentElem {
    let mut num = Monomial::ONE;
    let mut den = Monomial::ONE;
    for &(v, e) in parts {
        if e >= 0 {
            num = num.mul(&Monomial::var_pow(v, e as u32));
        } else {
            den = den.mul(&Monomial::var_pow(v, (-e) as u32));
        }
    }
    LaurentElem::new(SparsePoly::monomial(num, BigInt::one()), den)
}

/// `p(α·(u/v)^{wa}, β·(u/v)^{wb})`, with `v = None` meaning `v = 1`.
fn weighted(p: &SparsePoly, wa: u32, wb: u32, u: Var, v: Option<Var>) -> LaurentElem {
    let weight = |m: &Monomial| wa * m.exp(Var::Alpha) + wb * m.exp(Var::Beta);
    let top = p.terms().iter().map(|(m, _)| weight(m)).max().unwrap_or(0);
    let num = p.map_terms(|m, c| {
        let w = weight(m);
        let mut out = m.mul(&Monomial::var_pow(u, w));
        if let Some(v) = v {
            out = out.mul(&Monomial::var_pow(v, top - w));
        }
        (out, c.clone())
    });
    let den = match v {
        Some(v) => Monomial::var_pow(v, top),
        None => Monomial::ONE,
    };
    LaurentElem::new(num, den)
}

fn negate_alpha(p: &SparsePoly) -> SparsePoly {
    p.map_terms(|m, c| {
        let c = if m.exp(Var::Alpha) % 2 == 1 {
            -c
        } else {
            c.clone()
        };
        (*m, c)
    })
}

fn require(x: &Option<Rat>, name: &str) -> Result<Rat> {
    let v = x.clone().ok_or_else(|| {
        ArithError::InvalidArgument(format!("numeric mode needs a value for {name}"))
    })?;
    if v.is_zero() && !matches!(name, "alpha" | "beta") {
        return Err(ArithError::ZeroParameter);
    }
    Ok(v)
}

/// Compares the directly computed transformed sequence with the closed form
/// built from the unit-initial sequence, for `n = 1..=n_max`.
///
/// Symbolic mode works over Laurent polynomials in `α, β` and the transform
/// parameters (`γ`, `δ`, and `a, b, c` as `x1, x2, x3`). Numeric mode extends
/// over ℚ (through zero terms by specialization) and evaluates the closed form at the given point.
pub fn verify_transform(
    kind: TransformKind,
    params: &TransformParams,
    n_max: usize,
) -> Result<TransformReport> {
    let k = if kind == TransformKind::Somos5Abcba {
        5
    } else {
        4
    };
    if n_max < k + 1 {
        return Err(ArithError::InvalidArgument(format!(
            "n_max must be at least {}",
            k + 1
        )));
    }
    for v in [
        &params.gamma,
        &params.delta,
        &params.a,
        &params.b,
        &params.c,
    ]
    .into_iter()
    .flatten()
    {
        if v.is_zero() {
            return Err(ArithError::ZeroParameter);
        }
    }
    let numeric = params.alpha.is_some() || params.beta.is_some();
    let any_param = [
        &params.gamma,
        &params.delta,
        &params.a,
        &params.b,
        &params.c,
    ]
    .iter()
    .any(|v| v.is_some());
    if any_param && !numeric {
        return Err(ArithError::InvalidArgument(
            "numeric transform parameters need numeric alpha and beta".into(),
        ));
    }
    let budget = Budget::index(n_max as u64);

    let base = extend_with_budget(&SomosSpec::symbolic_unit(k), 1, n_max as i64, budget)
        .map_err(|f| f.error)?;
    let (gv, dv) = (Var::Gamma, Var::Delta);
    let (av, bv, cv) = (Var::X1, Var::X2, Var::X3);
    let closed = |n: i64| -> LaurentElem {
        let t = base.at(n);
        match kind {
            TransformKind::Mg => {
                weighted(t, 3, 4, gv, None).mul(&signed_monomial(&[(gv, -((n - 1) * (n - 4) / 2))]))
            }
            TransformKind::Mgs => weighted(t, 3, 4, gv, Some(dv)).mul(&signed_monomial(&[
                (dv, (n - 2) * (n - 3) / 2),
                (gv, -((n - 1) * (n - 4) / 2)),
            ])),
            TransformKind::Somos5Abcba => {
                let (ea, eb, ec) = abcba_exponents(n);
                weighted(t, 2, 3, cv, Some(av)).mul(&signed_monomial(&[
                    (av, ea),
                    (bv, eb),
                    (cv, -ec),
                ]))
            }
            TransformKind::SignTwist => {
                let s = if n.div_euclid(2) % 2 == 0 { 1 } else { -1 };
                LaurentElem::from_poly(negate_alpha(t).scale(&BigInt::from(s)))
            }
        }
    };
    let init_vars: Vec<LaurentElem> = match kind {
        TransformKind::Mg => [None, Some(gv), Some(gv), None]
            .iter()
            .map(|v| v.map_or(LaurentElem::from_i64(1), LaurentElem::var))
            .collect(),
        TransformKind::Mgs => [dv, gv, gv, dv].map(LaurentElem::var).to_vec(),
        TransformKind::Somos5Abcba => [av, bv, cv, bv, av].map(LaurentElem::var).to_vec(),
        TransformKind::SignTwist => [1, -1, -1, 1].map(LaurentElem::from_i64).to_vec(),
    };

    let mut checks = Vec::new();
    if numeric {
        let mut point = BTreeMap::new();
        point.insert(Var::Alpha, require(&params.alpha, "alpha")?);
        point.insert(Var::Beta, require(&params.beta, "beta")?);
        match kind {
            TransformKind::Mg => {
                point.insert(gv, require(&params.gamma, "gamma")?);
            }
            TransformKind::Mgs => {
                point.insert(gv, require(&params.gamma, "gamma")?);
                point.insert(dv, require(&params.delta, "delta")?);
            }
            TransformKind::Somos5Abcba => {
                point.insert(av, require(&params.a, "a")?);
                point.insert(bv, require(&params.b, "b")?);
                point.insert(cv, require(&params.c, "c")?);
            }
            TransformKind::SignTwist => {}
        }
        let init = init_vars
            .iter()
            .map(|x| x.eval(&point))
            .collect::<Result<Vec<_>>>()?;
        let spec = SomosSpec::new(
            k,
            point[&Var::Alpha].clone(),
            point[&Var::Beta].clone(),
            init,
        )?;
        let direct = extend_through_zeros(&spec, 1, n_max as i64).map_err(|f| f.error)?;
        for n in 1..=n_max as i64 {
            let equal = closed(n).eval(&point)? == *direct.at(n);
            checks.push(TransformCheck { n, equal });
        }
    } else {
        let spec = SomosSpec::new(
            k,
            LaurentElem::var(Var::Alpha),
            LaurentElem::var(Var::Beta),
            init_vars,
        )?;
        let direct = extend_with_budget(&spec, 1, n_max as i64, budget).map_err(|f| f.error)?;
        for n in 1..=n_max as i64 {
            let equal = closed(n) == *direct.at(n);
            checks.push(TransformCheck { n, equal });
        }
    }
    Ok(TransformReport {
        kind,
        numeric,
        checks,
    })
}
