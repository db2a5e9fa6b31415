//! Elliptic divisibility sequences and the companion sequences of Somos-4/5.

mod companion;

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ArithError;
use crate::exactring::Ring;
use crate::somos::{ExtendFailure, SeqWindow};

pub use companion::{
    companion4, companion5, companion5_j_check, companion5_ratio_check, companion_pair,
    parity_violations, verify_companion, CompanionPair, RatioCheck,
};

/// Coefficients of `a_{m+2}a_{m−2} = c_m a_{m+1}a_{m−1} + b a_m²`.
#[derive(Clone, Debug, PartialEq)]
pub enum CoeffRule<R> {
    /// `c_m = alpha`, `b = beta` for every `m`.
    Constant { alpha: R, beta: R },
    /// `c_m = h_{shift+m}`, taking `h_even` at even and `h_odd` at odd
    /// subscripts.
    Alternating {
        h_even: R,
        h_odd: R,
        shift: u8,
        beta: R,
    },
}

impl<R> CoeffRule<R> {
    pub fn at(&self, m: i64) -> (&R, &R) {
        match self {
            CoeffRule::Constant { alpha, beta } => (alpha, beta),
            CoeffRule::Alternating {
                h_even,
                h_odd,
                shift,
                beta,
            } => {
                if (m + *shift as i64).rem_euclid(2) == 0 {
                    (h_even, beta)
                } else {
                    (h_odd, beta)
                }
            }
        }
    }
}

/// Initial values `a_1..a_4` and the recurrence coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct EdsSpec<R> {
    pub initials: [R; 4],
    pub rule: CoeffRule<R>,
}

impl<R: Ring> EdsSpec<R> {
    /// The special Somos-4 form, `c = a_2²`, `b = −a_1a_3`.
    pub fn new(a1: R, a2: R, a3: R, a4: R) -> Self {
        let rule = CoeffRule::Constant {
            alpha: a2.square(),
            beta: a1.times(&a3).negate(),
        };
        Self {
            initials: [a1, a2, a3, a4],
            rule,
        }
    }

    pub fn with_rule(initials: [R; 4], rule: CoeffRule<R>) -> Self {
        Self { initials, rule }
    }

    /// `c_m a_{m+1}a_{m−1} + b a_m² − a_{m+2}a_{m−2}` for the five terms
    /// centred at `m`.
    pub fn residual(&self, m: i64, w: &[R; 5]) -> R {
        let (c, b) = self.rule.at(m);
        c.times(&w[3].times(&w[1]))
            .plus(&b.times(&w[2].square()))
            .minus(&w[4].times(&w[0]))
    }
}

pub type EdsWindow<R> = SeqWindow<R>;

/// Extends to `lo..=hi`.
///
/// Forward steps solve for `a_{m+2}`. Backward, `a_0 = 0`, then `a_{−1}`,
/// `a_{−2}`, `a_{−3}` come from the recurrence at `m = 1, 0, −1`; below that
/// the recurrence would divide by `a_0`, so `a_{−k} = −a_k a_{−1}²`.
pub fn eds_extend<R: Ring>(
    spec: &EdsSpec<R>,
    lo: i64,
    hi: i64,
) -> Result<EdsWindow<R>, ExtendFailure<R>> {
    let run_lo = lo.min(1);
    let run_hi = hi.max(4).max(-run_lo);
    let mut fwd: Vec<R> = spec.initials.to_vec();
    let at = |v: &[R], i: i64| v[(i - 1) as usize].clone();
    let fail = |index: i64, error: ArithError, fwd: &[R]| {
        let partial = SeqWindow {
            lo: 1,
            terms: fwd.to_vec(),
        };
        let (plo, phi) = (lo.max(1), hi.min(partial.hi()));
        Err(ExtendFailure {
            index,
            error,
            partial: partial.slice(plo, phi.max(plo - 1)),
        })
    };

    for t in 5..=run_hi {
        let m = t - 2;
        let (c, b) = spec.rule.at(m);
        let top = c
            .times(&at(&fwd, m + 1).times(&at(&fwd, m - 1)))
            .plus(&b.times(&at(&fwd, m).square()));
        let den = at(&fwd, m - 2);
        if den.is_zero_elem() {
            return fail(t, ArithError::ZeroDivisor, &fwd);
        }
        match top.div_exact(&den) {
            Ok(v) => fwd.push(v),
            Err(e) => return fail(t, e, &fwd),
        }
    }

    let zero = spec.initials[0].zero_like();
    let mut back: Vec<R> = vec![zero]; // back[j] = a_{−j}
    let get = |back: &[R], fwd: &[R], i: i64| -> R {
        if i >= 1 {
            fwd[(i - 1) as usize].clone()
        } else {
            back[(-i) as usize].clone()
        }
    };
    for j in 1..=(-run_lo) {
        let v = if j <= 3 {
            // Recurrence at m = 2 − j, solved for a_{m−2} = a_{−j}.
            let m = 2 - j;
            let (c, b) = spec.rule.at(m);
            let top = c
                .times(&get(&back, &fwd, m + 1).times(&get(&back, &fwd, m - 1)))
                .plus(&b.times(&get(&back, &fwd, m).square()));
            let den = get(&back, &fwd, m + 2);
            if den.is_zero_elem() {
                let partial = window_from(&back, &fwd).slice(lo.max(1 - back.len() as i64), hi);
                return Err(ExtendFailure {
                    index: -j,
                    error: ArithError::ZeroDivisor,
                    partial,
                });
            }
            match top.div_exact(&den) {
                Ok(v) => v,
                Err(error) => {
                    let partial = window_from(&back, &fwd).slice(lo.max(1 - back.len() as i64), hi);
                    return Err(ExtendFailure {
                        index: -j,
                        error,
                        partial,
                    });
                }
            }
        } else {
            let am1 = back[1].clone();
            get(&back, &fwd, j).times(&am1.square()).negate()
        };
        back.push(v);
    }
    Ok(window_from(&back, &fwd).slice(lo, hi))
}

fn window_from<R: Clone>(back: &[R], fwd: &[R]) -> SeqWindow<R> {
    let mut terms: Vec<R> = back.iter().rev().cloned().collect();
    terms.extend(fwd.iter().cloned());
    SeqWindow {
        lo: 1 - back.len() as i64,
        terms,
    }
}

/// Centres `m` where the recurrence fails inside the window.
pub fn eds_residual_violations<R: Ring>(spec: &EdsSpec<R>, w: &EdsWindow<R>) -> Vec<i64> {
    ((w.lo + 2)..=(w.hi() - 2))
        .filter(|&m| {
            let five = [
                w.at(m - 2).clone(),
                w.at(m - 1).clone(),
                w.at(m).clone(),
                w.at(m + 1).clone(),
                w.at(m + 2).clone(),
            ];
            !spec.residual(m, &five).is_zero_elem()
        })
        .collect()
}

/// Indices `n > 0` where `a_{−n} ≠ −a_n`, plus 0 if `a_0 ≠ 0`.
pub fn antisymmetry_violations<R: Ring>(w: &EdsWindow<R>) -> Vec<i64> {
    let mut bad = Vec::new();
    if w.get(0).is_some_and(|z| !z.is_zero_elem()) {
        bad.push(0);
    }
    for n in 1..=w.hi() {
        if let (Some(p), Some(q)) = (w.get(n), w.get(-n)) {
            if *q != p.negate() {
                bad.push(n);
            }
        }
    }
    bad
}

/// Proper (`a_1 = 1`, `a_2² + a_3² ≠ 0`) and integral (`a_2 | a_4`).
pub fn is_proper(a: &[BigInt; 4]) -> bool {
    let [a1, a2, a3, a4] = a;
    if !a1.is_one() || (a2 * a2 + a3 * a3).is_zero() {
        return false;
    }
    if a2.is_zero() {
        a4.is_zero()
    } else {
        a4.is_multiple_of(a2)
    }
}

/// One of the bilinear identity families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `a_{m+n}a_{m−n} = a_n²a_{m−1}a_{m+1} − a_{n−1}a_{n+1}a_m²`.
    For,
    /// `a_1a_2a_{m+n+1}a_{m−n} = a_na_{m−1}a_{n+1}a_{m+2} − a_{n−1}a_ma_{n+2}a_{m+1}`.
    Fora2,
    /// `(for)` with `τ` in the outer positions and the companion `a` inside.
    For1,
    /// `(fora2)` with `τ` in the outer positions and the companion `a` inside.
    For2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub family: Family,
    pub checked: usize,
    /// Grid points whose indices fall outside the windows.
    pub skipped: usize,
    pub violations: Vec<(i64, i64)>,
}

impl FamilyReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.checked > 0
    }
}

/// Checks a family at every `(m, n)` with `n ≤ m` from the ranges. `tau`
/// fills the outer positions; `a(i, m + n)` the inner ones.
pub(crate) fn family_grid<T: Ring>(
    family: Family,
    m_range: RangeInclusive<i64>,
    n_range: RangeInclusive<i64>,
    tau: impl Fn(i64) -> Option<T>,
    a: impl Fn(i64, i64) -> Option<T>,
) -> FamilyReport {
    let mut report = FamilyReport {
        family,
        checked: 0,
        skipped: 0,
        violations: Vec::new(),
    };
    for m in m_range {
        for n in n_range.clone().filter(|&n| n <= m) {
            let l = m + n;
            let sides = || -> Option<(T, T)> {
                let an = |i: i64| a(i, l);
                Some(match family {
                    Family::For | Family::For1 => {
                        let lhs = tau(m + n)?.times(&tau(m - n)?);
                        let rhs = an(n)?
                            .square()
                            .times(&tau(m - 1)?)
                            .times(&tau(m + 1)?)
                            .minus(&an(n - 1)?.times(&an(n + 1)?).times(&tau(m)?.square()));
                        (lhs, rhs)
                    }
                    Family::Fora2 | Family::For2 => {
                        let lhs = an(1)?
                            .times(&an(2)?)
                            .times(&tau(m + n + 1)?)
                            .times(&tau(m - n)?);
                        let rhs = an(n)?
                            .times(&tau(m - 1)?)
                            .times(&an(n + 1)?)
                            .times(&tau(m + 2)?)
                            .minus(
                                &an(n - 1)?
                                    .times(&tau(m)?)
                                    .times(&an(n + 2)?)
                                    .times(&tau(m + 1)?),
                            );
                        (lhs, rhs)
                    }
                })
            };
            match sides() {
                None => report.skipped += 1,
                Some((lhs, rhs)) => {
                    report.checked += 1;
                    if lhs != rhs {
                        report.violations.push((m, n));
                    }
                }
            }
        }
    }
    report
}

pub fn verify_family_for<R: Ring>(
    a: &EdsWindow<R>,
    m_range: RangeInclusive<i64>,
    n_range: RangeInclusive<i64>,
) -> FamilyReport {
    let get = |i: i64| a.get(i).cloned();
    family_grid(Family::For, m_range, n_range, get, |i, _| get(i))
}

pub fn verify_family_fora2<R: Ring>(
    a: &EdsWindow<R>,
    m_range: RangeInclusive<i64>,
    n_range: RangeInclusive<i64>,
) -> FamilyReport {
    let get = |i: i64| a.get(i).cloned();
    family_grid(Family::Fora2, m_range, n_range, get, |i, _| get(i))
}

/// `V_k = {m : a_k | a_m}` restricted to the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VkReport {
    pub k: i64,
    #[serde(with = "crate::serde_dec")]
    pub a_k: BigInt,
    /// `a_k = ±1`, so `V_k` is everything.
    pub unit: bool,
    pub members: Vec<i64>,
    /// `members` equals `kℤ` (or all indices when `unit`).
    pub holds: bool,
}

pub fn v_k_check(w: &EdsWindow<BigInt>, k: i64) -> VkReport {
    let a_k = w.at(k).clone();
    let members: Vec<i64> = w
        .iter()
        .filter(|(_, x)| {
            if a_k.is_zero() {
                x.is_zero()
            } else {
                x.is_multiple_of(&a_k)
            }
        })
        .map(|(i, _)| i)
        .collect();
    let unit = a_k.abs().is_one();
    let expect: Vec<i64> = w
        .indices()
        .filter(|i| unit || i.rem_euclid(k) == 0)
        .collect();
    VkReport {
        k,
        holds: members == expect,
        a_k,
        unit,
        members,
    }
}

/// `n > 1` with `gcd(a_n, a_{n+1}) ≠ 1`.
pub fn coprime_violations(w: &EdsWindow<BigInt>) -> Vec<i64> {
    (2..w.hi())
        .filter(|&n| match (w.get(n), w.get(n + 1)) {
            (Some(x), Some(y)) => !x.gcd(y).is_one(),
            _ => false,
        })
        .collect()
}

/// Pairs `1 ≤ n ≤ m` with `n | m` but `a_n ∤ a_m`.
pub fn divisibility_violations(w: &EdsWindow<BigInt>) -> Vec<(i64, i64)> {
    let mut bad = Vec::new();
    for n in 1..=w.hi() {
        let an = w.at(n);
        for m in (n..=w.hi()).step_by(n as usize) {
            let am = w.at(m);
            let ok = if an.is_zero() {
                am.is_zero()
            } else {
                am.is_multiple_of(an)
            };
            if !ok {
                bad.push((n, m));
            }
        }
    }
    bad
}
