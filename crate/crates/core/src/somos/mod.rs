//! Bidirectional Somos-k engine over any [`Ring`].
//!
//! Terms satisfy
//! `τ_{n+k−2} τ_{n−2} = α τ_{n+k−3} τ_{n−1} + β τ_{n+k−4} τ_n`
//! with initial values at indices `1..=k`. Windows extend in both directions;
//! every step is an exact division in the coefficient ring.

mod degenerate;
mod invariants;
mod perturb;
mod symmetry;
mod transform;

use std::fmt;

use num_bigint::BigInt;

use crate::error::{ArithError, Result};
use crate::exactring::{LaurentElem, Rat, Ring, SparsePoly, Var};

pub use degenerate::{degenerate_exponents, verify_degenerate, Degeneracy, DegenerateExponents};
pub use invariants::{invariants4, invariants5, InvariantValue};
pub use perturb::extend_through_zeros;
pub use symmetry::{period_mod, symmetry_check, PeriodReport, SymmetryReport, SymmetryRule};
pub use transform::{
    abcba_exponents, verify_transform, TransformCheck, TransformKind, TransformParams,
    TransformReport,
};

/// A recurrence instance: order `k`, coefficients and the initial values
/// `τ_1 … τ_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SomosSpec<R> {
    pub k: usize,
    pub alpha: R,
    pub beta: R,
    pub initials: Vec<R>,
}

impl<R: Ring> SomosSpec<R> {
    pub fn new(k: usize, alpha: R, beta: R, initials: Vec<R>) -> Result<Self> {
        if k < 4 {
            return Err(ArithError::InvalidArgument(format!(
                "order k = {k} must be at least 4"
            )));
        }
        if initials.len() != k {
            return Err(ArithError::InvalidArgument(format!(
                "expected {k} initial values, got {}",
                initials.len()
            )));
        }
        Ok(Self {
            k,
            alpha,
            beta,
            initials,
        })
    }

    /// All initial values equal to one.
    pub fn unit(k: usize, alpha: R, beta: R) -> Self {
        let one = alpha.one_like();
        Self::new(k, alpha, beta, vec![one; k]).expect("valid order")
    }

    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> SomosSpec<S> {
        SomosSpec {
            k: self.k,
            alpha: f(&self.alpha),
            beta: f(&self.beta),
            initials: self.initials.iter().map(f).collect(),
        }
    }

    /// Residual of the recurrence anchored at `n`, given the `k+1` terms
    /// `τ_{n−2} … τ_{n+k−2}`.
    pub fn residual(&self, w: &[R]) -> R {
        let k = self.k;
        debug_assert_eq!(w.len(), k + 1);
        // w[j] = τ_{n−2+j}
        let lhs = w[k].times(&w[0]);
        let a = self.alpha.times(&w[k - 1].times(&w[1]));
        let b = self.beta.times(&w[k - 2].times(&w[2]));
        lhs.minus(&a).minus(&b)
    }
}

impl SomosSpec<SparsePoly> {
    /// Unit initial values with `α`, `β` as polynomial variables.
    pub fn symbolic_unit(k: usize) -> Self {
        Self::unit(k, SparsePoly::var(Var::Alpha), SparsePoly::var(Var::Beta))
    }
}

impl SomosSpec<LaurentElem> {
    /// Initial values `x1 … xk` with symbolic `α`, `β`.
    pub fn symbolic_laurent(k: usize) -> Self {
        assert!(k <= 5, "only five initial-value variables exist");
        let init = (1..=k).map(|i| LaurentElem::var(Var::initial(i))).collect();
        Self::new(
            k,
            LaurentElem::var(Var::Alpha),
            LaurentElem::var(Var::Beta),
            init,
        )
        .expect("valid order")
    }
}

impl SomosSpec<BigInt> {
    pub fn to_rat(&self) -> SomosSpec<Rat> {
        self.map(|x| Rat::from_integer(x.clone()))
    }
}

/// Terms `τ_lo … τ_hi` over ℤ indices.
#[derive(Clone, Debug, PartialEq)]
pub struct SeqWindow<R> {
    pub lo: i64,
    pub terms: Vec<R>,
}

impl<R> SeqWindow<R> {
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= self.lo && n <= self.hi()
    }

    pub fn get(&self, n: i64) -> Option<&R> {
        if self.contains(n) {
            self.terms.get((n - self.lo) as usize)
        } else {
            None
        }
    }

    /// The term at `n`; panics outside the window.
    pub fn at(&self, n: i64) -> &R {
        self.get(n)
            .unwrap_or_else(|| panic!("index {n} outside window {}..={}", self.lo, self.hi()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &R)> {
        self.terms
            .iter()
            .enumerate()
            .map(move |(i, t)| (self.lo + i as i64, t))
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> SeqWindow<S> {
        SeqWindow {
            lo: self.lo,
            terms: self.terms.iter().map(f).collect(),
        }
    }

    /// The sub-window `lo..=hi`, clipped to what is present.
    pub fn slice(&self, lo: i64, hi: i64) -> SeqWindow<R>
    where
        R: Clone,
    {
        let lo = lo.max(self.lo);
        let hi = hi.min(self.hi());
        let terms = if lo > hi {
            Vec::new()
        } else {
            self.terms[(lo - self.lo) as usize..=(hi - self.lo) as usize].to_vec()
        };
        SeqWindow { lo, terms }
    }
}

/// Limits on symbolic growth.
///
/// `max_index` bounds the distance of any computed index from the initial
/// block `1..=k`; `max_terms` bounds the size of a single term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_index: Option<u64>,
    pub max_terms: Option<usize>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_index: None,
        max_terms: None,
    };

    pub fn index(max_index: u64) -> Self {
        Self {
            max_index: Some(max_index),
            max_terms: None,
        }
    }
}

impl Default for Budget {
    /// Symbolic windows stay within index distance 24 of the initial block.
    fn default() -> Self {
        Self::index(24)
    }
}

/// An extension that stopped early, with everything computed so far.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendFailure<R> {
    pub index: i64,
    pub error: ArithError,
    pub partial: SeqWindow<R>,
}

impl<R> fmt::Display for ExtendFailure<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "extension failed at index {}: {}",
            self.index, self.error
        )
    }
}

impl<R: fmt::Debug> std::error::Error for ExtendFailure<R> {}

/// Extends to `lo..=hi` under the default budget (applied to symbolic rings
/// only).
pub fn extend<R: Ring>(
    spec: &SomosSpec<R>,
    lo: i64,
    hi: i64,
) -> std::result::Result<SeqWindow<R>, ExtendFailure<R>> {
    extend_with_budget(spec, lo, hi, Budget::default())
}

/// Extends to `lo..=hi`.
///
/// Forward steps solve the recurrence for the highest index, backward steps
/// for the lowest. A zero divisor, an inexact division or an exhausted
/// budget stops the run and returns the window computed so far, clipped to
/// the request.
pub fn extend_with_budget<R: Ring>(
    spec: &SomosSpec<R>,
    lo: i64,
    hi: i64,
    budget: Budget,
) -> std::result::Result<SeqWindow<R>, ExtendFailure<R>> {
    let k = spec.k as i64;
    let symbolic = spec.alpha.is_symbolic();
    let run_lo = lo.min(1);
    let run_hi = hi.max(k);
    let mut fwd: Vec<R> = spec.initials.clone();
    let mut back: Vec<R> = Vec::new();

    let fail = |index: i64, error: ArithError, back: &[R], fwd: &[R]| {
        let lo_now = 1 - back.len() as i64;
        let mut terms: Vec<R> = back.iter().rev().cloned().collect();
        terms.extend(fwd.iter().cloned());
        let partial = SeqWindow { lo: lo_now, terms }.slice(lo, hi);
        Err(ExtendFailure {
            index,
            error,
            partial,
        })
    };
    let over_budget = |index: i64, size: usize| -> Option<ArithError> {
        if !symbolic {
            return None;
        }
        let dist = if index > k { index - k } else { 1 - index } as u64;
        if budget.max_index.is_some_and(|m| dist > m) {
            return Some(ArithError::BudgetExceeded(format!(
                "index {index} is {dist} steps from the initial block (limit {})",
                budget.max_index.unwrap_or(0)
            )));
        }
        if budget.max_terms.is_some_and(|m| size > m) {
            return Some(ArithError::BudgetExceeded(format!(
                "term {index} has {size} terms (limit {})",
                budget.max_terms.unwrap_or(0)
            )));
        }
        None
    };

    // Forward: τ_t = (α τ_{t−1} τ_{t−k+1} + β τ_{t−2} τ_{t−k+2}) / τ_{t−k}.
    let ku = spec.k;
    for t in (k + 1)..=run_hi {
        if let Some(e) = over_budget(t, 0) {
            return fail(t, e, &back, &fwd);
        }
        let j = fwd.len();
        let top = spec
            .alpha
            .times(&fwd[j - 1].times(&fwd[j - ku + 1]))
            .plus(&spec.beta.times(&fwd[j - 2].times(&fwd[j - ku + 2])));
        let den = &fwd[j - ku];
        if den.is_zero_elem() {
            return fail(t, ArithError::ZeroDivisor, &back, &fwd);
        }
        match top.div_exact(den) {
            Ok(v) => {
                if let Some(e) = over_budget(t, v.size()) {
                    return fail(t, e, &back, &fwd);
                }
                fwd.push(v)
            }
            Err(e) => return fail(t, e, &back, &fwd),
        }
    }

    // Backward: τ_b = (α τ_{b+k−1} τ_{b+1} + β τ_{b+k−2} τ_{b+2}) / τ_{b+k}.
    let mut b = 0i64;
    while b >= run_lo {
        if let Some(e) = over_budget(b, 0) {
            return fail(b, e, &back, &fwd);
        }
        let term = |i: i64| -> &R {
            if i >= 1 {
                &fwd[(i - 1) as usize]
            } else {
                &back[(-i) as usize]
            }
        };
        let top = spec
            .alpha
            .times(&term(b + k - 1).times(term(b + 1)))
            .plus(&spec.beta.times(&term(b + k - 2).times(term(b + 2))));
        let den = term(b + k);
        if den.is_zero_elem() {
            return fail(b, ArithError::ZeroDivisor, &back, &fwd);
        }
        match top.div_exact(den) {
            Ok(v) => {
                if let Some(e) = over_budget(b, v.size()) {
                    return fail(b, e, &back, &fwd);
                }
                back.push(v)
            }
            Err(e) => return fail(b, e, &back, &fwd),
        }
        b -= 1;
    }

    let mut terms: Vec<R> = back.into_iter().rev().collect();
    terms.extend(fwd);
    Ok(SeqWindow { lo: run_lo, terms }.slice(lo, hi))
}

/// Indices `n` (anchor of `τ_{n−2} … τ_{n+k−2}`) whose recurrence residual is
/// nonzero.
pub fn residual_violations<R: Ring>(spec: &SomosSpec<R>, w: &SeqWindow<R>) -> Vec<i64> {
    let k = spec.k;
    if w.terms.len() < k + 1 {
        return Vec::new();
    }
    w.terms
        .windows(k + 1)
        .enumerate()
        .filter(|(_, win)| !spec.residual(win).is_zero_elem())
        .map(|(i, _)| w.lo + i as i64 + 2)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn unit_int(k: usize) -> SomosSpec<BigInt> {
        SomosSpec::unit(k, BigInt::from(1), BigInt::from(1))
    }

    #[test]
    fn somos4_unit_terms() {
        let w = extend(&unit_int(4), 1, 12).unwrap();
        assert_eq!(
            w.terms,
            ints(&[1, 1, 1, 1, 2, 3, 7, 23, 59, 314, 1529, 8209])
        );
    }

    #[test]
    fn somos5_unit_terms() {
        let w = extend(&unit_int(5), 1, 11).unwrap();
        assert_eq!(w.terms, ints(&[1, 1, 1, 1, 1, 2, 3, 5, 11, 37, 83]));
    }

    #[test]
    fn fibonacci_from_index_one() {
        let spec =
            SomosSpec::new(4, BigInt::from(-1), BigInt::from(2), ints(&[1, 1, 2, 3])).unwrap();
        let w = extend(&spec, 1, 8).unwrap();
        assert_eq!(w.terms, ints(&[1, 1, 2, 3, 5, 8, 13, 21]));
    }

    #[test]
    fn zero_divisor_reports_index_and_partial_window() {
        let spec =
            SomosSpec::new(4, BigInt::from(-1), BigInt::from(2), ints(&[1, 1, 2, 3])).unwrap();
        let err = extend(&spec, -6, 4).unwrap_err();
        assert_eq!(err.error, ArithError::ZeroDivisor);
        assert_eq!(err.index, -4);
        assert_eq!(err.partial.lo, -3);
        assert_eq!(err.partial.terms, ints(&[2, -1, 1, 0, 1, 1, 2, 3]));
    }

    #[test]
    fn backward_terms_mirror_forward() {
        let w = extend(&unit_int(4), -8, 13).unwrap();
        for n in 1..=10 {
            assert_eq!(w.at(2 + n), w.at(3 - n));
        }
        assert!(residual_violations(&unit_int(4), &w).is_empty());
    }

    #[test]
    fn symbolic_budget() {
        let spec = SomosSpec::symbolic_unit(4);
        let err = extend(&spec, 1, 30).unwrap_err();
        assert!(matches!(err.error, ArithError::BudgetExceeded(_)));
        assert_eq!(err.index, 29);
        assert_eq!(err.partial.hi(), 28);
        let w = extend(&spec, 1, 6).unwrap();
        assert_eq!(w.at(5), &"a + b".parse::<SparsePoly>().unwrap());
        assert_eq!(w.at(6), &"a^2 + a*b + b".parse::<SparsePoly>().unwrap());
    }

    #[test]
    fn residue_ring_units_only() {
        use crate::exactring::ResidueInt;
        let m = BigInt::from(7);
        let r = |v: i64| ResidueInt::new(v.into(), m.clone()).unwrap();
        let spec = SomosSpec::unit(4, r(1), r(1));
        let w = extend(&spec, 1, 8).unwrap();
        let expect: Vec<_> = [1, 1, 1, 1, 2, 3, 7, 23].iter().map(|&v| r(v)).collect();
        assert_eq!(w.terms, expect);
        // τ_7 = 7 ≡ 0 blocks τ_11.
        let err = extend(&spec, 1, 12).unwrap_err();
        assert_eq!(err.error, ArithError::ZeroDivisor);
        assert_eq!(err.index, 11);
    }
}
