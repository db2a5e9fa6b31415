use num_traits::{One, Zero};

use crate::error::{ArithError, Result};
use crate::exactring::{Rat, Ring};

use super::{extend_with_budget, Budget, ExtendFailure, SeqWindow, SomosSpec};

/// Univariate polynomials over ℚ in a perturbation parameter `t`,
/// coefficients by ascending power with no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
struct RatPoly(Vec<Rat>);

impl RatPoly {
    fn constant(c: Rat) -> Self {
        Self(vec![c]).trimmed()
    }

    fn shifted(c: Rat) -> Self {
        Self(vec![c, Rat::one()])
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn at_zero(&self) -> Rat {
        self.0.first().cloned().unwrap_or_else(Rat::zero)
    }
}

impl Ring for RatPoly {
    fn zero_like(&self) -> Self {
        Self(Vec::new())
    }

    fn one_like(&self) -> Self {
        Self::constant(Rat::one())
    }

    fn from_i64_like(&self, n: i64) -> Self {
        Self::constant(Rat::from_integer(n.into()))
    }

    fn is_zero_elem(&self) -> bool {
        self.0.is_empty()
    }

    fn plus(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let z = Rat::zero();
        let v = (0..n)
            .map(|i| self.0.get(i).unwrap_or(&z) + other.0.get(i).unwrap_or(&z))
            .collect();
        Self(v).trimmed()
    }

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }

    fn times(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return Self(Vec::new());
        }
        let mut v = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self(v).trimmed()
    }

    fn negate(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }

    fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let d = &divisor.0;
        let Some(lead) = d.last() else {
            return Err(ArithError::ZeroDivisor);
        };
        let mut rem = self.0.clone();
        if rem.len() < d.len() {
            return if rem.is_empty() {
                Ok(Self(Vec::new()))
            } else {
                Err(ArithError::NotDivisible)
            };
        }
        let mut q = vec![Rat::zero(); rem.len() - d.len() + 1];
        for i in (0..q.len()).rev() {
            let c = &rem[i + d.len() - 1] / lead;
            for (j, dj) in d.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
            q[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(ArithError::NotDivisible);
        }
        Ok(Self(q).trimmed())
    }
}

/// Extends past zero terms by specialization.
///
/// Plain steps run until a zero divisor. The run then restarts from the
/// nearest block of `k` nonzero terms with `α` replaced by `α + t` (or `β` by
/// `β + t`), every term a polynomial in `t`, until the front block is nonzero
/// at `t = 0`; the values at `t = 0` are kept and plain steps resume. Terms are
/// Laurent in any nonzero block, so the value does not depend on the block.
/// Backward steps are forward steps on the reversed sequence.
pub fn extend_through_zeros(
    spec: &SomosSpec<Rat>,
    lo: i64,
    hi: i64,
) -> std::result::Result<SeqWindow<Rat>, ExtendFailure<Rat>> {
    let k = spec.k as i64;
    let (run_lo, run_hi) = (lo.min(1), hi.max(k));
    let mut terms = spec.initials.clone();
    let fail = |index: i64, error: ArithError, terms: &[Rat], first: i64| ExtendFailure {
        index,
        error,
        partial: SeqWindow {
            lo: first,
            terms: terms.to_vec(),
        }
        .slice(lo, hi),
    };
    if let Err((i, e)) = grow(spec, &mut terms, run_hi as usize) {
        return Err(fail(1 + i as i64, e, &terms, 1));
    }
    terms.reverse();
    let res = grow(spec, &mut terms, (run_hi - run_lo + 1) as usize);
    terms.reverse();
    let first = run_hi + 1 - terms.len() as i64;
    if let Err((i, e)) = res {
        return Err(fail(run_hi - i as i64, e, &terms, first));
    }
    Ok(SeqWindow { lo: first, terms }.slice(lo, hi))
}

/// Grows `terms` forward to `len`; on failure, the offset that could not be
/// computed.
fn grow(
    spec: &SomosSpec<Rat>,
    terms: &mut Vec<Rat>,
    len: usize,
) -> std::result::Result<(), (usize, ArithError)> {
    let k = spec.k;
    while terms.len() < len {
        let block = SomosSpec {
            k,
            alpha: spec.alpha.clone(),
            beta: spec.beta.clone(),
            initials: terms[terms.len() - k..].to_vec(),
        };
        let want = (len - terms.len() + k) as i64;
        match extend_with_budget(&block, 1, want, Budget::UNLIMITED) {
            Ok(w) => terms.extend(w.terms.into_iter().skip(k)),
            Err(f) if f.error == ArithError::ZeroDivisor => {
                terms.extend(f.partial.terms.into_iter().skip(k));
                let at = terms.len();
                lift(spec, terms, len).map_err(|e| (at, e))?;
            }
            Err(f) => return Err((terms.len() + (f.index as usize - k - 1), f.error)),
        }
    }
    Ok(())
}

/// Recomputes past a zero over ℚ[t] from the last all-nonzero block.
fn lift(spec: &SomosSpec<Rat>, terms: &mut Vec<Rat>, len: usize) -> Result<()> {
    let k = spec.k;
    let start = (0..=terms.len() - k)
        .rev()
        .find(|&s| terms[s..s + k].iter().all(|x| !x.is_zero()))
        .ok_or(ArithError::ZeroDivisor)?;
    let mut extra = 2 * k;
    loop {
        let want = (terms.len() + extra).min(len) - start;
        let mut done = None;
        for which in 0..2 {
            let lifted = SomosSpec {
                k,
                alpha: if which == 0 {
                    RatPoly::shifted(spec.alpha.clone())
                } else {
                    RatPoly::constant(spec.alpha.clone())
                },
                beta: if which == 1 {
                    RatPoly::shifted(spec.beta.clone())
                } else {
                    RatPoly::constant(spec.beta.clone())
                },
                initials: terms[start..start + k]
                    .iter()
                    .cloned()
                    .map(RatPoly::constant)
                    .collect(),
            };
            if let Ok(w) = extend_with_budget(&lifted, 1, want as i64, Budget::UNLIMITED) {
                done = Some(w.map(RatPoly::at_zero).terms);
                break;
            }
        }
        let vals = done.ok_or(ArithError::ZeroDivisor)?;
        let clear = vals[vals.len() - k..].iter().all(|x| !x.is_zero());
        if clear || start + want >= len {
            terms.truncate(start);
            terms.extend(vals);
            return Ok(());
        }
        extra *= 2;
    }
}
