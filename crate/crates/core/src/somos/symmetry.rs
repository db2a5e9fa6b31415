use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::exactring::Ring;

use super::SeqWindow;

/// Which reflection a window should satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryRule {
    /// `τ_{c+n} = τ_{c−n}` with `c = (k+1)/2`.
    Palindrome { k: usize },
    /// `τ_n = (−1)^{n+1} τ_{−n}`.
    FibonacciSign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub rule: SymmetryRule,
    /// Index pairs compared, larger index first.
    pub pairs: Vec<(i64, i64)>,
    pub violations: Vec<(i64, i64)>,
}

impl SymmetryReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && !self.pairs.is_empty()
    }
}

/// Compares every mirrored pair of indices present in the window.
pub fn symmetry_check<R: Ring>(window: &SeqWindow<R>, rule: SymmetryRule) -> SymmetryReport {
    let mut pairs = Vec::new();
    let mut violations = Vec::new();
    for (i, x) in window.iter() {
        let (j, negate) = match rule {
            SymmetryRule::Palindrome { k } => (k as i64 + 1 - i, false),
            SymmetryRule::FibonacciSign => (-i, i.rem_euclid(2) == 0),
        };
        if j > i {
            continue;
        }
        let Some(y) = window.get(j) else { continue };
        if j == i && !negate {
            continue;
        }
        let expect = if negate { y.negate() } else { y.clone() };
        pairs.push((i, j));
        if *x != expect {
            violations.push((i, j));
        }
    }
    SymmetryReport {
        rule,
        pairs,
        violations,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodReport {
    #[serde(with = "crate::serde_dec")]
    pub modulus: BigInt,
    /// Smallest period, if a repeat of at least `k` consecutive residues is
    /// visible in the window.
    pub period: Option<u64>,
    pub contains_zero: bool,
    #[serde(with = "crate::serde_dec::vec")]
    pub residues: Vec<BigInt>,
}

/// Smallest `P` with `τ_n ≡ τ_{n+P} (mod m)` across the whole window, where
/// the overlap spans at least `k` terms.
pub fn period_mod(window: &SeqWindow<BigInt>, m: &BigInt, k: usize) -> PeriodReport {
    let residues: Vec<BigInt> = window.terms.iter().map(|x| x.mod_floor(m)).collect();
    let n = residues.len();
    let period = (1..n)
        .filter(|&p| n - p >= k)
        .find(|&p| (0..n - p).all(|i| residues[i] == residues[i + p]))
        .map(|p| p as u64);
    PeriodReport {
        modulus: m.clone(),
        period,
        contains_zero: residues.iter().any(|r| r == &BigInt::from(0)),
        residues,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::somos::{extend, SomosSpec};

    fn unit4(lo: i64, hi: i64) -> SeqWindow<BigInt> {
        extend(
            &SomosSpec::unit(4, BigInt::from(1), BigInt::from(1)),
            lo,
            hi,
        )
        .unwrap()
    }

    #[test]
    fn periods_of_unit_somos4() {
        let w = unit4(1, 200);
        let r4 = period_mod(&w, &BigInt::from(4), 4);
        assert_eq!(r4.period, Some(10));
        assert!(!r4.contains_zero);
        let r2 = period_mod(&w, &BigInt::from(2), 4);
        assert_eq!(r2.period, Some(5));
        assert_eq!(&r2.residues[..5], &[1, 1, 1, 1, 0].map(BigInt::from));
        assert_eq!(period_mod(&w, &BigInt::from(1), 4).period, Some(1));
    }

    #[test]
    fn unit_window_is_palindromic() {
        let rep = symmetry_check(&unit4(-20, 25), SymmetryRule::Palindrome { k: 4 });
        assert!(rep.holds());
        assert!(rep.pairs.contains(&(5, 0)));
    }

    #[test]
    fn short_window_gives_no_period() {
        let w = unit4(1, 8);
        assert_eq!(period_mod(&w, &BigInt::from(1000), 4).period, None);
    }
}
