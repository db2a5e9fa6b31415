use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Number of variables in the fixed alphabet.
pub const NVARS: usize = 10;

/// The fixed, ordered variable alphabet `α < β < γ < δ < s < x1 < … < x5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    Alpha,
    Beta,
    Gamma,
    Delta,
    S,
    X1,
    X2,
    X3,
    X4,
    X5,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::Alpha,
        Var::Beta,
        Var::Gamma,
        Var::Delta,
        Var::S,
        Var::X1,
        Var::X2,
        Var::X3,
        Var::X4,
        Var::X5,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// `x1 … x5` by 1-based position.
    pub fn initial(i: usize) -> Var {
        assert!(
            (1..=5).contains(&i),
            "initial-value variable x{i} out of range"
        );
        Var::ALL[Var::X1.index() + i - 1]
    }

    /// Variables allowed in Laurent denominators: the initial-value
    /// variables, plus γ and δ which play that role in equivalence transforms.
    pub fn may_invert(self) -> bool {
        matches!(self, Var::Gamma | Var::Delta) || self >= Var::X1
    }

    pub fn name(self) -> &'static str {
        ["a", "b", "g", "d", "s", "x1", "x2", "x3", "x4", "x5"][self.index()]
    }

    pub fn from_name(name: &str) -> Option<Var> {
        let name = match name {
            "alpha" | "α" => "a",
            "beta" | "β" => "b",
            "gamma" | "γ" => "g",
            "delta" | "δ" => "d",
            other => other,
        };
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An exponent vector over the fixed alphabet.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// `α`, then `β`, and so on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u32; NVARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; NVARS] };

    pub fn from_exps(exps: [u32; NVARS]) -> Self {
        Self { exps }
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        let mut m = Self::ONE;
        m.exps[v.index()] = e;
        m
    }

    pub fn exps(&self) -> &[u32; NVARS] {
        &self.exps
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.exps[v.index()]
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = e.checked_add(*o).expect("exponent overflow");
        }
        Self { exps }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, when `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = e.checked_sub(*o)?;
        }
        Some(Self { exps })
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = (*e).min(*o);
        }
        Self { exps }
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Self) -> Self {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = (*e).max(*o);
        }
        Self { exps }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut exps = self.exps;
        for e in exps.iter_mut() {
            *e = e.checked_mul(k).expect("exponent overflow");
        }
        Self { exps }
    }

    /// The variables with a nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = Var> + '_ {
        Var::ALL.into_iter().filter(|v| self.exps[v.index()] > 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in self.support() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match self.exp(v) {
                1 => write!(f, "{v}")?,
                e => write!(f, "{v}^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = Monomial::var(Var::Alpha);
        let b = Monomial::var(Var::Beta);
        let a2 = Monomial::var_pow(Var::Alpha, 2);
        let ab = a.mul(&b);
        assert!(a > b);
        assert!(b > Monomial::ONE);
        assert!(a2 > ab);
        assert!(ab > Monomial::var_pow(Var::Beta, 2));
        assert!(Monomial::var_pow(Var::X5, 3) > a2);
    }

    #[test]
    fn divisibility_and_gcd() {
        let m = Monomial::from_exps([2, 1, 0, 0, 0, 3, 0, 0, 0, 0]);
        let n = Monomial::from_exps([1, 1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert!(n.divides(&m));
        assert_eq!(m.div(&n).unwrap().mul(&n), m);
        assert!(m.div(&Monomial::var(Var::Gamma)).is_none());
        assert_eq!(m.gcd(&n), n);
        assert_eq!(m.lcm(&n), m);
        assert_eq!(m.to_string(), "a^2*b*x1^3");
    }

    #[test]
    fn names_round_trip() {
        for v in Var::ALL {
            assert_eq!(Var::from_name(v.name()), Some(v));
        }
        assert_eq!(Var::from_name("alpha"), Some(Var::Alpha));
        assert!(Var::X3.may_invert() && Var::Gamma.may_invert() && !Var::Beta.may_invert());
    }
}
