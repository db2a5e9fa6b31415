use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::integer::Rat;
use super::monomial::{Monomial, Var};
use super::poly::SparsePoly;
use super::Ring;
use crate::error::{ArithError, Result};

/// A Laurent polynomial `num / den` whose denominator is a monomial in the
/// invertible variables.
///
/// Normalized: `num` and `den` share no variable, so equal values have equal
/// representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentElem {
    num: SparsePoly,
    den: Monomial,
}

fn invertible_part(m: &Monomial) -> Monomial {
    let mut exps = *m.exps();
    for v in Var::ALL {
        if !v.may_invert() {
            exps[v.index()] = 0;
        }
    }
    Monomial::from_exps(exps)
}

impl LaurentElem {
    /// Builds and normalizes `num / den`.
    ///
    /// Panics if `den` involves a variable that may not be inverted.
    pub fn new(num: SparsePoly, den: Monomial) -> Self {
        assert!(
            den.support().all(|v| v.may_invert()),
            "Laurent denominator {den} involves a non-invertible variable"
        );
        let mut out = Self { num, den };
        out.normalize();
        out
    }

    pub fn from_poly(num: SparsePoly) -> Self {
        Self {
            num,
            den: Monomial::ONE,
        }
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(SparsePoly::var(v))
    }

    pub fn from_i64(c: i64) -> Self {
        Self::from_poly(SparsePoly::from_i64(c))
    }

    /// `1 / m`.
    pub fn inverse_monomial(m: Monomial) -> Self {
        Self::new(SparsePoly::one(), m)
    }

    pub fn num(&self) -> &SparsePoly {
        &self.num
    }

    pub fn den(&self) -> &Monomial {
        &self.den
    }

    /// The polynomial value, when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&SparsePoly> {
        self.den.is_one().then_some(&self.num)
    }

    /// Cancels the monomial factor shared by numerator and denominator.
    pub fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Monomial::ONE;
            return;
        }
        if self.den.is_one() {
            return;
        }
        let g = self.num.monomial_content().gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.div_monomial(&g).expect("content divides");
            self.den = self.den.div(&g).expect("gcd divides");
        }
    }

    pub fn normalized(&self) -> Self {
        let mut out = self.clone();
        out.normalize();
        out
    }

    fn over_common(&self, other: &Self) -> (SparsePoly, SparsePoly, Monomial) {
        let l = self.den.lcm(&other.den);
        let a = self.num.mul_monomial(&l.div(&self.den).expect("lcm"));
        let b = other.num.mul_monomial(&l.div(&other.den).expect("lcm"));
        (a, b, l)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, l) = self.over_common(other);
        Self::new(a.add(&b), l)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, l) = self.over_common(other);
        Self::new(a.sub(&b), l)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den,
        }
    }

    /// Exact quotient in the Laurent ring.
    ///
    /// The divisor's invertible monomial content moves into the denominator;
    /// the remaining polynomial part must divide exactly.
    pub fn laurent_div(&self, other: &Self) -> Result<Self> {
        if other.num.is_zero() {
            return Err(ArithError::ZeroDivisor);
        }
        let content = invertible_part(&other.num.monomial_content());
        let reduced = other.num.div_monomial(&content).expect("content divides");
        let top = self.num.mul_monomial(&other.den);
        let q = top.exact_div(&reduced)?;
        Ok(Self::new(q, self.den.mul(&content)))
    }

    /// Exact rational value; the denominator must not vanish.
    pub fn eval(&self, point: &BTreeMap<Var, Rat>) -> Result<Rat> {
        let d = SparsePoly::monomial(self.den, BigInt::from(1)).eval(point)?;
        if d.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(self.num.eval(point)? / d)
    }

    /// Replaces a non-invertible variable by a polynomial.
    pub fn substitute(&self, v: Var, value: &SparsePoly) -> Self {
        assert!(!v.may_invert() || self.den.exp(v) == 0);
        Self::new(self.num.substitute(v, value), self.den)
    }
}

impl fmt::Debug for LaurentElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.len() == 1 {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Ring for LaurentElem {
    fn zero_like(&self) -> Self {
        Self::from_i64(0)
    }

    fn one_like(&self) -> Self {
        Self::from_i64(1)
    }

    fn from_i64_like(&self, n: i64) -> Self {
        Self::from_i64(n)
    }

    fn is_zero_elem(&self) -> bool {
        self.num.is_zero()
    }

    fn plus(&self, other: &Self) -> Self {
        LaurentElem::add(self, other)
    }

    fn minus(&self, other: &Self) -> Self {
        LaurentElem::sub(self, other)
    }

    fn times(&self, other: &Self) -> Self {
        LaurentElem::mul(self, other)
    }

    fn negate(&self) -> Self {
        LaurentElem::neg(self)
    }

    fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.laurent_div(divisor)
    }

    fn size(&self) -> usize {
        self.num.len()
    }

    fn is_symbolic(&self) -> bool {
        true
    }
}

impl From<SparsePoly> for LaurentElem {
    fn from(p: SparsePoly) -> Self {
        Self::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(num: &str, den: &str) -> LaurentElem {
        let d = num_den(den);
        LaurentElem::new(num.parse().unwrap(), d)
    }

    fn num_den(s: &str) -> Monomial {
        let p: SparsePoly = s.parse().unwrap();
        *p.as_monomial().unwrap().0
    }

    #[test]
    fn monomial_quotient() {
        let q = l("x1^2*x2", "x3").laurent_div(&l("x1", "x3")).unwrap();
        assert_eq!(q, l("x1*x2", "1"));
    }

    #[test]
    fn first_somos_step() {
        let top = l("a*x4*x2 + b*x3^2", "1");
        let q = top.laurent_div(&LaurentElem::var(Var::X1)).unwrap();
        assert_eq!(q.num(), &"a*x2*x4 + b*x3^2".parse::<SparsePoly>().unwrap());
        assert_eq!(q.den(), &num_den("x1"));
    }

    #[test]
    fn normalization_is_idempotent() {
        let e = LaurentElem {
            num: "x1^2*x2 + x1*x2^3".parse().unwrap(),
            den: num_den("x1^3*x2*x4"),
        };
        let once = e.normalized();
        assert_eq!(once.normalized(), once);
        assert_eq!(once.den(), &num_den("x1^2*x4"));
    }

    #[test]
    fn evaluation_rejects_zero_denominator() {
        let mut pt = BTreeMap::new();
        pt.insert(Var::X1, Rat::zero());
        assert_eq!(
            LaurentElem::inverse_monomial(Monomial::var(Var::X1)).eval(&pt),
            Err(ArithError::ZeroDenominator)
        );
    }

    #[test]
    fn sums_over_common_denominator() {
        let s = l("1", "x1").add(&l("1", "x2"));
        assert_eq!(s, l("x1 + x2", "x1*x2"));
        assert!(s.sub(&s).is_zero_elem());
    }
}
