use std::fmt;

use super::{Field, Ring};
use crate::error::{ArithError, Result};

/// `a + b·√d` over a base ring.
///
/// Every element carries its radicand `d`; binary operations require equal
/// radicands unless one side lies in the base ring. Equality is componentwise
/// and ignores `d` on base-ring elements.
#[derive(Clone)]
pub struct QuadElem<R> {
    pub a: R,
    pub b: R,
    pub d: R,
}

impl<R: Ring> PartialEq for QuadElem<R> {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero_elem() || self.d == other.d)
    }
}

impl<R: Eq + Ring> Eq for QuadElem<R> {}

impl<R: std::hash::Hash> std::hash::Hash for QuadElem<R> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
    }
}

impl<R: Ring> QuadElem<R> {
    pub fn new(a: R, b: R, d: R) -> Self {
        Self { a, b, d }
    }

    /// The base-ring element `a`.
    pub fn base(a: R, d: &R) -> Self {
        let z = a.zero_like();
        Self::new(a, z, d.clone())
    }

    /// `√d` itself; resolved into the base ring when `d` is a perfect square
    /// there.
    pub fn sqrt(d: &R) -> Self {
        match d.exact_sqrt() {
            Some(r) => Self::base(r, d),
            None => Self::new(d.zero_like(), d.one_like(), d.clone()),
        }
    }

    /// Lies in the base ring.
    pub fn is_base(&self) -> bool {
        self.b.is_zero_elem()
    }

    /// Lies in `√d · base`.
    pub fn is_pure_sqrt(&self) -> bool {
        self.a.is_zero_elem()
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), self.b.negate(), self.d.clone())
    }

    /// `a² − d·b²`.
    pub fn norm(&self) -> R {
        self.a.square().minus(&self.d.times(&self.b.square()))
    }

    /// Scales both components by a base element.
    pub fn scale(&self, k: &R) -> Self {
        Self::new(self.a.times(k), self.b.times(k), self.d.clone())
    }

    fn check(&self, other: &Self) {
        assert!(
            self.d == other.d || self.b.is_zero_elem() || other.b.is_zero_elem(),
            "quadratic elements over different radicands"
        );
    }

    fn radicand(&self, other: &Self) -> R {
        if self.b.is_zero_elem() {
            other.d.clone()
        } else {
            self.d.clone()
        }
    }
}

impl<R: Ring> Ring for QuadElem<R> {
    fn zero_like(&self) -> Self {
        Self::base(self.a.zero_like(), &self.d)
    }

    fn one_like(&self) -> Self {
        Self::base(self.a.one_like(), &self.d)
    }

    fn from_i64_like(&self, n: i64) -> Self {
        Self::base(self.a.from_i64_like(n), &self.d)
    }

    fn is_zero_elem(&self) -> bool {
        self.a.is_zero_elem() && self.b.is_zero_elem()
    }

    fn plus(&self, other: &Self) -> Self {
        self.check(other);
        Self::new(
            self.a.plus(&other.a),
            self.b.plus(&other.b),
            self.radicand(other),
        )
    }

    fn minus(&self, other: &Self) -> Self {
        self.check(other);
        Self::new(
            self.a.minus(&other.a),
            self.b.minus(&other.b),
            self.radicand(other),
        )
    }

    fn times(&self, other: &Self) -> Self {
        self.check(other);
        let d = self.radicand(other);
        if other.b.is_zero_elem() {
            return Self::new(self.a.times(&other.a), self.b.times(&other.a), d);
        }
        if self.b.is_zero_elem() {
            return Self::new(self.a.times(&other.a), self.a.times(&other.b), d);
        }
        let a = self
            .a
            .times(&other.a)
            .plus(&d.times(&self.b.times(&other.b)));
        let b = self.a.times(&other.b).plus(&self.b.times(&other.a));
        Self::new(a, b, d)
    }

    fn negate(&self) -> Self {
        Self::new(self.a.negate(), self.b.negate(), self.d.clone())
    }

    /// Division through the norm of the divisor.
    fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.check(divisor);
        let d = self.radicand(divisor);
        if divisor.b.is_zero_elem() {
            if divisor.a.is_zero_elem() {
                return Err(ArithError::ZeroDivisor);
            }
            return Ok(Self::new(
                self.a.div_exact(&divisor.a)?,
                self.b.div_exact(&divisor.a)?,
                d,
            ));
        }
        if divisor.a.is_zero_elem() {
            // (a + b√d) / (c√d) = b/c + (a/(c·d))√d
            let cd = divisor.b.times(&d);
            return Ok(Self::new(
                self.b.div_exact(&divisor.b)?,
                self.a.div_exact(&cd)?,
                d,
            ));
        }
        let n = divisor.norm();
        if n.is_zero_elem() {
            return Err(ArithError::ZeroDivisor);
        }
        let top = self.times(&divisor.conjugate());
        Ok(Self::new(top.a.div_exact(&n)?, top.b.div_exact(&n)?, d))
    }

    fn size(&self) -> usize {
        self.a.size() + self.b.size()
    }

    fn is_symbolic(&self) -> bool {
        self.a.is_symbolic()
    }
}

impl<R: Field> Field for QuadElem<R> {
    fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero_elem() {
            return Err(ArithError::ZeroDivisor);
        }
        let ni = n.inverse()?;
        Ok(self.conjugate().scale(&ni))
    }
}

impl<R: fmt::Display + Ring> fmt::Display for QuadElem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero_elem() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero_elem() {
            write!(f, "({})*sqrt({})", self.b, self.d)
        } else {
            write!(f, "({}) + ({})*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl<R: Ring> fmt::Debug for QuadElem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + {:?}*sqrt({:?})", self.a, self.b, self.d)
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::exactring::{Rat, ResidueInt, SparsePoly, Var};

    fn q(a: i64, b: i64, d: i64) -> QuadElem<BigInt> {
        QuadElem::new(a.into(), b.into(), d.into())
    }

    #[test]
    fn product_with_conjugate_is_norm() {
        let x = q(3, -5, 7);
        let n = x.times(&x.conjugate());
        assert_eq!(
            n,
            QuadElem::base(BigInt::from(9 - 7 * 25), &BigInt::from(7))
        );
    }

    #[test]
    fn exact_division_through_norm() {
        let x = q(3, -5, 7);
        let y = q(-2, 1, 7);
        assert_eq!(x.times(&y).div_exact(&y).unwrap(), x);
        assert_eq!(x.times(&q(0, 4, 7)).div_exact(&q(0, 4, 7)).unwrap(), x);
        assert_eq!(
            q(1, 0, 7).div_exact(&q(3, 1, 7)),
            Err(ArithError::NotDivisible)
        );
    }

    #[test]
    fn perfect_square_radicand_resolves() {
        assert_eq!(QuadElem::sqrt(&BigInt::from(4)), q(2, 0, 4));
        let r = QuadElem::sqrt(&Rat::new(9.into(), 4.into()));
        assert!(r.is_base());
    }

    #[test]
    fn symbolic_radicand() {
        let alpha = SparsePoly::var(Var::Alpha);
        let s = QuadElem::sqrt(&alpha);
        assert_eq!(s.square(), QuadElem::base(alpha.clone(), &alpha));
    }

    #[test]
    fn extension_field_inverse() {
        let p = BigInt::from(7);
        let r = |v: i64| ResidueInt::new(v.into(), p.clone()).unwrap();
        let x = QuadElem::new(r(3), r(5), r(3));
        let inv = x.inverse().unwrap();
        assert!(x.times(&inv).is_one_elem());
    }
}
