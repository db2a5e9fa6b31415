use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, ResidueInt, Ring};
use crate::error::{ArithError, Result};

/// Exact rationals; always reduced with a positive denominator.
pub type Rat = BigRational;

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        BigInt::from(n)
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if Zero::is_zero(divisor) {
            return Err(ArithError::ZeroDivisor);
        }
        let (q, r) = self.div_rem(divisor);
        if Zero::is_zero(&r) {
            Ok(q)
        } else {
            Err(ArithError::NotDivisible)
        }
    }
    fn is_one_elem(&self) -> bool {
        One::is_one(self)
    }
    fn exact_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let r = self.sqrt();
        (&r * &r == *self).then_some(r)
    }
}

impl Ring for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if Zero::is_zero(divisor) {
            return Err(ArithError::ZeroDivisor);
        }
        Ok(self / divisor)
    }
    fn exact_sqrt(&self) -> Option<Self> {
        let n = self.numer().exact_sqrt()?;
        let d = self.denom().exact_sqrt()?;
        Some(Rat::new(n, d))
    }
}

impl Field for Rat {
    fn inverse(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(ArithError::ZeroDivisor);
        }
        Ok(self.recip())
    }
}

pub fn parse_int(s: &str) -> Result<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|e| ArithError::Parse(format!("{s:?}: {e}")))
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if Zero::is_zero(&d) {
                return Err(ArithError::Parse(format!("{s:?}: zero denominator")));
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// Prints `n` for integers and `n/d` otherwise.
pub fn fmt_rat(x: &Rat) -> String {
    if One::is_one(x.denom()) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `num * den^{-1} mod p`.
pub fn mod_reduce(x: &Rat, p: &BigInt) -> Result<ResidueInt> {
    let den = ResidueInt::new(x.denom().clone(), p.clone())?;
    if den.is_zero_elem() {
        return Err(ArithError::BadReduction {
            modulus: p.to_string(),
        });
    }
    let num = ResidueInt::new(x.numer().clone(), p.clone())?;
    num.div_exact(&den).map_err(|_| ArithError::BadReduction {
        modulus: p.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::Sign;

    fn r(s: &str) -> Rat {
        parse_rat(s).unwrap()
    }

    #[test]
    fn rat_parse_normalizes() {
        let x = r("6/-4");
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(fmt_rat(&x), "-3/2");
        assert_eq!(fmt_rat(&r("10/5")), "2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn decimal_round_trip_and_zero() {
        let x = parse_int("-123456789012345678901234567890").unwrap();
        assert_eq!(parse_int(&x.to_string()).unwrap(), x);
        let z = parse_int("-0").unwrap();
        assert_eq!(z.to_string(), "0");
        assert_eq!(z.sign(), Sign::NoSign);
    }

    #[test]
    fn mod_reduce_examples() {
        let five = BigInt::from(5);
        assert!(mod_reduce(&r("55750/243"), &five).unwrap().is_zero_elem());
        assert_eq!(
            mod_reduce(&r("7/12"), &five).unwrap().value(),
            &BigInt::from(1)
        );
        let three = BigInt::from(3);
        assert!(matches!(
            mod_reduce(&r("1/3"), &three),
            Err(ArithError::BadReduction { .. })
        ));
    }

    #[test]
    fn integer_exact_division() {
        let a = BigInt::from(12);
        assert_eq!(a.div_exact(&BigInt::from(-4)).unwrap(), BigInt::from(-3));
        assert_eq!(a.div_exact(&BigInt::from(5)), Err(ArithError::NotDivisible));
        assert_eq!(a.div_exact(&BigInt::from(0)), Err(ArithError::ZeroDivisor));
    }
}
