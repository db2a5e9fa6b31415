use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Field, Ring};
use crate::error::{ArithError, Result};

/// An element of `Z/mZ`, always reduced into `[0, m)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ResidueInt {
    value: BigInt,
    modulus: BigInt,
}

impl ResidueInt {
    pub fn new(value: BigInt, modulus: BigInt) -> Result<Self> {
        if modulus < BigInt::from(2) {
            return Err(ArithError::InvalidArgument(format!(
                "modulus {modulus} must be at least 2"
            )));
        }
        Ok(Self {
            value: value.mod_floor(&modulus),
            modulus,
        })
    }

    pub fn from_i64(value: i64, modulus: u64) -> Self {
        Self::new(BigInt::from(value), BigInt::from(modulus)).expect("modulus >= 2")
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(ArithError::ModulusMismatch {
                left: self.modulus.to_string(),
                right: other.modulus.to_string(),
            });
        }
        Ok(())
    }

    fn with(&self, value: BigInt) -> Self {
        Self {
            value: value.mod_floor(&self.modulus),
            modulus: self.modulus.clone(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with(&self.value + &other.value))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with(&self.value - &other.value))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with(&self.value * &other.value))
    }

    /// Multiplicative inverse, if the value is a unit.
    pub fn try_inverse(&self) -> Result<Self> {
        if self.value.is_zero() {
            return Err(ArithError::ZeroDivisor);
        }
        let g = self.value.extended_gcd(&self.modulus);
        if !g.gcd.is_one() {
            return Err(ArithError::BadReduction {
                modulus: self.modulus.to_string(),
            });
        }
        Ok(self.with(g.x))
    }

    pub fn pow_big(&self, e: &BigInt) -> Self {
        self.with(self.value.modpow(e, &self.modulus))
    }

    /// Legendre symbol for an odd prime modulus: 1, -1, or 0.
    pub fn legendre(&self) -> i32 {
        if self.value.is_zero() {
            return 0;
        }
        let e = (&self.modulus - 1u32) >> 1;
        if self.pow_big(&e).value.is_one() {
            1
        } else {
            -1
        }
    }

    /// A square root modulo an odd prime (Tonelli-Shanks), if one exists.
    pub fn sqrt_mod_prime(&self) -> Option<Self> {
        if self.value.is_zero() {
            return Some(self.clone());
        }
        if self.legendre() != 1 {
            return None;
        }
        let p = &self.modulus;
        let one = BigInt::one();
        let mut q: BigInt = p - 1u32;
        let mut s = 0u32;
        while q.is_even() {
            q >>= 1;
            s += 1;
        }
        let mut z = self.with(BigInt::from(2));
        while z.legendre() != -1 {
            z = z.with(&z.value + &one);
        }
        let mut m = s;
        let mut c = z.pow_big(&q);
        let mut t = self.pow_big(&q);
        let mut r = self.pow_big(&((&q + &one) >> 1));
        while !t.value.is_one() {
            let mut i = 0u32;
            let mut t2 = t.clone();
            while !t2.value.is_one() {
                t2 = t2.times(&t2);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = b.times(&b);
            }
            m = i;
            c = b.times(&b);
            t = t.times(&c);
            r = r.times(&b);
        }
        Some(r)
    }
}

impl fmt::Display for ResidueInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Ring for ResidueInt {
    fn zero_like(&self) -> Self {
        self.with(BigInt::zero())
    }
    fn one_like(&self) -> Self {
        self.with(BigInt::one())
    }
    fn from_i64_like(&self, n: i64) -> Self {
        self.with(BigInt::from(n))
    }
    fn is_zero_elem(&self) -> bool {
        self.value.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self.try_add(other).expect("residue moduli must agree")
    }
    fn minus(&self, other: &Self) -> Self {
        self.try_sub(other).expect("residue moduli must agree")
    }
    fn times(&self, other: &Self) -> Self {
        self.try_mul(other).expect("residue moduli must agree")
    }
    fn negate(&self) -> Self {
        self.with(-&self.value)
    }
    /// Division is only defined by units; anything else is a bad reduction.
    fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.same(divisor)?;
        let inv = divisor.try_inverse()?;
        Ok(self.times(&inv))
    }
}

impl Field for ResidueInt {
    fn inverse(&self) -> Result<Self> {
        self.try_inverse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_mismatch() {
        let a = ResidueInt::from_i64(-3, 7);
        assert_eq!(a.value(), &BigInt::from(4));
        let b = ResidueInt::from_i64(1, 5);
        assert!(matches!(
            a.try_add(&b),
            Err(ArithError::ModulusMismatch { .. })
        ));
        assert!(ResidueInt::new(BigInt::from(1), BigInt::from(1)).is_err());
    }

    #[test]
    fn division_needs_units() {
        let six = ResidueInt::from_i64(6, 8);
        let two = ResidueInt::from_i64(2, 8);
        assert!(matches!(
            six.div_exact(&two),
            Err(ArithError::BadReduction { .. })
        ));
        let three = ResidueInt::from_i64(3, 8);
        assert_eq!(six.div_exact(&three).unwrap(), two);
        assert_eq!(
            six.div_exact(&six.zero_like()),
            Err(ArithError::ZeroDivisor)
        );
    }

    #[test]
    fn tonelli_shanks_small_primes() {
        for p in [3u64, 5, 7, 11, 13, 17, 41, 97, 193] {
            for v in 0..p as i64 {
                let x = ResidueInt::from_i64(v, p);
                match x.sqrt_mod_prime() {
                    Some(r) => assert_eq!(r.times(&r), x),
                    None => assert_eq!(x.legendre(), -1),
                }
            }
        }
    }
}
