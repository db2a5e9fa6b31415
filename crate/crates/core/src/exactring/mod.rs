//! Exact arithmetic substrate.
//!
//! Every coefficient domain used by the sequence engines implements [`Ring`]:
//! arbitrary-precision integers, rationals, residues, sparse multivariate
//! polynomials, Laurent polynomials and quadratic extensions of any of these.

mod integer;
mod kernel;
mod laurent;
mod monomial;
mod poly;
mod quad;
mod residue;

use std::fmt::Debug;

pub use integer::{fmt_rat, mod_reduce, parse_int, parse_rat, Rat};
pub use laurent::LaurentElem;
pub use monomial::{Monomial, Var, NVARS};
pub use poly::SparsePoly;
pub use quad::QuadElem;
pub use residue::ResidueInt;

use crate::error::Result;

/// A commutative ring with exact division.
///
/// Values carry whatever context they need (a residue carries its modulus, a
/// quadratic element its radicand), so constants are produced from an existing
/// value with the `*_like` constructors.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_i64_like(&self, n: i64) -> Self;

    fn is_zero_elem(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;

    /// The unique `q` with `q * divisor == self`, if it exists in this ring.
    fn div_exact(&self, divisor: &Self) -> Result<Self>;

    fn square(&self) -> Self {
        self.times(self)
    }

    fn is_one_elem(&self) -> bool {
        *self == self.one_like()
    }

    /// Number of stored terms; 1 for scalars. Used by symbolic budgets.
    fn size(&self) -> usize {
        1
    }

    /// True for polynomial-like rings whose element size grows with the index.
    fn is_symbolic(&self) -> bool {
        false
    }

    /// An exact square root inside the ring, if one is readily found.
    fn exact_sqrt(&self) -> Option<Self> {
        None
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }
}

/// Fields additionally invert every nonzero element.
pub trait Field: Ring {
    fn inverse(&self) -> Result<Self>;
}
