use std::fmt;

use num_bigint::BigInt;

use crate::divis::is_prime;
use crate::error::{ArithError, Result};
use crate::exactring::{fmt_rat, mod_reduce, QuadElem, Rat, ResidueInt, Ring};

/// An element of `F_p` or `F_p[√d]`.
pub type Fq = QuadElem<ResidueInt>;

/// `F_p` for an odd prime `p`, or `F_p[√d]` for a non-residue `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    /// Non-residue adjoined; zero for the prime field.
    d: ResidueInt,
}

impl FiniteField {
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(ArithError::InvalidArgument(format!(
                "{p} is not an odd prime"
            )));
        }
        Ok(Self {
            p,
            d: ResidueInt::from_i64(0, p),
        })
    }

    /// `F_p[√d]`; `Ok(None)` when `d` is a square mod `p`.
    pub fn quadratic(p: u64, d: &Rat) -> Result<Option<Self>> {
        Self::prime(p)?;
        let d = mod_reduce(d, &BigInt::from(p))?;
        if d.legendre() != -1 {
            return Ok(None);
        }
        Ok(Some(Self { p, d }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_extension(&self) -> bool {
        !self.d.is_zero_elem()
    }

    /// The adjoined non-residue, if any.
    pub fn radicand(&self) -> Option<&BigInt> {
        self.is_extension().then(|| self.d.value())
    }

    /// `p` or `p²`.
    pub fn size(&self) -> u64 {
        if self.is_extension() {
            self.p * self.p
        } else {
            self.p
        }
    }

    fn lift(&self, a: ResidueInt) -> Fq {
        QuadElem::base(a, &self.d)
    }

    pub fn zero(&self) -> Fq {
        self.lift(ResidueInt::from_i64(0, self.p))
    }

    pub fn from_i64(&self, v: i64) -> Fq {
        self.lift(ResidueInt::from_i64(v, self.p))
    }

    /// `x` reduced mod `p`.
    pub fn element(&self, x: &Rat) -> Result<Fq> {
        Ok(self.lift(mod_reduce(x, &BigInt::from(self.p))?))
    }

    /// `a + b√d` from residues.
    pub fn pair(&self, a: i64, b: i64) -> Fq {
        QuadElem::new(
            ResidueInt::from_i64(a, self.p),
            ResidueInt::from_i64(b, self.p),
            self.d.clone(),
        )
    }

    /// A square root of the rational `c` inside this field.
    pub fn sqrt_of(&self, c: &Rat) -> Result<Option<Fq>> {
        let c = mod_reduce(c, &BigInt::from(self.p))?;
        if let Some(r) = c.sqrt_mod_prime() {
            return Ok(Some(self.lift(r)));
        }
        if !self.is_extension() {
            return Ok(None);
        }
        // Both non-residues, so c/d is a square and √c = √(c/d)·√d.
        let r = c
            .div_exact(&self.d)?
            .sqrt_mod_prime()
            .expect("quotient of non-residues");
        Ok(Some(QuadElem::new(r.zero_like(), r, self.d.clone())))
    }

    /// `x` is a square in this field (zero included).
    pub fn is_square(&self, x: &Fq) -> bool {
        if x.is_zero_elem() {
            return true;
        }
        if self.is_extension() {
            // Every element of F_p is a square in F_{p²}; in general the norm decides.
            x.norm().legendre() == 1
        } else {
            x.a.legendre() == 1
        }
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, x: &Fq) -> Fq {
        x.pow(self.p)
    }

    /// Every element, in a fixed order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        let bs = if self.is_extension() { self.p } else { 1 };
        (0..bs).flat_map(move |b| (0..self.p).map(move |a| self.pair(a as i64, b as i64)))
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.radicand() {
            Some(d) => write!(f, "F_{}[sqrt({d})]", self.p),
            None => write!(f, "F_{}", self.p),
        }
    }
}

/// `a`, or `a+b*sqrt(d)` with residues in `[0, p)`.
pub fn fmt_fq(x: &Fq) -> String {
    if x.b.is_zero_elem() {
        x.a.value().to_string()
    } else {
        format!("{}+{}*sqrt({})", x.a.value(), x.b.value(), x.d.value())
    }
}

/// A coordinate as written: a rational or `sqrt:d`, optionally negated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coord {
    Rat(Rat),
    Sqrt { d: Rat, negate: bool },
}

impl Coord {
    /// Radicand of a `sqrt:` token.
    pub fn radicand(&self) -> Option<&Rat> {
        match self {
            Coord::Rat(_) => None,
            Coord::Sqrt { d, .. } => Some(d),
        }
    }
}

impl std::str::FromStr for Coord {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (negate, rest) = match s.strip_prefix('-') {
            Some(r) if r.starts_with("sqrt:") => (true, r),
            _ => (false, s),
        };
        match rest.strip_prefix("sqrt:") {
            Some(d) => Ok(Coord::Sqrt {
                d: crate::exactring::parse_rat(d)?,
                negate,
            }),
            None => Ok(Coord::Rat(crate::exactring::parse_rat(s)?)),
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Rat(x) => write!(f, "{}", fmt_rat(x)),
            Coord::Sqrt { d, negate } => {
                write!(f, "{}sqrt:{}", if *negate { "-" } else { "" }, fmt_rat(d))
            }
        }
    }
}
