use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::integer::Rat;
use super::kernel::{self, DenseDiv, Term};
use super::monomial::{Monomial, Var};
use super::Ring;
use crate::error::{ArithError, Result};

/// Below this many term products the hash-map path beats the dense kernel.
const DENSE_MUL_MIN: usize = 256;

/// A multivariate polynomial with integer coefficients.
///
/// Terms are stored sorted by descending graded-lex monomial with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparsePoly {
    terms: Vec<Term>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(BigInt::from(c))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), BigInt::one())
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: vec![(m, c)],
            }
        }
    }

    /// Collects terms, merging equal monomials and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_default() += c;
        }
        Self::from_map(map)
    }

    fn from_map(map: BTreeMap<Monomial, BigInt>) -> Self {
        let terms = map
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self { terms }
    }

    fn from_hash(map: HashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<Term> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Self { terms }
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// The single term of a monomial polynomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &BigInt)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((m, c)),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms
            .binary_search_by(|t| m.cmp(&t.0))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u64 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    /// Largest coefficient bit length.
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|t| t.1.bits()).max().unwrap_or(0)
    }

    /// Componentwise minimum over all monomials.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some(first) => it.fold(first.0, |g, t| g.gcd(&t.0)),
        }
    }

    /// Gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |g, t| g.gcd(&t.1))
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|&v| self.degree_in(v) > 0)
            .collect()
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Divides every monomial by `m`, which must divide each of them.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| t.div(m).map(|q| (q, c.clone())))
            .collect::<Option<Vec<_>>>()?;
        Some(Self { terms })
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let fix = |c: &BigInt| if negate_other { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0, fix(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, fix(c))));
        Self { terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return Self {
                terms: large.terms.iter().map(|(t, d)| (t.mul(m), c * d)).collect(),
            };
        }
        if small.len() * large.len() >= DENSE_MUL_MIN {
            if let Some(terms) = kernel::mul_dense(&large.terms, &small.terms) {
                return Self { terms };
            }
        }
        self.mul_sparse(other)
    }

    fn mul_sparse(&self, other: &Self) -> Self {
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.len() * other.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        Self::from_hash(acc)
    }

    /// The unique `q` with `q * den == self`, or `NotDivisible`.
    ///
    /// Leading-term reduction in graded-lex order; stops at the first
    /// leading term that the divisor's leading term does not divide.
    pub fn exact_div(&self, den: &Self) -> Result<Self> {
        if den.is_zero() {
            return Err(ArithError::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some((m, c)) = den.as_monomial() {
            let terms = self
                .terms
                .iter()
                .map(|(t, d)| {
                    let q = t.div(m).ok_or(ArithError::NotDivisible)?;
                    Ok((q, d.div_exact(c)?))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(Self { terms });
        }
        if self.len() < den.len() {
            return Err(ArithError::NotDivisible);
        }
        match kernel::div_dense(&self.terms, &den.terms) {
            DenseDiv::Done(r) => r.map(|terms| Self { terms }),
            DenseDiv::Unsupported => self.div_sparse(den),
        }
    }

    fn div_sparse(&self, den: &Self) -> Result<Self> {
        let (lt, lc) = &den.terms[0];
        let mut rem: BTreeMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let t = m.div(lt).ok_or(ArithError::NotDivisible)?;
            let q = c.div_exact(lc)?;
            for (dm, dc) in &den.terms[1..] {
                let key = t.mul(dm);
                let entry = rem.entry(key).or_default();
                *entry -= &q * dc;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quotient.push((t, q));
        }
        Ok(Self { terms: quotient })
    }

    /// True when `den` divides `self` exactly.
    pub fn divisible_by(&self, den: &Self) -> bool {
        self.exact_div(den).is_ok()
    }

    /// Exact rational value under an assignment of every occurring variable.
    pub fn eval(&self, point: &BTreeMap<Var, Rat>) -> Result<Rat> {
        let mut powers: HashMap<(Var, u32), Rat> = HashMap::new();
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = Rat::from_integer(c.clone());
            for v in m.support() {
                let e = m.exp(v);
                let p = match powers.get(&(v, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let x = point
                            .get(&v)
                            .ok_or_else(|| ArithError::Unassigned(v.name().to_string()))?;
                        let p = num_traits::pow::pow(x.clone(), e as usize);
                        powers.insert((v, e), p.clone());
                        p
                    }
                };
                t *= p;
            }
            total += t;
        }
        Ok(total)
    }

    /// Integer value under an assignment of integers.
    pub fn eval_int(&self, point: &BTreeMap<Var, BigInt>) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in m.support() {
                let x = point
                    .get(&v)
                    .ok_or_else(|| ArithError::Unassigned(v.name().to_string()))?;
                t *= num_traits::pow::pow(x.clone(), m.exp(v) as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Replaces `v` by the polynomial `value`.
    pub fn substitute(&self, v: Var, value: &SparsePoly) -> Self {
        let mut by_power: BTreeMap<u32, Vec<Term>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let mut rest = *m;
            rest = rest
                .div(&Monomial::var_pow(v, e))
                .expect("exponent present");
            by_power.entry(e).or_default().push((rest, c.clone()));
        }
        let mut out = Self::zero();
        let mut pow = Self::one();
        let mut at = 0u32;
        for (e, terms) in by_power {
            while at < e {
                pow = pow.mul(value);
                at += 1;
            }
            out = out.add(&Self::from_terms(terms).mul(&pow));
        }
        out
    }

    /// Applies a monomial map `m ↦ c·m'` term by term.
    pub fn map_terms(&self, f: impl Fn(&Monomial, &BigInt) -> (Monomial, BigInt)) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| f(m, c)))
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for SparsePoly {
    type Err = ArithError;

    /// Parses sums and products of integers and variables with `^`, unary
    /// minus and parentheses, e.g. `a^2 + 2*a*b - (b + 1)^3`.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let out = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> ArithError {
        ArithError::Parse(format!("{what} at byte {} of polynomial", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<SparsePoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.product()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.product()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.product()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<SparsePoly> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<SparsePoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.digits()?;
            let e: u64 = e.parse().map_err(|_| self.error("bad exponent"))?;
            return Ok(Ring::pow(&base, e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<SparsePoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits()?;
                Ok(SparsePoly::constant(d.parse().expect("digits")))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let v = Var::from_name(name)
                    .ok_or_else(|| ArithError::Parse(format!("unknown variable {name:?}")))?;
                Ok(SparsePoly::var(v))
            }
            _ => Err(self.error("expected a term")),
        }
    }
}

impl Ring for SparsePoly {
    fn zero_like(&self) -> Self {
        Self::zero()
    }

    fn one_like(&self) -> Self {
        Self::one()
    }

    fn from_i64_like(&self, n: i64) -> Self {
        Self::from_i64(n)
    }

    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
    }

    fn plus(&self, other: &Self) -> Self {
        SparsePoly::add(self, other)
    }

    fn minus(&self, other: &Self) -> Self {
        SparsePoly::sub(self, other)
    }

    fn times(&self, other: &Self) -> Self {
        SparsePoly::mul(self, other)
    }

    fn negate(&self) -> Self {
        SparsePoly::neg(self)
    }

    fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.exact_div(divisor)
    }

    fn size(&self) -> usize {
        self.terms.len()
    }

    fn is_symbolic(&self) -> bool {
        true
    }

    fn exact_sqrt(&self) -> Option<Self> {
        let c = self.as_constant()?;
        c.exact_sqrt().map(Self::constant)
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: Self) -> SparsePoly {
        SparsePoly::add(self, rhs)
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: Self) -> SparsePoly {
        SparsePoly::sub(self, rhs)
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: Self) -> SparsePoly {
        SparsePoly::mul(self, rhs)
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly::neg(self)
    }
}

impl From<i64> for SparsePoly {
    fn from(c: i64) -> Self {
        Self::from_i64(c)
    }
}

impl From<Var> for SparsePoly {
    fn from(v: Var) -> Self {
        Self::var(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SparsePoly {
        s.parse().unwrap()
    }

    #[test]
    fn binomial_square() {
        let s = p("a + b");
        assert_eq!(&s * &s, p("a^2 + 2*a*b + b^2"));
        assert_eq!(&s + &SparsePoly::zero(), s);
    }

    #[test]
    fn hand_expansion_of_tau5_tau6() {
        // (a+b)(a^2+ab+b) = a^3 + 2a^2 b + a b^2 + a b + b^2
        let prod = &p("a + b") * &p("a^2 + a*b + b");
        assert_eq!(prod, p("a^3 + 2*a^2*b + a*b^2 + a*b + b^2"));
    }

    #[test]
    fn exact_division_and_failure() {
        assert_eq!(
            p("a^2 + 2*a*b + b^2").exact_div(&p("a + b")).unwrap(),
            p("a + b")
        );
        assert_eq!(
            p("a^2 + a*b + b").exact_div(&p("a + b")),
            Err(ArithError::NotDivisible)
        );
        assert_eq!(
            p("a").exact_div(&SparsePoly::zero()),
            Err(ArithError::ZeroDivisor)
        );
    }

    #[test]
    fn dense_and_sparse_division_agree() {
        let a = p("(3*a^2 - 7*a*b + 11*b^3 + 5)^3");
        let b = p("(a - 2*b^2 + 13)^4 * (a*b + 1)");
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert_eq!(prod.div_sparse(&b).unwrap(), a);
        assert_eq!(prod.mul_sparse(&SparsePoly::one()), prod);
        assert_eq!(a.mul_sparse(&b), prod);
        let off = prod.add(&SparsePoly::from_i64(1));
        assert_eq!(off.exact_div(&b), Err(ArithError::NotDivisible));
        assert_eq!(off.div_sparse(&b), Err(ArithError::NotDivisible));
    }

    #[test]
    fn wide_coefficients_force_wider_limbs() {
        let big = SparsePoly::constant(BigInt::from(3).pow(300u32));
        let a = &p("(a + b + 1)^6") * &big;
        let b = p("(2*a - b + 7)^7");
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        // Quotient much wider than the dividend's bit length heuristic.
        let small = p("(a - b)^5");
        let q = &p("a*b + 1") * &SparsePoly::constant(BigInt::from(2).pow(700u32));
        let n = &q * &small;
        assert_eq!(n.exact_div(&small).unwrap(), q);
    }

    #[test]
    fn evaluation() {
        let mut pt = BTreeMap::new();
        pt.insert(Var::Alpha, Rat::from_integer(1.into()));
        pt.insert(Var::Beta, Rat::from_integer(1.into()));
        assert_eq!(p("a + b").eval(&pt).unwrap(), Rat::from_integer(2.into()));
        assert_eq!(
            p("a^2 + a*b + b").eval(&pt).unwrap(),
            Rat::from_integer(3.into())
        );
        assert!(matches!(p("g").eval(&pt), Err(ArithError::Unassigned(_))));
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "-1", "a^2 - 2*a*b + 3", "-x1*x2^3 + g - 7*s"] {
            let q = p(s);
            assert_eq!(p(&q.to_string()), q);
        }
        assert_eq!(p("a^2 - 2*a*b + 3").to_string(), "a^2 - 2*a*b + 3");
    }

    #[test]
    fn substitution() {
        let q = p("a^2*b + a");
        assert_eq!(
            q.substitute(Var::Alpha, &p("g^3*a")),
            p("g^6*a^2*b + g^3*a")
        );
    }
}
