//! Cubic curves `y² = c₃x³ + c₂x² + c₁x + c₀` over `F_p` and `F_{p²}`, with
//! the chord-tangent law on the smooth locus and point orders.

mod field;

use serde::{Deserialize, Serialize};

use crate::divis::{two_sqrt_ceil, GapReport};
use crate::error::{ArithError, Result};
use crate::exactring::{fmt_rat, Field, Rat, Ring};

pub use field::{fmt_fq, Coord, FiniteField, Fq};

/// A cubic with rational coefficients `[c₃, c₂, c₁, c₀]`, reduced mod `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSpec {
    pub coeffs: [Rat; 4],
    pub field: FiniteField,
    /// Reduced `[c₃, c₂, c₁, c₀]`.
    pub reduced: [Fq; 4],
    /// The reduced cubic has a repeated root.
    pub singular: bool,
    /// Set when an adjoined `d` turned out to be a square mod `p`.
    pub notice: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CurvePoint {
    Infinity,
    Affine { x: Fq, y: Fq },
}

impl CurvePoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn negate(&self) -> Self {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: y.negate(),
            },
        }
    }
}

impl std::fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine { x, y } => write!(f, "({}, {})", fmt_fq(x), fmt_fq(y)),
        }
    }
}

/// Builds the curve over `F_p`, or over `F_p[√d]` when `adjoin` is a
/// non-residue. A square `d` gives the prime field and a notice.
pub fn make_curve(c: &[Rat; 4], p: u64, adjoin: Option<&Rat>) -> Result<CurveSpec> {
    let (field, notice) = match adjoin {
        None => (FiniteField::prime(p)?, None),
        Some(d) => match FiniteField::quadratic(p, d)? {
            Some(f) => (f, None),
            None => (
                FiniteField::prime(p)?,
                Some(format!(
                    "{} is a square mod {p}; its root lies in F_{p}",
                    fmt_rat(d)
                )),
            ),
        },
    };
    let reduced = [
        field.element(&c[0])?,
        field.element(&c[1])?,
        field.element(&c[2])?,
        field.element(&c[3])?,
    ];
    if reduced[0].is_zero_elem() {
        return Err(ArithError::InvalidArgument(format!(
            "leading coefficient vanishes mod {p}"
        )));
    }
    let singular = discriminant(&reduced).is_zero_elem();
    Ok(CurveSpec {
        coeffs: c.clone(),
        field,
        reduced,
        singular,
        notice,
    })
}

/// `18abcd − 4b³d + b²c² − 4ac³ − 27a²d²` for `ax³ + bx² + cx + d`.
fn discriminant(c: &[Fq; 4]) -> Fq {
    let [a, b, cc, d] = c;
    let k = |n: i64| a.from_i64_like(n);
    k(18)
        .times(a)
        .times(b)
        .times(cc)
        .times(d)
        .minus(&k(4).times(&b.pow(3)).times(d))
        .plus(&b.square().times(&cc.square()))
        .minus(&k(4).times(a).times(&cc.pow(3)))
        .minus(&k(27).times(&a.square()).times(&d.square()))
}

/// Picks the field needed by `sqrt:` coordinates, then builds curve and point.
pub fn curve_with_point(
    c: &[Rat; 4],
    p: u64,
    x: &Coord,
    y: &Coord,
) -> Result<(CurveSpec, CurvePoint)> {
    let prime = FiniteField::prime(p)?;
    let mut adjoin = None;
    for d in [x.radicand(), y.radicand()].into_iter().flatten() {
        if prime.sqrt_of(d)?.is_none() {
            adjoin = Some(d.clone());
            break;
        }
    }
    let curve = make_curve(c, p, adjoin.as_ref())?;
    let pt = curve.point(x, y)?;
    Ok((curve, pt))
}

impl CurveSpec {
    /// The cubic at `x`.
    pub fn rhs(&self, x: &Fq) -> Fq {
        let [c3, c2, c1, c0] = &self.reduced;
        c3.times(x).plus(c2).times(x).plus(c1).times(x).plus(c0)
    }

    /// Derivative of the cubic at `x`.
    fn rhs_prime(&self, x: &Fq) -> Fq {
        let [c3, c2, c1, _] = &self.reduced;
        let k = |n: i64| x.from_i64_like(n);
        k(3).times(c3)
            .times(x)
            .plus(&k(2).times(c2))
            .times(x)
            .plus(c1)
    }

    pub fn resolve(&self, c: &Coord) -> Result<Fq> {
        match c {
            Coord::Rat(x) => self.field.element(x),
            Coord::Sqrt { d, negate } => {
                let r = self.field.sqrt_of(d)?.ok_or_else(|| {
                    ArithError::InvalidArgument(format!(
                        "sqrt({}) is not in {}",
                        fmt_rat(d),
                        self.field
                    ))
                })?;
                Ok(if *negate { r.negate() } else { r })
            }
        }
    }

    /// A checked affine point.
    pub fn point(&self, x: &Coord, y: &Coord) -> Result<CurvePoint> {
        self.affine(self.resolve(x)?, self.resolve(y)?)
    }

    pub fn affine(&self, x: Fq, y: Fq) -> Result<CurvePoint> {
        let pt = CurvePoint::Affine { x, y };
        if !self.on_curve(&pt) {
            return Err(ArithError::NotOnCurve);
        }
        if self.is_singular_point(&pt) {
            return Err(ArithError::SingularPoint);
        }
        Ok(pt)
    }

    pub fn on_curve(&self, pt: &CurvePoint) -> bool {
        match pt {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => y.square() == self.rhs(x),
        }
    }

    /// `y = 0` and the cubic has a double root at `x`.
    pub fn is_singular_point(&self, pt: &CurvePoint) -> bool {
        match pt {
            CurvePoint::Infinity => false,
            CurvePoint::Affine { x, y } => y.is_zero_elem() && self.rhs_prime(x).is_zero_elem(),
        }
    }

    /// Chord-tangent sum. With `x₁ + x₂ + x₃ = (λ² − c₂)/c₃` on the line of
    /// slope `λ`, the third point is reflected in the x-axis.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return Ok(q.clone()),
            (_, CurvePoint::Infinity) => return Ok(p.clone()),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        if self.is_singular_point(p) || self.is_singular_point(q) {
            return Err(ArithError::SingularPoint);
        }
        let lambda = if x1 != x2 {
            y2.minus(y1).times(&x2.minus(x1).inverse()?)
        } else if y1 == y2 && !y1.is_zero_elem() {
            self.rhs_prime(x1).times(&y1.plus(y1).inverse()?)
        } else {
            return Ok(CurvePoint::Infinity);
        };
        let [c3, c2, _, _] = &self.reduced;
        let x3 = lambda
            .square()
            .minus(c2)
            .times(&c3.inverse()?)
            .minus(x1)
            .minus(x2);
        let y3 = lambda.times(&x1.minus(&x3)).minus(y1);
        Ok(CurvePoint::Affine { x: x3, y: y3 })
    }

    /// `[n]P` by double-and-add.
    pub fn mul(&self, pt: &CurvePoint, mut n: u64) -> Result<CurvePoint> {
        let mut acc = CurvePoint::Infinity;
        let mut base = pt.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            n >>= 1;
            if n > 0 {
                base = self.add(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Search limit for [`CurveSpec::point_order`]: `q + 1` on singular
    /// curves, `p + 1 + ⌈2√p⌉` over `F_p` and its square over `F_{p²}`.
    pub fn order_bound(&self) -> u64 {
        let p = self.field.p();
        if self.singular {
            return self.field.size() + 1;
        }
        let b = p + 1 + two_sqrt_ceil(p);
        if self.field.is_extension() {
            b * b
        } else {
            b
        }
    }

    /// Smallest `N ≥ 1` with `[N]P = O`, by iterated addition.
    pub fn point_order(&self, pt: &CurvePoint) -> Result<u64> {
        if !self.on_curve(pt) {
            return Err(ArithError::NotOnCurve);
        }
        if self.is_singular_point(pt) {
            return Err(ArithError::SingularPoint);
        }
        let bound = self.order_bound();
        let mut q = pt.clone();
        for n in 1..=bound {
            if q.is_infinity() {
                return Ok(n);
            }
            q = self.add(&q, pt)?;
        }
        Err(ArithError::OrderNotFound { bound })
    }

    /// All points, infinity first, by brute force over `x`.
    pub fn points(&self) -> Vec<CurvePoint> {
        let mut out = vec![CurvePoint::Infinity];
        let field = &self.field;
        for x in field.elements() {
            let r = self.rhs(&x);
            if !field.is_square(&r) {
                continue;
            }
            for y in field.elements() {
                if y.square() == r {
                    out.push(CurvePoint::Affine { x: x.clone(), y });
                }
            }
        }
        out
    }

    /// `#E` by counting `1 + Σ_x (1 + χ(f(x)))`; smooth points only on
    /// singular curves.
    pub fn count_points(&self) -> u64 {
        let field = &self.field;
        let mut n = 1;
        for x in field.elements() {
            let r = self.rhs(&x);
            if r.is_zero_elem() {
                if !self.rhs_prime(&x).is_zero_elem() {
                    n += 1;
                }
            } else if field.is_square(&r) {
                n += 2;
            }
        }
        n
    }

    pub fn summary(&self) -> CurveSummary {
        CurveSummary {
            coeffs: self.coeffs.iter().map(fmt_rat).collect(),
            p: self.field.p(),
            adjoined: self.field.radicand().map(|d| d.to_string()),
            reduced: self.reduced.iter().map(fmt_fq).collect(),
            singular: self.singular,
            notice: self.notice.clone(),
        }
    }
}

/// Serializable description of a reduced curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSummary {
    pub coeffs: Vec<String>,
    pub p: u64,
    pub adjoined: Option<String>,
    pub reduced: Vec<String>,
    pub singular: bool,
    pub notice: Option<String>,
}

/// A gap `N_r` next to the order of the point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapOrder {
    pub p: u64,
    pub r: u32,
    pub gap: Option<i64>,
    pub order: u64,
    pub equal: bool,
    pub gap_divides_order: bool,
    pub order_divides_gap: bool,
}

/// Compares a verified gap with the point order; an unverified gap is never
/// equal.
pub fn gap_vs_order(report: &GapReport, curve: &CurveSpec, pt: &CurvePoint) -> Result<GapOrder> {
    let order = curve.point_order(pt)?;
    let gap = report.verified_gap();
    let g = gap.map(|g| g.unsigned_abs());
    Ok(GapOrder {
        p: report.p,
        r: report.r,
        gap,
        order,
        equal: g == Some(order),
        gap_divides_order: g.is_some_and(|g| order % g == 0),
        order_divides_gap: g.is_some_and(|g| g % order == 0),
    })
}
