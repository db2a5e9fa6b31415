use crate::error::{ArithError, Result};
use crate::exactring::Ring;

use super::{SeqWindow, SomosSpec};

/// Conserved quantities of a Somos-4 or Somos-5 orbit.
#[derive(Clone, Debug, PartialEq)]
pub enum InvariantValue<R> {
    /// `T` and `I = α² + βT`.
    Four { t: R, i: R },
    /// `S` and `J = β + αS`.
    Five { s: R, j: R },
}

impl<R> InvariantValue<R> {
    /// `I` or `J`.
    pub fn combined(&self) -> &R {
        match self {
            InvariantValue::Four { i, .. } => i,
            InvariantValue::Five { j, .. } => j,
        }
    }
}

fn tuple<R: Ring>(w: &SeqWindow<R>, at: i64, len: usize) -> Result<Vec<&R>> {
    (0..len as i64)
        .map(|d| {
            let x = w.get(at + d).ok_or_else(|| {
                ArithError::InvalidArgument(format!("index {} outside the window", at + d))
            })?;
            if x.is_zero_elem() {
                Err(ArithError::ZeroDivisor)
            } else {
                Ok(x)
            }
        })
        .collect()
}

/// `T` and `I` from `(τ_at, …, τ_{at+3})`.
///
/// The quotient must be exact in the ring: use a field, a Laurent ring, or
/// unit-initial polynomials.
pub fn invariants4<R: Ring>(
    spec: &SomosSpec<R>,
    window: &SeqWindow<R>,
    at: i64,
) -> Result<InvariantValue<R>> {
    if spec.k != 4 {
        return Err(ArithError::InvalidArgument(
            "invariants4 needs k = 4".into(),
        ));
    }
    let v = tuple(window, at, 4)?;
    let (t1, t2, t3, t4) = (v[0], v[1], v[2], v[3]);
    let (a, b) = (&spec.alpha, &spec.beta);
    let num = t1
        .square()
        .times(&t4.square())
        .plus(&a.times(&t2.pow(3).times(t4).plus(&t1.times(&t3.pow(3)))))
        .plus(&b.times(&t2.square().times(&t3.square())));
    let den = t1.times(t2).times(t3).times(t4);
    let t = num.div_exact(&den)?;
    let i = a.square().plus(&b.times(&t));
    Ok(InvariantValue::Four { t, i })
}

/// `S` and `J` from `(τ_at, …, τ_{at+4})`.
pub fn invariants5<R: Ring>(
    spec: &SomosSpec<R>,
    window: &SeqWindow<R>,
    at: i64,
) -> Result<InvariantValue<R>> {
    if spec.k != 5 {
        return Err(ArithError::InvalidArgument(
            "invariants5 needs k = 5".into(),
        ));
    }
    let v = tuple(window, at, 5)?;
    let (t1, t2, t3, t4, t5) = (v[0], v[1], v[2], v[3], v[4]);
    let (a, b) = (&spec.alpha, &spec.beta);
    let left = t1.times(t5).plus(&a.times(&t3.square()));
    let right = t1.times(&t4.square()).plus(&t2.square().times(t5));
    let num = left
        .times(&right)
        .plus(&b.times(&t2.times(&t3.pow(3)).times(t4)));
    let den = t1.times(t2).times(t3).times(t4).times(t5);
    let s = num.div_exact(&den)?;
    let j = b.plus(&a.times(&s));
    Ok(InvariantValue::Five { s, j })
}
