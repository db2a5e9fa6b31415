use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactring::{QuadElem, Ring};
use crate::somos::{extend_with_budget, invariants5, Budget, SeqWindow, SomosSpec};

use super::{eds_extend, family_grid, CoeffRule, EdsSpec, EdsWindow, Family, FamilyReport};

/// Companion of unit-initial Somos-4: `a_2 = −√α`, `a_3 = −β`, `a_4 = √α·I`
/// with `I = (α+β)² + β`, over `√α` adjoined.
pub fn companion4<R: Ring>(alpha: &R, beta: &R) -> EdsSpec<QuadElem<R>> {
    let d = alpha;
    let s = QuadElem::sqrt(d);
    let base = |x: R| QuadElem::base(x, d);
    let inv = alpha.plus(beta).square().plus(beta);
    EdsSpec::new(
        base(alpha.one_like()),
        s.negate(),
        base(beta.negate()),
        s.times(&base(inv)),
    )
}

/// `h_0 = 2α + β`, `h_1 = α + 1`.
fn h_pair<R: Ring>(alpha: &R, beta: &R) -> (R, R) {
    (alpha.plus(alpha).plus(beta), alpha.plus(&alpha.one_like()))
}

/// Companion of unit-initial Somos-5 for `m + n ≡ parity (mod 2)`:
/// `a_2 = √h_parity`, `a_3 = α`, `a_4 = −β a_2`, and
/// `a_{k+2}a_{k−2} = h_{parity+k} a_{k+1}a_{k−1} − α a_k²`.
pub fn companion5<R: Ring>(alpha: &R, beta: &R, parity: u8) -> EdsSpec<QuadElem<R>> {
    let (h0, h1) = h_pair(alpha, beta);
    let d = if parity.is_multiple_of(2) {
        h0.clone()
    } else {
        h1.clone()
    };
    let base = |x: R| QuadElem::base(x, &d);
    let a2 = QuadElem::sqrt(&d);
    EdsSpec::with_rule(
        [
            base(alpha.one_like()),
            a2.clone(),
            base(alpha.clone()),
            a2.times(&base(beta.negate())),
        ],
        CoeffRule::Alternating {
            h_even: base(h0),
            h_odd: base(h1),
            shift: parity % 2,
            beta: base(alpha.negate()),
        },
    )
}

/// A unit-initial Somos window with its companion EDS windows; Somos-5 has
/// one companion per parity of `m + n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompanionPair<R: Ring> {
    pub k: usize,
    pub tau: SeqWindow<R>,
    pub companions: Vec<EdsWindow<QuadElem<R>>>,
}

impl<R: Ring> CompanionPair<R> {
    fn companion(&self, l: i64) -> &EdsWindow<QuadElem<R>> {
        &self.companions[l.rem_euclid(self.companions.len() as i64) as usize]
    }
}

/// Windows covering every index used by the identity families for
/// `0 ≤ n ≤ m ≤ m_max`.
pub fn companion_pair<R: Ring>(
    k: usize,
    alpha: &R,
    beta: &R,
    m_max: i64,
) -> Result<CompanionPair<R>> {
    let spec = SomosSpec::unit(k, alpha.clone(), beta.clone());
    let tau =
        extend_with_budget(&spec, 0, 2 * m_max + 1, Budget::UNLIMITED).map_err(|f| f.error)?;
    let specs = match k {
        4 => vec![companion4(alpha, beta)],
        5 => vec![companion5(alpha, beta, 0), companion5(alpha, beta, 1)],
        _ => {
            return Err(crate::ArithError::InvalidArgument(format!(
                "no companion for k = {k}"
            )))
        }
    };
    let companions = specs
        .iter()
        .map(|s| eds_extend(s, -1, m_max + 2).map_err(|f| f.error))
        .collect::<Result<Vec<_>>>()?;
    Ok(CompanionPair { k, tau, companions })
}

/// `(for1)` and `(for2)` over the grid, compared componentwise; Somos-5 uses
/// the companion of parity `m + n`.
pub fn verify_companion<R: Ring>(
    pair: &CompanionPair<R>,
    m_range: RangeInclusive<i64>,
    n_range: RangeInclusive<i64>,
) -> [FamilyReport; 2] {
    let lift = |i: i64| {
        pair.tau
            .get(i)
            .map(|t| QuadElem::base(t.clone(), &t.zero_like()))
    };
    let a = |i: i64, l: i64| pair.companion(l).get(i).cloned();
    [
        family_grid(Family::For1, m_range.clone(), n_range.clone(), lift, a),
        family_grid(Family::For2, m_range, n_range, lift, a),
    ]
}

/// Indices breaking the parity pattern: odd terms in the base ring, even
/// terms in `√d·(base ring)`. Empty when `√d` lies in the base ring.
pub fn parity_violations<R: Ring>(w: &EdsWindow<QuadElem<R>>) -> Vec<i64> {
    let Some(d) = w.terms.iter().find(|x| !x.is_base()).map(|x| x.d.clone()) else {
        return Vec::new();
    };
    if d.exact_sqrt().is_some() {
        return Vec::new();
    }
    w.iter()
        .filter(|(i, x)| {
            if i.rem_euclid(2) == 0 {
                !x.is_pure_sqrt()
            } else {
                !x.is_base()
            }
        })
        .map(|(i, _)| i)
        .collect()
}

/// Relation between the two Somos-5 companions at one index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioCheck {
    pub k: i64,
    /// `a_k(0)²·h_1 = a_k(1)²·h_0`.
    pub ratio: bool,
    /// `a_k(0) = a_k(1)`.
    pub equal: bool,
}

/// Compares the parity-0 and parity-1 companions for `1 ≤ k ≤ k_max`.
pub fn companion5_ratio_check<R: Ring>(alpha: &R, beta: &R, k_max: i64) -> Result<Vec<RatioCheck>> {
    let (h0, h1) = h_pair(alpha, beta);
    let w0 = eds_extend(&companion5(alpha, beta, 0), 1, k_max).map_err(|f| f.error)?;
    let w1 = eds_extend(&companion5(alpha, beta, 1), 1, k_max).map_err(|f| f.error)?;
    Ok((1..=k_max)
        .map(|k| {
            let (x, y) = (w0.at(k), w1.at(k));
            let lhs = x.square().times(&QuadElem::base(h1.clone(), &x.d));
            let rhs = y.square().times(&QuadElem::base(h0.clone(), &y.d));
            RatioCheck {
                k,
                ratio: lhs == rhs,
                equal: x == y,
            }
        })
        .collect())
}

/// `h_0 h_1` against the invariant `J` of the unit-initial Somos-5 window.
pub fn companion5_j_check<R: Ring>(alpha: &R, beta: &R) -> Result<bool> {
    let (h0, h1) = h_pair(alpha, beta);
    let spec = SomosSpec::unit(5, alpha.clone(), beta.clone());
    let w = extend_with_budget(&spec, 1, 5, Budget::UNLIMITED).map_err(|f| f.error)?;
    let j = invariants5(&spec, &w, 1)?;
    Ok(*j.combined() == h0.times(&h1))
}
