use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ArithError, Result};
use crate::exactring::{SparsePoly, Var};
use crate::somos::{extend_with_budget, Budget, SeqWindow, SomosSpec};

/// One instance of `τ_n | τ_{n + l·d}` with `d = 2n − k − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDivCheck {
    pub k: usize,
    pub n: i64,
    pub l: i64,
    pub d: i64,
    pub m: i64,
    pub divides: bool,
    /// Term counts of `τ_n` and `τ_m`.
    pub n_terms: usize,
    pub m_terms: usize,
}

/// Exact division of unit-initial symbolic terms over a grid, from one
/// window covering every index.
pub fn poly_div_grid(
    k: usize,
    ns: &[i64],
    ls: &[i64],
    budget: Budget,
) -> Result<Vec<PolyDivCheck>> {
    let spec = SomosSpec::symbolic_unit(k);
    let ki = k as i64;
    let mut targets = Vec::new();
    for &n in ns {
        if (1..=ki).contains(&n) || n == ki + 1 - n {
            return Err(ArithError::InvalidArgument(format!("τ_{n} is constant")));
        }
        let d = 2 * n - ki - 1;
        for &l in ls {
            targets.push((n, l, d, n + l * d));
        }
    }
    let lo = targets
        .iter()
        .flat_map(|t| [t.0, t.3])
        .min()
        .unwrap_or(1)
        .min(1);
    let hi = targets
        .iter()
        .flat_map(|t| [t.0, t.3])
        .max()
        .unwrap_or(ki)
        .max(ki);
    let w = extend_with_budget(&spec, lo, hi, budget).map_err(|f| f.error)?;
    Ok(targets
        .into_iter()
        .map(|(n, l, d, m)| {
            let (tn, tm) = (w.at(n), w.at(m));
            PolyDivCheck {
                k,
                n,
                l,
                d,
                m,
                divides: tm.divisible_by(tn),
                n_terms: tn.len(),
                m_terms: tm.len(),
            }
        })
        .collect())
}

pub fn poly_div_check(k: usize, n: i64, l: i64, budget: Budget) -> Result<bool> {
    Ok(poly_div_grid(k, &[n], &[l], budget)?[0].divides)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    /// Exact integer gcds.
    Proof,
    /// Non-divisibility plus gcds of evaluations at sample points.
    Evidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoprimeReport {
    pub span: i64,
    pub kind: VerdictKind,
    pub pairs_checked: usize,
    pub violations: Vec<(i64, i64)>,
}

impl CoprimeReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.pairs_checked > 0
    }
}

fn pairs(w: &SeqWindow<impl Sized>, span: i64) -> Vec<(i64, i64)> {
    w.indices()
        .flat_map(|i| ((i + 1)..=(i + span).min(w.hi())).map(move |j| (i, j)))
        .collect()
}

/// `gcd(τ_i, τ_j) = 1` for `0 < |i − j| ≤ span`.
pub fn coprime_check_int(w: &SeqWindow<BigInt>, span: i64) -> CoprimeReport {
    let all = pairs(w, span);
    let violations = all
        .iter()
        .copied()
        .filter(|&(i, j)| !w.at(i).gcd(w.at(j)).is_one())
        .collect();
    CoprimeReport {
        span,
        kind: VerdictKind::Proof,
        pairs_checked: all.len(),
        violations,
    }
}

/// Polynomial coprimality evidence for `0 < |i − j| ≤ span`: neither term
/// divides the other (unless one is `±1`) and the gcd of their values over
/// `samples` random integer points is 1.
pub fn coprime_check_poly(
    w: &SeqWindow<SparsePoly>,
    span: i64,
    samples: usize,
    seed: u64,
) -> CoprimeReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars: Vec<Var> = w
        .terms
        .iter()
        .flat_map(|t| t.vars())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let points: Vec<BTreeMap<Var, BigInt>> = (0..samples)
        .map(|_| {
            vars.iter()
                .map(|&v| (v, BigInt::from(rng.gen_range(2..=1_000_000i64))))
                .collect()
        })
        .collect();
    let values: BTreeMap<i64, Vec<BigInt>> = w
        .iter()
        .map(|(i, t)| {
            let v = points
                .iter()
                .map(|p| t.eval_int(p).expect("all variables assigned"))
                .collect();
            (i, v)
        })
        .collect();
    let unit = |t: &SparsePoly| t.as_constant().is_some_and(|c| c.magnitude().is_one());
    let all = pairs(w, span);
    let violations = all
        .iter()
        .copied()
        .filter(|&(i, j)| {
            let (a, b) = (w.at(i), w.at(j));
            if unit(a) || unit(b) {
                return false;
            }
            if a.divisible_by(b) || b.divisible_by(a) {
                return true;
            }
            // A shared factor keeps every sampled gcd above 1.
            values[&i]
                .iter()
                .zip(&values[&j])
                .all(|(x, y)| !x.gcd(y).is_one())
        })
        .collect();
    CoprimeReport {
        span,
        kind: VerdictKind::Evidence,
        pairs_checked: all.len(),
        violations,
    }
}

/// One grid point of a divisibility pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceEntry {
    pub n: i64,
    pub m: i64,
    pub divides: bool,
    pub predicted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub pattern: String,
    pub entries: Vec<EquivalenceEntry>,
    pub violations: Vec<(i64, i64)>,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && !self.entries.is_empty()
    }
}

fn pattern_report(
    pattern: String,
    w: &SeqWindow<SparsePoly>,
    grid: Vec<(i64, i64, bool)>,
) -> EquivalenceReport {
    let entries: Vec<EquivalenceEntry> = grid
        .into_iter()
        .map(|(n, m, predicted)| EquivalenceEntry {
            n,
            m,
            divides: w.at(m).divisible_by(w.at(n)),
            predicted,
        })
        .collect();
    let violations = entries
        .iter()
        .filter(|e| e.divides != e.predicted)
        .map(|e| (e.n, e.m))
        .collect();
    EquivalenceReport {
        pattern,
        entries,
        violations,
    }
}

/// Somos-4 with `β = γ²` and initials `1, γ, γ, 1`, polynomial in `α`. For
/// `n > 4` and `d = 2n − 5`: `τ_n | τ_m ⇔ d | (m − n)` when `n ≡ 1 (mod 3)`,
/// otherwise additionally `(m − n)/d ≢ 1 (mod 3)`. Checked for
/// `|m − n| ≤ 2d`.
pub fn equivalence_pattern_check(
    gamma: i64,
    ns: RangeInclusive<i64>,
    budget: Budget,
) -> Result<EquivalenceReport> {
    if *ns.start() <= 4 {
        return Err(ArithError::InvalidArgument(
            "the pattern needs n > 4".into(),
        ));
    }
    let g = SparsePoly::from_i64(gamma);
    let spec = SomosSpec::new(
        4,
        SparsePoly::var(Var::Alpha),
        g.mul(&g),
        vec![SparsePoly::one(), g.clone(), g, SparsePoly::one()],
    )?;
    let mut grid = Vec::new();
    for n in ns {
        let d = 2 * n - 5;
        for m in (n - 2 * d)..=(n + 2 * d) {
            let j = m - n;
            let predicted = if n.rem_euclid(3) == 1 {
                j % d == 0
            } else {
                j % d == 0 && (j / d).rem_euclid(3) != 1
            };
            grid.push((n, m, predicted));
        }
    }
    let lo = grid.iter().map(|g| g.1).min().unwrap_or(1).min(1);
    let hi = grid.iter().map(|g| g.1).max().unwrap_or(4).max(4);
    let w = extend_with_budget(&spec, lo, hi, budget).map_err(|f| f.error)?;
    Ok(pattern_report(
        format!("somos4 beta=gamma^2 gamma={gamma}"),
        &w,
        grid,
    ))
}

/// Somos-5 with initials `1, b, α, b, 1` (`b` is the variable `x2`): for
/// `n > 5` and `d = 2n − 6`, `τ_n | τ_m ⇔ d | (m − n)` on `|m − n| ≤ 2d`;
/// for `n = 2, 3`, `τ_n | τ_m ⇔ n | m` on `lo..=hi`.
pub fn somos5_pattern_check(
    beta: &SparsePoly,
    ns: RangeInclusive<i64>,
    lo: i64,
    hi: i64,
    budget: Budget,
) -> Result<EquivalenceReport> {
    if *ns.start() <= 5 {
        return Err(ArithError::InvalidArgument(
            "the pattern needs n > 5".into(),
        ));
    }
    let (a, b) = (SparsePoly::var(Var::Alpha), SparsePoly::var(Var::X2));
    let spec = SomosSpec::new(
        5,
        a.clone(),
        beta.clone(),
        vec![SparsePoly::one(), b.clone(), a, b, SparsePoly::one()],
    )?;
    let mut grid = Vec::new();
    for n in ns {
        let d = 2 * n - 6;
        for m in ((n - 2 * d)..=(n + 2 * d)).filter(|m| (lo..=hi).contains(m)) {
            grid.push((n, m, (m - n) % d == 0));
        }
    }
    for n in [2, 3] {
        for m in lo..=hi {
            grid.push((n, m, m % n == 0));
        }
    }
    let w = extend_with_budget(&spec, lo.min(1), hi.max(5), budget).map_err(|f| f.error)?;
    Ok(pattern_report(
        format!("somos5 initials 1,b,alpha,b,1 beta={beta}"),
        &w,
        grid,
    ))
}

/// Indices `n > k` whose divisor set `{m : τ_n | τ_m}` has at least three
/// in-window elements but differs from `{n + j(2n − k − 1)}` there.
pub fn term_ap_violations(w: &SeqWindow<BigInt>, k: usize) -> Vec<i64> {
    let ki = k as i64;
    ((ki + 1)..=w.hi())
        .filter(|&n| {
            let tn = w.at(n);
            if tn.is_zero() || tn.magnitude().is_one() {
                return false;
            }
            let d = 2 * n - ki - 1;
            let occ: Vec<i64> = w
                .iter()
                .filter(|(_, x)| x.is_multiple_of(tn))
                .map(|(i, _)| i)
                .collect();
            let expect: Vec<i64> = w.indices().filter(|m| (m - n) % d == 0).collect();
            occ.len() >= 3 && occ != expect
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::somos::extend;

    #[test]
    fn small_polynomial_divisibility() {
        let b = Budget::index(30);
        assert!(poly_div_check(4, 5, 1, b).unwrap());
        assert!(poly_div_check(4, 5, -1, b).unwrap());
        assert!(poly_div_check(5, 6, 1, b).unwrap());
        assert!(poly_div_check(4, 3, 1, b).is_err());
        let grid = poly_div_grid(4, &[5, 6, 7], &[-2, -1, 1, 2], b).unwrap();
        assert!(grid.iter().all(|c| c.divides));
    }

    #[test]
    fn consecutive_unit_terms_are_coprime() {
        let spec = SomosSpec::unit(4, BigInt::from(1), BigInt::from(1));
        let w = extend(&spec, 1, 60).unwrap();
        let r = coprime_check_int(&w, 4);
        assert!(r.holds());
        assert_eq!(r.kind, VerdictKind::Proof);
        assert!(term_ap_violations(&w, 4).is_empty());
    }

    #[test]
    fn symbolic_coprimality_evidence() {
        let w = extend(&SomosSpec::symbolic_unit(4), 1, 14).unwrap();
        assert!(!w.at(6).divisible_by(w.at(5)) && !w.at(5).divisible_by(w.at(6)));
        let r = coprime_check_poly(&w, 4, 10, 7);
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.kind, VerdictKind::Evidence);
        let w5 = extend(&SomosSpec::symbolic_unit(5), 1, 14).unwrap();
        assert!(coprime_check_poly(&w5, 5, 10, 7).holds());
    }

    #[test]
    fn shared_factor_is_caught() {
        let a = SparsePoly::var(Var::Alpha);
        let f = a.add(&SparsePoly::one());
        let w = SeqWindow {
            lo: 1,
            terms: vec![f.mul(&a), f.mul(&SparsePoly::var(Var::Beta))],
        };
        assert_eq!(coprime_check_poly(&w, 1, 5, 1).violations, vec![(1, 2)]);
    }

    #[test]
    fn gamma_three_pattern() {
        let r = equivalence_pattern_check(3, 5..=9, Budget::index(40)).unwrap();
        assert!(r.holds(), "{:?}", r.violations);
    }

    #[test]
    fn somos5_b_pattern() {
        let r =
            somos5_pattern_check(&SparsePoly::one(), 6..=9, -14, 30, Budget::index(40)).unwrap();
        assert!(r.holds(), "{:?}", r.violations);
    }
}
