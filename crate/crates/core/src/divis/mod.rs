//! Valuations, prime-power gap structure and divisibility checks.

mod arith;
mod closure;
mod polydiv;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{ArithError, Result};
use crate::exactring::Rat;
use crate::somos::SeqWindow;

pub use arith::{
    arith_div_check, cavachi_check, conjecture_check, fibonacci, periodic_example,
    periodic_example_d, somos_d, ArithDivReport, CavachiEntry, CavachiExceptional, CavachiReport,
    ConjectureEntry, ConjectureReport,
};
pub use closure::{closure_oracle, ClosureResult};
pub use polydiv::{
    coprime_check_int, coprime_check_poly, equivalence_pattern_check, poly_div_check,
    poly_div_grid, somos5_pattern_check, term_ap_violations, CoprimeReport, EquivalenceEntry,
    EquivalenceReport, PolyDivCheck, VerdictKind,
};

/// Trial-division primality, enough for the primes scanned here.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    (2..)
        .take_while(|d| d * d <= p)
        .all(|d| !p.is_multiple_of(d))
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(ArithError::InvalidArgument(format!("{p} is not prime")))
    }
}

/// Largest `e` with `p^e | x`.
pub fn valuation(x: &BigInt, p: u64) -> Result<u32> {
    check_prime(p)?;
    if x.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    Ok(raw_valuation(x, &BigInt::from(p)))
}

/// `v_p(num) − v_p(den)`.
pub fn valuation_rat(x: &Rat, p: u64) -> Result<i64> {
    check_prime(p)?;
    if x.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let pb = BigInt::from(p);
    Ok(raw_valuation(x.numer(), &pb) as i64 - raw_valuation(x.denom(), &pb) as i64)
}

fn raw_valuation(x: &BigInt, p: &BigInt) -> u32 {
    let mut e = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        y = q;
        e += 1;
    }
}

/// Sequence values with a `p`-adic valuation; `None` for zero.
pub trait Valued {
    fn valuation_at(&self, p: u64) -> Option<i64>;
}

impl Valued for BigInt {
    fn valuation_at(&self, p: u64) -> Option<i64> {
        (!self.is_zero()).then(|| raw_valuation(self, &BigInt::from(p)) as i64)
    }
}

impl Valued for Rat {
    fn valuation_at(&self, p: u64) -> Option<i64> {
        valuation_rat(self, p).ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ApVerdict {
    /// At least three occurrences forming `{first + j·gap} ∩ window`.
    Ap,
    NotAp,
    /// Fewer than three occurrences.
    Inconclusive,
}

/// Occurrences of `p^r` in one window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub p: u64,
    pub r: u32,
    pub lo: i64,
    pub hi: i64,
    pub occurrences: Vec<i64>,
    pub verdict: ApVerdict,
    pub is_ap: bool,
    pub first: Option<i64>,
    /// `N_r`; with exactly two occurrences it is recorded but unverified.
    pub gap: Option<i64>,
}

impl GapReport {
    fn new(p: u64, r: u32, lo: i64, hi: i64, occurrences: Vec<i64>) -> Self {
        let diffs: Vec<i64> = occurrences.windows(2).map(|w| w[1] - w[0]).collect();
        let even = diffs.windows(2).all(|w| w[0] == w[1]);
        let gap = match diffs.first() {
            Some(&g) if even => Some(g),
            _ => None,
        };
        let verdict = match (occurrences.len(), gap) {
            (0..=2, _) => ApVerdict::Inconclusive,
            (_, None) => ApVerdict::NotAp,
            (_, Some(g)) => {
                let (first, last) = (occurrences[0], occurrences[occurrences.len() - 1]);
                if first - g < lo && last + g > hi {
                    ApVerdict::Ap
                } else {
                    ApVerdict::NotAp
                }
            }
        };
        Self {
            p,
            r,
            lo,
            hi,
            first: occurrences.first().copied(),
            is_ap: verdict == ApVerdict::Ap,
            verdict,
            gap,
            occurrences,
        }
    }

    /// `N_r`, when verified.
    pub fn verified_gap(&self) -> Option<i64> {
        if self.is_ap {
            self.gap
        } else {
            None
        }
    }
}

/// The two alternatives of the dichotomy for powers of one prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    RegularAllPowers,
    ConstantValuation,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    /// `None` when the window cannot decide.
    pub holds: Option<bool>,
    pub detail: String,
}

impl Observation {
    fn new(holds: Option<bool>, detail: impl Into<String>) -> Self {
        Self {
            holds,
            detail: detail.into(),
        }
    }
}

/// Robinson's four observations for one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observations {
    /// Multiples of `p` are equally spaced.
    pub equally_spaced: Observation,
    /// `N_1 ≤ p + 1 + ⌈2√p⌉`.
    pub gap_bound: Observation,
    /// `p²` occurs and `N_2 = p·N_1`.
    pub square_gap: Observation,
    /// `N_{i+l} = p^l·N_i` above the smallest occurring power `p^i`.
    pub power_gaps: Observation,
}

/// Gap structure of all powers `p^1..p^r_max` in one window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapScan {
    pub p: u64,
    pub lo: i64,
    pub hi: i64,
    pub reports: Vec<GapReport>,
    /// `v_p` at every occurrence of `p`; `None` marks a zero term.
    pub valuation_profile: BTreeMap<i64, Option<i64>>,
    pub classification: Classification,
    /// Smallest `r` with `N_{s+1} = p·N_s` for every scanned `s ≥ r`.
    pub w: Option<u32>,
    pub observations: Observations,
}

impl GapScan {
    pub fn report(&self, r: u32) -> Option<&GapReport> {
        self.reports.get((r as usize).checked_sub(1)?)
    }

    pub fn gap(&self, r: u32) -> Option<i64> {
        self.report(r)?.verified_gap()
    }
}

/// `⌈2√p⌉`.
pub(crate) fn two_sqrt_ceil(p: u64) -> u64 {
    let s = (4 * p).sqrt();
    if s * s == 4 * p {
        s
    } else {
        s + 1
    }
}

pub fn gap_scan<T: Valued>(window: &SeqWindow<T>, p: u64, r_max: u32) -> Result<GapScan> {
    check_prime(p)?;
    let vals: Vec<(i64, Option<i64>)> =
        window.iter().map(|(i, x)| (i, x.valuation_at(p))).collect();
    let (lo, hi) = (window.lo, window.hi());
    let reports: Vec<GapReport> = (1..=r_max)
        .map(|r| {
            let occ = vals
                .iter()
                .filter(|(_, v)| v.is_none_or(|v| v >= r as i64))
                .map(|(i, _)| *i)
                .collect();
            GapReport::new(p, r, lo, hi, occ)
        })
        .collect();
    let valuation_profile: BTreeMap<i64, Option<i64>> = vals
        .iter()
        .filter(|(_, v)| v.is_none_or(|v| v >= 1))
        .cloned()
        .collect();
    let exact: Vec<i64> = valuation_profile.values().flatten().copied().collect();

    let enough = reports.first().is_some_and(|r| r.occurrences.len() >= 3);
    let classification = if !enough {
        Classification::Inconclusive
    } else if exact.windows(2).all(|w| w[0] == w[1]) {
        Classification::ConstantValuation
    } else if reports
        .iter()
        .filter(|r| r.occurrences.len() >= 3)
        .all(|r| r.is_ap)
    {
        Classification::RegularAllPowers
    } else {
        Classification::Inconclusive
    };

    let gaps: Vec<Option<i64>> = reports.iter().map(GapReport::verified_gap).collect();
    let pi = p as i64;
    let known = gaps.iter().take_while(|g| g.is_some()).count();
    let w = (1..known)
        .find(|&r| (r..known).all(|s| gaps[s] == gaps[s - 1].map(|g| g * pi)))
        .map(|r| r as u32);

    let observations = observe(p, &reports, &gaps, &exact);
    Ok(GapScan {
        p,
        lo,
        hi,
        reports,
        valuation_profile,
        classification,
        w,
        observations,
    })
}

fn observe(p: u64, reports: &[GapReport], gaps: &[Option<i64>], exact: &[i64]) -> Observations {
    let pi = p as i64;
    let first = reports.first();
    let equally_spaced = match first.map(|r| r.verdict) {
        Some(ApVerdict::Ap) => Observation::new(Some(true), "multiples of p form an AP"),
        Some(ApVerdict::NotAp) => {
            Observation::new(Some(false), "multiples of p are not equally spaced")
        }
        _ => Observation::new(None, "fewer than three multiples of p in the window"),
    };
    let bound = p + 1 + two_sqrt_ceil(p);
    let gap_bound = match gaps.first().copied().flatten() {
        Some(n1) => Observation::new(
            Some(n1 as u64 <= bound),
            format!("N_1 = {n1}, bound {bound}"),
        ),
        None => Observation::new(None, "N_1 unknown"),
    };
    let occurs = |r: usize| {
        reports
            .get(r - 1)
            .is_some_and(|x| !x.occurrences.is_empty())
    };
    let square_gap = match (
        gaps.first().copied().flatten(),
        gaps.get(1).copied().flatten(),
    ) {
        (Some(n1), Some(n2)) => {
            Observation::new(Some(n2 == pi * n1), format!("N_1 = {n1}, N_2 = {n2}"))
        }
        _ if reports.len() >= 2
            && occurs(1)
            && !occurs(2)
            && first.is_some_and(|r| r.occurrences.len() >= 3) =>
        {
            Observation::new(Some(false), "p occurs but p^2 does not occur in the window")
        }
        _ => Observation::new(None, "N_1 or N_2 unknown"),
    };
    let power_gaps = match exact.iter().min() {
        Some(&i) if i >= 1 => {
            let i = i as usize;
            match gaps.get(i - 1).copied().flatten() {
                Some(ni) => {
                    let pairs: Vec<(usize, bool)> = (i + 1..=gaps.len())
                        .filter_map(|r| {
                            gaps[r - 1].map(|nr| (r, nr == ni * pi.pow((r - i) as u32)))
                        })
                        .collect();
                    if pairs.is_empty() {
                        Observation::new(None, format!("smallest power p^{i}; no higher gap known"))
                    } else {
                        let ok = pairs.iter().all(|&(_, b)| b);
                        let rs: Vec<String> = pairs.iter().map(|(r, _)| r.to_string()).collect();
                        Observation::new(
                            Some(ok),
                            format!(
                                "smallest power p^{i}, N_{i} = {ni}, compared r = {}",
                                rs.join(",")
                            ),
                        )
                    }
                }
                None => Observation::new(None, format!("smallest power p^{i}; N_{i} unknown")),
            }
        }
        _ => Observation::new(None, "p does not occur"),
    };
    Observations {
        equally_spaced,
        gap_bound,
        square_gap,
        power_gaps,
    }
}

/// Gap scans for several primes in one window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobinsonReport {
    pub lo: i64,
    pub hi: i64,
    pub r_max: u32,
    pub rows: Vec<GapScan>,
}

pub fn robinson_report<T: Valued>(
    window: &SeqWindow<T>,
    primes: &[u64],
    r_max: u32,
) -> Result<RobinsonReport> {
    let rows = primes
        .iter()
        .map(|&p| gap_scan(window, p, r_max))
        .collect::<Result<Vec<_>>>()?;
    Ok(RobinsonReport {
        lo: window.lo,
        hi: window.hi(),
        r_max,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::somos::{extend, SomosSpec};

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn somos4(alpha: i64, beta: i64, init: [i64; 4], lo: i64, hi: i64) -> SeqWindow<BigInt> {
        let spec = SomosSpec::new(4, int(alpha), int(beta), init.map(int).to_vec()).unwrap();
        extend(&spec, lo, hi).unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&int(314), 2), Ok(1));
        assert_eq!(valuation(&int(8209), 3), Ok(0));
        assert_eq!(valuation(&int(7i64.pow(5)), 7), Ok(5));
        assert_eq!(valuation(&int(0), 3), Err(ArithError::ZeroInput));
        assert!(valuation(&int(4), 4).is_err());
        let x = Rat::new(int(50), int(9));
        assert_eq!(valuation_rat(&x, 3), Ok(-2));
        assert_eq!(valuation_rat(&x, 5), Ok(2));
    }

    #[test]
    fn two_in_unit_somos4() {
        let w = somos4(1, 1, [1, 1, 1, 1], -50, 120);
        let s = gap_scan(&w, 2, 2).unwrap();
        let r1 = s.report(1).unwrap();
        assert!(r1.is_ap);
        assert_eq!(r1.gap, Some(5));
        assert!(r1.occurrences.iter().all(|n| n % 5 == 0));
        assert!(s.report(2).unwrap().occurrences.is_empty());
        assert_eq!(s.classification, Classification::ConstantValuation);
        assert_eq!(s.observations.square_gap.holds, Some(false));
    }

    #[test]
    fn three_in_unit_somos4() {
        let w = somos4(1, 1, [1, 1, 1, 1], -20, 200);
        let s = gap_scan(&w, 3, 3).unwrap();
        assert_eq!(s.gap(1), Some(7));
        assert_eq!(s.gap(2), Some(21));
        assert_eq!(s.w, Some(1));
        assert_eq!(s.classification, Classification::RegularAllPowers);
        assert_eq!(s.observations.gap_bound.holds, Some(true));
        assert_eq!(s.observations.square_gap.holds, Some(true));
    }

    #[test]
    fn alpha4_beta9_powers_of_five() {
        let w = somos4(4, 9, [1, 3, 3, 1], 1, 320);
        let s = gap_scan(&w, 5, 5).unwrap();
        let n: Vec<Option<i64>> = (1..=4).map(|r| s.gap(r)).collect();
        assert_eq!(n, vec![Some(7), Some(7), Some(7), Some(35)]);
        assert_eq!(s.w, Some(3));
        assert_eq!(s.observations.power_gaps.holds, Some(true));
        let three = gap_scan(&w, 3, 2).unwrap();
        assert!(three.valuation_profile.values().all(|v| *v == Some(1)));
        assert!(three
            .report(1)
            .unwrap()
            .occurrences
            .iter()
            .all(|m| m.rem_euclid(3) != 1));
        assert!(!three.report(1).unwrap().is_ap);
    }

    #[test]
    fn sevens_in_rational_window() {
        let spec = SomosSpec::new(4, int(2), int(5), [1, 3, 2, 5].map(int).to_vec())
            .unwrap()
            .to_rat();
        let w = extend(&spec, 1, 200).unwrap();
        let s = gap_scan(&w, 7, 3).unwrap();
        assert_eq!(s.gap(1), Some(10));
        assert_eq!(s.gap(2), Some(10));
        assert!(s.report(3).unwrap().occurrences.is_empty());
        assert!(s.valuation_profile.values().all(|v| *v == Some(2)));
        assert_eq!(s.classification, Classification::ConstantValuation);
    }

    #[test]
    fn two_point_sets_are_inconclusive() {
        let w = SeqWindow {
            lo: 1,
            terms: [1, 3, 1, 3, 1].map(int).to_vec(),
        };
        let s = gap_scan(&w, 3, 1).unwrap();
        assert_eq!(s.report(1).unwrap().verdict, ApVerdict::Inconclusive);
        assert_eq!(s.report(1).unwrap().gap, Some(2));
        assert_eq!(s.classification, Classification::Inconclusive);
    }
}
