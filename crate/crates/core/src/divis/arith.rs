use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ArithError, Result};
use crate::somos::SeqWindow;

fn divides(a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() {
        b.is_zero()
    } else {
        b.is_multiple_of(a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithDivReport {
    pub pairs_checked: usize,
    /// `d(n) | (m − n)` but `f_n ∤ f_m`.
    pub violations: Vec<(i64, i64)>,
    /// `f_n | f_m` but `d(n) ∤ (m − n)`; informational.
    pub converse_violations: Vec<(i64, i64)>,
}

impl ArithDivReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `d(n) | (m − n) ⟹ f_n | f_m` over all in-window pairs; `d(n) = None`
/// stands for `∞`, which divides only 0.
pub fn arith_div_check(
    terms: &SeqWindow<BigInt>,
    d: impl Fn(i64) -> Option<u64>,
) -> ArithDivReport {
    let mut report = ArithDivReport {
        pairs_checked: 0,
        violations: Vec::new(),
        converse_violations: Vec::new(),
    };
    for (n, f_n) in terms.iter() {
        let dn = d(n);
        for (m, f_m) in terms.iter() {
            let step = match dn {
                Some(dn) => (m - n).rem_euclid(dn as i64) == 0,
                None => m == n,
            };
            let div = divides(f_n, f_m);
            if step {
                report.pairs_checked += 1;
                if !div {
                    report.violations.push((n, m));
                }
            } else if div {
                report.converse_violations.push((n, m));
            }
        }
    }
    report
}

/// `12, 1, 6, 4, 6, 1` repeating, with `f_0 = 12`.
pub fn periodic_example(lo: i64, hi: i64) -> SeqWindow<BigInt> {
    let cycle = [12, 1, 6, 4, 6, 1];
    SeqWindow {
        lo,
        terms: (lo..=hi)
            .map(|n| BigInt::from(cycle[n.rem_euclid(6) as usize]))
            .collect(),
    }
}

/// Common difference function of [`periodic_example`].
pub fn periodic_example_d(n: i64) -> Option<u64> {
    Some([6, 1, 2, 3, 2, 1][n.rem_euclid(6) as usize])
}

/// `d(n) = |2n − k − 1|`, with `d = ∞` where it vanishes.
pub fn somos_d(k: usize) -> impl Fn(i64) -> Option<u64> {
    move |n| {
        let d = (2 * n - k as i64 - 1).unsigned_abs();
        (d != 0).then_some(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureEntry {
    pub m: u32,
    #[serde(with = "crate::serde_dec")]
    pub power: BigInt,
    /// `n + ((q^m − 1)/2 + k·q^m)·d`, absent when not an integer.
    pub predicted_l: Option<i64>,
    /// `q^{m+1} | τ_l` at the predicted index, absent when outside the window.
    pub observed: Option<bool>,
    /// Every window index where `q^{m+1}` divides.
    pub occurrences: Vec<i64>,
}

/// Raw data for the predicted indices; asserts nothing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub k: usize,
    pub n: i64,
    #[serde(with = "crate::serde_dec")]
    pub q: BigInt,
    pub d: i64,
    pub lo: i64,
    pub hi: i64,
    pub entries: Vec<ConjectureEntry>,
    /// Occurrences of `q^{m+1}` lie among those of `q^m` for every `m`.
    pub nested: bool,
}

/// `q = τ_n`, or `τ_n/2` when `(k+1) | n`; entries for `m = 0..=m_max`.
pub fn conjecture_check(
    k: usize,
    n: i64,
    m_max: u32,
    window: &SeqWindow<BigInt>,
    index_limit: i64,
) -> Result<ConjectureReport> {
    let tn = window
        .get(n)
        .ok_or_else(|| ArithError::InvalidArgument(format!("τ_{n} is outside the window")))?;
    let q = if n.rem_euclid(k as i64 + 1) == 0 {
        tn / 2
    } else {
        tn.clone()
    };
    if q <= BigInt::one() {
        return Err(ArithError::InvalidArgument(format!(
            "q = {q} must exceed 1"
        )));
    }
    let d = 2 * n - k as i64 - 1;
    let mut entries = Vec::new();
    for m in 0..=m_max {
        let qm: BigInt = Pow::pow(&q, m);
        let (half, rem) = (&qm - BigInt::one()).div_rem(&BigInt::from(2));
        let predicted = rem.is_zero().then(|| n + (half + k * &qm) * d);
        let predicted_l = match predicted {
            Some(l) => match l.to_i64().filter(|l| l.abs() <= index_limit) {
                Some(l) => Some(l),
                None => {
                    return Err(ArithError::QTooLarge {
                        index: l.to_string(),
                        limit: index_limit,
                    })
                }
            },
            None => None,
        };
        let power = &qm * &q;
        let occurrences = window
            .iter()
            .filter(|(_, x)| divides(&power, x))
            .map(|(i, _)| i)
            .collect();
        let observed = predicted_l
            .and_then(|l| window.get(l))
            .map(|x| divides(&power, x));
        entries.push(ConjectureEntry {
            m,
            power,
            predicted_l,
            observed,
            occurrences,
        });
    }
    let nested = entries.windows(2).all(|e| {
        e[1].occurrences
            .iter()
            .all(|i| e[0].occurrences.contains(i))
    });
    Ok(ConjectureReport {
        k,
        n,
        q,
        d,
        lo: window.lo,
        hi: window.hi(),
        entries,
        nested,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CavachiEntry {
    pub n: u64,
    pub m: u32,
    #[serde(with = "crate::serde_dec")]
    pub f_n: BigInt,
    /// `n·f_n^m`.
    pub index: u64,
    /// `f_n^{m+1} | f_index`.
    pub divides: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CavachiExceptional {
    pub m: u32,
    /// `3·2^m`.
    pub index: u64,
    /// `2^{m+2} | f_index`.
    pub divides: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CavachiReport {
    pub entries: Vec<CavachiEntry>,
    pub exceptional: Vec<CavachiExceptional>,
}

impl CavachiReport {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(|e| e.divides) && self.exceptional.iter().all(|e| e.divides)
    }
}

/// `(f_n, f_{n+1})` by doubling.
fn fib_pair(n: u64) -> (BigInt, BigInt) {
    if n == 0 {
        return (BigInt::zero(), BigInt::one());
    }
    let (a, b) = fib_pair(n / 2);
    let c = &a * (&b * 2 - &a);
    let d = &a * &a + &b * &b;
    if n.is_multiple_of(2) {
        (c, d)
    } else {
        let e = &c + &d;
        (d, e)
    }
}

/// Fibonacci number `f_n` with `f_1 = f_2 = 1`.
pub fn fibonacci(n: u64) -> BigInt {
    fib_pair(n).0
}

pub fn cavachi_check(
    ns: impl IntoIterator<Item = u64>,
    ms: impl IntoIterator<Item = u32> + Clone,
    exceptional_ms: impl IntoIterator<Item = u32>,
    index_limit: u64,
) -> Result<CavachiReport> {
    let over = |i: &BigInt| -> Result<u64> {
        i.to_u64().filter(|&i| i <= index_limit).ok_or_else(|| {
            ArithError::BudgetExceeded(format!("Fibonacci index {i} exceeds {index_limit}"))
        })
    };
    let mut entries = Vec::new();
    for n in ns {
        let f_n = fibonacci(n);
        for m in ms.clone() {
            let index = over(&(BigInt::from(n) * Pow::pow(&f_n, m)))?;
            let power: BigInt = Pow::pow(&f_n, m + 1);
            entries.push(CavachiEntry {
                n,
                m,
                f_n: f_n.clone(),
                index,
                divides: divides(&power, &fibonacci(index)),
            });
        }
    }
    let mut exceptional = Vec::new();
    for m in exceptional_ms {
        let index = over(&(BigInt::from(3u8) << m as usize))?;
        let power = BigInt::one() << (m as usize + 2);
        exceptional.push(CavachiExceptional {
            m,
            index,
            divides: divides(&power, &fibonacci(index)),
        });
    }
    Ok(CavachiReport {
        entries,
        exceptional,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::somos::{extend, SomosSpec};

    #[test]
    fn fibonacci_values() {
        let first: Vec<BigInt> = (0..=10).map(fibonacci).collect();
        assert_eq!(
            first,
            [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55].map(BigInt::from)
        );
        assert_eq!(fibonacci(25), BigInt::from(75025));
    }

    #[test]
    fn periodic_sequence_is_arithmetic_divisibility() {
        let r = arith_div_check(&periodic_example(-30, 30), periodic_example_d);
        assert!(r.holds());
        assert!(r.converse_violations.is_empty());
        let ones = SeqWindow {
            lo: 1,
            terms: vec![BigInt::one(); 20],
        };
        assert!(arith_div_check(&ones, |_| Some(1)).holds());
    }

    #[test]
    fn unit_somos4_window() {
        let w = extend(
            &SomosSpec::unit(4, BigInt::from(1), BigInt::from(1)),
            -40,
            60,
        )
        .unwrap();
        assert!(arith_div_check(&w, somos_d(4)).holds());
    }

    #[test]
    fn conjecture_indices() {
        let w = extend(
            &SomosSpec::unit(4, BigInt::from(1), BigInt::from(1)),
            1,
            200,
        )
        .unwrap();
        let r = conjecture_check(4, 6, 1, &w, 1000).unwrap();
        assert_eq!(r.q, BigInt::from(3));
        assert_eq!(r.d, 7);
        assert_eq!(r.entries[0].predicted_l, Some(34));
        assert_eq!(r.entries[1].predicted_l, Some(97));
        assert!(r.nested);
        assert_eq!(r.entries[0].occurrences[..3], [6, 13, 20]);
        assert!(conjecture_check(4, 5, 1, &w, 1000).is_err());
        assert!(matches!(
            conjecture_check(4, 6, 1, &w, 50),
            Err(ArithError::QTooLarge { .. })
        ));
    }

    #[test]
    fn cavachi_facts() {
        let r = cavachi_check(1..=9, [1, 2], 1..=6, 20_000).unwrap();
        assert!(r.holds());
        let e = r.entries.iter().find(|e| e.n == 5 && e.m == 1).unwrap();
        assert_eq!(e.index, 25);
        assert_eq!(r.exceptional[0].index, 6);
        assert!(cavachi_check([9], [3], [], 1000).is_err());
    }
}
