use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// Closure of a seed under `(s, t) ↦ 2s − t`, restricted to a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureResult {
    pub seed: Vec<i64>,
    pub lo: i64,
    pub hi: i64,
    pub closure: Vec<i64>,
    /// At least two elements forming `{c + j·d} ∩ [lo, hi]`.
    pub is_ap: bool,
    pub difference: Option<i64>,
    /// gcd of the seed's pairwise differences, `None` for a single point.
    pub seed_gcd: Option<i64>,
}

impl ClosureResult {
    /// Fewer than two elements, or an AP with difference the seed gcd.
    pub fn satisfies_lemma(&self) -> bool {
        self.closure.len() < 2 || (self.is_ap && self.difference == self.seed_gcd)
    }
}

/// Bitset over `[0, len)`.
#[derive(Clone, PartialEq)]
struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    fn reversed(&self) -> Self {
        let mut r = Self::new(self.len);
        for i in self.ones() {
            r.set(self.len - 1 - i);
        }
        r
    }

    /// `self |= other << shift`, dropping bits outside `[0, len)`.
    fn or_shifted(&mut self, other: &Self, shift: i64) {
        let n = self.words.len() as i64;
        let (ws, bs) = (shift.div_euclid(64), shift.rem_euclid(64) as u32);
        for j in 0..n {
            // Bits landing in word j come from words j − ws and j − ws − 1.
            let src = j - ws;
            let hi = if (0..n).contains(&src) {
                other.words[src as usize]
            } else {
                0
            };
            let lo = if (0..n).contains(&(src - 1)) {
                other.words[(src - 1) as usize]
            } else {
                0
            };
            let w = if bs == 0 {
                hi
            } else {
                hi << bs | lo >> (64 - bs)
            };
            self.words[j as usize] |= w;
        }
        let tail = self.len % 64;
        if tail != 0 {
            *self.words.last_mut().unwrap() &= (1u64 << tail) - 1;
        }
    }
}

/// Fixed point of `S ← S ∪ {2s − t : s, t ∈ S} ∩ [lo, hi]`.
///
/// Only elements inside the window take part in reflections.
pub fn closure_oracle(seed: &[i64], lo: i64, hi: i64) -> ClosureResult {
    let len = (hi - lo + 1).max(0) as usize;
    let mut set = Bits::new(len);
    for &s in seed {
        if (lo..=hi).contains(&s) {
            set.set((s - lo) as usize);
        }
    }
    loop {
        let rev = set.reversed();
        let mut next = set.clone();
        // 2s − t for t at reversed position j lands at j + 2i_s − (len − 1).
        for i in set.ones() {
            next.or_shifted(&rev, 2 * i as i64 - (len as i64 - 1));
        }
        if next == set {
            break;
        }
        set = next;
    }
    let closure: Vec<i64> = set.ones().map(|i| lo + i as i64).collect();
    let diffs: Vec<i64> = closure.windows(2).map(|w| w[1] - w[0]).collect();
    let difference = diffs
        .first()
        .copied()
        .filter(|d| diffs.iter().all(|x| x == d));
    let is_ap =
        difference.is_some_and(|d| closure[0] - d < lo && closure[closure.len() - 1] + d > hi);
    let seed_gcd = seed
        .iter()
        .map(|s| s - seed[0])
        .fold(0i64, |g, x| g.gcd(&x));
    let mut sorted = seed.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    ClosureResult {
        seed: sorted,
        lo,
        hi,
        closure,
        is_ap,
        difference,
        seed_gcd: (seed_gcd != 0).then_some(seed_gcd),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Pairwise fixed point, kept as a reference for the bitset version.
    fn naive(seed: &[i64], lo: i64, hi: i64) -> Vec<i64> {
        let mut s: std::collections::BTreeSet<i64> = seed
            .iter()
            .copied()
            .filter(|x| (lo..=hi).contains(x))
            .collect();
        loop {
            let v: Vec<i64> = s.iter().copied().collect();
            let before = s.len();
            for &a in &v {
                for &b in &v {
                    let c = 2 * a - b;
                    if (lo..=hi).contains(&c) {
                        s.insert(c);
                    }
                }
            }
            if s.len() == before {
                return s.into_iter().collect();
            }
        }
    }

    #[test]
    fn small_examples() {
        let one = closure_oracle(&[7], -10, 10);
        assert_eq!(one.closure, vec![7]);
        assert!(one.satisfies_lemma());
        let r = closure_oracle(&[0, 3], -30, 30);
        assert_eq!(
            r.closure,
            (-30..=30).filter(|x| x % 3 == 0).collect::<Vec<_>>()
        );
        assert_eq!(r.difference, Some(3));
        let r = closure_oracle(&[2, 7], -40, 40);
        assert_eq!(
            r.closure,
            (-40..=40)
                .filter(|x: &i64| x.rem_euclid(5) == 2)
                .collect::<Vec<_>>()
        );
        assert!(r.is_ap && r.satisfies_lemma());
    }

    #[test]
    fn bitset_matches_pairwise_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.gen_range(1..=4);
            let seed: Vec<i64> = (0..n).map(|_| rng.gen_range(-20..=20)).collect();
            let r = closure_oracle(&seed, -60, 60);
            assert_eq!(r.closure, naive(&seed, -60, 60), "{seed:?}");
            assert!(r.satisfies_lemma(), "{seed:?}");
        }
    }

    #[test]
    fn word_boundary_shifts() {
        let mut a = Bits::new(130);
        a.set(0);
        a.set(63);
        a.set(64);
        let mut b = Bits::new(130);
        b.or_shifted(&a, 65);
        assert_eq!(b.ones().collect::<Vec<_>>(), vec![65, 128, 129]);
        let mut c = Bits::new(130);
        c.or_shifted(&a, -63);
        assert_eq!(c.ones().collect::<Vec<_>>(), vec![0, 1]);
    }
}
