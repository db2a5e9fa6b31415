//! Dense fixed-limb kernels for polynomial multiplication and exact division.
//!
//! Monomials inside a bounding box are packed into a mixed-radix index, so a
//! product of monomials is a sum of indices. Coefficients live in flat arrays
//! of `w` little-endian `u64` limbs in two's complement, with `w` chosen from
//! the operand sizes so that no intermediate value can overflow.

use num_bigint::{BigInt, BigUint, Sign};

use super::monomial::{Monomial, NVARS};
use crate::error::{ArithError, Result};

pub(crate) type Term = (Monomial, BigInt);

/// Upper bound on `slots * limbs` for a dense accumulator (64 MiB).
const MAX_DENSE_WORDS: usize = 1 << 23;

/// Largest operand product handled on the stack.
const MAX_PRODUCT_LIMBS: usize = 32;

/// Boxes with more slots per term than this go to the sparse path.
const SPARSITY_LIMIT: usize = 64;

/// Mixed-radix packing of the monomials inside a box.
#[derive(Debug, Clone)]
pub(crate) struct DenseLayout {
    vars: Vec<usize>,
    bounds: Vec<u32>,
    strides: Vec<usize>,
    size: usize,
}

impl DenseLayout {
    /// A layout covering exponents `0..=bounds[v]`, if it is small enough for
    /// a dense accumulator of `limbs` words per slot.
    pub(crate) fn new(bounds: &[u32; NVARS], limbs: usize) -> Option<Self> {
        let mut vars = Vec::new();
        let mut bs = Vec::new();
        let mut strides = Vec::new();
        let mut size: usize = 1;
        for (v, &b) in bounds.iter().enumerate() {
            if b == 0 {
                continue;
            }
            vars.push(v);
            bs.push(b);
            strides.push(size);
            size = size.checked_mul(b as usize + 1)?;
        }
        if size.checked_mul(limbs)? > MAX_DENSE_WORDS {
            return None;
        }
        Some(Self {
            vars,
            bounds: bs,
            strides,
            size,
        })
    }

    pub(crate) fn index(&self, m: &Monomial) -> usize {
        let e = m.exps();
        self.vars
            .iter()
            .zip(self.strides.iter())
            .map(|(&v, &s)| e[v] as usize * s)
            .sum()
    }

    pub(crate) fn monomial(&self, mut idx: usize) -> Monomial {
        let mut exps = [0u32; NVARS];
        for (k, &v) in self.vars.iter().enumerate() {
            let r = self.bounds[k] as usize + 1;
            exps[v] = (idx % r) as u32;
            idx /= r;
        }
        Monomial::from_exps(exps)
    }
}

/// Per-variable maximum exponents.
pub(crate) fn max_exps(terms: &[Term]) -> [u32; NVARS] {
    let mut out = [0u32; NVARS];
    for (m, _) in terms {
        for (o, &e) in out.iter_mut().zip(m.exps().iter()) {
            *o = (*o).max(e);
        }
    }
    out
}

fn max_bits(terms: &[Term]) -> u64 {
    terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
}

fn ceil_log2(n: usize) -> u64 {
    (usize::BITS - n.saturating_sub(1).leading_zeros()) as u64
}

fn limbs_for(bits: u64) -> usize {
    (bits as usize).div_ceil(64).max(1)
}

/// Terms of one sign: dense indices and zero-padded magnitudes.
struct Split {
    idx: Vec<usize>,
    mag: Vec<u64>,
    width: usize,
}

impl Split {
    fn new(width: usize) -> Self {
        Self {
            idx: Vec::new(),
            mag: Vec::new(),
            width,
        }
    }

    fn push(&mut self, idx: usize, digits: &[u64]) {
        debug_assert!(digits.len() <= self.width);
        self.idx.push(idx);
        self.mag.extend_from_slice(digits);
        self.mag.resize(self.idx.len() * self.width, 0);
    }

    /// Positive and negative parts of a term list.
    fn pair(terms: &[Term], layout: &DenseLayout, width: usize) -> (Split, Split) {
        let (mut pos, mut neg) = (Split::new(width), Split::new(width));
        for (m, c) in terms {
            let (sign, digits) = c.to_u64_digits();
            let part = if sign == Sign::Minus {
                &mut neg
            } else {
                &mut pos
            };
            part.push(layout.index(m), &digits);
        }
        (pos, neg)
    }
}

/// `acc[a.idx + b.idx + shift] += |a| * |b|` for all pairs, specialized on
/// the limb widths.
fn accumulate(acc: &mut [u64], w: usize, a: &Split, b: &Split, shift: usize) {
    if a.idx.is_empty() || b.idx.is_empty() {
        return;
    }
    match (a.width, b.width) {
        (1, 1) => acc_kernel::<1, 1>(acc, w, a, b, shift),
        (1, 2) => acc_kernel::<1, 2>(acc, w, a, b, shift),
        (1, 3) => acc_kernel::<1, 3>(acc, w, a, b, shift),
        (1, 4) => acc_kernel::<1, 4>(acc, w, a, b, shift),
        (2, 1) => acc_kernel::<2, 1>(acc, w, a, b, shift),
        (2, 2) => acc_kernel::<2, 2>(acc, w, a, b, shift),
        (2, 3) => acc_kernel::<2, 3>(acc, w, a, b, shift),
        (2, 4) => acc_kernel::<2, 4>(acc, w, a, b, shift),
        (3, 1) => acc_kernel::<3, 1>(acc, w, a, b, shift),
        (3, 2) => acc_kernel::<3, 2>(acc, w, a, b, shift),
        (3, 3) => acc_kernel::<3, 3>(acc, w, a, b, shift),
        (3, 4) => acc_kernel::<3, 4>(acc, w, a, b, shift),
        (4, 1) => acc_kernel::<4, 1>(acc, w, a, b, shift),
        (4, 2) => acc_kernel::<4, 2>(acc, w, a, b, shift),
        (4, 3) => acc_kernel::<4, 3>(acc, w, a, b, shift),
        (4, 4) => acc_kernel::<4, 4>(acc, w, a, b, shift),
        _ => acc_generic(acc, w, a, b, shift),
    }
}

#[inline(always)]
fn add_limbs(slot: &mut [u64], prod: &[u64]) {
    let mut carry = false;
    for (s, &p) in slot.iter_mut().zip(prod) {
        let (s1, c1) = s.overflowing_add(p);
        let (s2, c2) = s1.overflowing_add(carry as u64);
        *s = s2;
        carry = c1 | c2;
    }
    let mut k = prod.len();
    while carry && k < slot.len() {
        let (v, c) = slot[k].overflowing_add(1);
        slot[k] = v;
        carry = c;
        k += 1;
    }
}

fn acc_kernel<const WA: usize, const WB: usize>(
    acc: &mut [u64],
    w: usize,
    a: &Split,
    b: &Split,
    shift: usize,
) {
    debug_assert!(w >= WA + WB);
    for (ai, &ia) in a.mag.chunks_exact(WA).zip(&a.idx) {
        let base = ia + shift;
        for (bj, &jb) in b.mag.chunks_exact(WB).zip(&b.idx) {
            let mut prod = [0u64; 8];
            for x in 0..WA {
                let mut carry: u128 = 0;
                for y in 0..WB {
                    let t = ai[x] as u128 * bj[y] as u128 + prod[x + y] as u128 + carry;
                    prod[x + y] = t as u64;
                    carry = t >> 64;
                }
                prod[x + WB] = carry as u64;
            }
            let off = (base + jb) * w;
            add_limbs(&mut acc[off..off + w], &prod[..WA + WB]);
        }
    }
}

fn acc_generic(acc: &mut [u64], w: usize, a: &Split, b: &Split, shift: usize) {
    let mut prod = vec![0u64; a.width + b.width];
    for (ai, &ia) in a.mag.chunks_exact(a.width).zip(&a.idx) {
        for (bj, &jb) in b.mag.chunks_exact(b.width).zip(&b.idx) {
            mul_mag(ai, bj, &mut prod);
            let off = (ia + jb + shift) * w;
            add_limbs(&mut acc[off..off + w], &prod);
        }
    }
}

#[inline]
fn mul_mag(a: &[u64], b: &[u64], out: &mut [u64]) {
    out.fill(0);
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let mut carry: u128 = 0;
        for (j, &y) in b.iter().enumerate() {
            let t = (x as u128) * (y as u128) + out[i + j] as u128 + carry;
            out[i + j] = t as u64;
            carry = t >> 64;
        }
        out[i + b.len()] = carry as u64;
    }
}

fn sub_limbs(a: &[u64], b: &[u64]) -> (bool, Vec<u64>) {
    let (big, small, neg) = if cmp_limbs(a, b) == std::cmp::Ordering::Less {
        (b, a, true)
    } else {
        (a, b, false)
    };
    let mut out = big.to_vec();
    let mut borrow = false;
    for (o, &s) in out.iter_mut().zip(small) {
        let (v1, b1) = o.overflowing_sub(s);
        let (v2, b2) = v1.overflowing_sub(borrow as u64);
        *o = v2;
        borrow = b1 | b2;
    }
    (neg, out)
}

fn cmp_limbs(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

fn limbs_to_bigint(neg: bool, limbs: &[u64]) -> BigInt {
    let digits: Vec<u32> = limbs
        .iter()
        .flat_map(|&l| [l as u32, (l >> 32) as u32])
        .collect();
    let mag = BigUint::new(digits);
    BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, mag)
}

/// Signed value `pos − neg` of a slot pair.
fn slot_value(pos: &[u64], neg: &[u64]) -> BigInt {
    let (n, mag) = sub_limbs(pos, neg);
    limbs_to_bigint(n, &mag)
}

/// Product of two nonempty term lists; `None` when the box is too large or
/// the coefficients too wide for the dense path.
pub(crate) fn mul_dense(a: &[Term], b: &[Term]) -> Option<Vec<Term>> {
    let (ea, eb) = (max_exps(a), max_exps(b));
    let mut bounds = [0u32; NVARS];
    for v in 0..NVARS {
        bounds[v] = ea[v].checked_add(eb[v])?;
    }
    let (ba, bb) = (max_bits(a), max_bits(b));
    let wa = limbs_for(ba);
    let wb = limbs_for(bb);
    if wa + wb > MAX_PRODUCT_LIMBS {
        return None;
    }
    let w = limbs_for(ba + bb + ceil_log2(a.len().min(b.len())) + 1).max(wa + wb);
    let layout = DenseLayout::new(&bounds, 2 * w)?;
    if layout.size / SPARSITY_LIMIT > a.len() * b.len() {
        return None;
    }

    let (ap, an) = Split::pair(a, &layout, wa);
    let (bp, bn) = Split::pair(b, &layout, wb);
    let mut pos = vec![0u64; layout.size * w];
    let mut neg = vec![0u64; layout.size * w];
    accumulate(&mut pos, w, &ap, &bp, 0);
    accumulate(&mut pos, w, &an, &bn, 0);
    accumulate(&mut neg, w, &ap, &bn, 0);
    accumulate(&mut neg, w, &an, &bp, 0);

    let mut out: Vec<Term> = pos
        .chunks_exact(w)
        .zip(neg.chunks_exact(w))
        .enumerate()
        .filter(|(_, (p, n))| p != n)
        .map(|(idx, (p, n))| (layout.monomial(idx), slot_value(p, n)))
        .collect();
    out.sort_unstable_by(|x, y| y.0.cmp(&x.0));
    Some(out)
}

/// Outcome of a dense division attempt.
pub(crate) enum DenseDiv {
    Done(Result<Vec<Term>>),
    /// The dense path does not apply (box or limb width too large).
    Unsupported,
}

/// Exact division `num / den` by leading-term reduction over a dense
/// remainder; both inputs nonempty and sorted descending.
pub(crate) fn div_dense(num: &[Term], den: &[Term]) -> DenseDiv {
    let bound = max_exps(num);
    let dmax = max_exps(den);
    // Every quotient term t has t + dmax inside num's box.
    let mut qbound = [0u32; NVARS];
    for v in 0..NVARS {
        match bound[v].checked_sub(dmax[v]) {
            Some(b) => qbound[v] = b,
            None => return DenseDiv::Done(Err(ArithError::NotDivisible)),
        }
    }
    let bn = max_bits(num);
    let bd = max_bits(den);
    let mut qbits = bn + 64;
    loop {
        let wq = limbs_for(qbits);
        let wd = limbs_for(bd);
        if wq + wd > MAX_PRODUCT_LIMBS {
            return DenseDiv::Unsupported;
        }
        let w = limbs_for(bn.max(qbits + bd + ceil_log2(den.len())) + 2).max(wq + wd);
        let Some(layout) = DenseLayout::new(&bound, 2 * w) else {
            return DenseDiv::Unsupported;
        };
        let Some(qlayout) = DenseLayout::new(&qbound, 1) else {
            return DenseDiv::Unsupported;
        };
        if layout.size / SPARSITY_LIMIT > num.len() {
            return DenseDiv::Unsupported;
        }
        match div_dense_with(num, den, &layout, &qlayout, w, qbits) {
            Err(Overflow) => qbits *= 2,
            Ok(r) => return DenseDiv::Done(r),
        }
    }
}

struct Overflow;

fn div_dense_with(
    num: &[Term],
    den: &[Term],
    layout: &DenseLayout,
    qlayout: &DenseLayout,
    w: usize,
    qbits: u64,
) -> std::result::Result<Result<Vec<Term>>, Overflow> {
    let (lt, lc) = (&den[0].0, &den[0].1);
    let mut pos = vec![0u64; layout.size * w];
    let mut neg = vec![0u64; layout.size * w];
    for (m, c) in num {
        let (sign, digits) = c.to_u64_digits();
        let off = layout.index(m) * w;
        let acc = if sign == Sign::Minus {
            &mut neg
        } else {
            &mut pos
        };
        acc[off..off + digits.len()].copy_from_slice(&digits);
    }

    let wd = limbs_for(max_bits(den));
    let (dp, dn) = Split::pair(den, layout, wd);
    let lt_idx = layout.index(lt);

    // Candidate quotient monomials in descending order.
    let mut cands: Vec<Monomial> = (0..qlayout.size).map(|i| qlayout.monomial(i)).collect();
    cands.sort_unstable_by(|x, y| y.cmp(x));

    let wq = limbs_for(qbits);
    let mut quotient = Vec::new();
    for t in cands {
        let mi = layout.index(&t.mul(lt));
        let (p, n) = (&pos[mi * w..(mi + 1) * w], &neg[mi * w..(mi + 1) * w]);
        if p == n {
            continue;
        }
        let c = slot_value(p, n);
        let q = match super::Ring::div_exact(&c, lc) {
            Ok(q) => q,
            Err(e) => return Ok(Err(e)),
        };
        if q.bits() > qbits {
            return Err(Overflow);
        }
        let (qsign, qdig) = q.to_u64_digits();
        let mut qs = Split::new(wq);
        qs.push(0, &qdig);
        let base = mi - lt_idx;
        // Subtract q·den: same-sign products go to the negative side.
        if qsign == Sign::Minus {
            accumulate(&mut pos, w, &qs, &dp, base);
            accumulate(&mut neg, w, &qs, &dn, base);
        } else {
            accumulate(&mut neg, w, &qs, &dp, base);
            accumulate(&mut pos, w, &qs, &dn, base);
        }
        quotient.push((t, q));
    }
    if pos
        .chunks_exact(w)
        .zip(neg.chunks_exact(w))
        .any(|(p, n)| p != n)
    {
        return Ok(Err(ArithError::NotDivisible));
    }
    Ok(Ok(quotient))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_slot_difference() {
        for (a, b) in [(5u64, 3u64), (3, 5), (0, 0), (u64::MAX, 1)] {
            let v = slot_value(&[a, 0], &[b, 0]);
            assert_eq!(v, BigInt::from(a) - BigInt::from(b));
        }
    }

    #[test]
    fn limb_product() {
        let a = [u64::MAX, 3];
        let b = [u64::MAX];
        let mut out = [0u64; 3];
        mul_mag(&a, &b, &mut out);
        let big = |x: &[u64]| limbs_to_bigint(false, x);
        assert_eq!(big(&out), big(&a) * big(&b));
    }

    #[test]
    fn layout_round_trip() {
        let mut bounds = [0u32; NVARS];
        bounds[0] = 3;
        bounds[6] = 2;
        let l = DenseLayout::new(&bounds, 1).unwrap();
        for i in 0..12 {
            assert_eq!(l.index(&l.monomial(i)), i);
        }
    }
}
