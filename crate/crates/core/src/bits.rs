//! Word-packed bit vectors.

use std::fmt;

pub(crate) const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// Fixed-length vector over GF(2), packed into 64-bit words (bit `i` lives in
/// word `i / 64` at position `i % 64`). Bits past `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(wi * WORD + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    /// Lexicographic comparison of the supports as sorted index lists, for
    /// vectors of equal weight: the support holding the smallest element of
    /// the symmetric difference comes first.
    pub(crate) fn support_lex_less(&self, other: &BitVector) -> bool {
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let low = diff & diff.wrapping_neg();
                return a & low != 0;
            }
        }
        false
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        write!(f, ")")
    }
}

/// Set operations the subset searches need, implemented for a single word
/// (the common desk-scale case) and for multi-word vectors.
pub(crate) trait Mask: Clone {
    fn empty(len: usize) -> Self;
    fn from_slice(words: &[u64]) -> Self;
    fn insert(&mut self, i: usize);
    fn and(&self, o: &Self) -> Self;
    fn or(&self, o: &Self) -> Self;
    fn xor(&self, o: &Self) -> Self;
    fn and_not(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn count(&self) -> u32;
    fn for_each(&self, f: impl FnMut(usize));
}

impl Mask for u64 {
    #[inline]
    fn empty(len: usize) -> Self {
        debug_assert!(len <= WORD);
        0
    }
    #[inline]
    fn from_slice(words: &[u64]) -> Self {
        debug_assert!(words.len() <= 1);
        words.first().copied().unwrap_or(0)
    }
    #[inline]
    fn insert(&mut self, i: usize) {
        *self |= 1 << i;
    }
    #[inline]
    fn and(&self, o: &Self) -> Self {
        self & o
    }
    #[inline]
    fn or(&self, o: &Self) -> Self {
        self | o
    }
    #[inline]
    fn xor(&self, o: &Self) -> Self {
        self ^ o
    }
    #[inline]
    fn and_not(&self, o: &Self) -> Self {
        self & !o
    }
    #[inline]
    fn is_zero(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn count(&self) -> u32 {
        self.count_ones()
    }
    #[inline]
    fn for_each(&self, mut f: impl FnMut(usize)) {
        let mut w = *self;
        while w != 0 {
            f(w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
}

impl Mask for Vec<u64> {
    fn empty(len: usize) -> Self {
        vec![0; words_for(len)]
    }
    fn from_slice(words: &[u64]) -> Self {
        words.to_vec()
    }
    fn insert(&mut self, i: usize) {
        self[i / WORD] |= 1 << (i % WORD);
    }
    fn and(&self, o: &Self) -> Self {
        self.iter().zip(o).map(|(a, b)| a & b).collect()
    }
    fn or(&self, o: &Self) -> Self {
        self.iter().zip(o).map(|(a, b)| a | b).collect()
    }
    fn xor(&self, o: &Self) -> Self {
        self.iter().zip(o).map(|(a, b)| a ^ b).collect()
    }
    fn and_not(&self, o: &Self) -> Self {
        self.iter().zip(o).map(|(a, b)| a & !b).collect()
    }
    fn is_zero(&self) -> bool {
        self.iter().all(|&w| w == 0)
    }
    fn count(&self) -> u32 {
        self.iter().map(|w| w.count_ones()).sum()
    }
    fn for_each(&self, mut f: impl FnMut(usize)) {
        for (wi, &w) in self.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                f(wi * WORD + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_weight() {
        let mut v = BitVector::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.weight(), 3);
        assert_eq!(v.ones(), vec![0, 64, 129]);
        v.set(64, false);
        assert!(!v.get(64));
    }

    #[test]
    fn lex_order_of_supports() {
        let a = BitVector::from_indices(8, [0, 1, 5]);
        let b = BitVector::from_indices(8, [0, 2, 3]);
        assert!(a.support_lex_less(&b));
        assert!(!b.support_lex_less(&a));
        assert!(!a.support_lex_less(&a));
    }

    #[test]
    fn wide_mask_matches_word_mask() {
        let a: u64 = 0b1011_0110;
        let b: u64 = 0b0110_0011;
        let (wa, wb) = (vec![a], vec![b]);
        assert_eq!(wa.and_not(&wb)[0], a.and_not(&b));
        assert_eq!(wa.xor(&wb)[0], a.xor(&b));
        let mut seen = Vec::new();
        wa.for_each(|i| seen.push(i));
        let mut seen_word = Vec::new();
        a.for_each(|i| seen_word.push(i));
        assert_eq!(seen, seen_word);
    }
}
