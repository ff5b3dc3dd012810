//! Fixed-width bit sets and square bit matrices.
//!
//! Subgroups are stored as bit sets over element indices, and order relations
//! as row-major bit matrices, so containment and conjugation run on whole
//! words at a time.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

const WORD_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitSet {
    nbits: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(nbits: usize) -> Self {
        BitSet {
            nbits,
            words: vec![0; nbits.div_ceil(WORD_BITS)],
        }
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(nbits: usize, iter: I) -> Self {
        let mut s = Self::new(nbits);
        for i in iter {
            s.insert(i);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.nbits
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.nbits);
        self.words[i / WORD_BITS] |= 1u64 << (i % WORD_BITS);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / WORD_BITS] &= !(1u64 << (i % WORD_BITS));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.nbits);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.nbits, other.nbits);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet {
            nbits: self.nbits,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

// Ordered by the membership bit-string read from index 0: at the first index
// where the sets differ, the one missing it comes first. Canonical subgroup
// order sorts by (cardinality, this).
impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            if a != b {
                let diff = (a ^ b).trailing_zeros();
                return if a >> diff & 1 == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dense square boolean matrix, one bit per entry, rows padded to word width.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BitMatrix {
    n: usize,
    row_words: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let row_words = n.div_ceil(WORD_BITS);
        BitMatrix {
            n,
            row_words,
            words: vec![0; n * row_words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n);
        for i in 0..n {
            m.set(i, i);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        debug_assert!(i < self.n && j < self.n);
        self.words[i * self.row_words + j / WORD_BITS] |= 1u64 << (j % WORD_BITS);
    }

    #[inline]
    pub fn clear(&mut self, i: usize, j: usize) {
        self.words[i * self.row_words + j / WORD_BITS] &= !(1u64 << (j % WORD_BITS));
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        self.words[i * self.row_words + j / WORD_BITS] >> (j % WORD_BITS) & 1 != 0
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.words[i * self.row_words..(i + 1) * self.row_words]
    }

    /// `row(i) |= row(j)`; returns true if row i changed.
    pub fn or_row_into(&mut self, j: usize, i: usize) -> bool {
        let mut changed = false;
        let (ri, rj) = (i * self.row_words, j * self.row_words);
        for k in 0..self.row_words {
            let old = self.words[ri + k];
            let new = old | self.words[rj + k];
            if new != old {
                self.words[ri + k] = new;
                changed = true;
            }
        }
        changed
    }

    pub fn union_with(&mut self, other: &BitMatrix) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &BitMatrix) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Transitive closure in place (Warshall on bit rows).
    pub fn transitive_close(&mut self) {
        for j in 0..self.n {
            for i in 0..self.n {
                if i != j && self.get(i, j) {
                    self.or_row_into(j, i);
                }
            }
        }
    }

    pub fn iter_row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(move |(wi, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    /// All set entries in row-major order.
    pub fn iter_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.iter_row(i).map(move |j| (i, j)))
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitset_basic() {
        let mut s = BitSet::new(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.len(), 3);
        assert!(s.contains(64));
        assert!(!s.contains(63));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
    }

    #[test]
    fn bitset_order_is_by_first_difference() {
        let a = BitSet::from_iter(10, [1, 3]);
        let b = BitSet::from_iter(10, [1, 2]);
        // b has index 2, a does not, so a < b at the first differing index.
        assert!(a < b);
        let c = BitSet::from_iter(10, [1, 3]);
        assert_eq!(a.cmp(&c), Ordering::Equal);
    }

    #[test]
    fn transitive_closure_chain() {
        let mut m = BitMatrix::identity(4);
        m.set(0, 1);
        m.set(1, 2);
        m.set(2, 3);
        m.transitive_close();
        assert!(m.get(0, 3));
        assert!(!m.get(3, 0));
    }
}
