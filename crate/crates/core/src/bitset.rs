//! Fixed-width bit sets used both as vertex sets and as GF(2) rows.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

const WORD: usize = 64;

/// A set of indices in `0..len`, packed into 64-bit words.
///
/// Two sets only compare equal when they also have the same width.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::new(len);
        for w in s.words.iter_mut() {
            *w = !0;
        }
        s.trim();
        s
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(len);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Width of the set (the exclusive upper bound on members).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    /// Inserts `i`, returning whether it was absent.
    ///
    /// Panics if `i` is outside the width.
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} outside width {}", self.len);
        let mask = 1u64 << (i % WORD);
        let was = self.words[i / WORD] & mask != 0;
        self.words[i / WORD] |= mask;
        !was
    }

    pub fn remove(&mut self, i: usize) -> bool {
        if i >= self.len {
            return false;
        }
        let mask = 1u64 << (i % WORD);
        let was = self.words[i / WORD] & mask != 0;
        self.words[i / WORD] &= !mask;
        was
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if value {
            self.insert(i);
        } else {
            self.remove(i);
        }
    }

    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} outside width {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    /// Smallest member.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn xor_with(&mut self, other: &BitSet) {
        self.check_width(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn union_with(&mut self, other: &BitSet) {
        self.check_width(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        self.check_width(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        self.check_width(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// Complement within the width.
    pub fn complement(&self) -> BitSet {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.trim();
        out
    }

    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.check_width(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Parity of `|self ∩ other|`.
    pub fn dot(&self, other: &BitSet) -> bool {
        self.check_width(other);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.check_width(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.intersection_count(other) == 0
    }

    /// Copy of the set with bit `i` removed and higher bits shifted down by one.
    pub fn without_index(&self, i: usize) -> BitSet {
        assert!(i < self.len);
        BitSet::from_indices(
            self.len - 1,
            self.iter()
                .filter(|&k| k != i)
                .map(|k| if k > i { k - 1 } else { k }),
        )
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    fn check_width(&self, other: &BitSet) {
        assert_eq!(self.len, other.len, "bit set width mismatch");
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl<'a> IntoIterator for &'a BitSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}
