//! Fixed-width bitsets over `u64` blocks. Used for tournament neighborhood
//! rows, candidate filtering in containment search, and slack computations.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitSet {
    nbits: usize,
    blocks: Vec<u64>,
}

#[inline]
fn nblocks(nbits: usize) -> usize {
    nbits.div_ceil(64)
}

impl BitSet {
    pub fn new(nbits: usize) -> Self {
        BitSet { nbits, blocks: vec![0; nblocks(nbits)] }
    }

    /// All bits in `0..nbits` set.
    pub fn full(nbits: usize) -> Self {
        let mut s = BitSet { nbits, blocks: vec![u64::MAX; nblocks(nbits)] };
        s.trim_tail();
        s
    }

    pub fn from_indices(nbits: usize, indices: impl IntoIterator<Item = u32>) -> Self {
        let mut s = BitSet::new(nbits);
        for i in indices {
            s.insert(i as usize);
        }
        s
    }

    #[inline]
    pub fn capacity(&self) -> usize {
        self.nbits
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.nbits);
        self.blocks[i / 64] |= 1u64 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.nbits);
        self.blocks[i / 64] &= !(1u64 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.nbits);
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn clear(&mut self) {
        self.blocks.fill(0);
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// `|self ∩ other|` without allocating.
    pub fn intersection_count(&self, other: &BitSet) -> usize {
        debug_assert_eq!(self.nbits, other.nbits);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & b == 0)
    }

    pub fn and_assign(&mut self, other: &BitSet) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn or_assign(&mut self, other: &BitSet) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn difference_assign(&mut self, other: &BitSet) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
        }
    }

    /// Copies `other` into `self` (capacities must match).
    pub fn copy_from(&mut self, other: &BitSet) {
        debug_assert_eq!(self.nbits, other.nbits);
        self.blocks.copy_from_slice(&other.blocks);
    }

    pub fn first(&self) -> Option<usize> {
        for (bi, &b) in self.blocks.iter().enumerate() {
            if b != 0 {
                return Some(bi * 64 + b.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones { set: self, block_idx: 0, cur: self.blocks.first().copied().unwrap_or(0) }
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().map(|i| i as u32).collect()
    }

    fn trim_tail(&mut self) {
        let rem = self.nbits % 64;
        if rem != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

pub struct Ones<'a> {
    set: &'a BitSet,
    block_idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.block_idx * 64 + bit);
            }
            self.block_idx += 1;
            if self.block_idx >= self.set.blocks.len() {
                return None;
            }
            self.cur = self.set.blocks[self.block_idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_query_count() {
        let mut s = BitSet::new(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert!(s.contains(0) && s.contains(64) && s.contains(129));
        assert!(!s.contains(1));
        assert_eq!(s.count(), 3);
        assert_eq!(s.to_vec(), vec![0, 64, 129]);
        s.remove(64);
        assert_eq!(s.count(), 2);
    }

    #[test]
    fn full_respects_capacity() {
        let s = BitSet::full(67);
        assert_eq!(s.count(), 67);
        assert_eq!(s.iter().max(), Some(66));
    }

    #[test]
    fn set_algebra() {
        let a = BitSet::from_indices(100, [1, 5, 70, 99]);
        let b = BitSet::from_indices(100, [5, 99, 3]);
        assert_eq!(a.intersection_count(&b), 2);
        let mut c = a.clone();
        c.and_assign(&b);
        assert_eq!(c.to_vec(), vec![5, 99]);
        let mut d = a.clone();
        d.difference_assign(&b);
        assert_eq!(d.to_vec(), vec![1, 70]);
        assert!(!a.is_disjoint(&b));
        assert!(d.is_disjoint(&b));
    }
}
