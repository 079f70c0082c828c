//! Tournaments: complete orientations of K_N with O(1) edge queries and bitset
//! neighborhood rows, plus the generators used throughout (uniform random,
//! transitive, blow-ups).

use alloc::vec::Vec;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::rng;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TournamentError {
    #[error("orientation incomplete or contradictory for pair ({0}, {1})")]
    BadPair(u32, u32),
    #[error("part count {parts} does not match outer tournament size {outer}")]
    PartSizeMismatch { parts: usize, outer: u32 },
    #[error("part {0} has size zero")]
    EmptyPart(usize),
}

/// A tournament on `n` vertices. `out[v]` / `in_[v]` are the out- and
/// in-neighborhood bitsets; exactly one of `(u,v)`, `(v,u)` is present for
/// every pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tournament {
    n: u32,
    out: Vec<BitSet>,
    in_: Vec<BitSet>,
}

impl Tournament {
    /// Builds from a closure giving the direction of each pair `u < v`
    /// (`true` means `u → v`). The single source of truth for all generators.
    pub fn from_pair_fn(n: u32, mut forward: impl FnMut(u32, u32) -> bool) -> Self {
        let mut out = alloc::vec![BitSet::new(n as usize); n as usize];
        let mut in_ = alloc::vec![BitSet::new(n as usize); n as usize];
        for u in 0..n {
            for v in u + 1..n {
                if forward(u, v) {
                    out[u as usize].insert(v as usize);
                    in_[v as usize].insert(u as usize);
                } else {
                    out[v as usize].insert(u as usize);
                    in_[u as usize].insert(v as usize);
                }
            }
        }
        Tournament { n, out, in_ }
    }

    /// Uniformly random tournament: one fair coin per unordered pair, pairs in
    /// lexicographic order (u, v), u < v, drawn from `rng::root(seed)`.
    pub fn random(n: u32, seed: u64) -> Self {
        let mut r = rng::root(seed);
        Tournament::from_pair_fn(n, |_, _| rng::coin(&mut r))
    }

    /// Transitive tournament: edge `i → j` iff `i < j`.
    pub fn transitive(n: u32) -> Self {
        Tournament::from_pair_fn(n, |_, _| true)
    }

    /// Reconstructs from the upper-triangular bit row (row-major over pairs
    /// `u < v`, bit true = `u → v`). Length must be `n(n-1)/2`.
    pub fn from_upper_bits(n: u32, bits: &[bool]) -> Result<Self, TournamentError> {
        let expected = (n as usize) * (n as usize - 1) / 2;
        if n > 0 && bits.len() != expected {
            return Err(TournamentError::BadPair(n, n));
        }
        let mut it = bits.iter().copied();
        Ok(Tournament::from_pair_fn(n, |_, _| it.next().unwrap()))
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.out[u as usize].contains(v as usize)
    }

    #[inline]
    pub fn out_row(&self, v: u32) -> &BitSet {
        &self.out[v as usize]
    }

    #[inline]
    pub fn in_row(&self, v: u32) -> &BitSet {
        &self.in_[v as usize]
    }

    pub fn out_degree(&self, v: u32) -> usize {
        self.out[v as usize].count()
    }

    pub fn in_degree(&self, v: u32) -> usize {
        self.in_[v as usize].count()
    }

    /// Out-degree of `v` into the set `within`.
    #[inline]
    pub fn out_degree_in(&self, v: u32, within: &BitSet) -> usize {
        self.out[v as usize].intersection_count(within)
    }

    /// In-degree of `v` from the set `within`.
    #[inline]
    pub fn in_degree_in(&self, v: u32, within: &BitSet) -> usize {
        self.in_[v as usize].intersection_count(within)
    }

    /// Common out-neighborhood of `verts` restricted to `within`.
    pub fn common_out_in(&self, verts: &[u32], within: &BitSet) -> BitSet {
        let mut acc = within.clone();
        for &v in verts {
            acc.and_assign(&self.out[v as usize]);
        }
        acc
    }

    /// Upper-triangular bits, row-major, bit true = lower index → higher.
    pub fn upper_bits(&self) -> Vec<bool> {
        let mut bits = Vec::with_capacity((self.n as usize) * (self.n as usize - 1) / 2);
        for u in 0..self.n {
            for v in u + 1..self.n {
                bits.push(self.has_edge(u, v));
            }
        }
        bits
    }

    pub fn edge_count(&self) -> u64 {
        (self.n as u64) * (self.n as u64 - 1) / 2
    }
}

/// Inner-part orientation policy for blow-ups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerFill {
    /// Fair coin per inner pair, pairs in lexicographic order by global index,
    /// parts visited in order, drawn from `rng::root(seed)`.
    Random,
    /// Inner edge `i → j` iff `i < j` by global index.
    Transitive,
}

/// Blow-up specification: each vertex `i` of `outer` becomes a part of
/// `part_sizes[i]` consecutive vertices; cross-part edges follow `outer`.
#[derive(Clone, Debug)]
pub struct BlowupSpec {
    pub outer: Tournament,
    pub part_sizes: Vec<u32>,
    pub inner_fill: InnerFill,
}

impl BlowupSpec {
    pub fn total_size(&self) -> u64 {
        self.part_sizes.iter().map(|&s| s as u64).sum()
    }

    /// Materializes the blow-up. Draw order (Random fill): inner pairs
    /// (u, v), u < v by global index, part by part.
    pub fn blowup(&self, seed: u64) -> Result<Tournament, TournamentError> {
        if self.part_sizes.len() != self.outer.vertex_count() as usize {
            return Err(TournamentError::PartSizeMismatch {
                parts: self.part_sizes.len(),
                outer: self.outer.vertex_count(),
            });
        }
        if let Some(i) = self.part_sizes.iter().position(|&s| s == 0) {
            return Err(TournamentError::EmptyPart(i));
        }
        let n = self.total_size() as u32;
        let mut part_of = Vec::with_capacity(n as usize);
        for (pi, &sz) in self.part_sizes.iter().enumerate() {
            for _ in 0..sz {
                part_of.push(pi as u32);
            }
        }
        let mut r = rng::root(seed);
        let outer = &self.outer;
        let fill = self.inner_fill;
        Ok(Tournament::from_pair_fn(n, |u, v| {
            let (pu, pv) = (part_of[u as usize], part_of[v as usize]);
            if pu != pv {
                outer.has_edge(pu, pv)
            } else {
                match fill {
                    InnerFill::Random => rng::coin(&mut r),
                    InnerFill::Transitive => true,
                }
            }
        }))
    }

    /// Part boundaries as (start, end) global index ranges.
    pub fn part_ranges(&self) -> Vec<(u32, u32)> {
        let mut ranges = Vec::with_capacity(self.part_sizes.len());
        let mut start = 0u32;
        for &sz in &self.part_sizes {
            ranges.push((start, start + sz));
            start += sz;
        }
        ranges
    }
}
