//! Core algorithms for oriented Ramsey experiments on tournaments and graded
//! digraphs: generators, median orders, dependent random choice, a resampling
//! layer embedder, the full embedding pipeline with its parameter cascade,
//! randomized lower-bound constructions with property checkers, and exact
//! containment / Ramsey-number search for small instances.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and the CLI live
//! in the companion `oramsey` crate. Every randomized operation takes an
//! explicit 64-bit seed and documents its draw order, so outputs are
//! bit-reproducible.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bitset;
pub mod digraph;
pub mod drc;
pub mod exact;
pub mod lll;
pub mod lower;
pub mod median;
pub mod params;
pub mod pipeline;
pub mod ratio;
pub mod rng;
pub mod tournament;

pub use bitset::BitSet;
pub use digraph::{Digraph, GradedDigraph};
pub use median::Ordering;
pub use tournament::Tournament;
