//! Resampling embedder for one bipartite layer.
//!
//! Embeds the lower class of a bipartite digraph into a target set `A` of a
//! tournament, respecting per-vertex option lists, while forcing every upper
//! vertex to keep a large common out-neighborhood in `B` for the next step.
//! The existence argument behind this is a local-lemma computation; here it
//! runs operationally: start from an independent uniform assignment and
//! repeatedly resample the variables of the first violated event in a fixed
//! canonical order (all collision events in lexicographic pair order, then
//! slack events by upper-vertex index) until no event is violated or the
//! resample budget is exhausted.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

use crate::bitset::BitSet;
use crate::ratio::{self, Sqrt2Scaled};
use crate::rng;
use crate::tournament::Tournament;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LayerError {
    #[error("target sets A and B must be disjoint")]
    Overlap,
    #[error("option list of vertex {0} is not contained in A")]
    ListOutsideA(u32),
    #[error("option list of vertex {0} has {1} entries, below the declared b = {2}")]
    ListTooSmall(u32, usize, usize),
    #[error("option list of vertex {0} is empty")]
    EmptyList(u32),
    #[error("bipartite edge endpoint out of range")]
    EdgeOutOfRange,
    #[error("slack target c = {c} exceeds |B| = {b} while vertex {u} has no in-neighbors; unsatisfiable")]
    UnsatisfiableFreeVertex { u: u32, c: usize, b: usize },
}

/// Hypothesis bookkeeping. The embedder itself never reads these; they are
/// recorded so callers can tell whether the guarantees were in force.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisFlags {
    /// `a >= b >= 32 |V_1|`.
    pub size_ok: bool,
    /// `δ <= (2^{-1/2} b/a)^{Δ⁻} / (4 Δ⁺ Δ⁻)`, checked exactly.
    pub delta_ok: bool,
    /// `Δ⁻ >= 1` (and `Δ⁺ >= 1`) so the δ expression is meaningful.
    pub degrees_ok: bool,
}

/// One layer-embedding instance.
///
/// The bipartite digraph is given by `in_nbrs`: for each upper vertex
/// `u in V_2`, the list of its lower in-neighbors (indices into `V_1`). All
/// edges go `V_1 -> V_2`. `lists[v]` is the option list `f(v) ⊆ A`.
pub struct LayerInstance<'a> {
    pub t: &'a Tournament,
    pub a_set: Vec<u32>,
    pub b_set: Vec<u32>,
    pub v1: usize,
    pub in_nbrs: Vec<Vec<u32>>,
    pub lists: Vec<Vec<u32>>,
    /// Declared lower bound on list sizes (the lemma's `b`).
    pub b: usize,
    /// Slack target: every `u` must keep `|N⁺(φ(N⁻(u))) ∩ B| >= c`.
    pub c: usize,
    /// Bad-fraction parameter, recorded for hypothesis checking only.
    pub delta: Sqrt2Scaled,
}

pub struct PreparedLayer<'a> {
    inst: &'a LayerInstance<'a>,
    b_bits: BitSet,
    /// Upper vertices depending on each lower vertex.
    dependents: Vec<Vec<u32>>,
}

impl<'a> LayerInstance<'a> {
    /// Validates structure and builds the derived lookup state.
    pub fn prepare(&'a self) -> Result<PreparedLayer<'a>, LayerError> {
        let n = self.t.vertex_count() as usize;
        let a_bits = BitSet::from_indices(n, self.a_set.iter().copied());
        let b_bits = BitSet::from_indices(n, self.b_set.iter().copied());
        if !a_bits.is_disjoint(&b_bits) {
            return Err(LayerError::Overlap);
        }
        if self.lists.len() != self.v1 {
            return Err(LayerError::EdgeOutOfRange);
        }
        for (v, list) in self.lists.iter().enumerate() {
            if list.is_empty() {
                return Err(LayerError::EmptyList(v as u32));
            }
            if list.len() < self.b {
                return Err(LayerError::ListTooSmall(v as u32, list.len(), self.b));
            }
            let bits = BitSet::from_indices(n, list.iter().copied());
            let mut outside = bits.clone();
            outside.difference_assign(&a_bits);
            if !outside.is_empty() {
                return Err(LayerError::ListOutsideA(v as u32));
            }
        }
        let mut dependents = vec![Vec::new(); self.v1];
        for (u, nbrs) in self.in_nbrs.iter().enumerate() {
            for &v in nbrs {
                if v as usize >= self.v1 {
                    return Err(LayerError::EdgeOutOfRange);
                }
                dependents[v as usize].push(u as u32);
            }
            if nbrs.is_empty() && self.c > self.b_set.len() {
                return Err(LayerError::UnsatisfiableFreeVertex {
                    u: u as u32,
                    c: self.c,
                    b: self.b_set.len(),
                });
            }
        }
        Ok(PreparedLayer { inst: self, b_bits, dependents })
    }

    /// Checks the lemma hypotheses exactly. Never blocks execution.
    pub fn hypothesis_flags(&self) -> HypothesisFlags {
        let a = self.a_set.len();
        let min_list = self.lists.iter().map(|l| l.len()).min().unwrap_or(0);
        let b = self.b.min(min_list);
        let size_ok = a >= b && b >= 32 * self.v1;
        let delta_minus = self.in_nbrs.iter().map(|l| l.len() as u32).max().unwrap_or(0);
        let mut out_deg = vec![0u32; self.v1];
        for nbrs in &self.in_nbrs {
            for &v in nbrs {
                if (v as usize) < self.v1 {
                    out_deg[v as usize] += 1;
                }
            }
        }
        let delta_plus = out_deg.iter().copied().max().unwrap_or(0);
        let degrees_ok = delta_minus >= 1 && delta_plus >= 1;
        let delta_ok = if degrees_ok && a > 0 {
            let threshold = delta_threshold(a, b, delta_minus, delta_plus);
            threshold.cmp_value(&self.delta) != core::cmp::Ordering::Less
        } else {
            false
        };
        HypothesisFlags { size_ok, delta_ok, degrees_ok }
    }
}

/// Violated-event identifiers in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Event {
    /// `φ(v) = φ(w)`, `v < w`.
    Collision(u32, u32),
    /// Upper vertex `u` (with collision-free in-neighborhood) has slack < c.
    Slack(u32),
}

#[derive(Clone, Debug)]
pub struct LayerEmbedding {
    /// Host image of each lower vertex.
    pub phi: Vec<u32>,
    pub resample_count: u64,
    /// `|N⁺(φ(N⁻(u))) ∩ B|` for every upper vertex.
    pub slacks: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct EmbedFailure {
    pub resample_count: u64,
    pub last_event: Option<Event>,
}

/// One resampling step, for trace-based tests.
#[derive(Clone, Debug)]
pub struct ResampleStep {
    pub event: Event,
    pub changed: Vec<u32>,
}

pub fn default_cap(v1: usize, delta_plus: u32) -> u64 {
    50 * (v1 as u64).max(1) * (delta_plus as u64).max(1)
}

/// Runs the resampling loop. Initial assignment: `φ(v)` uniform in `f(v)`,
/// `v` in index order; then per fixed event, its variables are redrawn in
/// index order. All draws come sequentially from `rng::root(seed)`, so the
/// run is fully determined by `(instance, seed, cap)`.
pub fn embed_layer(
    inst: &LayerInstance,
    cap: u64,
    seed: u64,
) -> Result<Result<LayerEmbedding, EmbedFailure>, LayerError> {
    Ok(run(inst.prepare()?, cap, seed, None))
}

/// As [`embed_layer`], with a trace of every resampling step.
pub fn embed_layer_traced(
    inst: &LayerInstance,
    cap: u64,
    seed: u64,
) -> Result<(Result<LayerEmbedding, EmbedFailure>, Vec<ResampleStep>), LayerError> {
    let mut trace = Vec::new();
    let out = run(inst.prepare()?, cap, seed, Some(&mut trace));
    Ok((out, trace))
}

fn run(
    prep: PreparedLayer,
    cap: u64,
    seed: u64,
    mut trace: Option<&mut Vec<ResampleStep>>,
) -> Result<LayerEmbedding, EmbedFailure> {
    let inst = prep.inst;
    let mut r = rng::root(seed);
    let mut phi: Vec<u32> = (0..inst.v1)
        .map(|v| inst.lists[v][rng::index(&mut r, inst.lists[v].len())])
        .collect();
    let v2 = inst.in_nbrs.len();
    let mut slack_cache: Vec<Option<usize>> = vec![None; v2];
    let mut resamples = 0u64;
    loop {
        let violated = first_violated(&prep, &phi, &mut slack_cache);
        let Some(event) = violated else {
            let slacks: Vec<usize> = (0..v2).map(|u| slack_of(&prep, &phi, u as u32)).collect();
            debug_assert!(slacks.iter().all(|&s| s >= inst.c));
            return Ok(LayerEmbedding { phi, resample_count: resamples, slacks });
        };
        if resamples >= cap {
            return Err(EmbedFailure { resample_count: resamples, last_event: Some(event) });
        }
        resamples += 1;
        let changed: Vec<u32> = match event {
            Event::Collision(v, w) => vec![v, w],
            Event::Slack(u) => inst.in_nbrs[u as usize].clone(),
        };
        for &v in &changed {
            phi[v as usize] =
                inst.lists[v as usize][rng::index(&mut r, inst.lists[v as usize].len())];
            for &u in &prep.dependents[v as usize] {
                slack_cache[u as usize] = None;
            }
        }
        if let Some(t) = trace.as_deref_mut() {
            t.push(ResampleStep { event, changed });
        }
    }
}

/// First violated event in canonical order: collisions (v, w) lexicographic,
/// then slack events by u. Collisions strictly precede slack events, so a
/// slack event is only ever evaluated on a collision-free assignment.
fn first_violated(
    prep: &PreparedLayer,
    phi: &[u32],
    slack_cache: &mut [Option<usize>],
) -> Option<Event> {
    let v1 = phi.len();
    for v in 0..v1 {
        for w in v + 1..v1 {
            if phi[v] == phi[w] {
                return Some(Event::Collision(v as u32, w as u32));
            }
        }
    }
    for u in 0..prep.inst.in_nbrs.len() {
        let s = match slack_cache[u] {
            Some(s) => s,
            None => {
                let s = slack_of(prep, phi, u as u32);
                slack_cache[u] = Some(s);
                s
            }
        };
        if s < prep.inst.c {
            return Some(Event::Slack(u as u32));
        }
    }
    None
}

fn slack_of(prep: &PreparedLayer, phi: &[u32], u: u32) -> usize {
    let mut acc = prep.b_bits.clone();
    for &v in &prep.inst.in_nbrs[u as usize] {
        acc.and_assign(prep.inst.t.out_row(phi[v as usize]));
    }
    acc.count()
}

/// A violation found by the independent checker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LayerViolation {
    Collision(u32, u32),
    OffList(u32),
    SlackShort { u: u32, slack: usize, c: usize },
}

/// Independent verifier: injectivity, list membership, and all slacks
/// recomputed from scratch. Empty result means the embedding is valid.
pub fn check_layer_embedding(inst: &LayerInstance, phi: &[u32]) -> Vec<LayerViolation> {
    let mut out = Vec::new();
    for v in 0..inst.v1.min(phi.len()) {
        if !inst.lists[v].contains(&phi[v]) {
            out.push(LayerViolation::OffList(v as u32));
        }
    }
    for v in 0..phi.len() {
        for w in v + 1..phi.len() {
            if phi[v] == phi[w] {
                out.push(LayerViolation::Collision(v as u32, w as u32));
            }
        }
    }
    let n = inst.t.vertex_count() as usize;
    let b_bits = BitSet::from_indices(n, inst.b_set.iter().copied());
    for (u, nbrs) in inst.in_nbrs.iter().enumerate() {
        let mut acc = b_bits.clone();
        for &v in nbrs {
            acc.and_assign(inst.t.out_row(phi[v as usize]));
        }
        let slack = acc.count();
        if slack < inst.c {
            out.push(LayerViolation::SlackShort { u: u as u32, slack, c: inst.c });
        }
    }
    out
}

/// The δ threshold `(2^{-1/2} b/a)^{Δ⁻} / (4 Δ⁺ Δ⁻)`, exact.
pub fn delta_threshold(a: usize, b: usize, delta_minus: u32, delta_plus: u32) -> Sqrt2Scaled {
    assert!(delta_minus >= 1 && delta_plus >= 1 && a > 0);
    let coeff = ratio::pow(&ratio::ratio(b as i64, a as i64), delta_minus)
        / ratio::from_int(4 * delta_plus as u64 * delta_minus as u64);
    Sqrt2Scaled::new(coeff, delta_minus)
}

/// Convenience for callers carrying δ as a plain rational.
pub fn delta_from_rational(q: BigRational) -> Sqrt2Scaled {
    assert!(!q.is_negative());
    Sqrt2Scaled::from_rational(q)
}
