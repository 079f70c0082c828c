//! Worker-parallel Ramsey level scans. The labeled code space is partitioned
//! into chunks by code prefix; workers stop early once some chunk finds a
//! pattern-free host with a code below their start, so the combined result
//! (the smallest free code) matches the sequential scan exactly.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use oramsey_core::digraph::Digraph;
use oramsey_core::exact::{
    self, labeled_host, labeled_host_count, tournament_from_staircase, EnumerationMode,
    NodeOrder, RamseyBudget, RamseyOutcome, SmallScanner, SMALL_HOST_MAX,
};
use oramsey_core::Tournament;

use crate::cache::{LevelRecord, RamseyCache};

/// Outcome of scanning one whole level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelOutcome {
    AllContain,
    /// Smallest free host code at this level.
    Free(u64),
}

/// Parallel scan of all labeled hosts on `level` vertices.
pub fn scan_level_parallel(pattern: &Digraph, level: u32, jobs: usize) -> LevelOutcome {
    let hosts = labeled_host_count(level).expect("level within u64 range");
    let chunk = (hosts / (jobs as u64 * 8).max(1)).max(1 << 14).min(hosts);
    let best = AtomicU64::new(u64::MAX);
    let starts: Vec<u64> = (0..hosts).step_by(chunk as usize).collect();
    starts.into_par_iter().for_each(|start| {
        if best.load(Ordering::Relaxed) < start {
            return; // a smaller free code is already known
        }
        let scanner = SmallScanner::new(pattern, NodeOrder::Auto);
        let end = (start + chunk).min(hosts);
        let mut out = [0u64; SMALL_HOST_MAX as usize + 1];
        let mut in_ = [0u64; SMALL_HOST_MAX as usize + 1];
        for code in start..end {
            if code % (1 << 16) == 0 && best.load(Ordering::Relaxed) < start {
                return;
            }
            exact::decode_labeled(level as usize, code, &mut out, &mut in_);
            if !scanner.contains_rows(&out, &in_, level as usize) {
                best.fetch_min(code, Ordering::Relaxed);
                return;
            }
        }
    });
    match best.load(Ordering::Relaxed) {
        u64::MAX => LevelOutcome::AllContain,
        code => LevelOutcome::Free(code),
    }
}

/// Parallel canonical-level scan: representatives are enumerated once, then
/// checked in parallel; the smallest free staircase code wins.
pub fn scan_canonical_level_parallel(pattern: &Digraph, level: u32) -> LevelOutcome {
    let reps = exact::canonical_tournaments(level);
    let free = reps
        .par_iter()
        .filter_map(|&rep| {
            let scanner = SmallScanner::new(pattern, NodeOrder::Auto);
            let mut out = [0u64; SMALL_HOST_MAX as usize + 1];
            let mut in_ = [0u64; SMALL_HOST_MAX as usize + 1];
            stair_rows(level as usize, rep, &mut out, &mut in_);
            if scanner.contains_rows(&out, &in_, level as usize) {
                None
            } else {
                Some(rep)
            }
        })
        .min();
    match free {
        None => LevelOutcome::AllContain,
        Some(code) => LevelOutcome::Free(code),
    }
}

fn stair_rows(n: usize, code: u64, out: &mut [u64], in_: &mut [u64]) {
    let t = tournament_from_staircase(n as u32, code);
    out[..n].fill(0);
    in_[..n].fill(0);
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            if u != v && t.has_edge(u, v) {
                out[u as usize] |= 1 << v;
                in_[v as usize] |= 1 << u;
            }
        }
    }
}

/// Parallel, optionally cached oriented-Ramsey search with the same
/// semantics (including witnesses) as `oramsey_core::exact::oriented_ramsey`.
pub fn oriented_ramsey_parallel(
    pattern: &Digraph,
    n_max: u32,
    mode: EnumerationMode,
    budget: RamseyBudget,
    jobs: usize,
    cache: Option<&RamseyCache>,
) -> RamseyOutcome {
    let p = pattern.vertex_count();
    assert!(p >= 1);
    let mode_tag = match mode {
        EnumerationMode::Labeled => "labeled",
        EnumerationMode::Canonical => "canonical",
    };
    let mut witness = Tournament::transitive(p.saturating_sub(1));
    let mut completed = p.saturating_sub(1);
    for level in p..=n_max.min(SMALL_HOST_MAX) {
        if let EnumerationMode::Labeled = mode {
            match labeled_host_count(level) {
                Some(h) if h <= budget.max_level_hosts => {}
                _ => return RamseyOutcome::Unknown { completed, free_host: Some(witness) },
            }
        } else if level > 9 {
            return RamseyOutcome::Unknown { completed, free_host: Some(witness) };
        }
        let cached = cache.and_then(|c| c.get(pattern, level, mode_tag));
        let outcome = match cached {
            Some(rec) => match rec.free_code {
                None => LevelOutcome::AllContain,
                Some(code) => LevelOutcome::Free(code),
            },
            None => {
                let out = match mode {
                    EnumerationMode::Labeled => scan_level_parallel(pattern, level, jobs),
                    EnumerationMode::Canonical => scan_canonical_level_parallel(pattern, level),
                };
                if let Some(c) = cache {
                    let rec = LevelRecord {
                        level,
                        mode: mode_tag.into(),
                        free_code: match out {
                            LevelOutcome::AllContain => None,
                            LevelOutcome::Free(code) => Some(code),
                        },
                    };
                    let _ = c.put(pattern, &rec);
                }
                out
            }
        };
        match outcome {
            LevelOutcome::AllContain => return RamseyOutcome::Determined { n: level, witness },
            LevelOutcome::Free(code) => {
                witness = match mode {
                    EnumerationMode::Labeled => labeled_host(level, code),
                    EnumerationMode::Canonical => tournament_from_staircase(level, code),
                };
                completed = level;
            }
        }
    }
    RamseyOutcome::Unknown { completed, free_host: Some(witness) }
}
