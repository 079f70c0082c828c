//! End-to-end embedding pipeline: compute a relocation-stable order of the
//! host, walk the order backwards building the nested target sets with
//! dependent random choice, then embed the graded digraph forwards layer by
//! layer with the resampling embedder, finishing the last layer greedily.
//!
//! In theoretical mode (host at least as large as the cascade's `N`) the
//! phases run at the cascade's literal sizes. Hosts below `N` run best-effort:
//! the same control flow over a fitted integer plan, with every deviation
//! from the proof's hypotheses surfaced as a warning.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::digraph::{Digraph, GradedDigraph};
use crate::drc::{self, DrcRequest};
use crate::lll::{self, LayerInstance};
use crate::median;
use crate::params::ParameterSet;
use crate::ratio::{self, Sqrt2Scaled};
use crate::tournament::Tournament;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbedViolation {
    OutOfRange { vertex: u32 },
    NotInjective { u: u32, v: u32 },
    EdgeBroken { u: u32, v: u32 },
}

/// Independent re-check of an embedding: injectivity plus direction
/// preservation for every edge. Empty result means valid.
pub fn verify_embedding(d: &Digraph, t: &Tournament, phi: &[u32]) -> Vec<EmbedViolation> {
    let mut out = Vec::new();
    if phi.len() != d.vertex_count() as usize {
        out.push(EmbedViolation::OutOfRange { vertex: u32::MAX });
        return out;
    }
    let n = t.vertex_count();
    for (v, &img) in phi.iter().enumerate() {
        if img >= n {
            out.push(EmbedViolation::OutOfRange { vertex: v as u32 });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let mut seen = vec![u32::MAX; n as usize];
    for (v, &img) in phi.iter().enumerate() {
        if seen[img as usize] != u32::MAX {
            out.push(EmbedViolation::NotInjective { u: seen[img as usize], v: v as u32 });
        } else {
            seen[img as usize] = v as u32;
        }
    }
    for &(u, v) in d.edges() {
        if !t.has_edge(phi[u as usize], phi[v as usize]) {
            out.push(EmbedViolation::EdgeBroken { u, v });
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Budgets {
    /// Trials per DRC request.
    pub drc_trials: u64,
    /// Retries per phase (fresh seeds) before failing the run.
    pub phase_retries: u32,
    /// Restarts of the whole forward phase.
    pub outer_retries: u32,
    /// Resample cap per layer; default derives from the instance.
    pub lll_cap: Option<u64>,
    /// Exact bad-subset counting budget.
    pub count_budget: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            drc_trials: drc::DEFAULT_TRIALS,
            phase_retries: 4,
            outer_retries: 3,
            lll_cap: None,
            count_budget: drc::DEFAULT_COUNT_BUDGET,
        }
    }
}

/// Integer-size plan the phases actually run at.
#[derive(Clone, Debug)]
pub struct PipelinePlan {
    pub theoretical: bool,
    pub k: usize,
    /// Interval length per layer.
    pub a: Vec<usize>,
    /// Slack / list-size target per layer (`s[h-1]` is the greedy need).
    pub s: Vec<usize>,
    /// Sample size per band.
    pub ell: Vec<u32>,
    /// Worst-case positions consumed (`a_h + 2k Σ a_i`).
    pub consumption: u64,
    pub warnings: Vec<String>,
}

/// Knobs of the best-effort fit.
#[derive(Clone, Debug)]
pub struct FitKnobs {
    /// Safety margin on slack-driven set sizes, as a ratio.
    pub margin_num: u64,
    pub margin_den: u64,
    /// Largest interval-partition parameter tried.
    pub max_k: usize,
    /// Cap on per-band sample sizes tried.
    pub max_ell: u32,
}

impl Default for FitKnobs {
    fn default() -> Self {
        FitKnobs { margin_num: 3, margin_den: 2, max_k: 4, max_ell: 4 }
    }
}

fn ceil_div(n: u64, d: u64) -> u64 {
    n.div_ceil(d)
}

impl PipelinePlan {
    /// Literal cascade sizes (ceilings on a and s), for hosts >= N.
    pub fn theoretical(p: &ParameterSet) -> PipelinePlan {
        let h = p.h;
        let a: Vec<usize> = p.a.iter().map(|x| ratio::ceil_u64(x) as usize).collect();
        let s: Vec<usize> = p.s.iter().map(|x| (ratio::ceil_u64(x) as usize).max(1)).collect();
        let ell: Vec<u32> = (0..h.saturating_sub(1)).map(|band| 2 * p.bands[band]).collect();
        let consumption = consumption_of(&a, p.k as usize);
        PipelinePlan {
            theoretical: true,
            k: p.k as usize,
            a,
            s,
            ell,
            consumption,
            warnings: Vec::new(),
        }
    }

    /// Fits the control flow to a host of `host_n` vertices: slack targets
    /// shrink to layer sizes plus a small margin, set sizes provision for the
    /// `2^{Δ⁻}` common-out-neighborhood shrinkage, and `(ℓ, k)` degrade until
    /// the worst-case window consumption fits.
    pub fn fit(p: &ParameterSet, host_n: usize, knobs: &FitKnobs) -> PipelinePlan {
        let h = p.h;
        let sizes = &p.layer_sizes;
        let mut warnings = Vec::new();
        // Slack targets: interior layers |V_L| + 2, last layer exactly |V_h|
        // (what the greedy tail consumes), first layer only needs to host V_1.
        let mut s = vec![0usize; h];
        for l in 0..h {
            s[l] = if l + 1 == h && h > 1 {
                sizes[l] as usize
            } else {
                sizes[l] as usize + 2
            };
        }
        // Degrade margin, then (ell, k), until the worst case fits. The
        // margin scales the slack-driven set sizes; the halving constraint
        // 2a' >= a is folded in backwards.
        let margins: [(u64, u64); 6] =
            [(knobs.margin_num, knobs.margin_den), (7, 5), (13, 10), (6, 5), (11, 10), (1, 1)];
        let ell_max = (0..h.saturating_sub(1)).map(|b| 2 * p.bands[b]).max().unwrap_or(0);
        let mut chosen: Option<(usize, Vec<usize>, Vec<u32>)> = None;
        'search: for (mn, md) in margins {
            let mut tgt = vec![0usize; h];
            tgt[0] = (2 * sizes[0] as usize).max(4);
            for l in 1..h {
                let shrink = 1u64 << p.bands[l - 1].min(20);
                let need = ceil_div(mn * s[l] as u64 * shrink, md);
                tgt[l] = (2 * sizes[l] as usize + 2).max(need as usize);
            }
            for ell_cap in (0..=ell_max.min(knobs.max_ell)).rev() {
                for k in (1..=(p.k as usize).min(knobs.max_k)).rev() {
                    let ell: Vec<u32> = (0..h.saturating_sub(1))
                        .map(|band| (2 * p.bands[band]).min(ell_cap))
                        .collect();
                    let mut a = vec![0usize; h];
                    for l in (0..h).rev() {
                        let base = if l + 1 == h {
                            tgt[l] as u64
                        } else {
                            // Divide by the expected survival rate (9/20)^ell.
                            let mut v = tgt[l] as u64;
                            for _ in 0..ell[l] {
                                v = ceil_div(v * 20, 9);
                            }
                            v
                        };
                        let mut al = base as usize;
                        if l + 1 < h {
                            al = al.max(a[l + 1].div_ceil(2));
                        }
                        a[l] = al.max(1);
                    }
                    if consumption_of(&a, k) <= host_n as u64 {
                        chosen = Some((k, a, ell));
                        break 'search;
                    }
                }
            }
        }
        let (a, ell, k) = match chosen {
            Some((k, a, ell)) => (a, ell, k),
            None => {
                // Nothing fits: run anyway at the minimal shape and let the
                // phases report what breaks.
                let ell = vec![0u32; h.saturating_sub(1)];
                let mut a = vec![0usize; h];
                a[0] = (2 * sizes[0] as usize).max(4);
                for l in 1..h {
                    let shrink = 1u64 << p.bands[l - 1].min(20);
                    a[l] = (2 * sizes[l] as usize + 2).max((s[l] as u64 * shrink) as usize);
                }
                for l in (0..h.saturating_sub(1)).rev() {
                    a[l] = a[l].max(a[l + 1].div_ceil(2)).max(1);
                }
                warnings.push(format!(
                    "host of {host_n} is below the minimal window consumption {}",
                    consumption_of(&a, 1)
                ));
                (a, ell, 1)
            }
        };
        let consumption = consumption_of(&a, k);
        if !p.scaled {
            warnings.push(String::from(
                "host below the cascade N: running best-effort sizes against theoretical parameters",
            ));
        }
        for (band, &e) in ell.iter().enumerate() {
            if e != 2 * p.bands[band] {
                warnings.push(format!(
                    "band {band}: sample size reduced to {e} from the prescribed {}",
                    2 * p.bands[band]
                ));
            }
        }
        if (k as u64) != p.k {
            warnings.push(format!("interval parameter reduced to k = {k} from {}", p.k));
        }
        PipelinePlan { theoretical: false, k, a, s, ell, consumption, warnings }
    }
}

fn consumption_of(a: &[usize], k: usize) -> u64 {
    let h = a.len();
    if h == 0 {
        return 0;
    }
    let window_sum: u64 = a[..h - 1].iter().map(|&x| 2 * k as u64 * x as u64).sum();
    a[h - 1] as u64 + window_sum
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Phase {
    MedianOrder,
    Backward { band: usize },
    Forward { layer: usize },
    Greedy,
    Verify,
}

#[derive(Clone, Debug)]
pub struct FailureTrace {
    pub phase: Phase,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct EmbeddingMap {
    /// Host image per digraph vertex.
    pub phi: Vec<u32>,
    /// Images grouped by layer, in layer-list order.
    pub layer_images: Vec<Vec<u32>>,
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub outcome: Result<EmbeddingMap, FailureTrace>,
    pub plan: PipelinePlan,
    /// Left endpoints `j_1 < ... < j_h` of the chosen intervals (0-based
    /// positions in the order), when the backward phase completed.
    pub j_positions: Vec<usize>,
    /// `|A_i|` actually selected.
    pub set_sizes: Vec<usize>,
    pub resamples_total: u64,
    pub warnings: Vec<String>,
    /// Per band: whether the realized bad fraction stayed within δ_i.
    pub delta_hat_ok: Vec<bool>,
}

impl RunReport {
    pub fn success(&self) -> bool {
        self.outcome.is_ok()
    }
}

// Seed-stream layout of a pipeline run (documented contract):
//   stream 0                               median order
//   (1 << 32) | (band << 8) | retry        DRC at a band
//   (2 << 32) | (outer << 16) | (layer << 8) | retry   layer embedding
const STREAM_MEDIAN: u64 = 0;

fn drc_stream(band: usize, retry: u32) -> u64 {
    (1u64 << 32) | ((band as u64) << 8) | retry as u64
}

fn lll_stream(outer: u32, layer: usize, retry: u32) -> u64 {
    (2u64 << 32) | ((outer as u64) << 16) | ((layer as u64) << 8) | retry as u64
}

/// Runs the full pipeline. Theoretical sizes apply when the host reaches the
/// cascade's `N`; otherwise a fitted best-effort plan is used and every
/// hypothesis deviation lands in `warnings`.
pub fn find_embedding(
    d: &GradedDigraph,
    t: &Tournament,
    params: &ParameterSet,
    seed: u64,
    budgets: &Budgets,
) -> RunReport {
    let host_n = t.vertex_count() as usize;
    let theoretical = ratio::from_int(host_n as u64) >= params.host_bound;
    let plan = if theoretical {
        PipelinePlan::theoretical(params)
    } else {
        PipelinePlan::fit(params, host_n, &FitKnobs::default())
    };
    let mut warnings = plan.warnings.clone();
    let h = d.height();
    let report = |outcome,
                      j_positions: Vec<usize>,
                      set_sizes: Vec<usize>,
                      resamples,
                      warnings: Vec<String>,
                      delta_hat_ok: Vec<bool>,
                      plan: &PipelinePlan| RunReport {
        outcome,
        plan: plan.clone(),
        j_positions,
        set_sizes,
        resamples_total: resamples,
        warnings,
        delta_hat_ok,
    };

    if plan.consumption > host_n as u64 {
        warnings.push(format!(
            "worst-case window consumption {} exceeds host size {host_n}",
            plan.consumption
        ));
    }

    // Phase 1: relocation-stable order.
    let ordering = median::local_median_order(t, crate::rng::child_seed(seed, STREAM_MEDIAN));

    // Phase 2+3: tail set and backward DRC.
    let n = host_n;
    if plan.a[h - 1] > n {
        return report(
            Err(FailureTrace {
                phase: Phase::Backward { band: h - 1 },
                detail: format!("tail interval of {} does not fit the host", plan.a[h - 1]),
            }),
            Vec::new(),
            Vec::new(),
            0,
            warnings,
            Vec::new(),
            &plan,
        );
    }
    let mut a_sets: Vec<Vec<u32>> = vec![Vec::new(); h];
    let mut j_pos = vec![0usize; h];
    j_pos[h - 1] = n - plan.a[h - 1];
    a_sets[h - 1] = (j_pos[h - 1]..n).map(|p| ordering.vertex_at(p)).collect();
    let mut delta_hat_ok: Vec<bool> = vec![true; h.saturating_sub(1)];

    for band in (0..h.saturating_sub(1)).rev() {
        let layer = band; // A_band is selected for layer `band`
        let mut success = false;
        let mut last_err = String::new();
        for retry in 0..=budgets.phase_retries {
            let b_param = a_sets[band + 1].len().min(plan.a[band + 1]).max(1);
            let req = DrcRequest {
                tournament: t,
                ordering: &ordering,
                j: j_pos[band + 1],
                a: plan.a[band + 1],
                a_prime: plan.a[band],
                b: b_param,
                ell: plan.ell[band],
                s: plan.s[band + 1],
                k: plan.k,
                delta_minus: d.band_max_in(band),
                b_set: a_sets[band + 1].clone(),
            };
            match drc::drc_select(&req, budgets.drc_trials, crate::rng::child_seed(seed, drc_stream(band, retry)), budgets.count_budget) {
                Err(e) => {
                    last_err = format!("{e}");
                    break; // structural error: retries cannot help
                }
                Ok(Err(fail)) => {
                    last_err = format!("no accepted trial in {}", fail.trials);
                }
                Ok(Ok(res)) => {
                    // Realized bad fraction vs the cascade's δ.
                    let total = ratio::binomial(res.a_set.len() as u64, d.band_max_in(band) as u64);
                    let ok = if total > num_bigint::BigUint::ZERO {
                        let frac = res.bad_count.as_rational() / ratio::from_biguint(&total);
                        delta_within(&params.delta[band], &frac)
                    } else {
                        true
                    };
                    delta_hat_ok[band] = ok;
                    if !ok {
                        if plan.theoretical {
                            last_err = String::from("realized bad fraction exceeds δ");
                            continue;
                        }
                        warnings.push(format!(
                            "band {band}: realized bad fraction exceeds the cascade δ"
                        ));
                    }
                    if res.a_set.len() < d.layers()[layer].len() {
                        last_err = format!(
                            "selected set of {} cannot host layer of {}",
                            res.a_set.len(),
                            d.layers()[layer].len()
                        );
                        continue;
                    }
                    j_pos[band] = res.j_prime;
                    a_sets[band] = res.a_set;
                    success = true;
                    break;
                }
            }
        }
        if !success {
            return report(
                Err(FailureTrace { phase: Phase::Backward { band }, detail: last_err }),
                Vec::new(),
                a_sets.iter().map(|s| s.len()).collect(),
                0,
                warnings,
                delta_hat_ok,
                &plan,
            );
        }
    }
    let set_sizes: Vec<usize> = a_sets.iter().map(|s| s.len()).collect();

    // Phase 4+5: forward embedding and greedy tail.
    let mut resamples_total = 0u64;
    let mut flags_warned = false;
    'outer: for outer in 0..=budgets.outer_retries {
        let mut phi = vec![u32::MAX; d.base().vertex_count() as usize];
        for layer in 0..h {
            if layer + 1 == h {
                // Greedy tail: vertices by decreasing in-degree, smallest
                // available image.
                let mut verts: Vec<u32> = d.layers()[layer].clone();
                verts.sort_by_key(|&v| (core::cmp::Reverse(d.base().in_degree(v)), v));
                let a_bits = BitSet::from_indices(n, a_sets[layer].iter().copied());
                let mut used = BitSet::new(n);
                for v in verts {
                    let imgs: Vec<u32> =
                        d.base().in_neighbors(v).iter().map(|&u| phi[u as usize]).collect();
                    debug_assert!(imgs.iter().all(|&x| x != u32::MAX));
                    let mut options = t.common_out_in(&imgs, &a_bits);
                    options.difference_assign(&used);
                    match options.first() {
                        Some(img) => {
                            phi[v as usize] = img as u32;
                            used.insert(img);
                        }
                        None => {
                            if outer == budgets.outer_retries {
                                return report(
                                    Err(FailureTrace {
                                        phase: Phase::Greedy,
                                        detail: format!("no image left for vertex {v}"),
                                    }),
                                    j_pos,
                                    set_sizes,
                                    resamples_total,
                                    warnings,
                                    delta_hat_ok,
                                    &plan,
                                );
                            }
                            continue 'outer;
                        }
                    }
                }
                // Success: assemble and verify below.
                let layer_images: Vec<Vec<u32>> = d
                    .layers()
                    .iter()
                    .map(|layer| layer.iter().map(|&v| phi[v as usize]).collect())
                    .collect();
                let violations = verify_embedding(d.base(), t, &phi);
                if !violations.is_empty() {
                    return report(
                        Err(FailureTrace {
                            phase: Phase::Verify,
                            detail: format!("{} violations: {:?}", violations.len(), violations),
                        }),
                        j_pos,
                        set_sizes,
                        resamples_total,
                        warnings,
                        delta_hat_ok,
                        &plan,
                    );
                }
                return report(
                    Ok(EmbeddingMap { phi, layer_images, verified: true }),
                    j_pos,
                    set_sizes,
                    resamples_total,
                    warnings,
                    delta_hat_ok,
                    &plan,
                );
            }

            // Build lists for this layer.
            let a_bits = BitSet::from_indices(n, a_sets[layer].iter().copied());
            let mut lists: Vec<Vec<u32>> = Vec::with_capacity(d.layers()[layer].len());
            let mut min_list = usize::MAX;
            for &v in &d.layers()[layer] {
                let list: Vec<u32> = if layer == 0 {
                    a_sets[0].clone()
                } else {
                    let imgs: Vec<u32> =
                        d.base().in_neighbors(v).iter().map(|&u| phi[u as usize]).collect();
                    t.common_out_in(&imgs, &a_bits).to_vec()
                };
                min_list = min_list.min(list.len());
                lists.push(list);
            }
            if min_list == 0 {
                if outer == budgets.outer_retries {
                    return report(
                        Err(FailureTrace {
                            phase: Phase::Forward { layer },
                            detail: String::from("an option list collapsed to empty"),
                        }),
                        j_pos,
                        set_sizes,
                        resamples_total,
                        warnings,
                        delta_hat_ok,
                        &plan,
                    );
                }
                continue 'outer;
            }
            if min_list < plan.s[layer] && layer > 0 {
                warnings.push(format!(
                    "layer {layer}: shortest option list {min_list} below target {}",
                    plan.s[layer]
                ));
            }
            let c = plan.s[layer + 1].min(a_sets[layer + 1].len());
            if c < plan.s[layer + 1] {
                warnings.push(format!(
                    "layer {layer}: slack target clamped to |A_{}| = {c}",
                    layer + 1
                ));
            }
            // Band edges V_layer -> V_{layer+1} in layer-local indices.
            let local: alloc::collections::BTreeMap<u32, u32> = d.layers()[layer]
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, i as u32))
                .collect();
            let in_nbrs: Vec<Vec<u32>> = d.layers()[layer + 1]
                .iter()
                .map(|&u| d.base().in_neighbors(u).iter().map(|&w| local[&w]).collect())
                .collect();
            let inst = LayerInstance {
                t,
                a_set: a_sets[layer].clone(),
                b_set: a_sets[layer + 1].clone(),
                v1: d.layers()[layer].len(),
                in_nbrs,
                lists,
                b: min_list,
                c,
                delta: params
                    .delta
                    .get(layer)
                    .cloned()
                    .unwrap_or_else(|| Sqrt2Scaled::from_rational(ratio::ratio(0, 1))),
            };
            if !flags_warned {
                let flags = inst.hypothesis_flags();
                if !(flags.size_ok && flags.delta_ok && flags.degrees_ok) {
                    warnings.push(format!(
                        "layer {layer}: embedding-lemma hypotheses not in force (size_ok={}, delta_ok={}, degrees_ok={})",
                        flags.size_ok, flags.delta_ok, flags.degrees_ok
                    ));
                    flags_warned = true;
                }
            }
            let cap = budgets
                .lll_cap
                .unwrap_or_else(|| lll::default_cap(inst.v1, d.base().max_out_degree()));
            let mut layer_done = false;
            for retry in 0..=budgets.phase_retries {
                match lll::embed_layer(&inst, cap, crate::rng::child_seed(seed, lll_stream(outer, layer, retry))) {
                    Err(e) => {
                        if outer == budgets.outer_retries {
                            return report(
                                Err(FailureTrace {
                                    phase: Phase::Forward { layer },
                                    detail: format!("{e}"),
                                }),
                                j_pos,
                                set_sizes,
                                resamples_total,
                                warnings,
                                delta_hat_ok,
                                &plan,
                            );
                        }
                        continue 'outer;
                    }
                    Ok(Ok(emb)) => {
                        resamples_total += emb.resample_count;
                        for (i, &v) in d.layers()[layer].iter().enumerate() {
                            phi[v as usize] = emb.phi[i];
                        }
                        layer_done = true;
                        break;
                    }
                    Ok(Err(fail)) => {
                        resamples_total += fail.resample_count;
                    }
                }
            }
            if !layer_done {
                if outer == budgets.outer_retries {
                    return report(
                        Err(FailureTrace {
                            phase: Phase::Forward { layer },
                            detail: String::from("resample cap exhausted on every retry"),
                        }),
                        j_pos,
                        set_sizes,
                        resamples_total,
                        warnings,
                        delta_hat_ok,
                        &plan,
                    );
                }
                continue 'outer;
            }
        }
    }
    unreachable!("the forward loop always returns");
}

fn delta_within(delta: &Sqrt2Scaled, frac: &num_rational::BigRational) -> bool {
    delta.ge_rational(frac)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{make_grid, make_hypercube, Digraph, GradedDigraph};
    use crate::params::{compute_parameters, ParamMode, Shrink};

    fn scaled_params(d: &GradedDigraph) -> ParameterSet {
        compute_parameters(d, ParamMode::Scaled(Shrink::default())).unwrap()
    }

    #[test]
    fn verify_embedding_trivials() {
        let t = Tournament::transitive(6);
        // Identity embedding of a sub-digraph of the host.
        let d = Digraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(verify_embedding(&d, &t, &[0, 1, 2]).is_empty());
        // Swapping two images across a digraph edge breaks it.
        let v = verify_embedding(&d, &t, &[1, 0, 2]);
        assert!(v.contains(&EmbedViolation::EdgeBroken { u: 0, v: 1 }));
        // Non-injective map.
        let v = verify_embedding(&d, &t, &[0, 0, 2]);
        assert!(v.iter().any(|x| matches!(x, EmbedViolation::NotInjective { .. })));
    }

    #[test]
    fn verify_embedding_rejects_random_map() {
        let d = make_grid(2, 3).unwrap();
        let t = Tournament::random(40, 3);
        // A map that ignores the digraph structure is rejected with listed
        // violations (independent recheck).
        let phi: Vec<u32> = (0..9).collect();
        let violations = verify_embedding(d.base(), &t, &phi);
        assert!(!violations.is_empty());
    }

    #[test]
    fn path_into_transitive_host() {
        let d = make_grid(1, 3).unwrap();
        let t = Tournament::transitive(60);
        let p = scaled_params(&d);
        let rep = find_embedding(&d, &t, &p, 7, &Budgets::default());
        let emb = rep.outcome.expect("transitive hosts embed paths");
        assert!(emb.verified);
        // The transitive order is the median order; image positions must
        // strictly increase along the path.
        assert!(emb.phi[0] < emb.phi[1] && emb.phi[1] < emb.phi[2]);
        // Backward phase produced increasing interval anchors.
        assert!(rep.j_positions.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn two_layer_digraph_runs_single_drc_and_embed() {
        // Complete bipartite 2x2, host transitive.
        let base = Digraph::new(4, vec![(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let d = GradedDigraph::new(base, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let t = Tournament::transitive(80);
        let p = scaled_params(&d);
        let rep = find_embedding(&d, &t, &p, 3, &Budgets::default());
        let emb = rep.outcome.expect("embedding exists");
        assert_eq!(rep.j_positions.len(), 2);
        assert!(verify_embedding(d.base(), &t, &emb.phi).is_empty());
    }

    #[test]
    fn grid_into_random_hosts_mostly_succeeds() {
        let d = make_grid(2, 3).unwrap();
        let p = scaled_params(&d);
        let host_n = 20 * d.base().vertex_count();
        let mut ok = 0;
        for seed in 0..10u64 {
            let t = Tournament::random(host_n, 1000 + seed);
            let rep = find_embedding(&d, &t, &p, seed, &Budgets::default());
            if let Ok(emb) = &rep.outcome {
                assert!(verify_embedding(d.base(), &t, &emb.phi).is_empty());
                ok += 1;
            }
        }
        assert!(ok >= 8, "only {ok}/10 random hosts succeeded");
    }

    #[test]
    fn hypercube_q3_into_random_host() {
        let d = make_hypercube(3).unwrap();
        let p = scaled_params(&d);
        let host_n = 20 * 8;
        let mut ok = 0;
        for seed in 0..10u64 {
            let t = Tournament::random(host_n, 7000 + seed);
            let rep = find_embedding(&d, &t, &p, seed, &Budgets::default());
            if rep.outcome.is_ok() {
                ok += 1;
            }
        }
        assert!(ok >= 8, "only {ok}/10 hypercube hosts succeeded");
    }

    #[test]
    fn single_layer_digraph_greedy_only() {
        let base = Digraph::new(3, vec![]).unwrap();
        let d = GradedDigraph::new(base, vec![vec![0, 1, 2]]).unwrap();
        let t = Tournament::random(30, 2);
        let p = scaled_params(&d);
        let rep = find_embedding(&d, &t, &p, 5, &Budgets::default());
        let emb = rep.outcome.expect("three distinct vertices exist");
        let mut imgs = emb.phi.clone();
        imgs.sort_unstable();
        imgs.dedup();
        assert_eq!(imgs.len(), 3);
    }

    #[test]
    fn deterministic_given_seed() {
        let d = make_grid(2, 3).unwrap();
        let t = Tournament::random(180, 4);
        let p = scaled_params(&d);
        let a = find_embedding(&d, &t, &p, 11, &Budgets::default());
        let b = find_embedding(&d, &t, &p, 11, &Budgets::default());
        assert_eq!(a.outcome.as_ref().unwrap().phi, b.outcome.as_ref().unwrap().phi);
        assert_eq!(a.resamples_total, b.resamples_total);
    }

    #[test]
    fn fit_plan_respects_host() {
        let d = make_hypercube(4).unwrap();
        let p = scaled_params(&d);
        let plan = PipelinePlan::fit(&p, 320, &FitKnobs::default());
        assert!(plan.consumption <= 320, "consumption {}", plan.consumption);
        assert_eq!(plan.a.len(), 5);
        // The tail set is provisioned for the top band's 2^4 shrinkage.
        assert!(plan.a[4] >= 16);
    }
}
