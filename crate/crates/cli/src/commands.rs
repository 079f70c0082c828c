//! Subcommand implementations. Each returns a process exit code:
//! 0 success, 2 negative verdict (no embedding / no copy / property fails),
//! 3 budget exhausted or Unknown, 4 input error. `main` maps argument and IO
//! failures to 4.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use num_traits::ToPrimitive;
use serde::Serialize;

use oramsey_core::digraph::{
    make_grid, make_hypercube, make_random_graded, make_transitive_pattern, GradedDigraph,
};
use oramsey_core::drc::{self, DrcRequest};
use oramsey_core::exact::{self, ContainmentQuery, EnumerationMode, RamseyBudget, RamseyOutcome};
use oramsey_core::lll::{self, LayerInstance};
use oramsey_core::lower::{
    self, GuestParams, HeuristicIntersection, IntersectionVerdict, LayeredConstruction,
    NoCopyVerdict, Profile,
};
use oramsey_core::median::{local_median_order_restarts, verify_median_property, Ordering};
use oramsey_core::params::{compute_parameters, hypercube_bound_sum, layer_sum, theorem_bound, ParamMode, Shrink};
use oramsey_core::pipeline::{find_embedding, Budgets, Phase};
use oramsey_core::ratio;
use oramsey_core::tournament::{BlowupSpec, InnerFill, Tournament};

use crate::cache::RamseyCache;
use crate::experiment;
use crate::io::{self, parse_ratio, ratio_to_string, DigraphJson, OrderJson, RadicalJson, TournamentJson};
use crate::parallel;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INPUT: i32 = 4;

fn default_jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

pub fn gen_grid(d: u32, k: u32, out: &Path) -> Result<i32> {
    let g = make_grid(d, k)?;
    io::save_graded(out, &g)?;
    println!(
        "grid d={d} k={k}: {} vertices, {} edges, layers {:?}",
        g.base().vertex_count(),
        g.base().edge_count(),
        g.layer_sizes()
    );
    Ok(EXIT_OK)
}

pub fn gen_hypercube(d: u32, out: &Path) -> Result<i32> {
    let g = make_hypercube(d)?;
    io::save_graded(out, &g)?;
    println!(
        "hypercube d={d}: {} vertices, {} edges",
        g.base().vertex_count(),
        g.base().edge_count()
    );
    Ok(EXIT_OK)
}

pub fn gen_path(n: u32, out: &Path) -> Result<i32> {
    let g = make_grid(1, n)?;
    io::save_graded(out, &g)?;
    println!("path n={n}");
    Ok(EXIT_OK)
}

pub fn gen_transitive_pattern(n: u32, out: &Path) -> Result<i32> {
    let d = make_transitive_pattern(n);
    io::save_digraph(out, &d)?;
    println!("transitive pattern n={n}: {} edges", d.edge_count());
    Ok(EXIT_OK)
}

pub fn gen_random_graded(
    h: usize,
    max_width: u32,
    max_in: u32,
    max_out: u32,
    seed: u64,
    out: &Path,
) -> Result<i32> {
    let g = make_random_graded(h, max_width, max_in, max_out, seed);
    io::save_graded(out, &g)?;
    println!(
        "random graded h={h}: {} vertices, {} edges",
        g.base().vertex_count(),
        g.base().edge_count()
    );
    Ok(EXIT_OK)
}

pub fn gen_tournament(n: u32, seed: u64, transitive: bool, out: &Path) -> Result<i32> {
    let t = if transitive { Tournament::transitive(n) } else { Tournament::random(n, seed) };
    io::save_tournament(out, &t)?;
    println!("tournament n={n} ({})", if transitive { "transitive" } else { "random" });
    Ok(EXIT_OK)
}

pub fn gen_blowup(
    outer: &Path,
    sizes: &str,
    fill: &str,
    seed: u64,
    out: &Path,
) -> Result<i32> {
    let outer_t = io::load_tournament(outer)?;
    let part_sizes: Vec<u32> = sizes
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| anyhow!("bad part size {s:?}")))
        .collect::<Result<_>>()?;
    let inner_fill = match fill {
        "random" => InnerFill::Random,
        "transitive" => InnerFill::Transitive,
        other => bail!("unknown fill {other:?} (random | transitive)"),
    };
    let spec = BlowupSpec { outer: outer_t, part_sizes, inner_fill };
    let t = spec.blowup(seed)?;
    io::save_tournament(out, &t)?;
    println!("blowup: {} vertices", t.vertex_count());
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// median
// ---------------------------------------------------------------------------

pub fn median(input: &Path, seed: u64, restarts: u32, out: Option<&Path>) -> Result<i32> {
    let t = io::load_tournament(input)?;
    let o = local_median_order_restarts(&t, seed, restarts);
    verify_median_property(&t, &o).map_err(|e| anyhow!("median property check failed: {e}"))?;
    let json = OrderJson {
        schema: io::ORDER_SCHEMA.into(),
        perm: o.perm().to_vec(),
        forward_edges: o.forward_edges(),
    };
    match out {
        Some(path) => io::write_json(path, &json)?,
        None => println!("{}", serde_json::to_string_pretty(&json)?),
    }
    println!(
        "median order: {} forward edges of {} pairs",
        o.forward_edges(),
        t.edge_count()
    );
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// drc
// ---------------------------------------------------------------------------

#[derive(serde::Deserialize, Debug)]
pub struct DrcParamsJson {
    pub schema: String,
    pub j: usize,
    pub a: usize,
    pub a_prime: usize,
    pub b: usize,
    pub ell: u32,
    pub s: usize,
    pub k: usize,
    pub delta_minus: u32,
    pub b_set: Vec<u32>,
    #[serde(default)]
    pub max_trials: Option<u64>,
}

#[derive(Serialize, Debug)]
struct DrcResultJson {
    schema: String,
    accepted: bool,
    j_prime: Option<usize>,
    a_set: Vec<u32>,
    size_bound: String,
    bad_bound: Option<String>,
    bad_count: Option<serde_json::Value>,
    trace: serde_json::Value,
}

pub fn drc_cmd(
    tournament: &Path,
    order: &Path,
    params: &Path,
    seed: u64,
    trials_flag: Option<u64>,
    out: Option<&Path>,
) -> Result<i32> {
    let t = io::load_tournament(tournament)?;
    let oj: OrderJson = io::read_json(order)?;
    io::check_schema(order, &oj.schema, io::ORDER_SCHEMA)?;
    let o = Ordering::new(&t, oj.perm).map_err(|e| anyhow!("{e}"))?;
    let pj: DrcParamsJson = io::read_json(params)?;
    io::check_schema(params, &pj.schema, "drc-params/v1")?;
    let req = DrcRequest {
        tournament: &t,
        ordering: &o,
        j: pj.j,
        a: pj.a,
        a_prime: pj.a_prime,
        b: pj.b,
        ell: pj.ell,
        s: pj.s,
        k: pj.k,
        delta_minus: pj.delta_minus,
        b_set: pj.b_set,
    };
    let trials = trials_flag.or(pj.max_trials).unwrap_or(drc::DEFAULT_TRIALS);
    let outcome = drc::drc_select(&req, trials, seed, drc::DEFAULT_COUNT_BUDGET)
        .map_err(|e| anyhow!("{e}"))?;
    let (size_bound, bad_bound) = drc::selection_bounds(&req);
    let (code, json) = match outcome {
        Ok(res) => {
            let bad_count = match &res.bad_count {
                drc::BadCount::Exact(c) => serde_json::json!({"exact": c.to_string()}),
                drc::BadCount::Estimated { estimate, samples, bad_hits } => serde_json::json!({
                    "estimate": ratio_to_string(estimate),
                    "samples": samples,
                    "bad_hits": bad_hits,
                }),
            };
            let json = DrcResultJson {
                schema: "drc-result/v1".into(),
                accepted: true,
                j_prime: Some(res.j_prime),
                a_set: res.a_set.clone(),
                size_bound: ratio_to_string(&size_bound),
                bad_bound: bad_bound.as_ref().map(ratio_to_string),
                bad_count: Some(bad_count),
                trace: serde_json::json!({
                    "interval_index": res.trace.interval_index,
                    "sample": res.trace.sample,
                    "m_set": res.trace.m_set,
                    "trial": res.trace.trial,
                }),
            };
            println!("accepted at trial {}: |A| = {}", res.trace.trial, res.a_set.len());
            (EXIT_OK, json)
        }
        Err(fail) => {
            let trace = match &fail.best {
                Some(tr) => serde_json::json!({
                    "interval_index": tr.interval_index,
                    "sample": tr.sample,
                    "m_set": tr.m_set,
                    "trial": tr.trial,
                }),
                None => serde_json::Value::Null,
            };
            println!("no accepted trial in {}", fail.trials);
            (
                EXIT_NEGATIVE,
                DrcResultJson {
                    schema: "drc-result/v1".into(),
                    accepted: false,
                    j_prime: None,
                    a_set: Vec::new(),
                    size_bound: ratio_to_string(&size_bound),
                    bad_bound: bad_bound.as_ref().map(ratio_to_string),
                    bad_count: None,
                    trace,
                },
            )
        }
    };
    if let Some(path) = out {
        io::write_json(path, &json)?;
    }
    Ok(code)
}

// ---------------------------------------------------------------------------
// embed-layer
// ---------------------------------------------------------------------------

#[derive(serde::Deserialize, Debug)]
pub struct LayerInstanceJson {
    pub schema: String,
    pub tournament: TournamentJson,
    pub a_set: Vec<u32>,
    pub b_set: Vec<u32>,
    pub v1: usize,
    pub in_nbrs: Vec<Vec<u32>>,
    pub lists: Vec<Vec<u32>>,
    pub b: usize,
    pub c: usize,
    pub delta: RadicalJson,
}

#[derive(Serialize, Debug)]
struct LayerResultJson {
    schema: String,
    found: bool,
    phi: Vec<u32>,
    resample_count: u64,
    slacks: Vec<usize>,
    hypothesis: serde_json::Value,
    failure: Option<String>,
}

pub fn embed_layer_cmd(
    instance: &Path,
    seed: u64,
    cap: Option<u64>,
    out: Option<&Path>,
) -> Result<i32> {
    let ij: LayerInstanceJson = io::read_json(instance)?;
    io::check_schema(instance, &ij.schema, "layer-instance/v1")?;
    let t = ij.tournament.to_tournament(instance)?;
    let delta_plus = {
        let mut out_deg = vec![0u32; ij.v1];
        for nbrs in &ij.in_nbrs {
            for &v in nbrs {
                if (v as usize) < ij.v1 {
                    out_deg[v as usize] += 1;
                }
            }
        }
        out_deg.into_iter().max().unwrap_or(0)
    };
    let inst = LayerInstance {
        t: &t,
        a_set: ij.a_set,
        b_set: ij.b_set,
        v1: ij.v1,
        in_nbrs: ij.in_nbrs,
        lists: ij.lists,
        b: ij.b,
        c: ij.c,
        delta: ij.delta.to_core()?,
    };
    let flags = inst.hypothesis_flags();
    let hypothesis = serde_json::json!({
        "size_ok": flags.size_ok,
        "delta_ok": flags.delta_ok,
        "degrees_ok": flags.degrees_ok,
    });
    let cap = cap.unwrap_or_else(|| lll::default_cap(inst.v1, delta_plus));
    match lll::embed_layer(&inst, cap, seed).map_err(|e| anyhow!("{e}"))? {
        Ok(emb) => {
            let violations = lll::check_layer_embedding(&inst, &emb.phi);
            if !violations.is_empty() {
                bail!("internal: embedding failed its own checker: {violations:?}");
            }
            println!("embedded after {} resamples", emb.resample_count);
            let json = LayerResultJson {
                schema: "layer-embedding/v1".into(),
                found: true,
                phi: emb.phi,
                resample_count: emb.resample_count,
                slacks: emb.slacks,
                hypothesis,
                failure: None,
            };
            if let Some(path) = out {
                io::write_json(path, &json)?;
            }
            Ok(EXIT_OK)
        }
        Err(fail) => {
            println!(
                "cap {cap} exhausted after {} resamples (last event {:?})",
                fail.resample_count, fail.last_event
            );
            let json = LayerResultJson {
                schema: "layer-embedding/v1".into(),
                found: false,
                phi: Vec::new(),
                resample_count: fail.resample_count,
                slacks: Vec::new(),
                hypothesis,
                failure: Some(format!("{:?}", fail.last_event)),
            };
            if let Some(path) = out {
                io::write_json(path, &json)?;
            }
            Ok(EXIT_NEGATIVE)
        }
    }
}

// ---------------------------------------------------------------------------
// pipeline & bound
// ---------------------------------------------------------------------------

#[derive(Serialize, Debug)]
struct PipelineResultJson {
    schema: String,
    success: bool,
    phi: Option<Vec<u32>>,
    layer_images: Option<Vec<Vec<u32>>>,
    verified: bool,
    attempts: u64,
    j_positions: Vec<usize>,
    set_sizes: Vec<usize>,
    resamples_total: u64,
    warnings: Vec<String>,
    failure: Option<serde_json::Value>,
}

pub fn parse_shrink(spec: Option<&str>) -> Result<Shrink> {
    let mut sh = Shrink::default();
    let Some(spec) = spec else { return Ok(sh) };
    for part in spec.split(',') {
        let (key, value) =
            part.split_once('=').ok_or_else(|| anyhow!("bad shrink component {part:?}"))?;
        let r = parse_ratio(value, "shrink factor")?;
        match key.trim() {
            "s" => sh.sigma_s = r,
            "b" => sh.sigma_b = r,
            "a" => sh.sigma_a = r,
            other => bail!("unknown shrink key {other:?} (s | b | a)"),
        }
    }
    Ok(sh)
}

#[allow(clippy::too_many_arguments)]
pub fn pipeline_cmd(
    digraph: &Path,
    tournament: &Path,
    mode: &str,
    shrink: Option<&str>,
    seed: u64,
    trials: u64,
    out: Option<&Path>,
) -> Result<i32> {
    let g = io::load_graded(digraph)?;
    let t = io::load_tournament(tournament)?;
    let param_mode = match mode {
        "theoretical" => ParamMode::Theoretical,
        "scaled" => ParamMode::Scaled(parse_shrink(shrink)?),
        other => bail!("unknown mode {other:?} (theoretical | scaled)"),
    };
    let params = compute_parameters(&g, param_mode).map_err(|e| anyhow!("{e}"))?;
    let budgets = Budgets::default();
    let mut last = None;
    for attempt in 0..trials.max(1) {
        let rep = find_embedding(&g, &t, &params, seed.wrapping_add(attempt), &budgets);
        let done = rep.outcome.is_ok();
        last = Some((attempt + 1, rep));
        if done {
            break;
        }
    }
    let (attempts, rep) = last.expect("at least one attempt");
    let json = match &rep.outcome {
        Ok(emb) => {
            println!(
                "embedded {} vertices after {} resamples ({} attempt(s))",
                emb.phi.len(),
                rep.resamples_total,
                attempts
            );
            PipelineResultJson {
                schema: "pipeline-result/v1".into(),
                success: true,
                phi: Some(emb.phi.clone()),
                layer_images: Some(emb.layer_images.clone()),
                verified: emb.verified,
                attempts,
                j_positions: rep.j_positions.clone(),
                set_sizes: rep.set_sizes.clone(),
                resamples_total: rep.resamples_total,
                warnings: rep.warnings.clone(),
                failure: None,
            }
        }
        Err(trace) => {
            println!("no embedding found: {:?} — {}", trace.phase, trace.detail);
            PipelineResultJson {
                schema: "pipeline-result/v1".into(),
                success: false,
                phi: None,
                layer_images: None,
                verified: false,
                attempts,
                j_positions: rep.j_positions.clone(),
                set_sizes: rep.set_sizes.clone(),
                resamples_total: rep.resamples_total,
                warnings: rep.warnings.clone(),
                failure: Some(serde_json::json!({
                    "phase": phase_name(&trace.phase),
                    "detail": trace.detail,
                })),
            }
        }
    };
    if let Some(path) = out {
        io::write_json(path, &json)?;
    }
    Ok(if json.success { EXIT_OK } else { EXIT_NEGATIVE })
}

fn phase_name(p: &Phase) -> String {
    match p {
        Phase::MedianOrder => "median-order".into(),
        Phase::Backward { band } => format!("backward/band-{band}"),
        Phase::Forward { layer } => format!("forward/layer-{layer}"),
        Phase::Greedy => "greedy".into(),
        Phase::Verify => "verify".into(),
    }
}

pub fn bound_cmd(digraph: &Path) -> Result<i32> {
    let g = io::load_graded(digraph)?;
    let bound = theorem_bound(&g);
    let sum = layer_sum(&g);
    println!("layer sum  Σ 2^(2(Δ⁻_(i-1)+Δ⁻_i)) |V_i| = {sum}");
    println!("bound      10^9 (Δ⁻)² Δ⁺ · layer sum  = {bound}");
    if let Some(d) = hypercube_dimension(&g) {
        let dominating = hypercube_bound_sum(d);
        let pow17 = num_traits::pow::pow(num_bigint::BigUint::from(17u32), d as usize);
        println!("hypercube d={d}: dominating layer sum Σ C(d,i)·4·16^i = {dominating} = 4·17^{d} (17^{d} = {pow17})");
    }
    Ok(EXIT_OK)
}

/// Recognizes hypercube layer structure: sizes C(d, i) and band in-degrees
/// i + 1.
fn hypercube_dimension(g: &GradedDigraph) -> Option<u32> {
    let h = g.height();
    if h < 2 {
        return None;
    }
    let d = (h - 1) as u32;
    for (i, layer) in g.layers().iter().enumerate() {
        let want = ratio::binomial(d as u64, i as u64);
        if num_bigint::BigUint::from(layer.len()) != want {
            return None;
        }
    }
    for b in 0..h - 1 {
        if g.band_max_in(b) != b as u32 + 1 {
            return None;
        }
    }
    Some(d)
}

// ---------------------------------------------------------------------------
// lower
// ---------------------------------------------------------------------------

pub fn profile_by_name(name: &str) -> Result<Profile> {
    match name {
        "desk" => Ok(Profile::desk()),
        "theoretical" => Ok(Profile::theoretical()),
        other => bail!("unknown profile {other:?} (desk | theoretical)"),
    }
}

pub fn lower_guest(n: u64, delta: u32, profile: &str, seed: u64, out: &Path) -> Result<i32> {
    let profile = profile_by_name(profile)?;
    let p = GuestParams { n, delta, profile };
    let g = lower::sample_guest(&p, seed).map_err(|e| anyhow!("{e}"))?;
    io::save_graded(out, &g)?;
    println!(
        "guest: sides {} + {}, {} edges, max degree {}",
        n,
        n,
        g.base().edge_count(),
        g.base().max_total_degree()
    );
    Ok(EXIT_OK)
}

#[derive(Serialize, Debug)]
struct VerdictJson {
    schema: String,
    op: String,
    mode: String,
    holds: Option<bool>,
    witness: Option<serde_json::Value>,
    budget: Option<serde_json::Value>,
    stats: serde_json::Value,
}

pub fn lower_check_guest(
    guest: &Path,
    threshold: usize,
    mode: &str,
    budget: u64,
    seed: u64,
    out: Option<&Path>,
) -> Result<i32> {
    let g = io::load_graded(guest)?;
    let (code, json) = match mode {
        "exact" => match lower::check_guest_intersection_exact(&g, threshold)
            .map_err(|e| anyhow!("{e}"))?
        {
            IntersectionVerdict::Holds => (
                EXIT_OK,
                VerdictJson {
                    schema: "verdict/v1".into(),
                    op: "guest-intersection".into(),
                    mode: "exact".into(),
                    holds: Some(true),
                    witness: None,
                    budget: None,
                    stats: serde_json::json!({ "threshold": threshold }),
                },
            ),
            IntersectionVerdict::Counterexample { x_set, y_set } => (
                EXIT_NEGATIVE,
                VerdictJson {
                    schema: "verdict/v1".into(),
                    op: "guest-intersection".into(),
                    mode: "exact".into(),
                    holds: Some(false),
                    witness: Some(serde_json::json!({ "x_set": x_set, "y_set": y_set })),
                    budget: None,
                    stats: serde_json::json!({ "threshold": threshold }),
                },
            ),
        },
        "heuristic" => {
            match lower::check_guest_intersection_heuristic(&g, threshold, budget, seed)
                .map_err(|e| anyhow!("{e}"))?
            {
                HeuristicIntersection::Counterexample { x_set, y_set } => (
                    EXIT_NEGATIVE,
                    VerdictJson {
                        schema: "verdict/v1".into(),
                        op: "guest-intersection".into(),
                        mode: "heuristic".into(),
                        holds: Some(false),
                        witness: Some(serde_json::json!({ "x_set": x_set, "y_set": y_set })),
                        budget: Some(serde_json::json!({ "steps": budget })),
                        stats: serde_json::json!({ "threshold": threshold }),
                    },
                ),
                HeuristicIntersection::NoneFoundWithinBudget { steps } => (
                    EXIT_BUDGET,
                    VerdictJson {
                        schema: "verdict/v1".into(),
                        op: "guest-intersection".into(),
                        mode: "heuristic".into(),
                        // One-sided: a heuristic can never certify the
                        // property, so `holds` stays null.
                        holds: None,
                        witness: None,
                        budget: Some(serde_json::json!({ "steps": steps })),
                        stats: serde_json::json!({ "threshold": threshold }),
                    },
                ),
            }
        }
        other => bail!("unknown mode {other:?} (exact | heuristic)"),
    };
    report_verdict(&json, out)?;
    Ok(code)
}

fn report_verdict(json: &VerdictJson, out: Option<&Path>) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(json)?);
    if let Some(path) = out {
        io::write_json(path, json)?;
    }
    Ok(())
}

pub fn lower_partition(
    guest: &Path,
    k: usize,
    part_cap: u64,
    dust_cap: u64,
    trials: u64,
    seed: u64,
    out: Option<&Path>,
) -> Result<i32> {
    let g = io::load_graded(guest)?;
    let ev = lower::check_guest_partition(&g, k, part_cap, dust_cap, trials, seed)
        .map_err(|e| anyhow!("{e}"))?;
    let passed = ev.below == 0;
    let json = VerdictJson {
        schema: "verdict/v1".into(),
        op: "guest-partition".into(),
        mode: "sampled".into(),
        holds: None, // sampling is one-sided evidence
        witness: None,
        budget: Some(serde_json::json!({ "trials": ev.trials })),
        stats: serde_json::json!({
            "min_sum": ev.min_sum.to_string(),
            "threshold": ratio_to_string(&ev.threshold),
            "below_threshold_trials": ev.below,
        }),
    };
    report_verdict(&json, out)?;
    Ok(if passed { EXIT_OK } else { EXIT_NEGATIVE })
}

pub fn lower_host(
    tournament: &Path,
    x: &str,
    mode: &str,
    trials: u64,
    seed: u64,
    out: Option<&Path>,
) -> Result<i32> {
    let t = io::load_tournament(tournament)?;
    let x = parse_ratio(x, "x")?;
    match mode {
        "exact" => {
            if t.vertex_count() > 22 {
                bail!("exact host check is limited to k <= 22");
            }
            let res =
                lower::check_host_exact(&t, &x, 50_000_000).map_err(|e| anyhow!("{e}"))?;
            let json = VerdictJson {
                schema: "verdict/v1".into(),
                op: "host-weight".into(),
                mode: "exact".into(),
                holds: Some(res.holds),
                witness: None,
                budget: None,
                stats: serde_json::json!({
                    "max_w": ratio_to_string(&res.max_w),
                    "threshold": ratio_to_string(&(ratio::ratio(51, 100) * &x * &x)),
                    "vacuous": res.vacuous,
                    "pairs_scanned": res.pairs_scanned,
                }),
            };
            report_verdict(&json, out)?;
            Ok(if res.holds { EXIT_OK } else { EXIT_NEGATIVE })
        }
        "sampled" => {
            let res = lower::check_host_sampled(&t, &x, trials, seed);
            let json = VerdictJson {
                schema: "verdict/v1".into(),
                op: "host-weight".into(),
                mode: "sampled".into(),
                holds: if res.counterexample_found { Some(false) } else { None },
                witness: None,
                budget: Some(serde_json::json!({ "trials": res.trials })),
                stats: serde_json::json!({
                    "max_seen": ratio_to_string(&res.max_seen),
                    "threshold": ratio_to_string(&res.threshold),
                }),
            };
            report_verdict(&json, out)?;
            Ok(if res.counterexample_found { EXIT_NEGATIVE } else { EXIT_BUDGET })
        }
        other => bail!("unknown mode {other:?} (exact | sampled)"),
    }
}

#[derive(Serialize, serde::Deserialize, Debug)]
pub struct LayeredJson {
    pub schema: String,
    pub digraph: DigraphJson,
    pub tournament: TournamentJson,
    pub parts: Vec<(u32, u32)>,
    pub side: u32,
    pub branch_small: bool,
    pub k: u32,
}

pub const LAYERED_SCHEMA: &str = "layered/v1";

impl LayeredJson {
    pub fn to_core(&self, path: &Path) -> Result<LayeredConstruction> {
        let g = self
            .digraph
            .to_graded(path)?
            .ok_or_else(|| anyhow!("layered digraph must carry layers"))?;
        let t = self.tournament.to_tournament(path)?;
        Ok(LayeredConstruction {
            d: g,
            t,
            parts: self.parts.clone(),
            meta: lower::PairMeta {
                branch_small: self.branch_small,
                k: self.k,
                part_sizes: Vec::new(),
                host_size: self.tournament.n,
                host_capped: false,
            },
            side: self.side,
        })
    }
}

pub fn lower_pair(
    n: u64,
    delta: u32,
    profile: &str,
    seed: u64,
    out_guest: &Path,
    out_host: &Path,
) -> Result<i32> {
    let profile = profile_by_name(profile)?;
    let (guest, host, meta) =
        lower::build_bipartite_pair(n, delta, seed, &profile).map_err(|e| anyhow!("{e}"))?;
    io::save_graded(out_guest, &guest)?;
    io::save_tournament(out_host, &host)?;
    println!(
        "pair: branch = {}, host = {} vertices{}, k = {}",
        if meta.branch_small { "small" } else { "large" },
        meta.host_size,
        if meta.host_capped { " (capped)" } else { "" },
        meta.k
    );
    Ok(EXIT_OK)
}

pub fn lower_layered(
    n: u64,
    delta: u32,
    h: usize,
    profile: &str,
    seed: u64,
    out: &Path,
) -> Result<i32> {
    let profile = profile_by_name(profile)?;
    let lc = lower::build_layered(n, delta, h, seed, &profile).map_err(|e| anyhow!("{e}"))?;
    let json = LayeredJson {
        schema: LAYERED_SCHEMA.into(),
        digraph: DigraphJson::from_graded(&lc.d),
        tournament: TournamentJson::from_tournament(&lc.t),
        parts: lc.parts.clone(),
        side: lc.side,
        branch_small: lc.meta.branch_small,
        k: lc.meta.k,
    };
    io::write_json(out, &json)?;
    println!(
        "layered: height {}, side {}, host {} vertices in {} part(s)",
        lc.d.height(),
        lc.side,
        lc.t.vertex_count(),
        lc.parts.len()
    );
    Ok(EXIT_OK)
}

pub fn lower_no_copy(
    digraph: &Path,
    tournament: &Path,
    mode: &str,
    attempts: u64,
    node_budget: u64,
    seed: u64,
    out: Option<&Path>,
) -> Result<i32> {
    let t = io::load_tournament(tournament)?;
    let verdict = match mode {
        "exact" => {
            let (d, _) = io::load_digraph(digraph)?;
            lower::check_no_copy_exact(&d, &t, node_budget)
        }
        "randomized" => {
            let g = io::load_graded(digraph)?;
            lower::check_no_copy_randomized(&g, &t, attempts, seed)
        }
        other => bail!("unknown mode {other:?} (exact | randomized)"),
    };
    let (code, json) = match &verdict {
        NoCopyVerdict::CopyFound { phi } => (
            EXIT_OK,
            VerdictJson {
                schema: "verdict/v1".into(),
                op: "no-copy".into(),
                mode: mode.into(),
                holds: Some(false),
                witness: Some(serde_json::json!({ "phi": phi })),
                budget: None,
                stats: serde_json::Value::Null,
            },
        ),
        NoCopyVerdict::NoCopyExact => (
            EXIT_NEGATIVE,
            VerdictJson {
                schema: "verdict/v1".into(),
                op: "no-copy".into(),
                mode: mode.into(),
                holds: Some(true),
                witness: None,
                budget: None,
                stats: serde_json::Value::Null,
            },
        ),
        NoCopyVerdict::NoCopyWithinBudget { attempts } => (
            EXIT_NEGATIVE,
            VerdictJson {
                schema: "verdict/v1".into(),
                op: "no-copy".into(),
                mode: mode.into(),
                holds: None, // one-sided
                witness: None,
                budget: Some(serde_json::json!({ "attempts": attempts })),
                stats: serde_json::Value::Null,
            },
        ),
        NoCopyVerdict::Unknown { nodes } => (
            EXIT_BUDGET,
            VerdictJson {
                schema: "verdict/v1".into(),
                op: "no-copy".into(),
                mode: mode.into(),
                holds: None,
                witness: None,
                budget: Some(serde_json::json!({ "nodes": nodes })),
                stats: serde_json::Value::Null,
            },
        ),
    };
    report_verdict(&json, out)?;
    Ok(code)
}

#[derive(serde::Deserialize, Debug)]
pub struct PhiJson {
    pub phi: Vec<u32>,
}

pub fn lower_audit(layered: &Path, phi: &Path, out: Option<&Path>) -> Result<i32> {
    let lj: LayeredJson = io::read_json(layered)?;
    io::check_schema(layered, &lj.schema, LAYERED_SCHEMA)?;
    let lc = lj.to_core(layered)?;
    let pj: PhiJson = io::read_json(phi)?;
    if pj.phi.len() != lc.d.base().vertex_count() as usize {
        bail!(
            "phi length {} does not match digraph order {}",
            pj.phi.len(),
            lc.d.base().vertex_count()
        );
    }
    if let Some(&bad) = pj.phi.iter().find(|&&img| img >= lc.t.vertex_count()) {
        bail!("phi image {bad} outside the host");
    }
    let report = lower::monotone_index_audit(&lc, &pj.phi);
    let json = serde_json::json!({
        "schema": "audit/v1",
        "h": report.h,
        "parts": report.part_count,
        "j_indices": report.j_indices,
        "monotone_failures": report.monotone_failures,
        "step_failures": report.step_failures,
        "ladder_consistent": report.ladder_consistent(),
        "embedding_valid": report.embedding_valid,
    });
    println!("{}", serde_json::to_string_pretty(&json)?);
    if let Some(path) = out {
        io::write_json(path, &json)?;
    }
    Ok(if report.ladder_consistent() { EXIT_OK } else { EXIT_NEGATIVE })
}

// ---------------------------------------------------------------------------
// brute
// ---------------------------------------------------------------------------

pub fn brute_ramsey(
    pattern: &Path,
    n_max: u32,
    mode: &str,
    budget_hosts: u64,
    cache_dir: Option<&Path>,
    jobs: Option<usize>,
    out: Option<&Path>,
) -> Result<i32> {
    let (d, _) = io::load_digraph(pattern)?;
    let mode = match mode {
        "labeled" => EnumerationMode::Labeled,
        "canonical" => EnumerationMode::Canonical,
        other => bail!("unknown mode {other:?} (labeled | canonical)"),
    };
    let cache = match cache_dir {
        Some(dir) => Some(RamseyCache::open(dir).context("opening cache")?),
        None => None,
    };
    let jobs = jobs.unwrap_or_else(default_jobs);
    let outcome = parallel::oriented_ramsey_parallel(
        &d,
        n_max,
        mode,
        RamseyBudget { max_level_hosts: budget_hosts },
        jobs,
        cache.as_ref(),
    );
    match outcome {
        RamseyOutcome::Determined { n, witness } => {
            println!("oriented Ramsey number = {n}");
            println!("extremal witness on {} vertices", witness.vertex_count());
            if let Some(path) = out {
                io::write_json(
                    path,
                    &serde_json::json!({
                        "schema": "ramsey/v1",
                        "status": "determined",
                        "n": n,
                        "witness": TournamentJson::from_tournament(&witness),
                    }),
                )?;
            }
            Ok(EXIT_OK)
        }
        RamseyOutcome::Unknown { completed, free_host } => {
            println!("unknown: levels through {completed} all admit pattern-free hosts");
            if let Some(path) = out {
                io::write_json(
                    path,
                    &serde_json::json!({
                        "schema": "ramsey/v1",
                        "status": "unknown",
                        "completed": completed,
                        "free_host": free_host.map(|t| TournamentJson::from_tournament(&t)),
                    }),
                )?;
            }
            Ok(EXIT_BUDGET)
        }
    }
}

pub fn brute_contains(pattern: &Path, host: &Path, node_budget: u64) -> Result<i32> {
    let (d, _) = io::load_digraph(pattern)?;
    let t = io::load_tournament(host)?;
    let mut q = ContainmentQuery::new(&d, &t);
    q.node_budget = node_budget;
    match exact::contains(&q) {
        exact::Containment::Found(phi) => {
            println!("copy found: {phi:?}");
            Ok(EXIT_OK)
        }
        exact::Containment::Absent => {
            println!("no copy (exhaustive)");
            Ok(EXIT_NEGATIVE)
        }
        exact::Containment::Unknown { nodes } => {
            println!("unknown: node budget exhausted at {nodes}");
            Ok(EXIT_BUDGET)
        }
    }
}

pub fn brute_witness(
    pattern: &Path,
    n: u32,
    seed: u64,
    flip_budget: u64,
    out: Option<&Path>,
) -> Result<i32> {
    let (d, _) = io::load_digraph(pattern)?;
    match exact::extremal_witness(&d, n, flip_budget, seed) {
        Some(w) => {
            println!("witness found on {n} vertices");
            if let Some(path) = out {
                io::save_tournament(path, &w)?;
            }
            Ok(EXIT_OK)
        }
        None => {
            println!("no witness found within the flip budget");
            Ok(EXIT_BUDGET)
        }
    }
}

// ---------------------------------------------------------------------------
// convert & experiment
// ---------------------------------------------------------------------------

pub fn convert(input: &Path, output: &Path) -> Result<i32> {
    // Tournaments and digraphs are distinguished by schema (JSON), shape
    // (DOT: complete orientation parses as a tournament), or extension.
    let as_tournament = match io::extension(input) {
        "tb" => true,
        "json" => {
            let value: serde_json::Value = io::read_json(input)?;
            value.get("schema").and_then(|s| s.as_str()) == Some(io::TOURNAMENT_SCHEMA)
        }
        "dot" => io::dot_to_tournament(input).is_ok(),
        other => bail!("unknown input format {other:?}"),
    };
    if as_tournament {
        let t = io::load_tournament(input)?;
        io::save_tournament(output, &t)?;
    } else {
        let (d, graded) = io::load_digraph(input)?;
        match graded {
            Some(g) => io::save_graded(output, &g)?,
            None => io::save_digraph(output, &d)?,
        }
    }
    println!("{} -> {}", input.display(), output.display());
    Ok(EXIT_OK)
}

pub fn experiment_cmd(spec_path: &Path, jobs: Option<usize>, timing: bool) -> Result<i32> {
    let (spec, base) = experiment::load_spec(spec_path)?;
    let jobs = jobs.unwrap_or_else(default_jobs);
    let summary = experiment::run_experiment(&spec, &base, jobs, timing)?;
    println!(
        "{} rows, {} successes -> {} / {}",
        summary.rows, summary.successes, spec.out_csv, spec.out_json
    );
    for d in &summary.per_digraph {
        println!("  {}: {}", d.digraph, d.success_rate);
    }
    Ok(EXIT_OK)
}

// Shared helper for tests and main: best-effort u64 from big rationals.
pub fn ratio_to_u64(r: &num_rational::BigRational) -> Option<u64> {
    r.to_integer().to_u64()
}

pub fn path_buf(s: &str) -> PathBuf {
    PathBuf::from(s)
}
