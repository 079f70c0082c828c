//! Experiment harness: runs the embedding pipeline over the cross product of
//! digraph specs, host specs and seeds, emitting one CSV row per run plus a
//! JSON summary. Output bytes are deterministic for a fixed spec; wall-clock
//! timing is opt-in because it breaks byte-level reproducibility.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use oramsey_core::digraph::{make_grid, make_hypercube, make_random_graded, GradedDigraph};
use oramsey_core::params::{compute_parameters, ParamMode, Shrink};
use oramsey_core::pipeline::{find_embedding, Budgets};
use oramsey_core::rng;
use oramsey_core::Tournament;

use crate::io::{self, parse_ratio};

pub const EXPERIMENT_SCHEMA: &str = "experiment/v1";
pub const CSV_HEADER_COMMENT: &str = "# oramsey experiment csv v1";
pub const CSV_COLUMNS: &str =
    "digraph,n,h,delta_minus,delta_plus,host_size,seed,success,resamples,wall_ms";

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum DigraphSpec {
    Grid { d: u32, k: u32 },
    Hypercube { d: u32 },
    Path { n: u32 },
    RandomGraded { h: usize, max_width: u32, max_in: u32, max_out: u32, gen_seed: u64 },
    File { path: String },
}

impl DigraphSpec {
    pub fn label(&self) -> String {
        match self {
            DigraphSpec::Grid { d, k } => format!("grid-d{d}-k{k}"),
            DigraphSpec::Hypercube { d } => format!("hypercube-d{d}"),
            DigraphSpec::Path { n } => format!("path-n{n}"),
            DigraphSpec::RandomGraded { h, max_width, max_in, max_out, gen_seed } => {
                format!("random-h{h}-w{max_width}-in{max_in}-out{max_out}-g{gen_seed}")
            }
            DigraphSpec::File { path } => {
                let stem = Path::new(path)
                    .file_stem()
                    .and_then(|s| s.to_str())
                    .unwrap_or("file");
                format!("file-{stem}")
            }
        }
    }

    pub fn materialize(&self, base_dir: &Path) -> Result<GradedDigraph> {
        Ok(match self {
            DigraphSpec::Grid { d, k } => make_grid(*d, *k)?,
            DigraphSpec::Hypercube { d } => make_hypercube(*d)?,
            DigraphSpec::Path { n } => make_grid(1, *n)?,
            DigraphSpec::RandomGraded { h, max_width, max_in, max_out, gen_seed } => {
                make_random_graded(*h, *max_width, *max_in, *max_out, *gen_seed)
            }
            DigraphSpec::File { path } => {
                io::load_graded(&base_dir.join(path)).map_err(anyhow::Error::from)?
            }
        })
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum HostSpec {
    Random {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        size: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        size_factor: Option<u32>,
    },
    Transitive {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        size: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        size_factor: Option<u32>,
    },
    File { path: String },
}

impl HostSpec {
    fn size_for(&self, digraph_n: u32) -> Result<Option<u32>> {
        let pick = |size: &Option<u32>, factor: &Option<u32>| -> Result<u32> {
            match (size, factor) {
                (Some(s), None) => Ok(*s),
                (None, Some(f)) => Ok(f * digraph_n),
                _ => bail!("host spec needs exactly one of size / size_factor"),
            }
        };
        Ok(match self {
            HostSpec::Random { size, size_factor } => Some(pick(size, size_factor)?),
            HostSpec::Transitive { size, size_factor } => Some(pick(size, size_factor)?),
            HostSpec::File { .. } => None,
        })
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, Default)]
pub struct ShrinkJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
}

impl ShrinkJson {
    pub fn to_core(&self) -> Result<Shrink> {
        let mut sh = Shrink::default();
        if let Some(s) = &self.s {
            sh.sigma_s = parse_ratio(s, "shrink s")?;
        }
        if let Some(b) = &self.b {
            sh.sigma_b = parse_ratio(b, "shrink b")?;
        }
        if let Some(a) = &self.a {
            sh.sigma_a = parse_ratio(a, "shrink a")?;
        }
        Ok(sh)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ExperimentSpec {
    pub schema: String,
    pub digraphs: Vec<DigraphSpec>,
    pub hosts: Vec<HostSpec>,
    /// "scaled" (default) or "theoretical".
    #[serde(default)]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shrink: Option<ShrinkJson>,
    pub seeds: Vec<u64>,
    pub out_csv: String,
    pub out_json: String,
}

#[derive(Clone, Debug)]
struct Row {
    digraph: String,
    n: u32,
    h: usize,
    delta_minus: u32,
    delta_plus: u32,
    host_size: u32,
    seed: u64,
    success: bool,
    resamples: u64,
    wall_ms: u64,
    error: String,
}

#[derive(Serialize, Debug)]
pub struct DigraphSummary {
    pub digraph: String,
    pub trials: u64,
    pub successes: u64,
    /// Exact fraction "successes/trials".
    pub success_rate: String,
    pub median_resamples: u64,
    pub total_wall_ms: u64,
}

#[derive(Serialize, Debug)]
pub struct Summary {
    pub schema: String,
    pub rows: u64,
    pub successes: u64,
    pub per_digraph: Vec<DigraphSummary>,
}

/// Runs the cross product. Per-row randomness: the host (when generated)
/// draws from `child_seed(seed, 1)` and the pipeline from
/// `child_seed(seed, 2)`, so reruns of the same spec are byte-identical.
/// `RAMSEY_BUDGET_MS` (when set) marks rows that overran the cap as budget
/// failures after the fact.
pub fn run_experiment(
    spec: &ExperimentSpec,
    base_dir: &Path,
    jobs: usize,
    timing: bool,
) -> Result<Summary> {
    if spec.schema != EXPERIMENT_SCHEMA {
        bail!("experiment schema {:?}, expected {EXPERIMENT_SCHEMA:?}", spec.schema);
    }
    if spec.seeds.is_empty() {
        bail!("seed list must be non-empty");
    }
    let mode = spec.mode.as_deref().unwrap_or("scaled");
    let shrink = spec.shrink.clone().unwrap_or_default().to_core()?;
    let budget_ms: Option<u64> = std::env::var("RAMSEY_BUDGET_MS")
        .ok()
        .and_then(|v| v.parse().ok());

    // Materialize digraphs once (cheap relative to runs).
    let mut digraphs = Vec::new();
    for ds in &spec.digraphs {
        let g = ds
            .materialize(base_dir)
            .with_context(|| format!("digraph spec {}", ds.label()))?;
        digraphs.push((ds.label(), g));
    }

    // Cross product of work items, in deterministic order.
    struct Item<'a> {
        label: &'a str,
        g: &'a GradedDigraph,
        host: &'a HostSpec,
        seed: u64,
    }
    let mut items = Vec::new();
    for (label, g) in &digraphs {
        for host in &spec.hosts {
            for &seed in &spec.seeds {
                items.push(Item { label, g, host, seed });
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .context("thread pool")?;
    let rows: Vec<Row> = pool.install(|| {
        items
            .par_iter()
            .map(|item| run_row(item.label, item.g, item.host, item.seed, mode, &shrink, base_dir, timing, budget_ms))
            .collect()
    });

    // CSV: fixed, versioned columns; partial failures stay as rows.
    let mut csv = String::new();
    csv.push_str(CSV_HEADER_COMMENT);
    csv.push('\n');
    csv.push_str(CSV_COLUMNS);
    csv.push('\n');
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.digraph,
            r.n,
            r.h,
            r.delta_minus,
            r.delta_plus,
            r.host_size,
            r.seed,
            u8::from(r.success),
            r.resamples,
            r.wall_ms
        ));
    }
    std::fs::write(base_dir.join(&spec.out_csv), csv)?;

    let mut per: std::collections::BTreeMap<String, Vec<&Row>> = Default::default();
    for r in &rows {
        per.entry(r.digraph.clone()).or_default().push(r);
    }
    let per_digraph: Vec<DigraphSummary> = per
        .into_iter()
        .map(|(digraph, rs)| {
            let trials = rs.len() as u64;
            let successes = rs.iter().filter(|r| r.success).count() as u64;
            let mut resamples: Vec<u64> = rs.iter().map(|r| r.resamples).collect();
            resamples.sort_unstable();
            DigraphSummary {
                digraph,
                trials,
                successes,
                success_rate: format!("{successes}/{trials}"),
                median_resamples: resamples[resamples.len() / 2],
                total_wall_ms: rs.iter().map(|r| r.wall_ms).sum(),
            }
        })
        .collect();
    let summary = Summary {
        schema: "experiment-summary/v1".into(),
        rows: rows.len() as u64,
        successes: rows.iter().filter(|r| r.success).count() as u64,
        per_digraph,
    };
    io::write_json(&base_dir.join(&spec.out_json), &summary)?;
    Ok(summary)
}

#[allow(clippy::too_many_arguments)]
fn run_row(
    label: &str,
    g: &GradedDigraph,
    host_spec: &HostSpec,
    seed: u64,
    mode: &str,
    shrink: &Shrink,
    base_dir: &Path,
    timing: bool,
    budget_ms: Option<u64>,
) -> Row {
    let start = Instant::now();
    let n = g.base().vertex_count();
    let mut row = Row {
        digraph: label.to_string(),
        n,
        h: g.height(),
        delta_minus: g.base().max_in_degree(),
        delta_plus: g.base().max_out_degree(),
        host_size: 0,
        seed,
        success: false,
        resamples: 0,
        wall_ms: 0,
        error: String::new(),
    };
    // Errors never abort the batch; they become failed rows.
    let attempt = || -> Result<(bool, u64, u32)> {
        let host = match host_spec {
            HostSpec::Random { .. } => {
                let size = host_spec.size_for(n)?.expect("generated host");
                Tournament::random(size, rng::child_seed(seed, 1))
            }
            HostSpec::Transitive { .. } => {
                let size = host_spec.size_for(n)?.expect("generated host");
                Tournament::transitive(size)
            }
            HostSpec::File { path } => {
                io::load_tournament(&base_dir.join(path)).map_err(anyhow::Error::from)?
            }
        };
        let param_mode = match mode {
            "theoretical" => ParamMode::Theoretical,
            "scaled" => ParamMode::Scaled(shrink.clone()),
            other => bail!("unknown mode {other:?}"),
        };
        let params = compute_parameters(g, param_mode)?;
        let rep = find_embedding(g, &host, &params, rng::child_seed(seed, 2), &Budgets::default());
        Ok((rep.outcome.is_ok(), rep.resamples_total, host.vertex_count()))
    };
    match attempt() {
        Ok((success, resamples, host_size)) => {
            row.success = success;
            row.resamples = resamples;
            row.host_size = host_size;
        }
        Err(e) => {
            row.error = e.to_string();
        }
    }
    let elapsed = start.elapsed().as_millis() as u64;
    if timing {
        row.wall_ms = elapsed;
    }
    if let Some(cap) = budget_ms {
        if elapsed > cap {
            row.success = false;
            row.error = format!("row exceeded RAMSEY_BUDGET_MS = {cap}");
        }
    }
    row
}

/// Loads a spec file (paths inside resolve relative to the spec's directory).
pub fn load_spec(path: &Path) -> Result<(ExperimentSpec, PathBuf)> {
    let spec: ExperimentSpec = io::read_json(path)?;
    let base = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    Ok((spec, base))
}
