//! File formats: versioned JSON schemas, DOT export/import and the compact
//! tournament bitstring format. All vertex indices in files are 0-based;
//! tournament bitstrings are upper-triangular, row-major, bit `1` meaning
//! lower index → higher index.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use oramsey_core::digraph::{Digraph, GradedDigraph};
use oramsey_core::ratio::Sqrt2Scaled;
use oramsey_core::Tournament;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Format { path: String, message: String },
    #[error("{path} line {line}: {message}")]
    Dot { path: String, line: usize, message: String },
}

fn format_err(path: &Path, message: impl Into<String>) -> IoError {
    IoError::Format { path: path.display().to_string(), message: message.into() }
}

// ---------------------------------------------------------------------------
// JSON schemas
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DigraphJson {
    pub schema: String,
    pub n: u32,
    pub edges: Vec<(u32, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layers: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

pub const DIGRAPH_SCHEMA: &str = "digraph/v1";
pub const TOURNAMENT_SCHEMA: &str = "tournament/v1";
pub const ORDER_SCHEMA: &str = "order/v1";

impl DigraphJson {
    pub fn from_digraph(d: &Digraph) -> Self {
        DigraphJson {
            schema: DIGRAPH_SCHEMA.into(),
            n: d.vertex_count(),
            edges: d.edges().to_vec(),
            layers: None,
            labels: None,
        }
    }

    pub fn from_graded(g: &GradedDigraph) -> Self {
        DigraphJson {
            schema: DIGRAPH_SCHEMA.into(),
            n: g.base().vertex_count(),
            edges: g.base().edges().to_vec(),
            layers: Some(g.layers().to_vec()),
            labels: g.labels().map(|l| l.to_vec()),
        }
    }

    pub fn to_digraph(&self, path: &Path) -> Result<Digraph, IoError> {
        Digraph::new(self.n, self.edges.clone()).map_err(|e| format_err(path, e.to_string()))
    }

    /// Graded view when layers are present (validated).
    pub fn to_graded(&self, path: &Path) -> Result<Option<GradedDigraph>, IoError> {
        match &self.layers {
            None => Ok(None),
            Some(layers) => {
                let base = self.to_digraph(path)?;
                let mut g = GradedDigraph::new(base, layers.clone())
                    .map_err(|e| format_err(path, e.to_string()))?;
                if let Some(labels) = &self.labels {
                    if labels.len() != self.n as usize {
                        return Err(format_err(path, "labels length mismatch"));
                    }
                    g = g.with_labels(labels.clone());
                }
                Ok(Some(g))
            }
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TournamentJson {
    pub schema: String,
    pub n: u32,
    /// Upper-triangular bits, row-major; '1' = lower index → higher index.
    pub bits: String,
}

impl TournamentJson {
    pub fn from_tournament(t: &Tournament) -> Self {
        let bits: String =
            t.upper_bits().into_iter().map(|b| if b { '1' } else { '0' }).collect();
        TournamentJson { schema: TOURNAMENT_SCHEMA.into(), n: t.vertex_count(), bits }
    }

    pub fn to_tournament(&self, path: &Path) -> Result<Tournament, IoError> {
        parse_bits(self.n, &self.bits, path)
    }
}

fn parse_bits(n: u32, bits: &str, path: &Path) -> Result<Tournament, IoError> {
    let expected = (n as usize) * (n as usize).saturating_sub(1) / 2;
    if bits.len() != expected {
        return Err(format_err(
            path,
            format!("bitstring length {} does not match n = {n} (want {expected})", bits.len()),
        ));
    }
    let mut decoded = Vec::with_capacity(expected);
    for (i, c) in bits.chars().enumerate() {
        match c {
            '0' => decoded.push(false),
            '1' => decoded.push(true),
            other => {
                return Err(format_err(path, format!("bit {i} is '{other}', expected 0 or 1")))
            }
        }
    }
    Tournament::from_upper_bits(n, &decoded).map_err(|e| format_err(path, e.to_string()))
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct OrderJson {
    pub schema: String,
    pub perm: Vec<u32>,
    pub forward_edges: u64,
}

/// Rational numbers travel as `"num/den"` strings to stay exact.
pub fn ratio_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio(s: &str, what: &str) -> anyhow::Result<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let numer: BigInt =
        n.parse().map_err(|_| anyhow::anyhow!("{what}: bad numerator in {s:?}"))?;
    let denom: BigInt =
        d.parse().map_err(|_| anyhow::anyhow!("{what}: bad denominator in {s:?}"))?;
    if denom == BigInt::from(0) {
        anyhow::bail!("{what}: zero denominator in {s:?}");
    }
    Ok(BigRational::new(numer, denom))
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct RadicalJson {
    /// Rational coefficient as "num/den".
    pub coeff: String,
    /// The value is `coeff · 2^{-sqrt_half_pow/2}`.
    #[serde(default)]
    pub sqrt_half_pow: u32,
}

impl RadicalJson {
    pub fn from_core(v: &Sqrt2Scaled) -> Self {
        RadicalJson { coeff: ratio_to_string(v.coeff()), sqrt_half_pow: v.sqrt_half_pow() }
    }

    pub fn to_core(&self) -> anyhow::Result<Sqrt2Scaled> {
        Ok(Sqrt2Scaled::new(parse_ratio(&self.coeff, "delta coefficient")?, self.sqrt_half_pow))
    }
}

// ---------------------------------------------------------------------------
// Typed readers/writers
// ---------------------------------------------------------------------------

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Canonical JSON emission: pretty, trailing newline, stable field order
/// (struct order), so identical values yield identical bytes.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn check_schema(path: &Path, got: &str, want: &str) -> Result<(), IoError> {
    if got != want {
        return Err(format_err(path, format!("schema {got:?}, expected {want:?}")));
    }
    Ok(())
}

/// Loads a digraph (graded when layers are present) from JSON or DOT.
pub fn load_digraph(path: &Path) -> Result<(Digraph, Option<GradedDigraph>), IoError> {
    match extension(path) {
        "dot" => {
            let (d, g) = dot_to_digraph(path)?;
            Ok((d, g))
        }
        _ => {
            let dj: DigraphJson = read_json(path)?;
            check_schema(path, &dj.schema, DIGRAPH_SCHEMA)?;
            let graded = dj.to_graded(path)?;
            Ok((dj.to_digraph(path)?, graded))
        }
    }
}

/// Loads a graded digraph, inferring the partition when none is stored.
pub fn load_graded(path: &Path) -> Result<GradedDigraph, IoError> {
    let (base, graded) = load_digraph(path)?;
    match graded {
        Some(g) => Ok(g),
        None => oramsey_core::digraph::infer_graded_partition(&base)
            .map_err(|e| format_err(path, format!("not graded: {e}"))),
    }
}

pub fn save_graded(path: &Path, g: &GradedDigraph) -> Result<(), IoError> {
    match extension(path) {
        "dot" => fs::write(path, digraph_to_dot(g.base(), Some(g))).map_err(IoError::from),
        _ => write_json(path, &DigraphJson::from_graded(g)),
    }
}

pub fn save_digraph(path: &Path, d: &Digraph) -> Result<(), IoError> {
    match extension(path) {
        "dot" => fs::write(path, digraph_to_dot(d, None)).map_err(IoError::from),
        _ => write_json(path, &DigraphJson::from_digraph(d)),
    }
}

pub fn load_tournament(path: &Path) -> Result<Tournament, IoError> {
    match extension(path) {
        "tb" => {
            let text = fs::read_to_string(path)?;
            let mut lines = text.lines();
            let n: u32 = lines
                .next()
                .ok_or_else(|| format_err(path, "missing size line"))?
                .trim()
                .parse()
                .map_err(|_| format_err(path, "bad size line"))?;
            let bits = lines.next().unwrap_or("").trim();
            parse_bits(n, bits, path)
        }
        "dot" => dot_to_tournament(path),
        _ => {
            let tj: TournamentJson = read_json(path)?;
            check_schema(path, &tj.schema, TOURNAMENT_SCHEMA)?;
            tj.to_tournament(path)
        }
    }
}

pub fn save_tournament(path: &Path, t: &Tournament) -> Result<(), IoError> {
    match extension(path) {
        "tb" => {
            let bits: String =
                t.upper_bits().into_iter().map(|b| if b { '1' } else { '0' }).collect();
            fs::write(path, format!("{}\n{}\n", t.vertex_count(), bits)).map_err(IoError::from)
        }
        "dot" => fs::write(path, tournament_to_dot(t)).map_err(IoError::from),
        _ => write_json(path, &TournamentJson::from_tournament(t)),
    }
}

pub fn extension(path: &Path) -> &str {
    path.extension().and_then(|e| e.to_str()).unwrap_or("")
}

// ---------------------------------------------------------------------------
// DOT
// ---------------------------------------------------------------------------

/// Emits `u -> v;` per edge; layers and labels become node attributes so the
/// round trip is lossless.
pub fn digraph_to_dot(d: &Digraph, graded: Option<&GradedDigraph>) -> String {
    let mut out = String::from("digraph g {\n");
    if let Some(g) = graded {
        for v in 0..d.vertex_count() {
            let mut attrs = format!("layer={}", g.layer_of(v));
            if let Some(labels) = g.labels() {
                attrs.push_str(&format!(", label=\"{}\"", labels[v as usize]));
            }
            out.push_str(&format!("  {v} [{attrs}];\n"));
        }
    } else {
        for v in 0..d.vertex_count() {
            out.push_str(&format!("  {v};\n"));
        }
    }
    for &(u, v) in d.edges() {
        out.push_str(&format!("  {u} -> {v};\n"));
    }
    out.push_str("}\n");
    out
}

pub fn tournament_to_dot(t: &Tournament) -> String {
    let mut out = String::from("digraph tournament {\n");
    for v in 0..t.vertex_count() {
        out.push_str(&format!("  {v};\n"));
    }
    for u in 0..t.vertex_count() {
        for v in 0..t.vertex_count() {
            if u != v && t.has_edge(u, v) {
                out.push_str(&format!("  {u} -> {v};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

struct DotBody {
    n: u32,
    edges: Vec<(u32, u32)>,
    layers: Vec<Option<u32>>,
    labels: Vec<Option<String>>,
}

fn parse_dot(path: &Path) -> Result<DotBody, IoError> {
    let text = fs::read_to_string(path)?;
    let mut nodes: Vec<(u32, Option<u32>, Option<String>)> = Vec::new();
    let mut edges = Vec::new();
    let dot_err = |line: usize, message: String| IoError::Dot {
        path: path.display().to_string(),
        line: line + 1,
        message,
    };
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty()
            || line.starts_with("digraph")
            || line == "{"
            || line == "}"
            || line.starts_with("//")
        {
            continue;
        }
        let line = line.strip_suffix(';').unwrap_or(line).trim();
        if let Some((lhs, rhs)) = line.split_once("->") {
            let u: u32 = lhs
                .trim()
                .parse()
                .map_err(|_| dot_err(ln, format!("bad edge tail {lhs:?}")))?;
            let v: u32 = rhs
                .trim()
                .parse()
                .map_err(|_| dot_err(ln, format!("bad edge head {rhs:?}")))?;
            edges.push((u, v));
        } else {
            // Node line: `id` or `id [layer=N, label="..."]`.
            let (id_part, attrs) = match line.split_once('[') {
                Some((id, rest)) => {
                    (id.trim(), Some(rest.strip_suffix(']').unwrap_or(rest).trim()))
                }
                None => (line, None),
            };
            let id: u32 = id_part
                .parse()
                .map_err(|_| dot_err(ln, format!("bad node id {id_part:?}")))?;
            let mut layer = None;
            let mut label = None;
            if let Some(attrs) = attrs {
                for attr in attrs.split(',') {
                    let (key, value) = attr
                        .split_once('=')
                        .ok_or_else(|| dot_err(ln, format!("bad attribute {attr:?}")))?;
                    match key.trim() {
                        "layer" => {
                            layer = Some(value.trim().parse().map_err(|_| {
                                dot_err(ln, format!("bad layer value {value:?}"))
                            })?)
                        }
                        "label" => label = Some(value.trim().trim_matches('"').to_string()),
                        other => return Err(dot_err(ln, format!("unknown attribute {other:?}"))),
                    }
                }
            }
            nodes.push((id, layer, label));
        }
    }
    let n = nodes
        .iter()
        .map(|&(id, _, _)| id + 1)
        .chain(edges.iter().map(|&(u, v)| u.max(v) + 1))
        .max()
        .unwrap_or(0);
    let mut layers = vec![None; n as usize];
    let mut labels = vec![None; n as usize];
    for (id, layer, label) in nodes {
        layers[id as usize] = layer;
        labels[id as usize] = label;
    }
    Ok(DotBody { n, edges, layers, labels })
}

pub fn dot_to_digraph(path: &Path) -> Result<(Digraph, Option<GradedDigraph>), IoError> {
    let body = parse_dot(path)?;
    let d = Digraph::new(body.n, body.edges).map_err(|e| format_err(path, e.to_string()))?;
    let graded = if body.layers.iter().all(|l| l.is_some()) && body.n > 0 {
        let h = body.layers.iter().flatten().max().copied().unwrap_or(0) as usize + 1;
        let mut layers = vec![Vec::new(); h];
        for (v, l) in body.layers.iter().enumerate() {
            layers[l.unwrap() as usize].push(v as u32);
        }
        let mut g = GradedDigraph::new(d.clone(), layers)
            .map_err(|e| format_err(path, e.to_string()))?;
        if body.labels.iter().all(|l| l.is_some()) {
            g = g.with_labels(body.labels.into_iter().map(Option::unwrap).collect());
        }
        Some(g)
    } else {
        None
    };
    Ok((d, graded))
}

pub fn dot_to_tournament(path: &Path) -> Result<Tournament, IoError> {
    let body = parse_dot(path)?;
    let n = body.n;
    let mut forward = vec![false; (n as usize) * (n as usize).saturating_sub(1) / 2];
    let mut seen = vec![false; forward.len()];
    let pair_index = |u: u32, v: u32| -> usize {
        let (lo, hi) = (u.min(v) as usize, u.max(v) as usize);
        lo * (n as usize) - lo * (lo + 1) / 2 + (hi - lo - 1)
    };
    for &(u, v) in &body.edges {
        if u == v {
            return Err(format_err(path, format!("self-loop at {u}")));
        }
        let idx = pair_index(u, v);
        if seen[idx] {
            return Err(format_err(path, format!("pair ({u}, {v}) oriented twice")));
        }
        seen[idx] = true;
        forward[idx] = u < v;
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(format_err(path, format!("orientation incomplete (pair index {missing})")));
    }
    Tournament::from_upper_bits(n, &forward).map_err(|e| format_err(path, e.to_string()))
}
