//! Digraph and graded-digraph representations, generators and validators.
//!
//! Vertices are dense `u32` indices. Generators that have a natural labeling
//! (grid tuples, hypercube bit patterns) keep the labels as side metadata for
//! IO; the algorithms only ever see indices. All types are immutable after
//! construction and degree data is computed eagerly.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

/// Default cap on generated vertex counts.
pub const DEFAULT_VERTEX_BUDGET: u64 = 1 << 22;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DigraphError {
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(u32, u32),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),
}

/// A simple digraph: no self-loops, no duplicate edges (2-cycles are allowed
/// here; graded digraphs exclude them structurally).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: u32,
    edges: Vec<(u32, u32)>,
    out_adj: Vec<Vec<u32>>,
    in_adj: Vec<Vec<u32>>,
}

impl Digraph {
    pub fn new(n: u32, mut edges: Vec<(u32, u32)>) -> Result<Self, DigraphError> {
        edges.sort_unstable();
        let mut out_adj = vec![Vec::new(); n as usize];
        let mut in_adj = vec![Vec::new(); n as usize];
        let mut prev: Option<(u32, u32)> = None;
        for &(u, v) in &edges {
            if u >= n {
                return Err(DigraphError::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(DigraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(DigraphError::SelfLoop(u));
            }
            if prev == Some((u, v)) {
                return Err(DigraphError::DuplicateEdge(u, v));
            }
            prev = Some((u, v));
            out_adj[u as usize].push(v);
            in_adj[v as usize].push(u);
        }
        for l in in_adj.iter_mut() {
            l.sort_unstable();
        }
        Ok(Digraph { n, edges, out_adj, in_adj })
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    /// Edges sorted lexicographically.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn out_neighbors(&self, v: u32) -> &[u32] {
        &self.out_adj[v as usize]
    }

    pub fn in_neighbors(&self, v: u32) -> &[u32] {
        &self.in_adj[v as usize]
    }

    pub fn out_degree(&self, v: u32) -> u32 {
        self.out_adj[v as usize].len() as u32
    }

    pub fn in_degree(&self, v: u32) -> u32 {
        self.in_adj[v as usize].len() as u32
    }

    pub fn max_out_degree(&self) -> u32 {
        (0..self.n).map(|v| self.out_degree(v)).max().unwrap_or(0)
    }

    pub fn max_in_degree(&self) -> u32 {
        (0..self.n).map(|v| self.in_degree(v)).max().unwrap_or(0)
    }

    /// Maximum degree of the underlying undirected graph. Valid because the
    /// graded digraphs we build contain no 2-cycles.
    pub fn max_total_degree(&self) -> u32 {
        (0..self.n).map(|v| self.out_degree(v) + self.in_degree(v)).max().unwrap_or(0)
    }

    /// Weakly connected components, each sorted, in order of smallest member.
    pub fn weak_components(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.n as usize];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s as usize] {
                continue;
            }
            let mut stack = vec![s];
            seen[s as usize] = true;
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in self.out_neighbors(v).iter().chain(self.in_neighbors(v)) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GradedError {
    #[error("layers do not partition the vertex set")]
    NotAPartition,
    #[error("layer {0} is empty")]
    EmptyLayer(usize),
    #[error("edge ({0}, {1}) does not cross consecutive layers")]
    EdgeSkipsLayer(u32, u32),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NotGraded {
    /// The digraph has a directed cycle (witness lists the cycle vertices).
    #[error("digraph contains a directed cycle: {0:?}")]
    Cycle(Vec<u32>),
    /// Some edge spans more than one longest-path rank.
    #[error("edge ({}, {}) spans {gap} ranks", edge.0, edge.1)]
    SkewEdge { edge: (u32, u32), gap: u32 },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("vertex budget exceeded: {requested} > {budget}")]
    BudgetExceeded { requested: u64, budget: u64 },
}

/// A digraph together with a graded partition `V_1 ∪ … ∪ V_h`: every edge goes
/// from `V_i` to `V_{i+1}`. `band_max_in[i]` is the maximum in-degree of the
/// subgraph induced on layers `i` and `i+1` (0-based bands `0..h-1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDigraph {
    base: Digraph,
    layers: Vec<Vec<u32>>,
    layer_of: Vec<u32>,
    band_max_in: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl GradedDigraph {
    pub fn new(base: Digraph, layers: Vec<Vec<u32>>) -> Result<Self, GradedError> {
        let n = base.vertex_count() as usize;
        let mut layer_of = vec![u32::MAX; n];
        let mut covered = 0usize;
        for (li, layer) in layers.iter().enumerate() {
            if layer.is_empty() {
                return Err(GradedError::EmptyLayer(li));
            }
            for &v in layer {
                if (v as usize) >= n || layer_of[v as usize] != u32::MAX {
                    return Err(GradedError::NotAPartition);
                }
                layer_of[v as usize] = li as u32;
                covered += 1;
            }
        }
        if covered != n {
            return Err(GradedError::NotAPartition);
        }
        for &(u, v) in base.edges() {
            if layer_of[v as usize] != layer_of[u as usize] + 1 {
                return Err(GradedError::EdgeSkipsLayer(u, v));
            }
        }
        // In the induced subgraph on layers i, i+1 every in-edge of a layer
        // i+1 vertex comes from layer i, so the band maximum is just the
        // maximum in-degree over that layer.
        let h = layers.len();
        let mut band_max_in = vec![0u32; h.saturating_sub(1)];
        for (b, slot) in band_max_in.iter_mut().enumerate() {
            *slot = layers[b + 1].iter().map(|&v| base.in_degree(v)).max().unwrap_or(0);
        }
        Ok(GradedDigraph { base, layers, layer_of, band_max_in, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        debug_assert_eq!(labels.len(), self.base.vertex_count() as usize);
        self.labels = Some(labels);
        self
    }

    pub fn base(&self) -> &Digraph {
        &self.base
    }

    pub fn height(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[Vec<u32>] {
        &self.layers
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.len()).collect()
    }

    pub fn layer_of(&self, v: u32) -> u32 {
        self.layer_of[v as usize]
    }

    /// Maximum in-degree within band `b` (between layers `b` and `b+1`).
    pub fn band_max_in(&self, b: usize) -> u32 {
        self.band_max_in[b]
    }

    pub fn band_max_ins(&self) -> &[u32] {
        &self.band_max_in
    }

    /// Band maximum in 1-based indexing with the sentinel convention
    /// `Δ⁻_0 = Δ⁻_h = 0`.
    pub fn delta_band(&self, i: usize) -> u32 {
        if i == 0 || i >= self.height() {
            0
        } else {
            self.band_max_in[i - 1]
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
}

/// The `d`-dimensional grid digraph on `[k]^d`: edges increment one
/// coordinate; layers collect equal coordinate sums.
pub fn make_grid(d: u32, k: u32) -> Result<GradedDigraph, GenError> {
    make_grid_with_budget(d, k, DEFAULT_VERTEX_BUDGET)
}

pub fn make_grid_with_budget(d: u32, k: u32, budget: u64) -> Result<GradedDigraph, GenError> {
    assert!(d >= 1 && k >= 1);
    let mut count: u64 = 1;
    for _ in 0..d {
        count = count.saturating_mul(k as u64);
        if count > budget {
            return Err(GenError::BudgetExceeded { requested: count, budget });
        }
    }
    let n = count as u32;
    // Vertex index = mixed-radix encoding of (x_1 - 1, ..., x_d - 1), most
    // significant coordinate first.
    let mut coords = vec![0u32; d as usize]; // stores x_i - 1 in 0..k
    let mut edges = Vec::new();
    let mut labels = Vec::with_capacity(n as usize);
    for idx in 0..n {
        let mut rem = idx;
        for i in (0..d as usize).rev() {
            coords[i] = rem % k;
            rem /= k;
        }
        let mut label = String::new();
        for (i, &c) in coords.iter().enumerate() {
            if i > 0 {
                label.push(',');
            }
            label.push_str(&format!("{}", c + 1));
        }
        labels.push(label);
        let mut stride = 1u32;
        for i in (0..d as usize).rev() {
            if coords[i] + 1 < k {
                edges.push((idx, idx + stride));
            }
            stride *= k;
        }
    }
    let base = Digraph::new(n, edges).expect("grid edges are simple");
    let h = (d * (k - 1) + 1) as usize;
    let mut layers = vec![Vec::new(); h];
    for idx in 0..n {
        let mut rem = idx;
        let mut sum = 0u32;
        for _ in 0..d {
            sum += rem % k;
            rem /= k;
        }
        layers[sum as usize].push(idx);
    }
    Ok(GradedDigraph::new(base, layers).expect("grid layering is graded").with_labels(labels))
}

/// The oriented hypercube on `{0,1}^d`: edges flip a 0 to 1; layer `i`
/// collects Hamming weight `i`, and the band below weight `i+1` has maximum
/// in-degree `i+1`.
pub fn make_hypercube(d: u32) -> Result<GradedDigraph, GenError> {
    make_hypercube_with_budget(d, DEFAULT_VERTEX_BUDGET)
}

pub fn make_hypercube_with_budget(d: u32, budget: u64) -> Result<GradedDigraph, GenError> {
    let requested = 1u64.checked_shl(d).unwrap_or(u64::MAX);
    if requested > budget {
        return Err(GenError::BudgetExceeded { requested, budget });
    }
    let n = requested as u32;
    let mut edges = Vec::new();
    let mut layers = vec![Vec::new(); d as usize + 1];
    let mut labels = Vec::with_capacity(n as usize);
    for v in 0..n {
        layers[v.count_ones() as usize].push(v);
        let mut label = String::with_capacity(d as usize);
        for bit in (0..d).rev() {
            label.push(if v >> bit & 1 == 1 { '1' } else { '0' });
        }
        if d == 0 {
            label.push('e');
        }
        labels.push(label);
        for bit in 0..d {
            if v >> bit & 1 == 0 {
                edges.push((v, v | 1 << bit));
            }
        }
    }
    let base = Digraph::new(n, edges).expect("hypercube edges are simple");
    Ok(GradedDigraph::new(base, layers).expect("hamming layering is graded").with_labels(labels))
}

/// Random graded digraph: `h` layers of width `1..=max_width`, band edges
/// drawn by fair coin per pair subject to per-vertex degree caps, one forced
/// edge per band so no interior band is empty.
///
/// Draws from `rng::root(seed)`: `h` layer widths, then per band a shuffled
/// pair order followed by one coin per admissible pair.
pub fn make_random_graded(
    h: usize,
    max_width: u32,
    max_in: u32,
    max_out: u32,
    seed: u64,
) -> GradedDigraph {
    assert!(h >= 1 && max_width >= 1 && max_in >= 1 && max_out >= 1);
    let mut r = crate::rng::root(seed);
    let widths: Vec<u32> =
        (0..h).map(|_| 1 + crate::rng::index(&mut r, max_width as usize) as u32).collect();
    let mut layers = Vec::with_capacity(h);
    let mut next = 0u32;
    for &w in &widths {
        layers.push((next..next + w).collect::<Vec<u32>>());
        next += w;
    }
    let n = next;
    let mut out_deg = vec![0u32; n as usize];
    let mut in_deg = vec![0u32; n as usize];
    let mut edges = Vec::new();
    for band in 0..h.saturating_sub(1) {
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for &u in &layers[band] {
            for &v in &layers[band + 1] {
                pairs.push((u, v));
            }
        }
        // Shuffle so degree caps do not bias toward low indices.
        use rand::seq::SliceRandom;
        pairs.shuffle(&mut r);
        let mut band_edges = 0u32;
        for &(u, v) in &pairs {
            if out_deg[u as usize] < max_out
                && in_deg[v as usize] < max_in
                && crate::rng::coin(&mut r)
            {
                edges.push((u, v));
                out_deg[u as usize] += 1;
                in_deg[v as usize] += 1;
                band_edges += 1;
            }
        }
        if band_edges == 0 {
            let (u, v) = pairs[0];
            edges.push((u, v));
            out_deg[u as usize] += 1;
            in_deg[v as usize] += 1;
        }
    }
    let base = Digraph::new(n, edges).expect("band edges are simple");
    GradedDigraph::new(base, layers).expect("layered construction is graded")
}

/// The transitive pattern TT_n as a digraph: edge `i → j` iff `i < j`.
pub fn make_transitive_pattern(n: u32) -> Digraph {
    let mut edges = Vec::with_capacity((n as usize) * (n as usize - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    Digraph::new(n, edges).expect("transitive pattern is simple")
}

/// Recovers a graded partition by longest-path rank, or explains why none
/// exists. Ranks are computed per weakly connected component; each component's
/// sources sit at rank 0, which aligns components at the first layer.
pub fn infer_graded_partition(g: &Digraph) -> Result<GradedDigraph, NotGraded> {
    let n = g.vertex_count() as usize;
    // Kahn peeling; leftovers witness a cycle.
    let mut indeg: Vec<u32> = (0..g.vertex_count()).map(|v| g.in_degree(v)).collect();
    let mut queue: Vec<u32> = (0..g.vertex_count()).filter(|&v| indeg[v as usize] == 0).collect();
    let mut rank = vec![0u32; n];
    let mut seen = 0usize;
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        seen += 1;
        for &w in g.out_neighbors(v) {
            rank[w as usize] = rank[w as usize].max(rank[v as usize] + 1);
            indeg[w as usize] -= 1;
            if indeg[w as usize] == 0 {
                queue.push(w);
            }
        }
    }
    if seen < n {
        let remaining: BTreeSet<u32> =
            (0..g.vertex_count()).filter(|&v| indeg[v as usize] > 0).collect();
        return Err(NotGraded::Cycle(extract_cycle(g, &remaining)));
    }
    for &(u, v) in g.edges() {
        let gap = rank[v as usize] - rank[u as usize];
        if gap != 1 {
            return Err(NotGraded::SkewEdge { edge: (u, v), gap });
        }
    }
    let h = rank.iter().copied().max().unwrap_or(0) as usize + 1;
    let mut layers = vec![Vec::new(); h];
    for v in 0..g.vertex_count() {
        layers[rank[v as usize] as usize].push(v);
    }
    GradedDigraph::new(g.clone(), layers).map_err(|_| unreachable!("rank layering is graded"))
}

fn extract_cycle(g: &Digraph, remaining: &BTreeSet<u32>) -> Vec<u32> {
    // Walk backwards along in-edges inside the remaining set; every such
    // vertex keeps an in-edge there, so some vertex must repeat.
    let start = *remaining.iter().next().expect("non-empty remainder");
    let mut path = vec![start];
    loop {
        let v = *path.last().unwrap();
        let prev = g
            .in_neighbors(v)
            .iter()
            .copied()
            .find(|w| remaining.contains(w))
            .expect("every remaining vertex keeps an in-edge in the remainder");
        if let Some(pos) = path.iter().position(|&p| p == prev) {
            let mut cycle = path[pos..].to_vec();
            cycle.reverse();
            return cycle;
        }
        path.push(prev);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digraph_rejects_malformed_edges() {
        assert_eq!(Digraph::new(2, vec![(0, 0)]), Err(DigraphError::SelfLoop(0)));
        assert_eq!(
            Digraph::new(2, vec![(0, 1), (0, 1)]),
            Err(DigraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(Digraph::new(2, vec![(0, 2)]), Err(DigraphError::VertexOutOfRange(2, 2)));
    }

    #[test]
    fn degrees_agree_with_edge_set() {
        let g = Digraph::new(4, vec![(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(g.out_degree(0), 2);
        assert_eq!(g.in_degree(3), 2);
        assert_eq!(g.max_out_degree(), 2);
        assert_eq!(g.max_in_degree(), 2);
        assert_eq!(g.max_total_degree(), 2);
        assert_eq!(g.out_neighbors(0), &[1, 2]);
        assert_eq!(g.in_neighbors(3), &[1, 2]);
    }

    #[test]
    fn grid_path_case() {
        // (d=1, k=3) is the directed path on 3 vertices.
        let g = make_grid(1, 3).unwrap();
        assert_eq!(g.base().vertex_count(), 3);
        assert_eq!(g.base().edge_count(), 2);
        assert_eq!(g.layer_sizes(), vec![1, 1, 1]);
    }

    #[test]
    fn grid_smallest_square() {
        let g = make_grid(2, 2).unwrap();
        assert_eq!(g.base().vertex_count(), 4);
        assert_eq!(g.base().edge_count(), 4);
        assert_eq!(g.layer_sizes(), vec![1, 2, 1]);
    }

    /// Independent enumeration of [3]^2 as the oracle for the (2,3) grid.
    #[test]
    fn grid_2_3_matches_direct_enumeration() {
        let g = make_grid(2, 3).unwrap();
        assert_eq!(g.base().vertex_count(), 9);
        let mut expected_edges = Vec::new();
        for x in 1..=3u32 {
            for y in 1..=3u32 {
                let id = |a: u32, b: u32| (a - 1) * 3 + (b - 1);
                if x < 3 {
                    expected_edges.push((id(x, y), id(x + 1, y)));
                }
                if y < 3 {
                    expected_edges.push((id(x, y), id(x, y + 1)));
                }
            }
        }
        expected_edges.sort_unstable();
        assert_eq!(g.base().edges(), expected_edges.as_slice());
        assert_eq!(g.base().edge_count(), 12);
        assert_eq!(g.layer_sizes(), vec![1, 2, 3, 2, 1]);
        assert_eq!(g.base().max_in_degree(), 2);
        assert_eq!(g.base().max_out_degree(), 2);
    }

    #[test]
    fn grid_edge_count_formula() {
        // d * k^(d-1) * (k-1) edges.
        for (d, k) in [(1, 5), (2, 4), (3, 3), (2, 6)] {
            let g = make_grid(d, k).unwrap();
            let expected = (d as u64) * (k as u64).pow(d - 1) * (k as u64 - 1);
            assert_eq!(g.base().edge_count() as u64, expected, "d={d} k={k}");
        }
    }

    #[test]
    fn hypercube_trivial_cases() {
        let q0 = make_hypercube(0).unwrap();
        assert_eq!(q0.base().vertex_count(), 1);
        assert_eq!(q0.base().edge_count(), 0);
        let q1 = make_hypercube(1).unwrap();
        assert_eq!(q1.base().edge_count(), 1);
        assert_eq!(q1.layer_sizes(), vec![1, 1]);
    }

    /// Enumeration of {0,1}^3 as the oracle for Q_3.
    #[test]
    fn hypercube_3_matches_enumeration() {
        let q = make_hypercube(3).unwrap();
        assert_eq!(q.base().vertex_count(), 8);
        assert_eq!(q.base().edge_count(), 12);
        assert_eq!(q.layer_sizes(), vec![1, 3, 3, 1]);
        assert_eq!(q.band_max_ins(), &[1, 2, 3]);
        // Every edge flips exactly one 0 bit to 1.
        for &(u, v) in q.base().edges() {
            assert_eq!((u ^ v).count_ones(), 1);
            assert!(v > u);
        }
    }

    #[test]
    fn hypercube_edge_count_formula() {
        for d in 1..=8u32 {
            let q = make_hypercube(d).unwrap();
            assert_eq!(q.base().edge_count() as u64, (d as u64) << (d - 1));
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            make_grid_with_budget(3, 10, 100),
            Err(GenError::BudgetExceeded { requested: 1000, budget: 100 })
        ));
        assert!(make_hypercube_with_budget(40, 1 << 20).is_err());
    }

    #[test]
    fn infer_on_path() {
        let g = Digraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let graded = infer_graded_partition(&g).unwrap();
        assert_eq!(graded.layers(), &[vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn infer_reproduces_hypercube_layers() {
        let q = make_hypercube(3).unwrap();
        let inferred = infer_graded_partition(q.base()).unwrap();
        assert_eq!(inferred.layers(), q.layers());
    }

    #[test]
    fn infer_rejects_skew_edge() {
        let g = Digraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        match infer_graded_partition(&g) {
            Err(NotGraded::SkewEdge { edge: (0, 2), gap: 2 }) => {}
            other => panic!("expected skew edge witness, got {other:?}"),
        }
    }

    #[test]
    fn infer_rejects_cycle_with_witness() {
        let g = Digraph::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        match infer_graded_partition(&g) {
            Err(NotGraded::Cycle(cycle)) => {
                assert!(cycle.len() >= 2);
                // The witness really is a closed walk.
                for w in cycle.windows(2) {
                    assert!(g.out_neighbors(w[0]).contains(&w[1]));
                }
                assert!(g.out_neighbors(*cycle.last().unwrap()).contains(&cycle[0]));
            }
            other => panic!("expected cycle witness, got {other:?}"),
        }
    }

    #[test]
    fn infer_aligns_components_at_first_layer() {
        // Two disjoint paths of different lengths both start at rank 0.
        let g = Digraph::new(5, vec![(0, 1), (1, 2), (3, 4)]).unwrap();
        let graded = infer_graded_partition(&g).unwrap();
        assert_eq!(graded.layers()[0], vec![0, 3]);
        assert_eq!(graded.layers()[1], vec![1, 4]);
        assert_eq!(graded.layers()[2], vec![2]);
    }

    #[test]
    fn infer_round_trips_grids() {
        for (d, k) in [(1, 4), (2, 3), (3, 2)] {
            let g = make_grid(d, k).unwrap();
            let inferred = infer_graded_partition(g.base()).unwrap();
            assert_eq!(inferred.layer_sizes(), g.layer_sizes());
            assert_eq!(inferred.layers(), g.layers());
        }
    }

    #[test]
    fn graded_band_max_in_matches_definition() {
        let q = make_hypercube(4).unwrap();
        for b in 0..q.height() - 1 {
            // Independent recomputation on the induced subgraph.
            let in_band: Vec<u32> = q.layers()[b + 1]
                .iter()
                .map(|&v| {
                    q.base()
                        .in_neighbors(v)
                        .iter()
                        .filter(|&&u| q.layer_of(u) as usize == b)
                        .count() as u32
                })
                .collect();
            assert_eq!(q.band_max_in(b), in_band.into_iter().max().unwrap());
        }
    }

    #[test]
    fn weak_components() {
        let g = Digraph::new(5, vec![(0, 1), (3, 4)]).unwrap();
        assert_eq!(g.weak_components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
    }

    #[test]
    fn random_graded_respects_caps_and_bands() {
        for seed in 0..30u64 {
            let g = make_random_graded(5, 6, 2, 2, seed);
            assert_eq!(g.height(), 5);
            for v in 0..g.base().vertex_count() {
                assert!(g.base().in_degree(v) <= 2);
                assert!(g.base().out_degree(v) <= 2);
                assert!(g.base().in_degree(v) + g.base().out_degree(v) <= 4);
            }
            for b in 0..4 {
                assert!(g.band_max_in(b) >= 1, "band {b} empty at seed {seed}");
            }
            assert_eq!(make_random_graded(5, 6, 2, 2, seed), g);
        }
    }
}
