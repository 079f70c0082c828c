//! Exact subdigraph containment and exact oriented Ramsey numbers for small
//! instances. This module is the ground truth the rest of the crate is tested
//! against: backtracking containment with bitset candidate filtering, labeled
//! and canonical (isomorph-rejecting) host enumeration, and a randomized
//! extremal-witness search.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::bitset::BitSet;
use crate::digraph::{infer_graded_partition, Digraph};
use crate::rng;
use crate::tournament::Tournament;

/// Hosts handled by the dense `u64`-row fast path (levels of the Ramsey scan).
pub const SMALL_HOST_MAX: u32 = 11;

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// Pattern vertex ordering heuristic for the backtracking search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeOrder {
    /// Layers of the graded partition in order (falls back to degree-major
    /// when the pattern is not graded).
    LayerMajor,
    /// Total degree descending, index ascending.
    DegreeMajor,
    /// Layer-major when the pattern is graded, degree-major otherwise.
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Containment {
    /// Witness map: pattern vertex -> host vertex. Always verified injective
    /// and direction-preserving before being returned.
    Found(Vec<u32>),
    /// Exhaustive negative (no budget cut).
    Absent,
    /// Budget ran out; never a verdict.
    Unknown { nodes: u64 },
}

pub struct ContainmentQuery<'a> {
    pub pattern: &'a Digraph,
    pub host: &'a Tournament,
    pub node_order: NodeOrder,
    pub node_budget: u64,
}

impl<'a> ContainmentQuery<'a> {
    pub fn new(pattern: &'a Digraph, host: &'a Tournament) -> Self {
        ContainmentQuery {
            pattern,
            host,
            node_order: NodeOrder::Auto,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Depth-ordered pattern with earlier-neighbor lists for candidate filtering.
struct Plan {
    order: Vec<u32>,
    /// Earlier depths i with pattern edge order[i] -> order[d].
    earlier_in: Vec<Vec<usize>>,
    /// Earlier depths i with pattern edge order[d] -> order[i].
    earlier_out: Vec<Vec<usize>>,
}

fn build_plan(pattern: &Digraph, node_order: NodeOrder) -> Plan {
    let n = pattern.vertex_count();
    let order: Vec<u32> = match node_order {
        NodeOrder::LayerMajor | NodeOrder::Auto => match infer_graded_partition(pattern) {
            Ok(g) => g.layers().iter().flatten().copied().collect(),
            Err(_) => degree_major(pattern),
        },
        NodeOrder::DegreeMajor => degree_major(pattern),
    };
    let mut depth_of = vec![usize::MAX; n as usize];
    for (d, &v) in order.iter().enumerate() {
        depth_of[v as usize] = d;
    }
    let mut earlier_in = vec![Vec::new(); n as usize];
    let mut earlier_out = vec![Vec::new(); n as usize];
    for (d, &v) in order.iter().enumerate() {
        for &u in pattern.in_neighbors(v) {
            if depth_of[u as usize] < d {
                earlier_in[d].push(depth_of[u as usize]);
            }
        }
        for &w in pattern.out_neighbors(v) {
            if depth_of[w as usize] < d {
                earlier_out[d].push(depth_of[w as usize]);
            }
        }
    }
    Plan { order, earlier_in, earlier_out }
}

fn degree_major(pattern: &Digraph) -> Vec<u32> {
    let mut vs: Vec<u32> = (0..pattern.vertex_count()).collect();
    vs.sort_by_key(|&v| (core::cmp::Reverse(pattern.in_degree(v) + pattern.out_degree(v)), v));
    vs
}

/// Backtracking injective embedding search. A pattern vertex's candidates are
/// the intersection of host out-rows of its mapped in-neighbors and host
/// in-rows of its mapped out-neighbors, minus used vertices. Each candidate
/// assignment costs one budget node.
pub fn contains(q: &ContainmentQuery) -> Containment {
    let p = q.pattern.vertex_count() as usize;
    let n = q.host.vertex_count() as usize;
    if p == 0 {
        return Containment::Found(Vec::new());
    }
    if p > n {
        return Containment::Absent;
    }
    let plan = build_plan(q.pattern, q.node_order);
    let mut phi_by_depth = vec![u32::MAX; p];
    let mut free = BitSet::full(n);
    let mut cand = BitSet::new(n);
    let mut stack: Vec<Vec<u32>> = Vec::with_capacity(p);
    let mut nodes: u64 = 0;

    // Iterative DFS: stack[d] holds untried candidates at depth d.
    let compute = |d: usize, free: &BitSet, phi: &[u32], cand: &mut BitSet| {
        cand.copy_from(free);
        for &i in &plan.earlier_in[d] {
            cand.and_assign(q.host.out_row(phi[i]));
        }
        for &i in &plan.earlier_out[d] {
            cand.and_assign(q.host.in_row(phi[i]));
        }
    };
    compute(0, &free, &phi_by_depth, &mut cand);
    stack.push(cand.to_vec());
    loop {
        let depth = stack.len() - 1;
        match stack[depth].pop() {
            None => {
                stack.pop();
                if stack.is_empty() {
                    return Containment::Absent;
                }
                let d = stack.len() - 1;
                free.insert(phi_by_depth[d] as usize);
            }
            Some(c) => {
                nodes += 1;
                if nodes > q.node_budget {
                    return Containment::Unknown { nodes };
                }
                phi_by_depth[depth] = c;
                if depth + 1 == p {
                    let mut phi = vec![u32::MAX; p];
                    for (d, &v) in plan.order.iter().enumerate() {
                        phi[v as usize] = phi_by_depth[d];
                    }
                    debug_assert!(witness_ok(q.pattern, q.host, &phi));
                    return Containment::Found(phi);
                }
                free.remove(c as usize);
                compute(depth + 1, &free, &phi_by_depth, &mut cand);
                stack.push(cand.to_vec());
            }
        }
    }
}

fn witness_ok(pattern: &Digraph, host: &Tournament, phi: &[u32]) -> bool {
    let mut seen = BitSet::new(host.vertex_count() as usize);
    for &img in phi {
        if seen.contains(img as usize) {
            return false;
        }
        seen.insert(img as usize);
    }
    pattern.edges().iter().all(|&(u, v)| host.has_edge(phi[u as usize], phi[v as usize]))
}

// ---------------------------------------------------------------------------
// Dense fast path for the labeled Ramsey scan (hosts on <= SMALL_HOST_MAX
// vertices, u64 neighborhood rows).
// ---------------------------------------------------------------------------

/// Reusable search state for scanning many small hosts against one pattern.
pub struct SmallScanner {
    p: usize,
    earlier_in: Vec<Vec<usize>>,
    earlier_out: Vec<Vec<usize>>,
    order: Vec<u32>,
}

impl SmallScanner {
    pub fn new(pattern: &Digraph, node_order: NodeOrder) -> Self {
        let plan = build_plan(pattern, node_order);
        SmallScanner {
            p: pattern.vertex_count() as usize,
            earlier_in: plan.earlier_in,
            earlier_out: plan.earlier_out,
            order: plan.order,
        }
    }

    /// Exhaustive containment test against dense rows. The search tree is
    /// bounded by the number of partial injections, which is tiny at these
    /// sizes, so there is no budget on this path.
    pub fn contains_rows(&self, out: &[u64], in_: &[u64], n: usize) -> bool {
        let p = self.p;
        if p == 0 {
            return true;
        }
        if p > n {
            return false;
        }
        let full: u64 = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut phi = [0u32; 64];
        let mut rem = [0u64; 64];
        let mut free = full;
        rem[0] = full;
        let mut depth = 0usize;
        loop {
            if rem[depth] == 0 {
                if depth == 0 {
                    return false;
                }
                depth -= 1;
                free |= 1u64 << phi[depth];
                continue;
            }
            let c = rem[depth].trailing_zeros();
            rem[depth] &= rem[depth] - 1;
            phi[depth] = c;
            if depth + 1 == p {
                return true;
            }
            free &= !(1u64 << c);
            let mut cand = free;
            for &i in &self.earlier_in[depth + 1] {
                cand &= out[phi[i] as usize];
            }
            for &i in &self.earlier_out[depth + 1] {
                cand &= in_[phi[i] as usize];
            }
            depth += 1;
            rem[depth] = cand;
        }
    }

    pub fn pattern_order(&self) -> &[u32] {
        &self.order
    }
}

/// Number of labeled tournaments on `n` vertices (None if out of u64 range).
pub fn labeled_host_count(n: u32) -> Option<u64> {
    let pairs = (n as u64) * (n as u64 - 1) / 2;
    if pairs >= 64 {
        None
    } else {
        Some(1u64 << pairs)
    }
}

/// Decodes labeled host `code` (bit q = pair q in row-major (i, j), i < j,
/// set = i -> j; matches the serialization convention) into dense rows.
pub fn decode_labeled(n: usize, code: u64, out: &mut [u64], in_: &mut [u64]) {
    out[..n].fill(0);
    in_[..n].fill(0);
    let mut q = 0;
    for i in 0..n {
        for j in i + 1..n {
            if code >> q & 1 == 1 {
                out[i] |= 1 << j;
                in_[j] |= 1 << i;
            } else {
                out[j] |= 1 << i;
                in_[i] |= 1 << j;
            }
            q += 1;
        }
    }
}

/// Materializes a labeled host code as a `Tournament`.
pub fn labeled_host(n: u32, code: u64) -> Tournament {
    let mut q = 0;
    Tournament::from_pair_fn(n, |_, _| {
        let bit = code >> q & 1 == 1;
        q += 1;
        bit
    })
}

/// Code of a tournament in the labeled convention.
pub fn labeled_code(t: &Tournament) -> u64 {
    let mut code = 0u64;
    for (q, bit) in t.upper_bits().into_iter().enumerate() {
        if bit {
            code |= 1 << q;
        }
    }
    code
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelScan {
    AllContain { hosts: u64 },
    /// Lowest code in the scanned range whose host lacks the pattern.
    FreeHost { code: u64, checked: u64 },
}

/// Scans labeled hosts `range` on `n` vertices in increasing code order,
/// stopping at the first pattern-free host.
pub fn scan_labeled_level(scanner: &SmallScanner, n: u32, range: Range<u64>) -> LevelScan {
    assert!(n <= SMALL_HOST_MAX);
    let mut out = [0u64; SMALL_HOST_MAX as usize + 1];
    let mut in_ = [0u64; SMALL_HOST_MAX as usize + 1];
    let mut checked = 0u64;
    for code in range {
        decode_labeled(n as usize, code, &mut out, &mut in_);
        checked += 1;
        if !scanner.contains_rows(&out, &in_, n as usize) {
            return LevelScan::FreeHost { code, checked };
        }
    }
    LevelScan::AllContain { hosts: checked }
}

// ---------------------------------------------------------------------------
// Canonical enumeration (isomorph rejection).
// ---------------------------------------------------------------------------
//
// Canonical form: the permutation-minimal adjacency bitstring in "staircase"
// pair order (0,1), (0,2), (1,2), (0,3), ... packed so that earlier pairs are
// more significant bits. The staircase order makes the code of an m-vertex
// prefix a literal prefix of the full code, which is what both the
// minimization pruning and the one-vertex-extension enumeration exploit.

fn staircase_total(n: usize) -> u32 {
    (n * (n - 1) / 2) as u32
}

/// Minimal staircase code over all vertex permutations. `n <= 11`.
pub fn canonical_code_rows(out: &[u64], n: usize) -> u64 {
    assert!(n <= SMALL_HOST_MAX as usize);
    if n < 2 {
        return 0;
    }
    let mut best = u64::MAX;
    let mut perm = [0u32; 12];
    let mut used: u64 = 0;
    min_code_dfs(out, n, 0, 0u64, 0, &mut perm, &mut used, &mut best);
    best
}

#[allow(clippy::too_many_arguments)]
fn min_code_dfs(
    out: &[u64],
    n: usize,
    depth: usize,
    acc: u64,
    acc_bits: u32,
    perm: &mut [u32; 12],
    used: &mut u64,
    best: &mut u64,
) {
    let total = staircase_total(n);
    if depth == n {
        if acc < *best {
            *best = acc;
        }
        return;
    }
    for c in 0..n as u32 {
        if *used >> c & 1 == 1 {
            continue;
        }
        // Bits of the new vertex against the chosen prefix: pair (i, depth)
        // sits directly after the prefix, i ascending = more significant.
        let mut chunk = 0u64;
        for (i, &pi) in perm.iter().enumerate().take(depth) {
            let bit = (out[pi as usize] >> c) & 1;
            chunk |= bit << (depth - 1 - i);
        }
        let new_bits = acc_bits + depth as u32;
        let new_acc = (acc << depth) | chunk;
        // Compare against the same-length prefix of the best code.
        if *best != u64::MAX {
            let best_prefix = *best >> (total - new_bits);
            if new_acc > best_prefix {
                continue;
            }
        }
        perm[depth] = c;
        *used |= 1 << c;
        min_code_dfs(out, n, depth + 1, new_acc, new_bits, perm, used, best);
        *used &= !(1 << c);
    }
}

fn staircase_rows(n: usize, code: u64, out: &mut [u64], in_: &mut [u64]) {
    out[..n].fill(0);
    in_[..n].fill(0);
    let total = staircase_total(n);
    let mut q = 0u32;
    for j in 1..n {
        for i in 0..j {
            if code >> (total - 1 - q) & 1 == 1 {
                out[i] |= 1 << j;
                in_[j] |= 1 << i;
            } else {
                out[j] |= 1 << i;
                in_[i] |= 1 << j;
            }
            q += 1;
        }
    }
}

pub fn canonical_code_of(t: &Tournament) -> u64 {
    let n = t.vertex_count() as usize;
    assert!(n <= SMALL_HOST_MAX as usize);
    let mut out = [0u64; 12];
    for v in 0..n {
        for w in t.out_row(v as u32).iter() {
            out[v] |= 1 << w;
        }
    }
    canonical_code_rows(&out, n)
}

/// Materializes a staircase canonical code.
pub fn tournament_from_staircase(n: u32, code: u64) -> Tournament {
    let total = staircase_total(n as usize);
    Tournament::from_pair_fn(n, |u, v| {
        let q: u32 = (v * (v - 1) / 2) + u; // staircase index of (u, v)
        code >> (total - 1 - q) & 1 == 1
    })
}

/// All canonical codes on `n` vertices, sorted, built by one-vertex extension
/// with on-the-fly isomorph rejection. Sizes follow the known census
/// 1, 1, 2, 4, 12, 56, 456, 6880, 191536 for n = 1..9.
pub fn canonical_tournaments(n: u32) -> Vec<u64> {
    assert!((1..=9).contains(&n), "canonical enumeration is limited to n <= 9");
    let mut level: Vec<u64> = vec![0]; // single vertex
    let mut out = [0u64; 12];
    let mut in_ = [0u64; 12];
    for m in 1..n as usize {
        let mut next = alloc::collections::BTreeSet::new();
        for &rep in &level {
            for ext in 0u64..(1 << m) {
                // Child staircase code = parent code shifted, new column bits
                // behind it; ext bit i set = edge i -> new vertex, packed so
                // that i = 0 is most significant within the chunk.
                let mut chunk = 0u64;
                for i in 0..m {
                    chunk |= ((ext >> i) & 1) << (m - 1 - i);
                }
                let child = (rep << m) | chunk;
                staircase_rows(m + 1, child, &mut out, &mut in_);
                next.insert(canonical_code_rows(&out, m + 1));
            }
        }
        level = next.into_iter().collect();
    }
    level
}

// ---------------------------------------------------------------------------
// Oriented Ramsey number search.
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    /// All 2^C(N,2) labeled hosts per level; trivially exhaustive.
    Labeled,
    /// Canonical representatives only (isomorph rejection), N <= 9.
    Canonical,
}

#[derive(Clone, Copy, Debug)]
pub struct RamseyBudget {
    /// A level is attempted only if its labeled host count stays within this.
    pub max_level_hosts: u64,
}

impl Default for RamseyBudget {
    fn default() -> Self {
        RamseyBudget { max_level_hosts: 1 << 28 }
    }
}

#[derive(Clone, Debug)]
pub enum RamseyOutcome {
    Determined {
        n: u32,
        /// Extremal witness: a tournament on n-1 vertices without the pattern.
        witness: Tournament,
    },
    /// All levels up to `completed` had a pattern-free host (or the next
    /// level exceeded the budget); `free_host` certifies the last level.
    Unknown { completed: u32, free_host: Option<Tournament> },
}

/// Smallest `N <= n_max` such that every tournament on `N` vertices contains
/// the pattern, with an extremal witness on `N - 1` vertices.
///
/// Levels below the pattern order trivially fail, so scanning starts at the
/// pattern order with a transitive witness one below it.
pub fn oriented_ramsey(
    pattern: &Digraph,
    n_max: u32,
    mode: EnumerationMode,
    budget: RamseyBudget,
) -> RamseyOutcome {
    let p = pattern.vertex_count();
    assert!(p >= 1, "pattern must have at least one vertex");
    let scanner = SmallScanner::new(pattern, NodeOrder::Auto);
    let mut witness = Tournament::transitive(p.saturating_sub(1));
    let mut completed = p.saturating_sub(1);
    for level in p..=n_max.min(SMALL_HOST_MAX) {
        match mode {
            EnumerationMode::Labeled => {
                let hosts = match labeled_host_count(level) {
                    Some(h) if h <= budget.max_level_hosts => h,
                    _ => return RamseyOutcome::Unknown { completed, free_host: Some(witness) },
                };
                match scan_labeled_level(&scanner, level, 0..hosts) {
                    LevelScan::AllContain { .. } => {
                        return RamseyOutcome::Determined { n: level, witness }
                    }
                    LevelScan::FreeHost { code, .. } => {
                        witness = labeled_host(level, code);
                        completed = level;
                    }
                }
            }
            EnumerationMode::Canonical => {
                if level > 9 {
                    return RamseyOutcome::Unknown { completed, free_host: Some(witness) };
                }
                let reps = canonical_tournaments(level);
                let mut out = [0u64; 12];
                let mut in_ = [0u64; 12];
                let mut free = None;
                for &rep in &reps {
                    staircase_rows(level as usize, rep, &mut out, &mut in_);
                    if !scanner.contains_rows(&out, &in_, level as usize) {
                        free = Some(rep);
                        break;
                    }
                }
                match free {
                    None => return RamseyOutcome::Determined { n: level, witness },
                    Some(rep) => {
                        witness = tournament_from_staircase(level, rep);
                        completed = level;
                    }
                }
            }
        }
    }
    RamseyOutcome::Unknown { completed, free_host: Some(witness) }
}

// ---------------------------------------------------------------------------
// Extremal witness search and the Hamiltonian-path construction.
// ---------------------------------------------------------------------------

/// Randomized search for an `n`-vertex tournament not containing `pattern`:
/// random restarts plus local edge flips that break the currently found copy
/// (a cheap proxy for lowering the number of copies). Any candidate is
/// verified by an exhaustive [`contains`] call before being returned.
///
/// Draws per restart `r` from `rng::stream(seed, r)`: one random tournament,
/// then one edge index per flip.
pub fn extremal_witness(
    pattern: &Digraph,
    n: u32,
    flip_budget: u64,
    seed: u64,
) -> Option<Tournament> {
    if pattern.vertex_count() > n {
        return Some(Tournament::transitive(n));
    }
    if pattern.edge_count() == 0 {
        // Injectivity is the only constraint: no witness can exist.
        return None;
    }
    let per_restart = (8 * (n as u64) * (n as u64)).max(64);
    let mut flips = 0u64;
    let mut restart = 0u64;
    while flips < flip_budget {
        let mut r = rng::stream(seed, restart);
        let mut t = Tournament::from_pair_fn(n, |_, _| rng::coin(&mut r));
        let mut local = 0u64;
        while flips < flip_budget && local < per_restart {
            let q = ContainmentQuery::new(pattern, &t);
            match contains(&q) {
                Containment::Absent => return Some(t),
                Containment::Found(phi) => {
                    let (pu, pv) = pattern.edges()[rng::index(&mut r, pattern.edge_count())];
                    t = flipped(&t, phi[pu as usize], phi[pv as usize]);
                    flips += 1;
                    local += 1;
                }
                Containment::Unknown { .. } => break,
            }
        }
        restart += 1;
    }
    None
}

fn flipped(t: &Tournament, u: u32, v: u32) -> Tournament {
    Tournament::from_pair_fn(t.vertex_count(), |a, b| {
        if (a, b) == (u.min(v), u.max(v)) {
            !t.has_edge(a, b)
        } else {
            t.has_edge(a, b)
        }
    })
}

/// Directed Hamiltonian path by insertion: each new vertex goes in front,
/// in back, or between some consecutive pair found by bisection. The
/// invariant `path[lo] -> v -> path[hi]` guarantees the split point exists.
pub fn hamiltonian_path(t: &Tournament) -> Vec<u32> {
    let n = t.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let mut path = vec![0u32];
    for v in 1..n {
        if t.has_edge(v, path[0]) {
            path.insert(0, v);
        } else if t.has_edge(*path.last().unwrap(), v) {
            path.push(v);
        } else {
            let (mut lo, mut hi) = (0usize, path.len() - 1);
            while hi - lo > 1 {
                let mid = (lo + hi) / 2;
                if t.has_edge(path[mid], v) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            path.insert(hi, v);
        }
    }
    debug_assert!(path.windows(2).all(|w| t.has_edge(w[0], w[1])));
    path
}
