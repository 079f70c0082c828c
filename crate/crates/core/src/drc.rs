//! Dependent random choice along a median order: given a set `B` inside a
//! window late in the order, select an earlier same-length interval and a
//! large subset `A` of it such that few small subsets of `A` have small
//! common out-neighborhood in `B`.
//!
//! The underlying expectation argument is non-constructive, so selection runs
//! as rejection sampling: each trial draws the random multiset `L`, forms
//! `M = {u in I : L ⊆ N⁺(u)}`, and accepts when both explicit bounds hold.
//! All bounds are evaluated in exact rational arithmetic.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::median::Ordering;
use crate::ratio;
use crate::rng;
use crate::tournament::Tournament;

pub const DEFAULT_TRIALS: u64 = 10_000;
pub const DEFAULT_COUNT_BUDGET: u64 = 10_000_000;

/// Inputs of one selection step. Positions are 0-based, so the window
/// constraint reads `2ka' <= j` and `j + a <= N` (the 1-based statement is
/// `2ka' < j <= N - a + 1`).
pub struct DrcRequest<'a> {
    pub tournament: &'a Tournament,
    pub ordering: &'a Ordering,
    /// Left endpoint (0-based position) of the window containing `B`.
    pub j: usize,
    /// Window length for `B`.
    pub a: usize,
    /// Interval length for the selected `A`.
    pub a_prime: usize,
    /// Size parameter used in the bounds; `|B| >= b` is required.
    pub b: usize,
    /// Sample size (number of draws with repetition); 0 keeps all of `I`.
    pub ell: u32,
    /// Common-out-neighborhood threshold: a subset is bad if it has at most
    /// `s` common out-neighbors in `B`.
    pub s: usize,
    /// Interval-partition parameter: the search window splits into 2k pieces.
    pub k: usize,
    /// Subset size whose common out-neighborhoods are controlled.
    pub delta_minus: u32,
    /// The target set, a subset of the vertices at positions `[j, j+a)`.
    pub b_set: Vec<u32>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DrcError {
    #[error("request constraint violated: {0}")]
    InvalidRequest(&'static str),
    #[error("median property violated on the DRC window: in-degree {in_degree} over window [{window_start}, {position}) of size {window}")]
    MedianViolated { window_start: usize, position: usize, in_degree: usize, window: usize },
    #[error("interval sums below the pigeonhole bound without a median violation")]
    Inconsistent,
    #[error("exact bad-subset count of C({0}, {1}) subsets exceeds budget {2}")]
    CountBudget(usize, u32, u64),
}

impl<'a> DrcRequest<'a> {
    /// Validates the lemma's side conditions. `b >= 1`, `delta_minus >= 1`,
    /// `k >= 1`, `2a' >= a`, window containment and `|B| >= b`.
    pub fn validate(&self) -> Result<(), DrcError> {
        let n = self.tournament.vertex_count() as usize;
        if self.ordering.len() != n {
            return Err(DrcError::InvalidRequest("ordering does not match tournament"));
        }
        if self.a == 0 || self.a_prime == 0 {
            return Err(DrcError::InvalidRequest("window lengths must be positive"));
        }
        if self.b == 0 {
            return Err(DrcError::InvalidRequest("b must be positive"));
        }
        if self.k == 0 {
            return Err(DrcError::InvalidRequest("k must be positive"));
        }
        if self.delta_minus == 0 {
            return Err(DrcError::InvalidRequest("delta_minus must be positive"));
        }
        if 2 * self.a_prime < self.a {
            return Err(DrcError::InvalidRequest("2a' >= a is required"));
        }
        if self.j < 2 * self.k * self.a_prime {
            return Err(DrcError::InvalidRequest("window start must leave room: 2ka' <= j"));
        }
        if self.j + self.a > n {
            return Err(DrcError::InvalidRequest("B window exceeds the order"));
        }
        if self.b_set.len() < self.b {
            return Err(DrcError::InvalidRequest("|B| >= b is required"));
        }
        for &v in &self.b_set {
            let p = self.ordering.position_of(v);
            if p < self.j || p >= self.j + self.a {
                return Err(DrcError::InvalidRequest("B must lie inside [j, j+a)"));
            }
        }
        Ok(())
    }

    fn b_bitset(&self) -> BitSet {
        BitSet::from_indices(
            self.tournament.vertex_count() as usize,
            self.b_set.iter().copied(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalChoice {
    /// Index of the chosen interval among the 2k pieces (0 = leftmost).
    pub index: usize,
    /// Left endpoint position of the chosen interval.
    pub start: usize,
    /// `Σ_{u in I} d⁺(u, B)` for the chosen interval.
    pub degree_sum: u64,
    /// Sum over the whole window, for the pigeonhole invariant.
    pub total_sum: u64,
}

/// Picks the interval of length `a'` among the 2k pieces of
/// `[j - 2ka', j)` maximizing total out-degree into `B`; ties go to the
/// smallest index. When the maximum falls below the median-order pigeonhole
/// bound `b(k-1)a'/2k`, the responsible median violation is located and
/// reported.
pub fn choose_interval(req: &DrcRequest) -> Result<IntervalChoice, DrcError> {
    req.validate()?;
    let b_bits = req.b_bitset();
    let window_start = req.j - 2 * req.k * req.a_prime;
    let mut best: Option<IntervalChoice> = None;
    let mut total = 0u64;
    for idx in 0..2 * req.k {
        let start = window_start + idx * req.a_prime;
        let mut sum = 0u64;
        for p in start..start + req.a_prime {
            sum += req.tournament.out_degree_in(req.ordering.vertex_at(p), &b_bits) as u64;
        }
        total += sum;
        if best.as_ref().is_none_or(|c| sum > c.degree_sum) {
            best = Some(IntervalChoice { index: idx, start, degree_sum: sum, total_sum: 0 });
        }
    }
    let mut choice = best.expect("2k >= 2 intervals");
    choice.total_sum = total;
    // Pigeonhole bound max >= b(k-1)a'/(2k); if it fails, the median property
    // must be broken somewhere on the window - find the witness.
    let lhs = choice.degree_sum as u128 * (2 * req.k) as u128;
    let rhs = (req.b as u128) * (req.k as u128 - 1) * req.a_prime as u128;
    if lhs < rhs {
        for &v in &req.b_set {
            let i = req.ordering.position_of(v);
            let mut indeg = 0usize;
            let row = req.tournament.in_row(v);
            for p in window_start..i {
                if row.contains(req.ordering.vertex_at(p) as usize) {
                    indeg += 1;
                }
            }
            let window = i - window_start;
            if 2 * indeg < window {
                return Err(DrcError::MedianViolated {
                    window_start,
                    position: i,
                    in_degree: indeg,
                    window,
                });
            }
        }
        return Err(DrcError::Inconsistent);
    }
    Ok(choice)
}

/// Exact or sampled count of bad subsets: size-`delta_minus` subsets `S` of
/// `a_set` with `|N⁺(S) ∩ B| <= s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BadCount {
    Exact(BigUint),
    /// Unbiased estimate `bad_hits / samples * C(|A|, Δ⁻)`.
    Estimated { estimate: BigRational, samples: u64, bad_hits: u64 },
}

impl BadCount {
    pub fn as_rational(&self) -> BigRational {
        match self {
            BadCount::Exact(c) => ratio::from_biguint(c),
            BadCount::Estimated { estimate, .. } => estimate.clone(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, BadCount::Exact(_))
    }
}

#[derive(Clone, Copy, Debug)]
pub enum CountMode {
    Exact { budget: u64 },
    Sampled { trials: u64, seed: u64 },
}

/// Counts bad subsets exactly (lexicographic subset walk, within budget) or
/// by uniform sampling of distinct subsets. Sampled draws: per trial,
/// `delta_minus` distinct indices by partial Fisher-Yates from
/// `rng::root(seed)`.
pub fn count_bad_subsets(
    a_set: &[u32],
    b_bits: &BitSet,
    delta_minus: u32,
    s: usize,
    t: &Tournament,
    mode: CountMode,
) -> Result<BadCount, DrcError> {
    let total = ratio::binomial(a_set.len() as u64, delta_minus as u64);
    match mode {
        CountMode::Exact { budget } => {
            if total > BigUint::from(budget) {
                return Err(DrcError::CountBudget(a_set.len(), delta_minus, budget));
            }
            let mut bad = BigUint::zero();
            ratio::for_each_combination(a_set.len(), delta_minus as usize, |idx| {
                let mut acc = b_bits.clone();
                for &i in idx {
                    acc.and_assign(t.out_row(a_set[i]));
                }
                if acc.count() <= s {
                    bad += BigUint::one();
                }
                true
            });
            Ok(BadCount::Exact(bad))
        }
        CountMode::Sampled { trials, seed } => {
            let mut r = rng::root(seed);
            let mut idx: Vec<usize> = (0..a_set.len()).collect();
            let mut bad_hits = 0u64;
            for _ in 0..trials {
                // Partial Fisher-Yates: the first delta_minus entries are a
                // uniform distinct subset.
                for i in 0..delta_minus as usize {
                    let j = i + rng::index(&mut r, idx.len() - i);
                    idx.swap(i, j);
                }
                let mut acc = b_bits.clone();
                for &i in &idx[..delta_minus as usize] {
                    acc.and_assign(t.out_row(a_set[i]));
                }
                if acc.count() <= s {
                    bad_hits += 1;
                }
            }
            let estimate = ratio::from_biguint(&total) * ratio::ratio(bad_hits as i64, 1)
                / ratio::ratio(trials.max(1) as i64, 1);
            Ok(BadCount::Estimated { estimate, samples: trials, bad_hits })
        }
    }
}

/// Diagnostic trail of the accepting (or best failing) trial.
#[derive(Clone, Debug)]
pub struct DrcTrace {
    pub interval_index: usize,
    pub sample: Vec<u32>,
    pub m_set: Vec<u32>,
    pub trial: u64,
}

#[derive(Clone, Debug)]
pub struct DrcResult {
    /// Left endpoint of the interval containing `A` (so
    /// `j - 2ka' <= j' <= j - a'`).
    pub j_prime: usize,
    pub a_set: Vec<u32>,
    /// `(a'/2) ((k-1)/2k)^ℓ`, exact.
    pub size_bound: BigRational,
    /// `4 (2k/(k-1))^ℓ C(a', Δ⁻) (s/b)^ℓ`, exact; `None` encodes the k = 1,
    /// ℓ >= 1 degenerate case where the bound is vacuous (+∞).
    pub bad_bound: Option<BigRational>,
    pub bad_count: BadCount,
    pub trace: DrcTrace,
}

#[derive(Clone, Debug)]
pub struct DrcFailure {
    pub trials: u64,
    /// Best trial seen: largest `|M|`, ties by smaller bad count, then by
    /// earlier trial index.
    pub best: Option<DrcTrace>,
}

/// The selection bounds for a request, exact.
pub fn selection_bounds(req: &DrcRequest) -> (BigRational, Option<BigRational>) {
    let size = ratio::ratio(req.a_prime as i64, 2)
        * ratio::pow(&ratio::ratio(req.k as i64 - 1, 2 * req.k as i64), req.ell);
    let bad = if req.ell == 0 {
        Some(
            ratio::from_int(4)
                * ratio::from_biguint(&ratio::binomial(
                    req.a_prime as u64,
                    req.delta_minus as u64,
                )),
        )
    } else if req.k == 1 {
        None
    } else {
        Some(
            ratio::from_int(4)
                * ratio::pow(&ratio::ratio(2 * req.k as i64, req.k as i64 - 1), req.ell)
                * ratio::from_biguint(&ratio::binomial(
                    req.a_prime as u64,
                    req.delta_minus as u64,
                ))
                * ratio::pow(&ratio::ratio(req.s as i64, req.b as i64), req.ell),
        )
    };
    (size, bad)
}

/// Rejection-sampled dependent random choice.
///
/// The interval is fixed once by [`choose_interval`]; then each trial `t`
/// draws `ℓ` vertices from `B` uniformly with repetition (draws in order,
/// from `rng::stream(seed, t)`), forms `M`, and accepts when
/// `|M| >= size_bound` and the bad-subset count is within `bad_bound`.
/// Sampling uses the actual `B`; the bounds use the request's `b`.
///
/// Counting is exact within `count_budget`; above it the estimator
/// (4096 samples, seeded from the trial stream) takes over, flagged by the
/// returned [`BadCount`] variant.
pub fn drc_select(
    req: &DrcRequest,
    max_trials: u64,
    seed: u64,
    count_budget: u64,
) -> Result<Result<DrcResult, DrcFailure>, DrcError> {
    let choice = choose_interval(req)?;
    let (size_bound, bad_bound) = selection_bounds(req);
    let b_bits = req.b_bitset();
    let interval: Vec<u32> =
        (choice.start..choice.start + req.a_prime).map(|p| req.ordering.vertex_at(p)).collect();
    let mut best: Option<(usize, BigRational, DrcTrace)> = None;
    for trial in 0..max_trials {
        let mut r = rng::stream(seed, trial);
        let sample: Vec<u32> =
            (0..req.ell).map(|_| req.b_set[rng::index(&mut r, req.b_set.len())]).collect();
        let m_set: Vec<u32> = interval
            .iter()
            .copied()
            .filter(|&u| sample.iter().all(|&l| req.tournament.has_edge(u, l)))
            .collect();
        let size_ok = ratio::from_int(m_set.len() as u64) >= size_bound;
        let bad_count = if size_ok {
            match count_bad_subsets(
                &m_set,
                &b_bits,
                req.delta_minus,
                req.s,
                req.tournament,
                CountMode::Exact { budget: count_budget },
            ) {
                Ok(c) => c,
                Err(DrcError::CountBudget(..)) => count_bad_subsets(
                    &m_set,
                    &b_bits,
                    req.delta_minus,
                    req.s,
                    req.tournament,
                    CountMode::Sampled { trials: 4096, seed: seed ^ trial },
                )?,
                Err(e) => return Err(e),
            }
        } else {
            BadCount::Exact(BigUint::zero())
        };
        let bad_ok = match &bad_bound {
            None => true,
            Some(bound) => bad_count.as_rational() <= *bound,
        };
        let trace =
            DrcTrace { interval_index: choice.index, sample, m_set: m_set.clone(), trial };
        if size_ok && bad_ok {
            return Ok(Ok(DrcResult {
                j_prime: choice.start,
                a_set: m_set,
                size_bound,
                bad_bound,
                bad_count,
                trace,
            }));
        }
        let rank = (m_set.len(), bad_count.as_rational());
        let better = match &best {
            None => true,
            Some((bl, bb, _)) => rank.0 > *bl || (rank.0 == *bl && rank.1 < *bb),
        };
        if better {
            best = Some((rank.0, rank.1, trace));
        }
    }
    Ok(Err(DrcFailure { trials: max_trials, best: best.map(|(_, _, t)| t) }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::median::{local_median_order, Ordering};
    use crate::tournament::Tournament;

    /// Request scaffold on a transitive tournament with B at the tail.
    fn transitive_request(o: &Ordering) -> (usize, usize, Vec<u32>) {
        let n = o.len();
        let a = 8;
        let j = n - a;
        let b_set: Vec<u32> = (j..n).map(|p| o.vertex_at(p)).collect();
        (j, a, b_set)
    }

    #[test]
    fn choose_interval_on_transitive_everything_forward() {
        let t = Tournament::transitive(60);
        let o = Ordering::new(&t, (0..60).collect()).unwrap();
        let (j, a, b_set) = transitive_request(&o);
        let req = DrcRequest {
            tournament: &t,
            ordering: &o,
            j,
            a,
            a_prime: 4,
            b: 8,
            ell: 2,
            s: 2,
            k: 6,
            delta_minus: 2,
            b_set,
        };
        let choice = choose_interval(&req).unwrap();
        // Every vertex before B beats all of B, so every interval attains
        // |I| * |B| and the first maximal index wins.
        assert_eq!(choice.index, 0);
        assert_eq!(choice.degree_sum, 4 * 8);
    }

    #[test]
    fn choose_interval_prefers_unique_maximizer() {
        // Hand-built: vertices 0..8 in order; B = {6, 7}; interval [2, 4)
        // dominates B while [4, 6) only half-covers it.
        let forward: &[(u32, u32)] = &[(2, 6), (2, 7), (3, 6), (3, 7), (4, 6), (5, 7)];
        let t = Tournament::from_pair_fn(8, |u, v| {
            if v >= 6 && u < 6 {
                forward.contains(&(u, v))
            } else {
                true
            }
        });
        let o = Ordering::new(&t, (0..8).collect()).unwrap();
        let req = DrcRequest {
            tournament: &t,
            ordering: &o,
            j: 6,
            a: 2,
            a_prime: 2,
            b: 2,
            ell: 1,
            s: 0,
            k: 1,
            delta_minus: 1,
            b_set: vec![6, 7],
        };
        // k = 1: window [2, 6) splits into [2,4), [4,6).
        let choice = choose_interval(&req).unwrap();
        assert_eq!(choice.start, 2);
        assert_eq!(choice.degree_sum, 4);
    }

    /// Exhaustive recomputation oracle on a random instance.
    #[test]
    fn choose_interval_matches_exhaustive_max() {
        let t = Tournament::random(60, 17);
        let o = local_median_order(&t, 5);
        let a = 8;
        let j = 52;
        let b_set: Vec<u32> = (j..j + a).map(|p| o.vertex_at(p)).collect();
        let req = DrcRequest {
            tournament: &t,
            ordering: &o,
            j,
            a,
            a_prime: 4,
            b: 6,
            ell: 2,
            s: 1,
            k: 6,
            delta_minus: 2,
            b_set: b_set.clone(),
        };
        let choice = choose_interval(&req).unwrap();
        let b_bits = BitSet::from_indices(60, b_set.iter().copied());
        let window_start = j - 2 * 6 * 4;
        let mut best = 0u64;
        for idx in 0..12 {
            let start = window_start + idx * 4;
            let sum: u64 = (start..start + 4)
                .map(|p| t.out_degree_in(o.vertex_at(p), &b_bits) as u64)
                .sum();
            best = best.max(sum);
        }
        assert_eq!(choice.degree_sum, best);
        // Pigeonhole: the chosen sum is at least the window average.
        assert!(choice.degree_sum as u128 * 12 >= choice.total_sum as u128);
    }

    #[test]
    fn validation_rejects_bad_requests() {
        let t = Tournament::transitive(30);
        let o = Ordering::new(&t, (0..30).collect()).unwrap();
        let mk = |j: usize, a: usize, a_prime: usize, b: usize, k: usize| DrcRequest {
            tournament: &t,
            ordering: &o,
            j,
            a,
            a_prime,
            b,
            ell: 1,
            s: 0,
            k,
            delta_minus: 1,
            b_set: (j..j + a).map(|p| o.vertex_at(p)).collect(),
        };
        assert!(mk(26, 4, 2, 4, 6).validate().is_ok());
        // 2a' < a
        assert!(mk(26, 4, 1, 4, 6).validate().is_err());
        // window too small: 2ka' > j
        assert!(mk(10, 4, 2, 4, 6).validate().is_err());
        // |B| < b
        assert!(mk(26, 4, 2, 5, 6).validate().is_err());
    }

    #[test]
    fn count_bad_empty_b_makes_all_subsets_bad() {
        let t = Tournament::transitive(10);
        let a_set: Vec<u32> = (0..6).collect();
        let empty = BitSet::new(10);
        let c = count_bad_subsets(&a_set, &empty, 2, 0, &t, CountMode::Exact { budget: 100 })
            .unwrap();
        assert_eq!(c, BadCount::Exact(BigUint::from(15u32)));
    }

    #[test]
    fn count_bad_zero_when_neighborhood_large() {
        // A = {0, 1} in the transitive order, B = tail of size 5; their
        // common out-neighborhood is all of B, above s + 3.
        let t = Tournament::transitive(10);
        let a_set = vec![0u32, 1];
        let b = BitSet::from_indices(10, 5..10u32);
        let c =
            count_bad_subsets(&a_set, &b, 2, 2, &t, CountMode::Exact { budget: 100 }).unwrap();
        assert_eq!(c, BadCount::Exact(BigUint::zero()));
    }

    /// Sampled estimate within 3 sigma of the exact count.
    #[test]
    fn sampled_estimate_tracks_exact() {
        let t = Tournament::random(40, 23);
        let a_set: Vec<u32> = (0..20).collect();
        let b = BitSet::from_indices(40, 20..40u32);
        let exact =
            match count_bad_subsets(&a_set, &b, 2, 4, &t, CountMode::Exact { budget: 1000 })
                .unwrap()
            {
                BadCount::Exact(c) => c,
                _ => unreachable!(),
            };
        let trials = 20_000u64;
        let est = match count_bad_subsets(
            &a_set,
            &b,
            2,
            4,
            &t,
            CountMode::Sampled { trials, seed: 5 },
        )
        .unwrap()
        {
            BadCount::Estimated { estimate, .. } => estimate,
            _ => unreachable!(),
        };
        // 3 sigma of a binomial proportion scaled to counts; sigma is at
        // most C(20,2) / (2 sqrt(trials)).
        let total = 190.0f64;
        let exact_f: f64 = exact.to_u64_digits().first().copied().unwrap_or(0) as f64;
        let est_f: f64 = {
            let n = est.numer().to_u64_digits().1.first().copied().unwrap_or(0) as f64;
            let d = est.denom().to_u64_digits().1.first().copied().unwrap_or(1) as f64;
            n / d
        };
        let sigma = total / (2.0 * (trials as f64).sqrt());
        assert!((exact_f - est_f).abs() <= 3.0 * sigma, "exact {exact_f} est {est_f}");
    }

    /// Enlarging B never increases the bad count.
    #[test]
    fn bad_count_monotone_in_b() {
        let t = Tournament::random(30, 9);
        let a_set: Vec<u32> = (0..10).collect();
        for s in 0..4usize {
            let small = BitSet::from_indices(30, 10..20u32);
            let large = BitSet::from_indices(30, 10..30u32);
            let c_small =
                count_bad_subsets(&a_set, &small, 2, s, &t, CountMode::Exact { budget: 1000 })
                    .unwrap();
            let c_large =
                count_bad_subsets(&a_set, &large, 2, s, &t, CountMode::Exact { budget: 1000 })
                    .unwrap();
            assert!(c_large.as_rational() <= c_small.as_rational());
        }
    }

    #[test]
    fn select_with_full_out_neighborhoods_accepts_whole_interval() {
        // Transitive: every u in I dominates B, so M = I on every trial.
        let t = Tournament::transitive(60);
        let o = Ordering::new(&t, (0..60).collect()).unwrap();
        let (j, a, b_set) = transitive_request(&o);
        let req = DrcRequest {
            tournament: &t,
            ordering: &o,
            j,
            a,
            a_prime: 4,
            b: 8,
            ell: 3,
            s: 3,
            k: 6,
            delta_minus: 2,
            b_set,
        };
        let res = drc_select(&req, 10, 1, DEFAULT_COUNT_BUDGET).unwrap().unwrap();
        assert_eq!(res.a_set.len(), 4);
        assert_eq!(res.trace.trial, 0);
        // b = 8 > s: all pairs keep all of B as common out-neighborhood.
        assert_eq!(res.bad_count, BadCount::Exact(BigUint::zero()));
        // Location constraint.
        assert!(res.j_prime >= j - 2 * 6 * 4 && res.j_prime <= j - 4);
    }

    #[test]
    fn select_with_ell_zero_keeps_interval_and_checks_bad_count_only() {
        let t = Tournament::random(50, 3);
        let o = local_median_order(&t, 8);
        let j = 42;
        let a = 8;
        let b_set: Vec<u32> = (j..j + a).map(|p| o.vertex_at(p)).collect();
        let req = DrcRequest {
            tournament: &t,
            ordering: &o,
            j,
            a,
            a_prime: 5,
            b: 8,
            ell: 0,
            s: 0,
            k: 4,
            delta_minus: 2,
            b_set,
        };
        let res = drc_select(&req, 5, 2, DEFAULT_COUNT_BUDGET).unwrap().unwrap();
        assert_eq!(res.a_set.len(), 5, "ℓ = 0 keeps all of I");
        assert!(res.trace.sample.is_empty());
        // ℓ = 0 bad bound: 4 C(a', Δ⁻) >= C(|A|, Δ⁻) always.
        assert!(res.bad_count.as_rational() <= res.bad_bound.clone().unwrap());
    }

    /// Accepted result's bad count equals an independent brute-force pair
    /// scan, and both lemma conclusions hold verbatim.
    #[test]
    fn select_small_instance_bad_count_matches_brute_force() {
        let t = Tournament::random(40, 77);
        let o = local_median_order(&t, 12);
        let j = 32;
        let a = 8;
        let b_set: Vec<u32> = (j..j + a).map(|p| o.vertex_at(p)).collect();
        let req = DrcRequest {
            tournament: &t,
            ordering: &o,
            j,
            a,
            a_prime: 8,
            b: 8,
            ell: 2,
            s: 1,
            k: 2,
            delta_minus: 2,
            b_set: b_set.clone(),
        };
        let res = drc_select(&req, 200, 4, DEFAULT_COUNT_BUDGET).unwrap().unwrap();
        let b_bits = BitSet::from_indices(40, b_set.iter().copied());
        let mut brute = 0u32;
        for x in 0..res.a_set.len() {
            for y in x + 1..res.a_set.len() {
                let mut acc = b_bits.clone();
                acc.and_assign(t.out_row(res.a_set[x]));
                acc.and_assign(t.out_row(res.a_set[y]));
                if acc.count() <= 1 {
                    brute += 1;
                }
            }
        }
        assert_eq!(res.bad_count, BadCount::Exact(BigUint::from(brute)));
        assert!(ratio::from_int(res.a_set.len() as u64) >= res.size_bound);
        assert!(res.bad_count.as_rational() <= res.bad_bound.clone().unwrap());
    }

    #[test]
    fn median_violation_reported_with_witness() {
        // Reversed transitive order: vertices before B have no edges into B,
        // so the pigeonhole bound fails and a median violation is due.
        let t = Tournament::transitive(40);
        let o = Ordering::new(&t, (0..40).rev().collect()).unwrap();
        let j = 32;
        let b_set: Vec<u32> = (j..40).map(|p| o.vertex_at(p)).collect();
        let req = DrcRequest {
            tournament: &t,
            ordering: &o,
            j,
            a: 8,
            a_prime: 4,
            b: 8,
            ell: 1,
            s: 7,
            k: 4,
            delta_minus: 2,
            b_set,
        };
        match choose_interval(&req) {
            Err(DrcError::MedianViolated { in_degree, window, .. }) => {
                assert!(2 * in_degree < window);
            }
            other => panic!("expected median violation, got {other:?}"),
        }
    }

    #[test]
    fn select_is_deterministic() {
        let t = Tournament::random(50, 31);
        let o = local_median_order(&t, 2);
        let j = 40;
        let b_set: Vec<u32> = (j..48).map(|p| o.vertex_at(p)).collect();
        let req = DrcRequest {
            tournament: &t,
            ordering: &o,
            j,
            a: 8,
            a_prime: 5,
            b: 8,
            ell: 2,
            s: 1,
            k: 4,
            delta_minus: 2,
            b_set,
        };
        let a = drc_select(&req, 50, 6, DEFAULT_COUNT_BUDGET).unwrap().unwrap();
        let b = drc_select(&req, 50, 6, DEFAULT_COUNT_BUDGET).unwrap().unwrap();
        assert_eq!(a.a_set, b.a_set);
        assert_eq!(a.trace.sample, b.trace.sample);
        assert_eq!(a.trace.trial, b.trace.trial);
    }
}
