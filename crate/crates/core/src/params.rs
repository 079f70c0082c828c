//! The constant cascade of the embedding argument and the closed-form bound
//! expressions, all in exact rational / big-integer arithmetic.
//!
//! Layer quantities follow the backward recurrence
//! `n_i = (2+ε)^{2(Δ⁻_{i-1}+Δ⁻_i)} |V_i| + n_{i+1}/2`, with `a_i = c_a n_i`,
//! `b_i = c_b (2+ε)^{-2Δ⁻_i} n_i`, `s_i = c_s (2+ε)^{-2(Δ⁻_i+Δ⁻_{i-1})} n_i`,
//! `δ_i = (2^{-1/2} s_{i+1}/b_{i+1})^{Δ⁻_i} / (4Δ⁻Δ⁺)` and
//! `o_i = 2k Σ_{j≥i} a_j`. Scaled mode multiplies the three constants by user
//! shrink factors and records which proof inequalities the shrink breaks.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::digraph::GradedDigraph;
use crate::ratio::{self, Sqrt2Scaled};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamError {
    /// An interior band carries no edges, so the digraph splits into
    /// components; the cascade is defined per component.
    #[error("band {band} has maximum in-degree 0: run per weakly connected component")]
    DisconnectedReduction { band: usize },
}

/// Multipliers applied to (c_s, c_b, c_a) in scaled mode. Defaults shrink
/// c_s from 32 to 8 and c_b from 2000·Δ⁺Δ⁻·c_s to 64·Δ⁺Δ⁻ (c_a stays 2c_b).
#[derive(Clone, Debug)]
pub struct Shrink {
    pub sigma_s: BigRational,
    pub sigma_b: BigRational,
    pub sigma_a: BigRational,
}

impl Default for Shrink {
    fn default() -> Self {
        Shrink {
            sigma_s: ratio::ratio(1, 4),
            sigma_b: ratio::ratio(1, 250),
            sigma_a: BigRational::one(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum ParamMode {
    Theoretical,
    Scaled(Shrink),
}

/// A proof inequality that does not hold for the computed cascade (expected
/// under scaled constants; in theoretical mode the δ condition can still
/// fail on layers where the band in-degree drops).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CascadeFlag {
    /// `s_i >= 32 |V_i|` fails at 0-based layer `layer`.
    SlackBelow32V { layer: usize },
    /// `a_i >= a_{i+1}/2` fails at 0-based layer `layer`.
    IntervalHalving { layer: usize },
    /// `b_i >= 2 Δ⁻_i` fails at 0-based layer `layer`.
    BTooSmall { layer: usize },
    /// `δ_L` exceeds the layer-embedding threshold at 0-based layer `layer`.
    DeltaHypothesis { layer: usize },
}

#[derive(Clone, Debug)]
pub struct ParameterSet {
    pub scaled: bool,
    pub h: usize,
    pub layer_sizes: Vec<u64>,
    /// Band maximum in-degrees, 0-based band `b` between layers `b`, `b+1`.
    pub bands: Vec<u32>,
    /// Global maximum in/out degree clamped to >= 1 (constants degenerate
    /// otherwise; only affects edgeless digraphs).
    pub delta_minus: u32,
    pub delta_plus: u32,
    pub eps: BigRational,
    pub k: u64,
    pub c_s: BigRational,
    pub c_b: BigRational,
    pub c_a: BigRational,
    pub n: Vec<BigRational>,
    pub a: Vec<BigRational>,
    pub b: Vec<BigRational>,
    pub s: Vec<BigRational>,
    /// δ per 0-based band (empty when h = 1).
    pub delta: Vec<Sqrt2Scaled>,
    pub o: Vec<BigRational>,
    /// `N = o_1`: the host size the theoretical argument consumes.
    pub host_bound: BigRational,
    pub flags: Vec<CascadeFlag>,
}

impl ParameterSet {
    /// Band in-degree entering 0-based layer `l` (0 for the first layer).
    pub fn in_band(&self, l: usize) -> u32 {
        if l == 0 { 0 } else { self.bands[l - 1] }
    }

    /// Band in-degree leaving 0-based layer `l` (0 for the last).
    pub fn out_band(&self, l: usize) -> u32 {
        if l + 1 >= self.h { 0 } else { self.bands[l] }
    }
}

pub fn compute_parameters(d: &GradedDigraph, mode: ParamMode) -> Result<ParameterSet, ParamError> {
    let h = d.height();
    let bands: Vec<u32> = d.band_max_ins().to_vec();
    if let Some(bad) = bands.iter().position(|&b| b == 0) {
        return Err(ParamError::DisconnectedReduction { band: bad });
    }
    let layer_sizes: Vec<u64> = d.layer_sizes().iter().map(|&s| s as u64).collect();
    let delta_minus = d.base().max_in_degree().max(1);
    let delta_plus = d.base().max_out_degree().max(1);
    let eps = ratio::ratio(2, delta_minus as i64);
    let k = 4 * delta_minus as u64 + 4;
    let base = ratio::ratio(2, 1) + &eps;

    let (scaled, c_s, c_b, c_a) = match &mode {
        ParamMode::Theoretical => {
            let c_s = ratio::from_int(32);
            let c_b = ratio::from_int(2000 * delta_plus as u64 * delta_minus as u64) * &c_s;
            let c_a = ratio::from_int(2) * &c_b;
            (false, c_s, c_b, c_a)
        }
        ParamMode::Scaled(sh) => {
            let c_s = &sh.sigma_s * ratio::from_int(32);
            let c_b = &sh.sigma_b
                * ratio::from_int(2000 * delta_plus as u64 * delta_minus as u64)
                * &c_s;
            let c_a = &sh.sigma_a * ratio::from_int(2) * &c_b;
            (true, c_s, c_b, c_a)
        }
    };

    let in_band = |l: usize| -> u32 { if l == 0 { 0 } else { bands[l - 1] } };
    let out_band = |l: usize| -> u32 { if l + 1 >= h { 0 } else { bands[l] } };

    // Backward recurrence for n; everything else is a per-layer product.
    let mut n = alloc::vec![BigRational::zero(); h];
    for l in (0..h).rev() {
        let expo = 2 * (in_band(l) + out_band(l));
        let head = ratio::pow(&base, expo) * ratio::from_int(layer_sizes[l]);
        let tail = if l + 1 < h { &n[l + 1] * ratio::ratio(1, 2) } else { BigRational::zero() };
        n[l] = head + tail;
    }
    let a: Vec<BigRational> = n.iter().map(|ni| &c_a * ni).collect();
    let b: Vec<BigRational> = (0..h)
        .map(|l| &c_b * ratio::pow(&base, 2 * out_band(l)).recip() * &n[l])
        .collect();
    let s: Vec<BigRational> = (0..h)
        .map(|l| &c_s * ratio::pow(&base, 2 * (out_band(l) + in_band(l))).recip() * &n[l])
        .collect();
    let four_dd = ratio::from_int(4 * delta_minus as u64 * delta_plus as u64);
    let delta: Vec<Sqrt2Scaled> = (0..h.saturating_sub(1))
        .map(|band| {
            let dm = bands[band];
            let coeff = ratio::pow(&(&s[band + 1] / &b[band + 1]), dm) / &four_dd;
            Sqrt2Scaled::new(coeff, dm)
        })
        .collect();
    let mut o = alloc::vec![BigRational::zero(); h];
    let two_k = ratio::from_int(2 * k);
    let mut acc = BigRational::zero();
    for l in (0..h).rev() {
        acc += &a[l];
        o[l] = &two_k * &acc;
    }
    let host_bound = o[0].clone();

    let mut flags = Vec::new();
    for l in 0..h {
        if s[l] < ratio::from_int(32 * layer_sizes[l]) {
            flags.push(CascadeFlag::SlackBelow32V { layer: l });
        }
        if l + 1 < h && &a[l] * ratio::from_int(2) < a[l + 1] {
            flags.push(CascadeFlag::IntervalHalving { layer: l });
        }
        if l + 1 < h && b[l] < ratio::from_int(2 * out_band(l) as u64) {
            flags.push(CascadeFlag::BTooSmall { layer: l });
        }
    }
    // Layer-embedding hypothesis per embedded layer L (the last layer is
    // greedy): δ_L <= (2^{-1/2} b_lem/a_lem)^{Δ⁻_band} / (4Δ⁺Δ⁻), where the
    // first layer is called with a = b = b_1 and later ones with
    // a = b_L, b = s_L.
    for (l, dl) in delta.iter().enumerate() {
        let dm = bands[l].max(1);
        let (a_lem, b_lem) = if l == 0 { (&b[0], &b[0]) } else { (&b[l], &s[l]) };
        let coeff = ratio::pow(&(b_lem / a_lem), dm) / &four_dd;
        let threshold = Sqrt2Scaled::new(coeff, dm);
        if dl.cmp_value(&threshold) == core::cmp::Ordering::Greater {
            flags.push(CascadeFlag::DeltaHypothesis { layer: l });
        }
    }

    Ok(ParameterSet {
        scaled,
        h,
        layer_sizes,
        bands,
        delta_minus,
        delta_plus,
        eps,
        k,
        c_s,
        c_b,
        c_a,
        n,
        a,
        b,
        s,
        delta,
        o,
        host_bound,
        flags,
    })
}

/// `Σ_i 2^{2(Δ⁻_{i-1} + Δ⁻_i)} |V_i|` over the graded partition, exact.
pub fn layer_sum(d: &GradedDigraph) -> BigUint {
    let h = d.height();
    let mut sum = BigUint::zero();
    for (l, layer) in d.layers().iter().enumerate() {
        let in_b = if l == 0 { 0 } else { d.band_max_in(l - 1) };
        let out_b = if l + 1 >= h { 0 } else { d.band_max_in(l) };
        sum += (BigUint::one() << (2 * (in_b + out_b) as usize)) * BigUint::from(layer.len());
    }
    sum
}

/// The upper-bound expression `10^9 (Δ⁻)² Δ⁺ Σ_i 2^{2(Δ⁻_{i-1}+Δ⁻_i)} |V_i|`
/// with the digraph's actual maximum degrees, exact in big integers.
pub fn theorem_bound(d: &GradedDigraph) -> BigUint {
    let dm = BigUint::from(d.base().max_in_degree());
    let dp = BigUint::from(d.base().max_out_degree());
    BigUint::from(1_000_000_000u64) * &dm * &dm * dp * layer_sum(d)
}

/// The hypercube bounding sum `Σ_{i=0}^d C(d,i) · 4 · 16^i`, which collapses
/// to `4 · 17^d` by the binomial theorem. This dominates `layer_sum` of the
/// d-cube (the top layer contributes `4^d <= 4 · 16^d` there).
pub fn hypercube_bound_sum(dim: u32) -> BigUint {
    let mut sum = BigUint::zero();
    for i in 0..=dim as u64 {
        sum += ratio::binomial(dim as u64, i)
            * BigUint::from(4u32)
            * num_traits::pow::pow(BigUint::from(16u32), i as usize);
    }
    sum
}

/// The uniform-degree specialization `10^9 Δ⁺ (Δ⁻)² 2^{4Δ⁻} n`.
pub fn uniform_degree_bound(n: u64, delta_minus: u32, delta_plus: u32) -> BigUint {
    BigUint::from(1_000_000_000u64)
        * BigUint::from(delta_plus)
        * BigUint::from(delta_minus)
        * BigUint::from(delta_minus)
        * (BigUint::one() << (4 * delta_minus as usize))
        * BigUint::from(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{make_grid, make_hypercube, make_transitive_pattern, GradedDigraph};
    use crate::ratio::ratio as rat;

    fn corpus() -> Vec<GradedDigraph> {
        let mut v = Vec::new();
        for (d, k) in [(1, 3), (2, 3), (2, 4), (3, 2)] {
            v.push(make_grid(d, k).unwrap());
        }
        for d in 1..=5 {
            v.push(make_hypercube(d).unwrap());
        }
        v
    }

    /// The stored cascade must equal the independent closed-form sum
    /// `n_i = Σ_{j>=i} (2+ε)^{2(Δ_{j-1}+Δ_j)} |V_j| / 2^{j-i}`.
    #[test]
    fn recurrence_matches_sum_formula() {
        for d in corpus() {
            let p = compute_parameters(&d, ParamMode::Theoretical).unwrap();
            for i in 0..p.h {
                let mut expect = num_rational::BigRational::from_integer(0.into());
                for j in i..p.h {
                    let expo = 2 * (p.in_band(j) + p.out_band(j));
                    let base = rat(2, 1) + &p.eps;
                    expect += ratio::pow(&base, expo)
                        * ratio::from_int(p.layer_sizes[j])
                        / ratio::pow(&rat(2, 1), (j - i) as u32);
                }
                assert_eq!(p.n[i], expect, "layer {i}");
            }
        }
    }

    /// Recurrence invariant in its incremental form.
    #[test]
    fn recurrence_step_holds() {
        for d in corpus() {
            let p = compute_parameters(&d, ParamMode::Theoretical).unwrap();
            let base = rat(2, 1) + &p.eps;
            for i in 0..p.h {
                let head = ratio::pow(&base, 2 * (p.in_band(i) + p.out_band(i)))
                    * ratio::from_int(p.layer_sizes[i]);
                let tail = if i + 1 < p.h {
                    &p.n[i + 1] * rat(1, 2)
                } else {
                    rat(0, 1)
                };
                assert_eq!(p.n[i], head + tail);
            }
        }
    }

    #[test]
    fn interval_halving_and_slack_floor_hold_theoretically() {
        for d in corpus() {
            let p = compute_parameters(&d, ParamMode::Theoretical).unwrap();
            for i in 0..p.h {
                if i + 1 < p.h {
                    assert!(&p.a[i] * rat(2, 1) >= p.a[i + 1]);
                }
                assert!(p.s[i] >= ratio::from_int(32 * p.layer_sizes[i]));
            }
            assert!(!p.flags.iter().any(|f| matches!(
                f,
                CascadeFlag::SlackBelow32V { .. } | CascadeFlag::IntervalHalving { .. }
            )));
        }
    }

    #[test]
    fn single_layer_digraph() {
        // h = 1: no bands, the exponent collapses to 0 and o_1 = 2k c_a |V_1|.
        let base = crate::digraph::Digraph::new(3, alloc::vec![]).unwrap();
        let d = GradedDigraph::new(base, alloc::vec![alloc::vec![0, 1, 2]]).unwrap();
        let p = compute_parameters(&d, ParamMode::Theoretical).unwrap();
        assert_eq!(p.h, 1);
        assert_eq!(p.n[0], ratio::from_int(3));
        assert_eq!(p.host_bound, ratio::from_int(2 * p.k) * &p.c_a * ratio::from_int(3));
        assert!(p.delta.is_empty());
    }

    #[test]
    fn disconnected_band_is_rejected() {
        // Edges only across the first band; the second band is empty.
        let base = crate::digraph::Digraph::new(3, alloc::vec![(0, 1)]).unwrap();
        let d = GradedDigraph::new(
            base,
            alloc::vec![alloc::vec![0], alloc::vec![1], alloc::vec![2]],
        )
        .unwrap();
        match compute_parameters(&d, ParamMode::Theoretical) {
            Err(ParamError::DisconnectedReduction { band }) => assert_eq!(band, 1),
            other => panic!("expected disconnected reduction, got {:?}", other.map(|_| ())),
        }
    }

    /// Theoretical-mode N is within the headline bound.
    #[test]
    fn host_bound_within_theorem_bound() {
        for d in corpus() {
            let p = compute_parameters(&d, ParamMode::Theoretical).unwrap();
            let bound = ratio::from_biguint(&theorem_bound(&d));
            assert!(p.host_bound <= bound, "N exceeds the theorem expression");
        }
    }

    #[test]
    fn scaled_mode_defaults() {
        let d = make_grid(2, 3).unwrap();
        let p = compute_parameters(&d, ParamMode::Scaled(Shrink::default())).unwrap();
        assert!(p.scaled);
        assert_eq!(p.c_s, ratio::from_int(8));
        let dd = (p.delta_minus * p.delta_plus) as u64;
        assert_eq!(p.c_b, ratio::from_int(64 * dd));
        assert_eq!(p.c_a, ratio::from_int(128 * dd));
        // Shrinking c_s to 8 breaks the 32|V_i| floor somewhere.
        assert!(p.flags.iter().any(|f| matches!(f, CascadeFlag::SlackBelow32V { .. })));
    }

    #[test]
    fn binomial_collapse_small_case() {
        // Σ C(2,i) 16^i = 289 = 17².
        let mut sum = BigUint::zero();
        for i in 0..=2u64 {
            sum += ratio::binomial(2, i) * num_traits::pow::pow(BigUint::from(16u32), i as usize);
        }
        assert_eq!(sum, BigUint::from(289u32));
    }

    #[test]
    fn hypercube_bound_sum_is_4_times_17_pow_d() {
        for d in 1..=12u32 {
            let want = BigUint::from(4u32) * num_traits::pow::pow(BigUint::from(17u32), d as usize);
            assert_eq!(hypercube_bound_sum(d), want, "d = {d}");
        }
    }

    /// Exact hypercube layer sum: 4(17^d - 16^d) + 4^d, and it is dominated
    /// by the binomial bounding sum.
    #[test]
    fn hypercube_layer_sum_closed_form() {
        for d in 1..=8u32 {
            let q = make_hypercube(d).unwrap();
            let got = layer_sum(&q);
            let p17 = num_traits::pow::pow(BigUint::from(17u32), d as usize);
            let p16 = num_traits::pow::pow(BigUint::from(16u32), d as usize);
            let p4 = num_traits::pow::pow(BigUint::from(4u32), d as usize);
            let want = BigUint::from(4u32) * (p17 - p16) + p4;
            assert_eq!(got, want, "d = {d}");
            assert!(got <= hypercube_bound_sum(d));
        }
    }

    #[test]
    fn theorem_bound_hypercube_factorization() {
        for d in 2..=6u32 {
            let q = make_hypercube(d).unwrap();
            let dm = BigUint::from(d);
            let want = BigUint::from(1_000_000_000u64) * &dm * &dm * &dm * layer_sum(&q);
            assert_eq!(theorem_bound(&q), want);
        }
    }

    /// Uniform-degree specialization dominates the layer expression.
    #[test]
    fn uniform_bound_dominates() {
        for d in corpus() {
            let n: u64 = d.base().vertex_count() as u64;
            let bound =
                uniform_degree_bound(n, d.base().max_in_degree(), d.base().max_out_degree());
            assert!(theorem_bound(&d) <= bound);
        }
        // Exact match of the layer form when interior bands are uniform:
        // a directed path has all bands equal to 1, so the middle layers
        // contribute 2^4 |V_i| and the ends 2^2.
        let p5 = make_grid(1, 5).unwrap();
        let sum = layer_sum(&p5);
        assert_eq!(sum, BigUint::from(4u32 + 16 * 3 + 4));
    }

    /// TT_n is graded only for n = 2; pattern helper sanity.
    #[test]
    fn transitive_pattern_grades_only_when_short() {
        assert!(crate::digraph::infer_graded_partition(&make_transitive_pattern(2)).is_ok());
        assert!(crate::digraph::infer_graded_partition(&make_transitive_pattern(3)).is_err());
    }
}
