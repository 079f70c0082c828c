//! Exact arithmetic helpers: big rationals, binomial coefficients, and a
//! small exact type for quantities of the form `q · 2^(-p/2)` with rational
//! `q`, which show up in the embedding thresholds. Keeping these exact avoids
//! float-threshold artifacts in accept/reject decisions.

use alloc::vec::Vec;
use core::cmp::Ordering as CmpOrdering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn from_biguint(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// `base^exp` for non-negative integer exponents, with `x^0 = 1` for all `x`.
pub fn pow(base: &BigRational, exp: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Exact binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Smallest integer ≥ r, as u64. Panics on negative input.
pub fn ceil_u64(r: &BigRational) -> u64 {
    assert!(!r.is_negative());
    let c = r.ceil().to_integer();
    let (_, digits) = c.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0],
        _ => panic!("value too large for u64"),
    }
}

/// Largest integer ≤ r, as u64. Panics on negative input.
pub fn floor_u64(r: &BigRational) -> u64 {
    assert!(!r.is_negative());
    let f = r.floor().to_integer();
    let (_, digits) = f.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0],
        _ => panic!("value too large for u64"),
    }
}

/// Exact non-negative value `coeff · 2^(-sqrt_half_pow / 2)`.
///
/// For even powers this is rational; for odd powers it carries one factor of
/// `1/√2`. Comparisons square both sides, which is order-preserving on
/// non-negative values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sqrt2Scaled {
    coeff: BigRational,
    sqrt_half_pow: u32,
}

impl Sqrt2Scaled {
    pub fn new(coeff: BigRational, sqrt_half_pow: u32) -> Self {
        assert!(!coeff.is_negative(), "Sqrt2Scaled coefficient must be non-negative");
        Sqrt2Scaled { coeff, sqrt_half_pow }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Sqrt2Scaled::new(q, 0)
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn sqrt_half_pow(&self) -> u32 {
        self.sqrt_half_pow
    }

    /// The exact square, always rational: `coeff² / 2^sqrt_half_pow`.
    pub fn square(&self) -> BigRational {
        &self.coeff * &self.coeff / from_int(1u64 << self.sqrt_half_pow.min(62)) * normalize_pow_excess(self.sqrt_half_pow)
    }

    pub fn cmp_rational(&self, r: &BigRational) -> CmpOrdering {
        if r.is_negative() {
            return CmpOrdering::Greater;
        }
        let lhs = self.square();
        let rhs = r * r;
        lhs.cmp(&rhs)
    }

    pub fn cmp_value(&self, other: &Sqrt2Scaled) -> CmpOrdering {
        self.square().cmp(&other.square())
    }

    pub fn ge_rational(&self, r: &BigRational) -> bool {
        self.cmp_rational(r) != CmpOrdering::Less
    }

    pub fn le_rational(&self, r: &BigRational) -> bool {
        !r.is_negative() && self.cmp_rational(r) != CmpOrdering::Greater
    }
}

// 2^p for p possibly above the u64 shift range.
fn normalize_pow_excess(p: u32) -> BigRational {
    if p <= 62 {
        BigRational::one()
    } else {
        let mut acc = BigRational::one();
        let half = ratio(1, 2);
        for _ in 62..p {
            acc *= &half;
        }
        acc
    }
}

/// Walks all k-subsets of `0..n` in lexicographic order, invoking `f` with the
/// current index tuple. Returns early if `f` returns `false`.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    if k == 0 {
        f(&idx);
        return;
    }
    loop {
        if !f(&idx) {
            return;
        }
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), BigUint::from(120u32));
        assert_eq!(binomial(5, 0), BigUint::from(1u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
    }

    #[test]
    fn sqrt2_scaled_comparisons() {
        // 1/√2 ≈ 0.7071: between 7/10 and 8/10.
        let v = Sqrt2Scaled::new(ratio(1, 1), 1);
        assert!(v.ge_rational(&ratio(7, 10)));
        assert!(v.le_rational(&ratio(8, 10)));
        // (1/√2)² = 1/2 exactly.
        assert_eq!(v.square(), ratio(1, 2));
        // Even power is plain rational: 3 · 2^{-1} = 3/2.
        let w = Sqrt2Scaled::new(ratio(3, 1), 2);
        assert_eq!(w.square(), ratio(9, 4));
        assert!(w.le_rational(&ratio(3, 2)) && w.ge_rational(&ratio(3, 2)));
    }

    #[test]
    fn sqrt2_scaled_large_pow() {
        let v = Sqrt2Scaled::new(ratio(1, 1), 130);
        assert_eq!(v.square(), pow(&ratio(1, 2), 130));
    }

    #[test]
    fn combination_walker_counts() {
        let mut count = 0u64;
        for_each_combination(6, 3, |idx| {
            assert!(idx.windows(2).all(|w| w[0] < w[1]));
            count += 1;
            true
        });
        assert_eq!(count, 20);
        // k = 0 visits the empty tuple once.
        let mut empty = 0;
        for_each_combination(4, 0, |_| {
            empty += 1;
            true
        });
        assert_eq!(empty, 1);
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(ceil_u64(&ratio(7, 2)), 4);
        assert_eq!(floor_u64(&ratio(7, 2)), 3);
        assert_eq!(ceil_u64(&ratio(0, 5)), 0);
    }
}
