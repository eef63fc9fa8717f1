//! Exact squared weights of the generalized Heun operator.
//!
//! In the orthonormal basis `e_k = z^k / sqrt(k!)` the operator
//! `a*^p (a^m + a*^m) a^p` acts as
//!
//! ```text
//! e_k  ->  0                                   k < p
//! e_k  ->  up(k) e_{k+m}                       p <= k < p + m
//! e_k  ->  down(k) e_{k-m} + up(k) e_{k+m}     k >= p + m
//! ```
//!
//! with `up(k)^2 = k! (k+m)! / ((k-p)!)^2` and
//! `down(k)^2 = k! (k-m)! / ((k-p-m)!)^2`. Both squares are integers and are
//! evaluated exactly as short products of consecutive integers, so no
//! factorial is ever materialised. Everything that compares weights does so
//! on these exact squares; square roots only appear in floating outputs.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{HeunError, Result};

/// Creation/annihilation power `p` and shift step `m` of `H^{p,m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OperatorParams {
    pub p: u32,
    pub m: u32,
}

impl OperatorParams {
    /// `p = 0` is accepted so the self-adjoint controls `a^m + a*^m` can be built.
    pub fn new(p: u32, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(HeunError::InvalidParams("shift step m must be >= 1".into()));
        }
        Ok(Self { p, m })
    }

    /// Degree `2p + m` of the operator as a polynomial in `(a, a*)`.
    pub fn degree(&self) -> u32 {
        2 * self.p + self.m
    }

    /// Growth exponent `p + m/2` of `up(k)` as a float.
    pub fn growth(&self) -> f64 {
        self.degree() as f64 / 2.0
    }

    /// `p + m/2 > 1`, equivalently `2p + m > 2`.
    pub fn indeterminacy_criterion(&self) -> bool {
        self.degree() > 2
    }
}

impl std::fmt::Display for OperatorParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(p={}, m={})", self.p, self.m)
    }
}

/// Product of the integers in `lo..=hi` (empty product is 1).
pub(crate) fn range_product(lo: u64, hi: u64) -> BigUint {
    let mut acc = BigUint::one();
    // accumulate in u128 chunks before touching the bignum
    let mut chunk: u128 = 1;
    for x in lo..=hi {
        match chunk.checked_mul(x as u128) {
            Some(c) => chunk = c,
            None => {
                acc *= chunk;
                chunk = x as u128;
            }
        }
    }
    acc * chunk
}

pub(crate) fn to_rational(n: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn biguint_to_f64(n: &BigUint) -> f64 {
    n.to_f64().unwrap_or(f64::INFINITY)
}

/// `k!(k+m)!/((k-p)!)^2` as an integer; caller guarantees `k >= p`.
pub(crate) fn up_sq_int(k: u64, params: OperatorParams) -> BigUint {
    let p = params.p as u64;
    let m = params.m as u64;
    debug_assert!(k >= p);
    // k!/(k-p)! squared, times (k+1)...(k+m)
    let falling = range_product(k + 1 - p, k);
    &falling * &falling * range_product(k + 1, k + m)
}

/// `k!(k-m)!/((k-p-m)!)^2` as an integer; caller guarantees `k >= p + m`.
pub(crate) fn down_sq_int(k: u64, params: OperatorParams) -> BigUint {
    let p = params.p as u64;
    let m = params.m as u64;
    debug_assert!(k >= p + m);
    // k!/(k-m)! times ((k-m)!/(k-m-p)!)^2
    let lower = k - m;
    let falling = range_product(lower + 1 - p, lower);
    range_product(lower + 1, k) * &falling * &falling
}

/// Squared raising weight `up(k)^2`. Defined for `k >= p`.
pub fn weight_up_sq(k: u64, params: OperatorParams) -> Result<BigRational> {
    if k < params.p as u64 {
        return Err(HeunError::Domain(format!(
            "weight undefined below p: k = {k} < p = {}",
            params.p
        )));
    }
    Ok(to_rational(up_sq_int(k, params)))
}

/// Squared lowering weight `down(k)^2`. Defined for `k >= p + m`.
pub fn weight_down_sq(k: u64, params: OperatorParams) -> Result<BigRational> {
    let floor = params.p as u64 + params.m as u64;
    if k < floor {
        return Err(HeunError::Domain(format!(
            "lowering weight undefined below p + m: k = {k} < {floor}"
        )));
    }
    Ok(to_rational(down_sq_int(k, params)))
}

/// Growth exponent `(2p + m)/2` of `up(k)`.
pub fn asymptotic_exponent(params: OperatorParams) -> BigRational {
    BigRational::new(BigInt::from(params.degree()), BigInt::from(2u32))
}

/// Least-squares slope of `log up(k)` against `log k` on `samples`
/// log-spaced points of `[k_lo, k_hi]`.
pub fn loglog_slope(params: OperatorParams, k_lo: u64, k_hi: u64, samples: usize) -> Result<f64> {
    let k_lo = k_lo.max(params.p as u64).max(2);
    if k_hi <= k_lo || samples < 2 {
        return Err(HeunError::Domain(format!(
            "slope window [{k_lo}, {k_hi}] with {samples} samples is degenerate"
        )));
    }
    let (l0, l1) = ((k_lo as f64).ln(), (k_hi as f64).ln());
    let mut ks: Vec<u64> = (0..samples)
        .map(|i| (l0 + (l1 - l0) * i as f64 / (samples - 1) as f64).exp().round() as u64)
        .map(|k| k.clamp(k_lo, k_hi))
        .collect();
    ks.dedup();
    let pts: Vec<(f64, f64)> = ks
        .iter()
        .map(|&k| ((k as f64).ln(), 0.5 * biguint_to_f64(&up_sq_int(k, params)).ln()))
        .collect();
    Ok(least_squares_slope(&pts))
}

pub(crate) fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// The weight sequence of one `(p, m)`; the single entry point every other
/// module uses for `up`/`down`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightSequence {
    params: OperatorParams,
}

impl WeightSequence {
    pub fn new(params: OperatorParams) -> Self {
        Self { params }
    }

    pub fn params(&self) -> OperatorParams {
        self.params
    }

    pub fn up_sq(&self, k: u64) -> Result<BigRational> {
        weight_up_sq(k, self.params)
    }

    pub fn down_sq(&self, k: u64) -> Result<BigRational> {
        weight_down_sq(k, self.params)
    }

    /// Exact integer `up(k)^2`, or `None` below `p`.
    pub fn up_sq_integer(&self, k: u64) -> Option<BigUint> {
        (k >= self.params.p as u64).then(|| up_sq_int(k, self.params))
    }

    pub fn down_sq_integer(&self, k: u64) -> Option<BigUint> {
        (k >= (self.params.p + self.params.m) as u64).then(|| down_sq_int(k, self.params))
    }

    /// `up(k)` at double precision; zero below `p`.
    pub fn up(&self, k: u64) -> f64 {
        self.up_sq_integer(k).map_or(0.0, |s| biguint_to_f64(&s).sqrt())
    }

    /// `down(k)` at double precision; zero below `p + m`.
    pub fn down(&self, k: u64) -> f64 {
        self.down_sq_integer(k).map_or(0.0, |s| biguint_to_f64(&s).sqrt())
    }

    /// `up(k)` for `k` in `from..from + len`.
    pub fn up_table(&self, from: u64, len: usize) -> Vec<f64> {
        (from..from + len as u64).map(|k| self.up(k)).collect()
    }
}
