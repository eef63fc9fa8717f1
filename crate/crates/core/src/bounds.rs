//! Explicit constants for the relative form bound
//! `|<H phi, phi>| <= eps ||a^j phi||^2 + C_eps ||phi||^2`, `j > p + m/2`.
//!
//! With `u_k = up(k)` the form satisfies
//! `|<H phi, phi>| <= sum_k (u_k + u_{k-m}) |a_k|^2 <= sum_k 2 u_k |a_k|^2`.
//! The majorant is taken in the shifted variable `t = (k - j + 1)_+`:
//! `2 u_k <= c0 + c1 t^s` with `s = p + m/2`, and `t^j <= k(k-1)..(k-j+1)`,
//! which is `||a^j e_k||^2`. Young's inequality `t^s <= delta t^j + c_delta`
//! then closes the chain with `delta = eps / c1`, `C_eps = c_delta c1 + c0`.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{HeunError, Result};
use crate::operator::apply_h;
use crate::serial::{f17, ExactRational};
use crate::vector::CoefficientVector;
use crate::weights::{range_product, up_sq_int, OperatorParams};

/// Window on which the majorant constants were certified exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MajorantWindow {
    pub k_from: usize,
    pub k_max: usize,
    /// Bound on `4 up^2(k) / (k-j+1)^(2p+m)` for every `k >= k_max`:
    /// `4 (K/(K-j+1))^(2p+m) prod_{i=1}^m (1 + i/K)`, decreasing in `K`.
    #[serde(with = "f17")]
    pub tail_ratio_sq: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub params: OperatorParams,
    pub j: usize,
    #[serde(with = "f17")]
    pub s: f64,
    #[serde(with = "f17")]
    pub eps: f64,
    /// `2 up(k) <= c0` for `p <= k < j`.
    #[serde(with = "f17")]
    pub c0: f64,
    /// `2 up(k) <= c1 (k-j+1)^s` for `k >= j`.
    #[serde(with = "f17")]
    pub c1: f64,
    #[serde(with = "f17")]
    pub delta: f64,
    /// `max_{t >= 0} (t^s - delta t^j)`.
    #[serde(with = "f17")]
    pub c_delta: f64,
    #[serde(with = "f17")]
    pub c_eps: f64,
    pub verified_on: MajorantWindow,
}

/// Default end of the exact majorant window.
pub const DEFAULT_K_MAX: usize = 10_000;

fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

fn big(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Smallest float whose square is at least `q`.
fn sqrt_up(q: &BigRational) -> f64 {
    let mut x = q.to_f64().unwrap_or(f64::INFINITY).sqrt();
    while x.is_finite() && &(rat(x) * rat(x)) < q {
        x = x.next_up();
    }
    x
}

/// `k (k-1) .. (k-j+1)`, zero for `k < j`.
fn falling(k: usize, j: usize) -> BigUint {
    if k < j {
        BigUint::zero()
    } else {
        range_product((k - j + 1) as u64, k as u64)
    }
}

fn majorant_tail(params: OperatorParams, j: usize, k: usize) -> BigRational {
    let d = params.degree() as usize;
    let ratio = BigRational::new(BigInt::from(k), BigInt::from(k - j + 1));
    let mut r = big(4) * num_traits::pow(ratio, d);
    for i in 1..=params.m as usize {
        r *= BigRational::new(BigInt::from(k + i), BigInt::from(k));
    }
    r
}

/// Closed form `c_delta = t*^s (1 - s/j)` with `t* = (s/(j delta))^(1/(j-s))`.
pub fn young_constant(s: f64, j: f64, delta: f64) -> f64 {
    let t = (s / (j * delta)).powf(1.0 / (j - s));
    t.powf(s) * (1.0 - s / j)
}

pub fn derive_constants(params: OperatorParams, j: usize, eps: f64, k_max: usize) -> Result<BoundCertificate> {
    let (p, m) = (params.p as usize, params.m as usize);
    if 2 * j <= 2 * p + m {
        return Err(HeunError::Hypothesis(format!("need j > p + m/2, got j = {j} for (p, m) = ({p}, {m})")));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(HeunError::Domain(format!("eps must be positive and finite, got {eps}")));
    }
    if k_max <= j {
        return Err(HeunError::Domain(format!("K_max = {k_max} must exceed j = {j}")));
    }
    let d = params.degree() as usize;
    let four = BigUint::from(4u32);

    let c0_sq = (p..j)
        .map(|k| &four * up_sq_int(k as u64, params))
        .max()
        .unwrap_or_default();
    let k_from = p.max(j);
    let mut c1_sq = majorant_tail(params, j, k_max);
    let tail_ratio_sq = c1_sq.to_f64().unwrap_or(f64::INFINITY);
    for k in k_from..=k_max {
        let r = BigRational::new(
            BigInt::from(&four * up_sq_int(k as u64, params)),
            BigInt::from(BigUint::from(k - j + 1).pow(d as u32)),
        );
        if r > c1_sq {
            c1_sq = r;
        }
    }
    let c0 = sqrt_up(&BigRational::from_integer(c0_sq.into()));
    let c1 = sqrt_up(&c1_sq);

    let mut delta = eps / c1;
    while rat(delta) * rat(c1) > rat(eps) {
        delta = delta.next_down();
    }
    let s = params.growth();
    let c_delta = young_constant(s, j as f64, delta) * (1.0 + 1e-12);
    let c_eps = (c_delta * c1 + c0) * (1.0 + 1e-12);
    if !c_eps.is_finite() || delta.is_nan() || delta <= 0.0 {
        return Err(HeunError::Domain(format!("constants overflow for eps = {eps:e}")));
    }
    Ok(BoundCertificate {
        params,
        j,
        s,
        eps,
        c0,
        c1,
        delta,
        c_delta,
        c_eps,
        verified_on: MajorantWindow { k_from, k_max, tail_ratio_sq },
    })
}

impl BoundCertificate {
    /// Indices `k` in `[p, k_max]` where the squared majorant
    /// `4 up^2(k) <= c0^2 + c1^2 t^(2p+m)` fails in exact arithmetic. Dropping
    /// the cross term makes this sufficient for `2 up(k) <= c0 + c1 t^s`.
    pub fn majorant_failures(&self) -> Vec<usize> {
        let (c0_sq, c1_sq) = (rat(self.c0).pow(2), rat(self.c1).pow(2));
        let d = self.params.degree() as usize;
        (self.params.p as usize..=self.verified_on.k_max)
            .filter(|&k| {
                let lhs = big(4) * BigRational::from_integer(up_sq_int(k as u64, self.params).into());
                let t = (k + 1).saturating_sub(self.j);
                let rhs = &c0_sq + &c1_sq * num_traits::pow(big(t), d);
                lhs > rhs
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    #[serde(with = "f17")]
    pub lhs: f64,
    #[serde(with = "f17")]
    pub rhs: f64,
    pub holds: bool,
}

/// Floating evaluation of both sides for a finitely supported `phi`.
pub fn verify_bound(cert: &BoundCertificate, phi: &CoefficientVector) -> Result<BoundCheck> {
    phi.require_finite()?;
    let lhs = apply_h(phi, cert.params)?.inner(phi).norm();
    let weighted: f64 = (phi.offset..phi.end())
        .map(|k| falling(k, cert.j).to_f64().unwrap_or(f64::INFINITY) * phi.get(k).norm_sqr())
        .sum();
    let rhs = cert.eps * weighted + cert.c_eps * phi.norm_sq();
    Ok(BoundCheck { lhs, rhs, holds: lhs <= rhs })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactBoundCheck {
    /// Upper end of an enclosure of `|<H phi, phi>|`.
    pub lhs_upper: ExactRational,
    pub rhs: ExactRational,
    pub holds: bool,
}

/// Exact check for a real rational `phi = sum_i coeffs[i] e_{offset+i}`.
///
/// `<H phi, phi> = 2 sum_k up(k) a_k a_{k+m}`; each `up(k)` is enclosed by
/// integer square roots of `up^2(k)`, so `lhs_upper` is a rigorous bound.
pub fn verify_bound_exact(cert: &BoundCertificate, offset: usize, coeffs: &[BigRational]) -> ExactBoundCheck {
    let (p, m) = (cert.params.p as usize, cert.params.m as usize);
    let a = |k: usize| {
        k.checked_sub(offset)
            .and_then(|i| coeffs.get(i))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    };
    let (mut lo, mut hi) = (BigRational::zero(), BigRational::zero());
    for k in offset.max(p)..offset + coeffs.len() {
        let prod = big(2) * a(k) * a(k + m);
        if prod.is_zero() {
            continue;
        }
        let root = up_sq_int(k as u64, cert.params).sqrt();
        let exact = &root * &root == up_sq_int(k as u64, cert.params);
        let below = BigRational::from_integer(root.clone().into());
        let above = if exact { below.clone() } else { BigRational::from_integer((root + 1u32).into()) };
        if prod.is_positive() {
            lo += &prod * &below;
            hi += &prod * &above;
        } else {
            lo += &prod * &above;
            hi += &prod * &below;
        }
    }
    let lhs_upper = if lo.abs() > hi.abs() { lo.abs() } else { hi.abs() };
    let mut weighted = BigRational::zero();
    let mut norm_sq = BigRational::zero();
    for (i, c) in coeffs.iter().enumerate() {
        let c2 = c * c;
        weighted += BigRational::from_integer(falling(offset + i, cert.j).into()) * &c2;
        norm_sq += c2;
    }
    let rhs = rat(cert.eps) * weighted + rat(cert.c_eps) * norm_sq;
    ExactBoundCheck { holds: lhs_upper <= rhs, lhs_upper: lhs_upper.into(), rhs: rhs.into() }
}

/// `phi` as a complex coefficient vector, for comparing the two paths.
pub fn rational_vector(offset: usize, coeffs: &[BigRational]) -> CoefficientVector {
    CoefficientVector::new(
        offset,
        coeffs.iter().map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)).collect(),
    )
}
