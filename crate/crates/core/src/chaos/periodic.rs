use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::shift::ShiftOperator;
use crate::error::{HeunError, Result};
use crate::serial::f17;
use crate::vector::CoefficientVector;
use crate::weights::OperatorParams;

/// Truncated `N`-periodic point
/// `e_s + sum_{k=1}^{J} (prod_{j=s}^{kN+s-1} 1/omega(j)) e_{kN+s}`.
///
/// Besides `s >= p` and `N >= s`, periodicity needs `H^N e_s = 0`, i.e.
/// `N > s - p`; this only bites when `p = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicPoint {
    pub s: usize,
    pub period: usize,
    pub terms: usize,
    /// `c_0 = 1, c_1, .., c_J`, the coefficient of `e_{kN+s}`.
    #[serde(with = "crate::serial::f17_vec")]
    pub coefficients: Vec<f64>,
    /// Bound on the norm of the dropped terms `k > J`.
    #[serde(with = "f17")]
    pub tail_bound: f64,
}

impl PeriodicPoint {
    pub fn to_vector(&self) -> CoefficientVector {
        let len = self.terms * self.period + 1;
        let mut coeffs = vec![Complex64::default(); len];
        for (k, &c) in self.coefficients.iter().enumerate() {
            coeffs[k * self.period] = Complex64::new(c, 0.0);
        }
        CoefficientVector::with_tail(self.s, coeffs, self.tail_bound)
    }

    /// Largest index on which `H^N phi = phi` is checked after truncation.
    pub fn retained_top(&self) -> usize {
        (self.terms - 1) * self.period + self.s
    }

    /// Bound on `||H^N phi_J - phi_J||` over all indices: the top retained
    /// term has no preimage in the truncation, plus the dropped tail.
    pub fn spill_over_bound(&self) -> f64 {
        self.coefficients[self.terms] + self.tail_bound
    }

    /// Norm of `phi - e_s` including the tail bound.
    pub fn correction_norm_bound(&self) -> f64 {
        self.coefficients[1..].iter().map(|c| c * c).sum::<f64>().sqrt() + self.tail_bound
    }
}

pub fn periodic_point(s: usize, period: usize, params: OperatorParams, terms: usize) -> Result<PeriodicPoint> {
    let p = params.p as usize;
    if s < p {
        return Err(HeunError::Domain(format!("periodic point needs s >= p, got s = {s}, p = {p}")));
    }
    if period < s || period + p <= s || period == 0 {
        return Err(HeunError::Domain(format!(
            "period N = {period} must satisfy N >= s = {s} and N > s - p"
        )));
    }
    if terms == 0 {
        return Err(HeunError::Domain("J = 0 leaves e_s, which is not periodic".into()));
    }
    let h = ShiftOperator::new(params);
    let top = terms * period + s;
    let w = h.omega_table(s, top - s + period);
    let mut coefficients = Vec::with_capacity(terms + 1);
    let mut c = 1.0f64;
    coefficients.push(c);
    for k in 1..=terms {
        for wj in &w[(k - 1) * period..k * period] {
            c /= wj;
        }
        coefficients.push(c);
    }
    // successive ratios are prod of N weights, each >= omega(JN+s)
    let q = w[top - s].powi(-(period as i32));
    let tail_bound = if q < 1.0 {
        c * q / (1.0 - q * q).sqrt() * (1.0 + 1e-12)
    } else {
        f64::INFINITY
    };
    Ok(PeriodicPoint { s, period, terms, coefficients, tail_bound })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicWitness {
    pub s: usize,
    pub period: usize,
    pub terms: usize,
    /// `||H^N phi - phi||` on indices `<= (J-1)N + s`.
    #[serde(with = "f17")]
    pub residual: f64,
    #[serde(with = "f17")]
    pub spill_over_bound: f64,
    /// Rounding budget `2 (N + 1) eps ||phi||` for the floating evaluation.
    #[serde(with = "f17")]
    pub rounding_allowance: f64,
}

pub fn periodic_witness(s: usize, period: usize, params: OperatorParams, terms: usize) -> Result<PeriodicWitness> {
    let point = periodic_point(s, period, params, terms)?;
    let mut v = point.to_vector();
    v.tail_bound = 0.0;
    let image = ShiftOperator::new(params).apply_power(&v, period)?;
    let top = point.retained_top();
    let residual = (params.p as usize..=top)
        .map(|k| (image.get(k) - v.get(k)).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(PeriodicWitness {
        s,
        period,
        terms,
        residual,
        spill_over_bound: point.spill_over_bound(),
        rounding_allowance: 2.0 * (period + 1) as f64 * f64::EPSILON * v.norm(),
    })
}

/// Outcome of approximating a finite vector by a periodic point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityResult {
    /// Factor applied to the target so that `|a_s prod_{j=p}^{s-1} omega(j)| < 1`.
    #[serde(with = "f17")]
    pub scale: f64,
    pub period: usize,
    /// Certified bound on `||phi - psi||` for the rescaled target.
    #[serde(with = "f17")]
    pub error_bound: f64,
    /// `psi = sum_s a_s phi_{s,N}`, truncated.
    pub psi: CoefficientVector,
}

/// Terms kept per periodic point in [`density_search`]; the tail bound covers
/// the rest.
pub const DENSITY_TERMS: usize = 4;

/// Scale that brings `max_s |a_s prod_{j=p}^{s-1} omega(j)|` to `1/2` when
/// the target violates the smallness condition, and `1` otherwise.
pub fn smallness_scale(target: &CoefficientVector, params: OperatorParams) -> Result<f64> {
    let h = ShiftOperator::new(params);
    let p = h.offset();
    let worst = (target.offset..target.end())
        .map(|s| target.get(s).norm() * h.omega_product(p, s))
        .fold(0.0, f64::max);
    if !worst.is_finite() {
        return Err(HeunError::Domain("target weights overflow".into()));
    }
    Ok(if worst >= 1.0 { 0.5 / worst } else { 1.0 })
}

/// Smallest `N >= M` (with `M` the target degree) whose periodic point lies
/// within `eps` of the rescaled target; searches up to `max_period`.
pub fn density_search(
    target: &CoefficientVector,
    eps: f64,
    params: OperatorParams,
    max_period: usize,
) -> Result<DensityResult> {
    target.require_finite()?;
    let p = params.p as usize;
    if eps.is_nan() || eps <= 0.0 {
        return Err(HeunError::Domain(format!("eps must be positive, got {eps}")));
    }
    if !target.is_empty() && target.offset < p {
        return Err(HeunError::Domain(format!("target starts below e_{p}")));
    }
    let Some(top) = target.degree() else {
        return Ok(DensityResult {
            scale: 1.0,
            period: 0,
            error_bound: 0.0,
            psi: CoefficientVector::zero(p),
        });
    };
    let scale = smallness_scale(target, params)?;
    let scaled = target.scaled(Complex64::new(scale, 0.0));
    let lowest = scaled.lowest().expect("nonzero target");
    // N >= M and N > M - p keep every phi_{s,N} periodic with disjoint support
    let start = top.max(top + 1 - p).max(1);
    let mut best = f64::INFINITY;
    for period in start..=max_period {
        let points: Vec<(Complex64, PeriodicPoint)> = (lowest..=top)
            .filter(|&s| scaled.get(s) != Complex64::default())
            .map(|s| Ok((scaled.get(s), periodic_point(s, period, params, DENSITY_TERMS)?)))
            .collect::<Result<_>>()?;
        // corrections live on disjoint index sets, so squared norms add
        let bound = points
            .iter()
            .map(|(a, pt)| (a.norm() * pt.correction_norm_bound()).powi(2))
            .sum::<f64>()
            .sqrt();
        best = best.min(bound);
        if bound <= eps {
            let psi = points
                .iter()
                .fold(CoefficientVector::zero(lowest), |acc, (a, pt)| acc.add(&pt.to_vector().scaled(*a)));
            return Ok(DensityResult { scale, period, error_bound: bound, psi });
        }
    }
    Err(HeunError::SearchExhausted(format!(
        "no period up to {max_period} reaches eps = {eps:e}; best bound {best:e}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u32, m: u32) -> OperatorParams {
        OperatorParams::new(p, m).unwrap()
    }

    #[test]
    fn first_correction_coefficient() {
        let pt = periodic_point(1, 2, params(1, 1), 3).unwrap();
        let expect = 1.0 / (2f64.sqrt() * 2.0 * 3f64.sqrt());
        assert!((pt.coefficients[1] - expect).abs() <= 2.0 * f64::EPSILON * expect);
        let v = pt.to_vector();
        assert_eq!(v.offset, 1);
        assert_eq!(v.get(3).re, pt.coefficients[1]);
        assert_eq!(v.get(2).re, 0.0);
    }

    #[test]
    fn argument_checks() {
        assert!(periodic_point(0, 3, params(1, 1), 5).is_err());
        assert!(periodic_point(2, 1, params(1, 1), 5).is_err());
        assert!(periodic_point(1, 3, params(1, 1), 0).is_err());
        // N = s is fine for p >= 1 but not for p = 0
        assert!(periodic_point(2, 2, params(1, 1), 5).is_ok());
        assert!(periodic_point(2, 2, params(0, 1), 5).is_err());
        assert!(periodic_point(2, 3, params(0, 1), 5).is_ok());
    }

    #[test]
    fn returns_after_n_steps() {
        for s in [1, 2] {
            for n in [3, 5] {
                let w = periodic_witness(s, n, params(1, 1), 30).unwrap();
                assert!(w.residual <= 1e-10, "s={s} N={n}: {}", w.residual);
            }
        }
    }

    #[test]
    fn residual_bounded_by_spill_over_everywhere() {
        let pt = periodic_point(2, 3, params(2, 2), 6).unwrap();
        let mut v = pt.to_vector();
        v.tail_bound = 0.0;
        let image = ShiftOperator::new(params(2, 2)).apply_power(&v, 3).unwrap();
        let full = image.sub(&v).norm();
        let rounding = 2.0 * 4.0 * f64::EPSILON * v.norm();
        assert!(full <= pt.spill_over_bound() + rounding, "{full}");
    }

    #[test]
    fn tail_bound_covers_longer_truncation() {
        let short = periodic_point(1, 2, params(1, 1), 3).unwrap();
        let long = periodic_point(1, 2, params(1, 1), 12).unwrap();
        let dropped: f64 = long.coefficients[4..].iter().map(|c| c * c).sum::<f64>().sqrt();
        assert!(dropped <= short.tail_bound);
    }

    #[test]
    fn density_search_hits_eps() {
        let target = CoefficientVector::from_real(1, &[1.0, 0.1]);
        let r = density_search(&target, 1e-6, params(1, 1), 60).unwrap();
        assert!(r.period <= 60);
        assert_eq!(r.scale, 0.5);
        let direct = target.scaled(Complex64::new(r.scale, 0.0)).sub(&r.psi).norm();
        assert!(direct <= r.error_bound);
        assert!(r.error_bound <= 1e-6);
    }

    #[test]
    fn small_targets_are_not_rescaled() {
        let target = CoefficientVector::from_real(1, &[0.5]);
        assert_eq!(smallness_scale(&target, params(1, 1)).unwrap(), 1.0);
    }

    #[test]
    fn empty_target() {
        let r = density_search(&CoefficientVector::zero(1), 1e-3, params(1, 1), 10).unwrap();
        assert_eq!(r.error_bound, 0.0);
    }

    #[test]
    fn exhausted_search_reports_best() {
        let target = CoefficientVector::from_real(1, &[0.9]);
        let err = density_search(&target, 1e-300, params(1, 1), 3).unwrap_err();
        assert!(matches!(err, HeunError::SearchExhausted(_)));
    }
}
