use num_bigint::BigUint;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use super::blocks::BlockJacobiModel;
use crate::error::{HeunError, Result};
use crate::serial::f17;
use crate::weights::biguint_to_f64;

/// Finite evidence for `sum_i 1/||B_i|| < inf`.
///
/// Every factor of `||B_i||^2` is at least `i*m`, so
/// `||B_i||^2 >= (i m)^{2p+m}` for all `i >= 1`. Writing this as
/// `||B_i||^2 >= ||B_J||^2 (i/J)^{2p+m} (1 - eta)` gives the certified
/// constant `1 - eta = (J m)^{2p+m} / ||B_J||^2`, and integral comparison
/// bounds the tail by `m^{-s} J^{1-s} / (s - 1)` with `s = p + m/2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummabilityReport {
    pub terms: usize,
    #[serde(with = "f17")]
    pub partial_sum: f64,
    /// Upper bound on `sum_{i > J} 1/||B_i||`; infinite when `2p + m <= 2`.
    #[serde(with = "f17")]
    pub tail_bound: f64,
    /// Analytic flag `2p + m > 2`.
    pub converges: bool,
    /// `1 - eta` of the lower bound on the block norms.
    #[serde(with = "f17")]
    pub lower_bound_factor: f64,
    /// Window `[J/2, J]` on which the lower bound was re-checked exactly.
    pub lower_bound_window: (usize, usize),
    pub lower_bound_holds: bool,
}

/// Neumaier-compensated running sums of `1/||B_i||`, `i = 1..=n`.
pub fn cumulative_inverse_norms(model: &BlockJacobiModel, n: usize) -> Vec<f64> {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    (1..=n)
        .map(|i| {
            let x = 1.0 / model.norm(i);
            let t = sum + x;
            if sum.abs() >= x.abs() {
                comp += (sum - t) + x;
            } else {
                comp += (x - t) + sum;
            }
            sum = t;
            sum + comp
        })
        .collect()
}

pub fn check_summability(model: &BlockJacobiModel, j: usize) -> Result<SummabilityReport> {
    if j < 1 {
        return Err(HeunError::Domain("summability window J must be >= 1".into()));
    }
    if j > model.block_count() {
        return Err(HeunError::Domain(format!(
            "J = {j} exceeds the {} blocks built",
            model.block_count()
        )));
    }
    let params = model.params();
    let degree = params.degree();
    let m = params.m as usize;
    let s = params.growth();

    let partial_sum = *cumulative_inverse_norms(model, j).last().expect("j >= 1");

    let lo = (j / 2).max(1);
    let lower_bound_holds = (lo..=j).all(|i| model.norm_sq_int(i) >= &BigUint::from(i * m).pow(degree));
    let factor = biguint_to_f64(&BigUint::from(j * m).pow(degree)) / biguint_to_f64(model.norm_sq_int(j));

    let converges = params.indeterminacy_criterion();
    let tail_bound = if converges && lower_bound_holds {
        let raw = (m as f64).powf(-s) * (j as f64).powf(1.0 - s) / (s - 1.0);
        raw * (1.0 + 1e-12)
    } else {
        f64::INFINITY
    };

    Ok(SummabilityReport {
        terms: j,
        partial_sum,
        tail_bound,
        converges,
        lower_bound_factor: factor,
        lower_bound_window: (lo, j),
        lower_bound_holds,
    })
}
