use serde::{Deserialize, Serialize};

use super::shift::ShiftOperator;
use crate::error::{HeunError, Result};
use crate::serial::f17_vec;
use crate::vector::CoefficientVector;
use crate::weights::OperatorParams;

/// A finite vector whose orbit passes within `eps` of every target:
/// `H^{hit_times[j]} phi ~ targets[j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Approximant {
    pub phi: CoefficientVector,
    pub hit_times: Vec<usize>,
    /// `||H^{k_j} phi - psi_j||`, evaluated directly.
    #[serde(with = "f17_vec")]
    pub errors: Vec<f64>,
}

pub const DEFAULT_MAX_DEPTH: usize = 400;

/// Builds `phi = sum_j S^{k_j} psi_j` with `k_1 < k_2 < ...` chosen greedily.
///
/// `k_j - k_i > deg(psi_i) - p` makes `H^{k_j}` annihilate every earlier
/// piece, and `||S^{k_i - k_j} psi_i|| < eps / (2 * count)` for every later
/// piece `i` keeps the leftover error below `eps / 2`.
pub fn approximant(
    targets: &[CoefficientVector],
    eps: f64,
    params: OperatorParams,
    max_depth: usize,
) -> Result<Approximant> {
    let h = ShiftOperator::new(params);
    let p = h.offset();
    if eps.is_nan() || eps <= 0.0 {
        return Err(HeunError::Domain(format!("eps must be positive, got {eps}")));
    }
    for t in targets {
        t.require_finite()?;
        if !t.is_empty() && t.offset < p {
            return Err(HeunError::Domain(format!("target starts below e_{p}")));
        }
    }
    if targets.is_empty() {
        return Ok(Approximant { phi: CoefficientVector::zero(p), hit_times: vec![], errors: vec![] });
    }

    let count = targets.len();
    let budget = eps / (2.0 * count as f64);
    let depth_of = |t: &CoefficientVector| t.degree().map_or(0, |d| d - p);
    let mut hit_times: Vec<usize> = Vec::with_capacity(count);
    let mut pieces: Vec<CoefficientVector> = Vec::with_capacity(count);
    for (j, target) in targets.iter().enumerate() {
        let mut k = match hit_times.last() {
            None => depth_of(target) + 1,
            Some(_) => (0..j).map(|i| hit_times[i] + depth_of(&targets[i]) + 1).max().unwrap(),
        };
        // smallest admissible k with every lag k - k_i pushing psi_j below budget
        let small_enough = |k: usize| -> Result<bool> {
            for &ki in &hit_times {
                if h.right_inverse_power(target, k - ki)?.norm() >= budget {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        while !small_enough(k)? {
            k += 1;
            if k > max_depth {
                break;
            }
        }
        if k > max_depth {
            // leftover this target would cause at the deepest allowed time
            let achieved = if hit_times.is_empty() {
                target.norm()
            } else {
                hit_times
                    .iter()
                    .map(|&ki| {
                        h.right_inverse_power(target, max_depth.saturating_sub(ki)).map(|v| v.norm())
                    })
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .fold(0.0, f64::max)
            };
            return Err(HeunError::ApproximantFailed { eps, achieved, max_depth });
        }
        pieces.push(h.right_inverse_power(target, k)?);
        hit_times.push(k);
    }

    let phi = pieces.iter().fold(CoefficientVector::zero(p), |acc, v| acc.add(v));
    let errors = targets
        .iter()
        .zip(&hit_times)
        .map(|(t, &k)| Ok(h.apply_power(&phi, k)?.sub(t).norm()))
        .collect::<Result<Vec<f64>>>()?;
    if let Some(&worst) = errors.iter().max_by(|a, b| a.total_cmp(b)) {
        if worst >= eps {
            return Err(HeunError::ApproximantFailed { eps, achieved: worst, max_depth });
        }
    }
    Ok(Approximant { phi, hit_times, errors })
}
