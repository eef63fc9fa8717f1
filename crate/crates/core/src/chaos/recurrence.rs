use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::shift::ShiftOperator;
use crate::error::{HeunError, Result};
use crate::serial::{f17, f17_vec};
use crate::weights::OperatorParams;

/// Solution of `omega_{n-1} u_{n-1} + omega_n u_{n+1} = lambda u_n` with
/// `u_1 = 1`, `u_2 = lambda / omega_1`, where `omega_n := omega(p + n - 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceSolution {
    #[serde(with = "crate::serial::c17")]
    pub lambda: Complex64,
    /// `u[n - 1] = u_n`, `n = 1..=N`.
    #[serde(with = "crate::serial::c17_vec")]
    pub u: Vec<Complex64>,
    #[serde(with = "f17")]
    pub partial_norm_sq: f64,
    /// `(J, |S(2J) - S(J)|)` for `J = 1, 2, 4, ..` with `2J <= N`, where
    /// `S(J) = sum_{n <= J} |u_n|^2`.
    pub cauchy_gaps: Vec<CauchyGap>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CauchyGap {
    pub j: usize,
    #[serde(with = "f17")]
    pub gap: f64,
}

pub fn recurrence_u(lambda: Complex64, params: OperatorParams, n: usize) -> Result<RecurrenceSolution> {
    if n < 2 {
        return Err(HeunError::Domain("recurrence needs N >= 2".into()));
    }
    let h = ShiftOperator::new(params);
    // w[i] = omega_{i+1}
    let w = h.omega_table(h.offset(), n);
    let mut u = Vec::with_capacity(n);
    u.push(Complex64::new(1.0, 0.0));
    u.push(lambda / w[0]);
    for k in 2..n {
        // u_{k+1} from u_k, u_{k-1}: index shift by one
        let next = (lambda * u[k - 1] - u[k - 2] * w[k - 2]) / w[k - 1];
        u.push(next);
    }
    let prefix: Vec<f64> = u
        .iter()
        .scan(0.0, |s, z| {
            *s += z.norm_sqr();
            Some(*s)
        })
        .collect();
    let cauchy_gaps = std::iter::successors(Some(1usize), |j| Some(j * 2))
        .take_while(|j| 2 * j <= n)
        .map(|j| CauchyGap { j, gap: (prefix[2 * j - 1] - prefix[j - 1]).abs() })
        .collect();
    Ok(RecurrenceSolution {
        lambda,
        partial_norm_sq: prefix[n - 1],
        u,
        cauchy_gaps,
    })
}

impl RecurrenceSolution {
    /// Largest re-substitution defect
    /// `|omega_{n-1} u_{n-1} + omega_n u_{n+1} - lambda u_n|` divided by the
    /// size of the terms involved, in units of machine epsilon.
    pub fn max_resubstitution_ulps(&self, params: OperatorParams) -> f64 {
        let h = ShiftOperator::new(params);
        let w = h.omega_table(h.offset(), self.u.len());
        let u = &self.u;
        (2..u.len())
            .map(|k| {
                let a = u[k - 2] * w[k - 2];
                let b = u[k] * w[k - 1];
                let c = self.lambda * u[k - 1];
                let scale = a.norm() + b.norm() + c.norm();
                if scale == 0.0 {
                    0.0
                } else {
                    (a + b - c).norm() / (scale * f64::EPSILON)
                }
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceWitness {
    #[serde(with = "crate::serial::c17")]
    pub lambda: Complex64,
    pub n: usize,
    #[serde(with = "f17")]
    pub partial_norm_sq: f64,
    pub gap_windows: Vec<usize>,
    #[serde(with = "f17_vec")]
    pub gaps: Vec<f64>,
    pub gaps_decreasing: bool,
}

impl RecurrenceWitness {
    /// Gaps restricted to `J >= j_from`.
    pub fn from_solution(sol: &RecurrenceSolution, j_from: usize) -> Self {
        let kept: Vec<&CauchyGap> = sol.cauchy_gaps.iter().filter(|g| g.j >= j_from).collect();
        let gaps: Vec<f64> = kept.iter().map(|g| g.gap).collect();
        Self {
            lambda: sol.lambda,
            n: sol.u.len(),
            partial_norm_sq: sol.partial_norm_sq,
            gap_windows: kept.iter().map(|g| g.j).collect(),
            gaps_decreasing: gaps.windows(2).all(|w| w[1] < w[0]),
            gaps,
        }
    }
}
