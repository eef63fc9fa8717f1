use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eigen::{eigen_witness, EigenWitness};
use super::hypotheses::{check_hypotheses, check_hypotheses_with, GammaSpec, HypothesesWitness};
use super::periodic::{periodic_witness, PeriodicWitness};
use super::recurrence::{recurrence_u, RecurrenceWitness};
use crate::error::{HeunError, Result};
use crate::serial::{fmt_f64, CsvTable};
use crate::weights::OperatorParams;
use crate::WEIGHT_CONVENTION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChaosStatus {
    /// `p >= 1` and `p + m/2 > 2`.
    ChaoticByTheorem,
    /// `(1, 1)` through `gamma_n = sqrt(n) ln n`, every window check passing.
    ChaoticSpecialCase,
    /// `p = 0, m <= 2`: self-adjoint, hence not chaotic.
    NotChaoticSelfAdjoint,
    OutsideProvenRegion,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChaosConfig {
    pub window: usize,
    pub eigen_terms: usize,
    #[serde(with = "crate::serial::c17_vec")]
    pub lambdas: Vec<Complex64>,
    pub periodic_terms: usize,
    pub recurrence_terms: usize,
}

impl Default for ChaosConfig {
    fn default() -> Self {
        Self {
            window: 1000,
            eigen_terms: 200,
            lambdas: vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(2.0, 3.0),
            ],
            periodic_terms: 30,
            recurrence_terms: 2048,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChaosReport {
    pub params: OperatorParams,
    pub weight_convention: String,
    pub status: ChaosStatus,
    /// `p + m/2 > 2`.
    pub analytic_flag: bool,
    pub hypotheses: Option<HypothesesWitness>,
    /// The `sqrt(n) ln n` route, evaluated for `(1, 1)` only.
    pub special_case: Option<HypothesesWitness>,
    pub unsupported_reason: Option<String>,
    pub eigenvectors: Vec<EigenWitness>,
    pub periodic_points: Vec<PeriodicWitness>,
    /// Finite evidence only: shrinking Cauchy gaps do not prove summability.
    pub recurrence: Vec<RecurrenceWitness>,
}

pub fn chaos_report(params: OperatorParams, config: &ChaosConfig) -> Result<ChaosReport> {
    let (hypotheses, unsupported_reason) = match check_hypotheses(params, config.window) {
        Ok(w) => (Some(w), None),
        Err(HeunError::Unsupported(why)) => (None, Some(why)),
        Err(e) => return Err(e),
    };
    let special_case = (params.p == 1 && params.m == 1)
        .then(|| check_hypotheses_with(params, config.window, GammaSpec::SqrtLog))
        .transpose()?;
    let analytic_flag = params.p as f64 + params.m as f64 / 2.0 > 2.0;
    let status = if params.p == 0 && params.m <= 2 {
        ChaosStatus::NotChaoticSelfAdjoint
    } else if params.p >= 1 && analytic_flag {
        ChaosStatus::ChaoticByTheorem
    } else if special_case.as_ref().is_some_and(|w| w.all_window_checks_pass()) {
        ChaosStatus::ChaoticSpecialCase
    } else {
        ChaosStatus::OutsideProvenRegion
    };

    let eigenvectors = config
        .lambdas
        .iter()
        .map(|&l| eigen_witness(l, params, config.eigen_terms))
        .collect::<Result<_>>()?;

    let p = params.p as usize;
    let periodic_points = [p.max(1), p.max(1) + 1]
        .into_iter()
        .flat_map(|s| [s + 1, s + 3].map(move |n| (s, n)))
        .map(|(s, n)| periodic_witness(s, n, params, config.periodic_terms))
        .collect::<Result<_>>()?;

    let recurrence = config
        .lambdas
        .iter()
        .map(|&l| {
            let sol = recurrence_u(l, params, config.recurrence_terms)?;
            Ok(RecurrenceWitness::from_solution(&sol, 32))
        })
        .collect::<Result<_>>()?;

    Ok(ChaosReport {
        params,
        weight_convention: WEIGHT_CONVENTION.to_string(),
        status,
        analytic_flag,
        hypotheses,
        special_case,
        unsupported_reason,
        eigenvectors,
        periodic_points,
        recurrence,
    })
}

/// Series export with columns `n,value_re,value_im,partial_norm`, where
/// `partial_norm` is the l2 norm of the entries up to and including `n`.
pub fn series_csv(first_index: usize, values: &[Complex64]) -> String {
    let mut t = CsvTable::new(&["n", "value_re", "value_im", "partial_norm"]);
    let mut acc = 0.0f64;
    for (i, z) in values.iter().enumerate() {
        acc += z.norm_sqr();
        t.row(&[(first_index + i).to_string(), fmt_f64(z.re), fmt_f64(z.im), fmt_f64(acc.sqrt())]);
    }
    t.finish()
}
