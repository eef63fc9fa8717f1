use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::blocks::{build_blocks, check_logconcavity, LogConcavityCheck, INDEX_ALIGNMENT};
use super::kernel::{blocks_needed, kernel_solutions, KernelSolution, Parity};
use super::summability::{check_summability, SummabilityReport};
use crate::error::{HeunError, Result};
use crate::serial::{f17, ExactRational};
use crate::weights::OperatorParams;
use crate::WEIGHT_CONVENTION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CompletelyIndeterminate,
    CriterionFailed,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogConcavitySummary {
    pub from: usize,
    pub to: usize,
    pub checked: usize,
    pub first_failure: Option<usize>,
}

impl From<&LogConcavityCheck> for LogConcavitySummary {
    fn from(c: &LogConcavityCheck) -> Self {
        Self { from: c.from, to: c.to, checked: c.holds.len(), first_failure: c.first_failure }
    }
}

/// Finite facts about one kernel branch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelBranchSummary {
    pub parity: Parity,
    pub terms: usize,
    pub last_index: usize,
    #[serde(with = "f17")]
    pub partial_norm_sq: f64,
    #[serde(with = "f17")]
    pub tail_bound_sq: f64,
    pub recurrence_exact: bool,
    pub domination_holds: bool,
    pub b0_prefactor_sq: Option<ExactRational>,
}

impl KernelBranchSummary {
    fn new(sol: &KernelSolution, recurrence_exact: bool, domination_holds: bool) -> Self {
        Self {
            parity: sol.parity,
            terms: sol.term_count(),
            last_index: sol.terms.last().map_or(0, |t| t.index),
            partial_norm_sq: sol.partial_norm_sq().to_f64().unwrap_or(f64::INFINITY),
            tail_bound_sq: sol.tail_bound_sq,
            recurrence_exact,
            domination_holds,
            b0_prefactor_sq: sol.b0_prefactor_sq.clone().map(ExactRational),
        }
    }

    fn finite_evidence(&self) -> bool {
        self.recurrence_exact && self.domination_holds && self.tail_bound_sq.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelInL2 {
    pub odd: bool,
    pub even: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndeterminacyReport {
    pub params: OperatorParams,
    pub weight_convention: String,
    pub index_alignment: String,
    pub window: usize,
    /// `p + m/2 > 1`, the hypothesis under which the theorem applies.
    pub analytic_criterion: bool,
    pub logconcavity: LogConcavitySummary,
    /// Largest `i` up to which log-concavity was verified without a gap
    /// (`0` if the first check failed or the range was empty).
    pub logconcavity_verified_up_to: usize,
    pub summability: SummabilityReport,
    pub kernel: [KernelBranchSummary; 2],
    pub kernel_in_l2: KernelInL2,
    pub verdict: Verdict,
    /// `(n_+, n_-)`, set only for a completely indeterminate verdict.
    pub claimed_defect_numbers: Option<[u32; 2]>,
}

/// Runs the block model checks on the window `J` and combines them.
///
/// Log-concavity is checked on `[max(2, m), J]`, summability on `1..=J` and
/// both kernel branches on `J` nonzero blocks each.
pub fn verdict(params: OperatorParams, j: usize) -> Result<IndeterminacyReport> {
    let m = params.m as usize;
    if j < m.max(1) {
        return Err(HeunError::Domain(format!("window J = {j} must be >= m = {m}")));
    }
    let model = build_blocks(params, blocks_needed(j).max(j + 1))?;

    let lc_from = m.max(2);
    let lc = check_logconcavity(&model, lc_from, j.max(lc_from - 1))?;
    let verified_up_to = match lc.first_failure {
        Some(i) => i.saturating_sub(1),
        None => lc.to.max(lc_from - 1),
    };
    let verified_up_to = if verified_up_to < lc_from { 0 } else { verified_up_to };

    let summability = check_summability(&model, j)?;

    let (odd, even) = kernel_solutions(&model, j)?;
    let branch = |sol: &KernelSolution| {
        KernelBranchSummary::new(
            sol,
            sol.recurrence_failures(&model).is_empty(),
            sol.domination_failures(&model).is_empty(),
        )
    };
    let kernel = [branch(&odd), branch(&even)];

    let analytic = params.indeterminacy_criterion();
    let kernel_in_l2 = KernelInL2 {
        odd: analytic && kernel[0].finite_evidence(),
        even: analytic && kernel[1].finite_evidence(),
    };
    let finite_ok = lc.all_hold()
        && summability.lower_bound_holds
        && summability.tail_bound.is_finite()
        && kernel_in_l2.odd
        && kernel_in_l2.even;

    let verdict = if !analytic {
        Verdict::CriterionFailed
    } else if finite_ok {
        Verdict::CompletelyIndeterminate
    } else {
        Verdict::Inconclusive
    };

    Ok(IndeterminacyReport {
        params,
        weight_convention: WEIGHT_CONVENTION.to_string(),
        index_alignment: INDEX_ALIGNMENT.to_string(),
        window: j,
        analytic_criterion: analytic,
        logconcavity: (&lc).into(),
        logconcavity_verified_up_to: verified_up_to,
        summability,
        kernel,
        kernel_in_l2,
        verdict,
        claimed_defect_numbers: (verdict == Verdict::CompletelyIndeterminate)
            .then_some([params.m, params.m]),
    })
}
