//! Backward weighted shift extracted from `H^{p,m}` and the constructive
//! witnesses of its chaotic behaviour.

mod approximant;
mod eigen;
mod hypotheses;
mod periodic;
mod recurrence;
mod report;
mod shift;

pub use approximant::{approximant, Approximant, DEFAULT_MAX_DEPTH};
pub use eigen::{eigen_residual, eigen_witness, eigenvector, EigenWitness};
pub use hypotheses::{
    check_hypotheses, check_hypotheses_with, check_weight_logconcavity, GammaSpec, Hyp1Witness,
    Hyp2Witness, Hyp3Witness, HypothesesWitness, WindowCheck, MIN_WINDOW,
};
pub use periodic::{
    density_search, periodic_point, periodic_witness, smallness_scale, DensityResult, PeriodicPoint,
    PeriodicWitness, DENSITY_TERMS,
};
pub use recurrence::{recurrence_u, CauchyGap, RecurrenceSolution, RecurrenceWitness};
pub use report::{chaos_report, series_csv, ChaosConfig, ChaosReport, ChaosStatus};
pub use shift::{apply_right_inverse, apply_shift, apply_shift_adjoint, ShiftOperator};
