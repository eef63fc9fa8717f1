//! Block-Jacobi model of `H^{p,m}` and finite certificates of complete
//! indeterminacy.

mod blocks;
mod kernel;
mod report;
mod summability;

pub use blocks::{build_blocks, check_logconcavity, BlockJacobiModel, LogConcavityCheck, INDEX_ALIGNMENT};
pub use kernel::{blocks_needed, kernel_solution, kernel_solutions, KernelSolution, KernelTerm, Parity};
pub use report::{
    verdict, IndeterminacyReport, KernelBranchSummary, KernelInL2, LogConcavitySummary, Verdict,
};
pub use summability::{check_summability, cumulative_inverse_norms, SummabilityReport};
