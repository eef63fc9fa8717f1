//! Exact weights, block-Jacobi certificates and chaos witnesses for the
//! generalized Heun operator `H^{p,m} = a*^p (a^m + a*^m) a^p` acting on
//! Bargmann space, worked entirely in the coefficient basis
//! `e_k(z) = z^k / sqrt(k!)`.
//!
//! * [`weights`], [`operator`], [`vector`]: exact squared weights, the action
//!   of the operator and its truncated band matrix.
//! * [`indeterminacy`]: the zero-diagonal block-Jacobi model and the
//!   certificates behind the `n+ = n- = m` verdict.
//! * [`chaos`]: the backward weighted shift, its right inverse, eigenvectors,
//!   periodic points, hypercyclic approximants, the three-term recurrence and
//!   the hypotheses checker for the shift-plus-adjoint.
//! * [`bounds`]: explicit constants for the relative form bound
//!   `|<H phi, phi>| <= eps ||a^j phi||^2 + C_eps ||phi||^2`.

pub mod bounds;
pub mod chaos;
pub mod error;
pub mod factorial;
pub mod indeterminacy;
pub mod operator;
pub mod precision;
pub mod serial;
pub mod vector;
pub mod weights;

pub use error::{HeunError, Result};
pub use operator::{apply_h, truncated_matrix, BandMatrix};
pub use precision::WorkingPrecision;
pub use vector::CoefficientVector;
pub use weights::{
    asymptotic_exponent, loglog_slope, weight_down_sq, weight_up_sq, OperatorParams,
    WeightSequence,
};

/// Name of the weight convention every report carries.
pub const WEIGHT_CONVENTION: &str =
    "omega_k^2 = up(k)^2 = k!(k+m)!/((k-p)!)^2 for k >= p (raising weight of H^{p,m})";
