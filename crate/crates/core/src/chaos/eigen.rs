use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::shift::ShiftOperator;
use crate::error::{HeunError, Result};
use crate::serial::f17;
use crate::vector::CoefficientVector;
use crate::weights::OperatorParams;

/// Truncation of the eigenvector `a_k = prod_{j=p}^{k-1} lambda / omega(j)`,
/// `p <= k <= p + N`, normalised by `a_p = 1`.
///
/// `tail_bound` majorises the l2 norm of `sum_{k > p+N} a_k e_k` by a
/// geometric series with ratio `q = |lambda| / omega(p+N)`; it is infinite
/// while `q >= 1`.
pub fn eigenvector(lambda: Complex64, params: OperatorParams, n: usize) -> Result<CoefficientVector> {
    if n < 1 {
        return Err(HeunError::Domain("eigenvector truncation needs N >= 1".into()));
    }
    if !(lambda.re.is_finite() && lambda.im.is_finite()) {
        return Err(HeunError::Domain(format!("lambda must be finite, got {lambda}")));
    }
    let h = ShiftOperator::new(params);
    let p = h.offset();
    let w = h.omega_table(p, n + 1);
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut a = Complex64::new(1.0, 0.0);
    coeffs.push(a);
    for &wj in &w[..n] {
        a = a * lambda / wj;
        coeffs.push(a);
    }
    let q = lambda.norm() / w[n];
    let tail = if q < 1.0 {
        a.norm() * q / (1.0 - q * q).sqrt() * (1.0 + 1e-12)
    } else {
        f64::INFINITY
    };
    Ok(CoefficientVector::with_tail(p, coeffs, tail))
}

/// `||(H - lambda) phi||` restricted to the indices below the last retained
/// one, where the truncation does not interfere.
pub fn eigen_residual(phi: &CoefficientVector, lambda: Complex64, params: OperatorParams) -> Result<f64> {
    let mut finite = phi.clone();
    finite.tail_bound = 0.0;
    let image = ShiftOperator::new(params).apply(&finite)?;
    let hi = phi.end().saturating_sub(1);
    Ok((phi.offset..hi)
        .map(|k| (image.get(k) - lambda * phi.get(k)).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenWitness {
    #[serde(with = "crate::serial::c17")]
    pub lambda: Complex64,
    pub n: usize,
    #[serde(with = "f17")]
    pub norm: f64,
    #[serde(with = "f17")]
    pub residual: f64,
    #[serde(with = "f17")]
    pub tail_bound: f64,
}

pub fn eigen_witness(lambda: Complex64, params: OperatorParams, n: usize) -> Result<EigenWitness> {
    let phi = eigenvector(lambda, params, n)?;
    Ok(EigenWitness {
        lambda,
        n,
        norm: phi.norm(),
        residual: eigen_residual(&phi, lambda, params)?,
        tail_bound: phi.tail_bound,
    })
}
