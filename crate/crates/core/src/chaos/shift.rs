use crate::error::{HeunError, Result};
use crate::vector::CoefficientVector;
use crate::weights::{OperatorParams, WeightSequence};

/// Backward weighted shift `H e_k = omega(k-1) e_{k-1}` on `span{e_k : k >= p}`
/// with `omega(k)^2 = up^2(k)`; `e_p` is annihilated.
#[derive(Debug, Clone)]
pub struct ShiftOperator {
    weights: WeightSequence,
}

impl ShiftOperator {
    pub fn new(params: OperatorParams) -> Self {
        Self { weights: WeightSequence::new(params) }
    }

    pub fn params(&self) -> OperatorParams {
        self.weights.params()
    }

    /// Lowest basis index of the domain.
    pub fn offset(&self) -> usize {
        self.params().p as usize
    }

    /// `omega(k)`; zero below the offset.
    pub fn omega(&self, k: usize) -> f64 {
        self.weights.up(k as u64)
    }

    pub fn omega_table(&self, from: usize, len: usize) -> Vec<f64> {
        self.weights.up_table(from as u64, len)
    }

    fn check_domain(&self, v: &CoefficientVector) -> Result<()> {
        v.require_finite()?;
        if !v.is_empty() && v.offset < self.offset() {
            return Err(HeunError::Domain(format!(
                "vector starts at e_{} below the shift domain e_{}",
                v.offset,
                self.offset()
            )));
        }
        Ok(())
    }

    /// `(H v)_k = omega(k) v_{k+1}` for `k >= p`.
    pub fn apply(&self, v: &CoefficientVector) -> Result<CoefficientVector> {
        self.check_domain(v)?;
        let p = self.offset();
        if v.end() <= p + 1 {
            return Ok(CoefficientVector::zero(p));
        }
        let lo = v.offset.saturating_sub(1).max(p);
        let hi = v.end() - 1;
        let w = self.omega_table(lo, hi - lo);
        let coeffs = (lo..hi).zip(w).map(|(k, wk)| v.get(k + 1) * wk).collect();
        Ok(CoefficientVector::new(lo, coeffs))
    }

    /// `H* e_k = omega(k) e_{k+1}`.
    pub fn apply_adjoint(&self, v: &CoefficientVector) -> Result<CoefficientVector> {
        self.check_domain(v)?;
        if v.is_empty() {
            return Ok(CoefficientVector::zero(v.offset + 1));
        }
        let w = self.omega_table(v.offset, v.len());
        let coeffs = v.coeffs.iter().zip(w).map(|(&a, wk)| a * wk).collect();
        Ok(CoefficientVector::new(v.offset + 1, coeffs))
    }

    /// Right inverse `S e_k = e_{k+1} / omega(k)`.
    pub fn apply_right_inverse(&self, v: &CoefficientVector) -> Result<CoefficientVector> {
        self.check_domain(v)?;
        if v.is_empty() {
            return Ok(CoefficientVector::zero(v.offset + 1));
        }
        let w = self.omega_table(v.offset, v.len());
        let coeffs = v.coeffs.iter().zip(w).map(|(&a, wk)| a / wk).collect();
        Ok(CoefficientVector::new(v.offset + 1, coeffs))
    }

    pub fn apply_power(&self, v: &CoefficientVector, n: usize) -> Result<CoefficientVector> {
        (0..n).try_fold(v.clone(), |acc, _| self.apply(&acc))
    }

    pub fn right_inverse_power(&self, v: &CoefficientVector, n: usize) -> Result<CoefficientVector> {
        (0..n).try_fold(v.clone(), |acc, _| self.apply_right_inverse(&acc))
    }

    /// `prod_{j=from}^{to-1} omega(j)`, the empty product being 1.
    pub fn omega_product(&self, from: usize, to: usize) -> f64 {
        (from..to).map(|j| self.omega(j)).product()
    }

    /// Nonzero entries `(k, k+1, omega(k))` of `H + H*` on `e_p .. e_{p+n-1}`.
    pub fn symmetric_part_band(&self, n: usize) -> Vec<f64> {
        self.omega_table(self.offset(), n.saturating_sub(1))
    }
}

pub fn apply_shift(v: &CoefficientVector, params: OperatorParams) -> Result<CoefficientVector> {
    ShiftOperator::new(params).apply(v)
}

pub fn apply_shift_adjoint(v: &CoefficientVector, params: OperatorParams) -> Result<CoefficientVector> {
    ShiftOperator::new(params).apply_adjoint(v)
}

pub fn apply_right_inverse(v: &CoefficientVector, params: OperatorParams) -> Result<CoefficientVector> {
    ShiftOperator::new(params).apply_right_inverse(v)
}
