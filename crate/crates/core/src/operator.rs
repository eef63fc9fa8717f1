//! Action of `H^{p,m}` on coefficient vectors and its truncated matrix.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::vector::CoefficientVector;
use crate::weights::{OperatorParams, WeightSequence};

/// Image of a finitely supported vector under `H^{p,m}`.
///
/// The result window starts at the lowest index the lowering branch can
/// reach and ends `m` slots past the input window; its tail bound is zero.
pub fn apply_h(v: &CoefficientVector, params: OperatorParams) -> Result<CoefficientVector> {
    v.require_finite()?;
    let w = WeightSequence::new(params);
    let (p, m) = (params.p as usize, params.m as usize);
    let lo = v.offset.saturating_sub(m).max(p).min(v.offset);
    let mut out = CoefficientVector::zeros(lo, v.end() + m - lo);
    for (i, &a) in v.coeffs.iter().enumerate() {
        let k = v.offset + i;
        if k < p || a == Complex64::default() {
            continue;
        }
        out.coeffs[k + m - lo] += a * w.up(k as u64);
        if k >= p + m {
            out.coeffs[k - m - lo] += a * w.down(k as u64);
        }
    }
    Ok(out)
}

/// Symmetric band matrix with zero diagonal and a single nonzero band at
/// offsets `+-m`: the `N x N` section of `H^{p,m}` in `(e_p, ..., e_{p+N-1})`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandMatrix {
    pub params: OperatorParams,
    pub size: usize,
    /// `band[i]` is the entry at `(i, i+m)` and `(i+m, i)`, i.e. `up(p+i)`.
    #[serde(with = "crate::serial::f17_vec")]
    pub band: Vec<f64>,
}

impl BandMatrix {
    pub fn bandwidth(&self) -> usize {
        self.params.m as usize
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let m = self.bandwidth();
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        if hi >= self.size || hi - lo != m {
            return 0.0;
        }
        self.band[lo]
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// `(row, col, value)` for every nonzero entry, row-major.
    pub fn triplets(&self) -> Vec<(usize, usize, f64)> {
        let m = self.bandwidth();
        let mut out = Vec::with_capacity(2 * self.band.len());
        for i in 0..self.size {
            if i >= m {
                out.push((i, i - m, self.band[i - m]));
            }
            if i + m < self.size {
                out.push((i, i + m, self.band[i]));
            }
        }
        out
    }

    /// Matrix-vector product on the window `e_p .. e_{p+N-1}`.
    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let m = self.bandwidth();
        let mut y = vec![Complex64::default(); self.size];
        for (i, &b) in self.band.iter().enumerate() {
            y[i] += x[i + m] * b;
            y[i + m] += x[i] * b;
        }
        y
    }
}

pub fn truncated_matrix(params: OperatorParams, size: usize) -> BandMatrix {
    let w = WeightSequence::new(params);
    let m = params.m as usize;
    let p = params.p as u64;
    let band = (0..size.saturating_sub(m)).map(|i| w.up(p + i as u64)).collect();
    BandMatrix { params, size, band }
}
