//! Finitely supported coefficient vectors over the basis `{e_k}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{HeunError, Result};

/// Coefficients `coeffs[i]` of `e_{offset + i}`.
///
/// `tail_bound` is a certified upper bound on the l2 norm of whatever was
/// dropped when the vector was truncated from an infinite series. It is zero
/// for genuinely finite vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientVector {
    pub offset: usize,
    #[serde(with = "crate::serial::c17_vec")]
    pub coeffs: Vec<Complex64>,
    #[serde(with = "crate::serial::f17")]
    pub tail_bound: f64,
}

impl CoefficientVector {
    pub fn new(offset: usize, coeffs: Vec<Complex64>) -> Self {
        Self { offset, coeffs, tail_bound: 0.0 }
    }

    pub fn with_tail(offset: usize, coeffs: Vec<Complex64>, tail_bound: f64) -> Self {
        Self { offset, coeffs, tail_bound }
    }

    pub fn zero(offset: usize) -> Self {
        Self::new(offset, Vec::new())
    }

    pub fn zeros(offset: usize, len: usize) -> Self {
        Self::new(offset, vec![Complex64::new(0.0, 0.0); len])
    }

    /// The basis vector `e_k`.
    pub fn basis(k: usize) -> Self {
        Self::new(k, vec![Complex64::new(1.0, 0.0)])
    }

    pub fn from_real(offset: usize, coeffs: &[f64]) -> Self {
        Self::new(offset, coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// One past the largest stored index.
    pub fn end(&self) -> usize {
        self.offset + self.coeffs.len()
    }

    pub fn is_finite_support(&self) -> bool {
        self.tail_bound == 0.0
    }

    pub fn require_finite(&self) -> Result<()> {
        if self.is_finite_support() {
            Ok(())
        } else {
            Err(HeunError::NotFinite(self.tail_bound))
        }
    }

    /// Coefficient of `e_k`; zero outside the stored window.
    pub fn get(&self, k: usize) -> Complex64 {
        if k < self.offset {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs.get(k - self.offset).copied().unwrap_or_default()
    }

    /// Sets the coefficient of `e_k`, growing the window as needed.
    pub fn set(&mut self, k: usize, value: Complex64) {
        if self.coeffs.is_empty() {
            self.offset = k;
        }
        if k < self.offset {
            let shift = self.offset - k;
            let mut grown = vec![Complex64::default(); shift];
            grown.append(&mut self.coeffs);
            self.coeffs = grown;
            self.offset = k;
        }
        let idx = k - self.offset;
        if idx >= self.coeffs.len() {
            self.coeffs.resize(idx + 1, Complex64::default());
        }
        self.coeffs[idx] = value;
    }

    /// Largest index carrying a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .rposition(|c| *c != Complex64::default())
            .map(|i| self.offset + i)
    }

    /// Smallest index carrying a nonzero coefficient.
    pub fn lowest(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .position(|c| *c != Complex64::default())
            .map(|i| self.offset + i)
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// l2 norm of the stored coefficients (the tail is not included).
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// `<self, other> = sum self_k * conj(other_k)`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let lo = self.offset.max(other.offset);
        let hi = self.end().min(other.end());
        (lo..hi).map(|k| self.get(k) * other.get(k).conj()).sum()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            tail_bound: self.tail_bound * factor.norm(),
        }
    }

    /// `self + other` on the union of the two windows; tail bounds add.
    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, Complex64::new(1.0, 0.0))
    }

    /// `self - other` on the union of the two windows; tail bounds add.
    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, Complex64::new(-1.0, 0.0))
    }

    fn combine(&self, other: &Self, sign: Complex64) -> Self {
        if self.is_empty() {
            let mut out = other.scaled(sign);
            out.tail_bound = self.tail_bound + other.tail_bound;
            return out;
        }
        if other.is_empty() {
            let mut out = self.clone();
            out.tail_bound += other.tail_bound;
            return out;
        }
        let lo = self.offset.min(other.offset);
        let hi = self.end().max(other.end());
        let coeffs = (lo..hi).map(|k| self.get(k) + sign * other.get(k)).collect();
        Self::with_tail(lo, coeffs, self.tail_bound + other.tail_bound)
    }

    /// Restriction to indices in `lo..hi`; the result keeps offset `lo`.
    pub fn restrict(&self, lo: usize, hi: usize) -> Self {
        let coeffs = (lo..hi.max(lo)).map(|k| self.get(k)).collect();
        Self::new(lo, coeffs)
    }

    /// Maximum coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}
