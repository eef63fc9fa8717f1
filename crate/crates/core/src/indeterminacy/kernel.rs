//! Exact solutions of `B_{i-1} phi_{i-1} + B_i phi_{i+1} = 0`.
//!
//! All blocks are diagonal, so the vector recurrence splits into `m` scalar
//! ones. Each component is carried as `sign * seed * sqrt(num / den)` with
//! `num`, `den` unreduced integer products of squared block entries; every
//! identity is checked on these exact integers.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::blocks::BlockJacobiModel;
use crate::error::{HeunError, Result};
use crate::weights::biguint_to_f64;

/// Which half of the sequence carries the solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    /// Seeded at `phi_1`; `phi_{2j} = 0`. Satisfies the recurrence for every
    /// `i >= 1` with `phi_0 = 0`.
    Odd,
    /// Seeded at `phi_2`; `phi_{2j+1} = 0`. Satisfies the recurrence for
    /// `i >= 2` (the boundary row `i = 1` would force `phi_2 = 0`).
    Even,
}

impl Parity {
    /// Sequence position of the seed block.
    pub fn seed_index(self) -> usize {
        match self {
            Parity::Odd => 1,
            Parity::Even => 2,
        }
    }

    /// First row of the recurrence the branch is meant to satisfy.
    pub fn first_row(self) -> usize {
        self.seed_index()
    }
}

/// One nonzero block `phi_i` of a kernel solution.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelTerm {
    pub index: usize,
    /// `(-1)^j` for the `j`-th nonzero block.
    pub sign: i8,
    pub ratio_num: Vec<BigUint>,
    pub ratio_den: Vec<BigUint>,
}

impl KernelTerm {
    /// `|phi_i^r|^2 / seed_r^2` as a reduced rational.
    pub fn ratio_sq(&self, r: usize) -> BigRational {
        BigRational::new(
            BigInt::from(self.ratio_num[r].clone()),
            BigInt::from(self.ratio_den[r].clone()),
        )
    }
}

#[derive(Debug, Clone)]
pub struct KernelSolution {
    pub parity: Parity,
    pub seed: Vec<BigRational>,
    /// `terms[j]` is the `j`-th nonzero block, `j = 0..=J`.
    pub terms: Vec<KernelTerm>,
    partial_norm_sq: BigRational,
    /// Upper bound on `sum_{j > J} ||phi||^2`; infinite when `2p + m <= 2`.
    pub tail_bound_sq: f64,
    /// Even branch only: written as a product starting at `B_0 := B_1^{-1}`,
    /// it picks up the constant factor `B_1^{-1} B_0 = B_1^{-2}`. This is
    /// `||B_1^{-2}||^2`; reported, not applied to the terms.
    pub b0_prefactor_sq: Option<BigRational>,
}

/// Both branches with the all-ones seed.
pub fn kernel_solutions(
    model: &BlockJacobiModel,
    j_max: usize,
) -> Result<(KernelSolution, KernelSolution)> {
    let ones = vec![BigRational::one(); model.params().m as usize];
    Ok((
        kernel_solution(model, Parity::Odd, &ones, j_max)?,
        kernel_solution(model, Parity::Even, &ones, j_max)?,
    ))
}

/// Blocks a model needs for `J` terms of both branches.
pub fn blocks_needed(j_max: usize) -> usize {
    2 * j_max + 2
}

pub fn kernel_solution(
    model: &BlockJacobiModel,
    parity: Parity,
    seed: &[BigRational],
    j_max: usize,
) -> Result<KernelSolution> {
    let params = model.params();
    let m = params.m as usize;
    if j_max < 1 {
        return Err(HeunError::Domain("kernel solutions need J >= 1".into()));
    }
    if seed.len() != m {
        return Err(HeunError::Domain(format!("seed has {} components, m = {m}", seed.len())));
    }
    if seed.iter().all(Zero::is_zero) {
        return Err(HeunError::Domain("seed vector must be nonzero".into()));
    }
    if model.block_count() < blocks_needed(j_max) {
        return Err(HeunError::Domain(format!(
            "J = {j_max} needs {} blocks, model has {}",
            blocks_needed(j_max),
            model.block_count()
        )));
    }

    let start = parity.seed_index();
    let mut terms = Vec::with_capacity(j_max + 1);
    terms.push(KernelTerm {
        index: start,
        sign: 1,
        ratio_num: vec![BigUint::one(); m],
        ratio_den: vec![BigUint::one(); m],
    });
    // Horner accumulators: acc[r] / den[r] = sum of ratios so far
    let mut acc = vec![BigUint::one(); m];
    for j in 1..=j_max {
        let prev = &terms[j - 1];
        let i = prev.index + 1;
        // phi_{i+1} = -B_i^{-1} B_{i-1} phi_{i-1}
        let upper = model.block_sq(i - 1);
        let lower = model.block_sq(i);
        let ratio_num: Vec<BigUint> = (0..m).map(|r| &prev.ratio_num[r] * &upper[r]).collect();
        let ratio_den: Vec<BigUint> = (0..m).map(|r| &prev.ratio_den[r] * &lower[r]).collect();
        for r in 0..m {
            acc[r] = &acc[r] * &lower[r] + &ratio_num[r];
        }
        terms.push(KernelTerm { index: i + 1, sign: -prev.sign, ratio_num, ratio_den });
    }

    let last = terms.last().expect("nonempty");
    let partial_norm_sq = (0..m)
        .map(|r| {
            &seed[r] * &seed[r]
                * BigRational::new(BigInt::from(acc[r].clone()), BigInt::from(last.ratio_den[r].clone()))
        })
        .fold(BigRational::zero(), |a, b| a + b);

    let tail_bound_sq = if params.indeterminacy_criterion() {
        let s = params.growth();
        let seed_sq: f64 = seed.iter().map(|q| q.to_f64().unwrap_or(f64::NAN).powi(2)).sum();
        let lead = model.norm(start);
        let first_skipped = (2 * j_max + start) as f64;
        seed_sq * lead * (m as f64).powf(-s) * first_skipped.powf(1.0 - s) / (2.0 * (s - 1.0))
            * (1.0 + 1e-12)
    } else {
        f64::INFINITY
    };

    let b0_prefactor_sq = (parity == Parity::Even)
        .then(|| {
            let smallest = BigRational::from_integer(BigInt::from(model.block_sq(1)[0].clone()));
            BigRational::one() / (&smallest * &smallest)
        });

    Ok(KernelSolution {
        parity,
        seed: seed.to_vec(),
        terms,
        partial_norm_sq,
        tail_bound_sq,
        b0_prefactor_sq,
    })
}

/// `(sign, num, den)` of component `r` at sequence position `i`, or `None`
/// where the branch vanishes.
fn component(sol: &KernelSolution, i: usize, r: usize) -> Option<(i8, &BigUint, &BigUint)> {
    let start = sol.parity.seed_index();
    if i < start || !(i - start).is_multiple_of(2) {
        return None;
    }
    let t = sol.terms.get((i - start) / 2)?;
    Some((t.sign, &t.ratio_num[r], &t.ratio_den[r]))
}

impl KernelSolution {
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Exact `sum_{j <= J} ||phi||^2`.
    pub fn partial_norm_sq(&self) -> &BigRational {
        &self.partial_norm_sq
    }

    /// Exact `||phi||^2` of the `j`-th nonzero block.
    pub fn term_norm_sq(&self, j: usize) -> BigRational {
        let t = &self.terms[j];
        (0..self.seed.len())
            .map(|r| &self.seed[r] * &self.seed[r] * t.ratio_sq(r))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn term_norm_sq_f64(&self, j: usize) -> f64 {
        let t = &self.terms[j];
        (0..self.seed.len())
            .map(|r| {
                let s = self.seed[r].to_f64().unwrap_or(f64::NAN);
                s * s * ratio_f64(&t.ratio_num[r], &t.ratio_den[r])
            })
            .sum()
    }

    /// Signed floating value of component `r` of the `j`-th nonzero block.
    pub fn value_f64(&self, j: usize, r: usize) -> f64 {
        let t = &self.terms[j];
        let s = self.seed[r].to_f64().unwrap_or(f64::NAN);
        t.sign as f64 * s * ratio_f64(&t.ratio_num[r], &t.ratio_den[r]).sqrt()
    }

    /// Largest per-component ratio `|phi^r|^2 / seed_r^2` of block `j`
    /// (the squared spectral norm of the block product).
    pub fn max_ratio_sq(&self, j: usize) -> BigRational {
        let t = &self.terms[j];
        (0..t.ratio_num.len())
            .map(|r| t.ratio_sq(r))
            .max()
            .expect("m >= 1")
    }

    /// Rows `(i, r)` where `B_{i-1} phi_{i-1} + B_i phi_{i+1} != 0` exactly,
    /// over every row whose neighbours were computed.
    pub fn recurrence_failures(&self, model: &BlockJacobiModel) -> Vec<(usize, usize)> {
        let m = self.seed.len();
        let last = self.terms.last().expect("nonempty").index;
        let mut failures = Vec::new();
        for i in self.parity.first_row()..last {
            for r in 0..m {
                if self.seed[r].is_zero() {
                    continue;
                }
                let before = if i >= 2 { component(self, i - 1, r) } else { None };
                let after = component(self, i + 1, r);
                let ok = match (before, after) {
                    (None, None) => true,
                    (Some(_), None) | (None, Some(_)) => false,
                    (Some((s0, n0, d0)), Some((s1, n1, d1))) => {
                        let lhs = &model.block_sq(i - 1)[r] * n0 * d1;
                        let rhs = &model.block_sq(i)[r] * n1 * d0;
                        lhs == rhs && s0 == -s1
                    }
                };
                if !ok {
                    failures.push((i, r));
                }
            }
        }
        failures
    }

    /// Exact check of `||prod||^2 <= ||B_a|| / ||B_b||` for every block
    /// `j >= 1`, with `a` the seed position and `b` the block position;
    /// returns the `j` that fail.
    pub fn domination_failures(&self, model: &BlockJacobiModel) -> Vec<usize> {
        let start = self.parity.seed_index();
        let lead = model.norm_sq_int(start);
        (1..self.terms.len())
            .filter(|&j| {
                let t = &self.terms[j];
                let tail = model.norm_sq_int(t.index);
                // ratio^2 * ||B_b||^2 <= ||B_a||^2 for every component
                !(0..t.ratio_num.len()).all(|r| {
                    let n = &t.ratio_num[r];
                    let d = &t.ratio_den[r];
                    n * n * tail <= lead * d * d
                })
            })
            .collect()
    }
}

fn ratio_f64(num: &BigUint, den: &BigUint) -> f64 {
    let q = BigRational::new_raw(BigInt::from(num.clone()), BigInt::from(den.clone()));
    match q.to_f64() {
        Some(x) if x.is_finite() => x,
        _ => biguint_to_f64(num) / biguint_to_f64(den),
    }
}
