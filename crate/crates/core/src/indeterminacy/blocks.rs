use num_bigint::BigUint;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{HeunError, Result};
use crate::serial::{fmt_f64, CsvTable};
use crate::weights::{biguint_to_f64, to_rational, up_sq_int, OperatorParams};

/// Zero-diagonal block-Jacobi form of `H^{p,m}` on `span{e_k : k >= p}`.
///
/// Block index `i >= 1` groups the basis vectors `e_{p+(i-1)m} .. e_{p+im-1}`.
/// The off-diagonal block `B_i` couples group `i` to group `i+1` and is
/// diagonal with entries `up(p + (i-1)m + r)`, `r = 0..m`. Entries are stored
/// as exact squares. Diagonal blocks are identically zero.
#[derive(Debug, Clone)]
pub struct BlockJacobiModel {
    params: OperatorParams,
    entries_sq: Vec<Vec<BigUint>>,
}

/// Description of the block index alignment used by [`BlockJacobiModel`].
pub const INDEX_ALIGNMENT: &str =
    "block entry k in [(i-1)m+1, im] sits at basis index p+k-1; block 1 acts on e_p..e_{p+m-1}";

pub fn build_blocks(params: OperatorParams, i_max: usize) -> Result<BlockJacobiModel> {
    if i_max == 0 {
        return Err(HeunError::Domain("need at least one block".into()));
    }
    let m = params.m as u64;
    let p = params.p as u64;
    let entries_sq = (1..=i_max as u64)
        .map(|i| (0..m).map(|r| up_sq_int(p + (i - 1) * m + r, params)).collect())
        .collect();
    Ok(BlockJacobiModel { params, entries_sq })
}

impl BlockJacobiModel {
    pub fn params(&self) -> OperatorParams {
        self.params
    }

    pub fn block_count(&self) -> usize {
        self.entries_sq.len()
    }

    /// Basis index of diagonal entry `r` (0-based) of block `i` (1-based).
    pub fn basis_index(&self, i: usize, r: usize) -> u64 {
        self.params.p as u64 + ((i - 1) * self.params.m as usize + r) as u64
    }

    fn check(&self, i: usize) {
        assert!(
            (1..=self.block_count()).contains(&i),
            "block {i} outside 1..={}",
            self.block_count()
        );
    }

    /// Squared diagonal entries of `B_i`.
    pub fn block_sq(&self, i: usize) -> &[BigUint] {
        self.check(i);
        &self.entries_sq[i - 1]
    }

    pub fn block_sq_rational(&self, i: usize) -> Vec<BigRational> {
        self.block_sq(i).iter().cloned().map(to_rational).collect()
    }

    /// `||B_i||^2`, the largest (last) squared diagonal entry.
    pub fn norm_sq_int(&self, i: usize) -> &BigUint {
        self.block_sq(i).last().expect("blocks have m >= 1 entries")
    }

    pub fn norm_sq(&self, i: usize) -> BigRational {
        to_rational(self.norm_sq_int(i).clone())
    }

    pub fn norm(&self, i: usize) -> f64 {
        biguint_to_f64(self.norm_sq_int(i)).sqrt()
    }

    /// Block `(i, j)` of the full matrix: `Some(entries of B_min)` on the
    /// first off-diagonals, `None` for the zero blocks (including `i == j`).
    pub fn coupling(&self, i: usize, j: usize) -> Option<&[BigUint]> {
        (i.abs_diff(j) == 1).then(|| self.block_sq(i.min(j)))
    }

    /// Block norms as CSV: `i,norm_sq_numerator,norm_sq_denominator,norm_float`.
    pub fn norms_csv(&self) -> String {
        let mut t = CsvTable::new(&["i", "norm_sq_numerator", "norm_sq_denominator", "norm_float"]);
        for i in 1..=self.block_count() {
            let q = self.norm_sq(i);
            t.row(&[
                i.to_string(),
                q.numer().to_string(),
                q.denom().to_string(),
                fmt_f64(self.norm(i)),
            ]);
        }
        t.finish()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogConcavityCheck {
    pub from: usize,
    pub to: usize,
    /// `holds[n]` is the verdict at `i = from + n`.
    pub holds: Vec<bool>,
    pub first_failure: Option<usize>,
}

impl LogConcavityCheck {
    pub fn all_hold(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Exact test of `||B_{i-1}||^2 ||B_{i+1}||^2 <= ||B_i||^4` for `i` in
/// `i_from..=i_to`.
pub fn check_logconcavity(
    model: &BlockJacobiModel,
    i_from: usize,
    i_to: usize,
) -> Result<LogConcavityCheck> {
    if i_from < 2 {
        return Err(HeunError::Domain(format!("log-concavity needs i >= 2, got {i_from}")));
    }
    if i_to + 1 > model.block_count() {
        return Err(HeunError::Domain(format!(
            "log-concavity up to i = {i_to} needs {} blocks, model has {}",
            i_to + 1,
            model.block_count()
        )));
    }
    let holds: Vec<bool> = (i_from..=i_to)
        .map(|i| {
            let mid = model.norm_sq_int(i);
            model.norm_sq_int(i - 1) * model.norm_sq_int(i + 1) <= mid * mid
        })
        .collect();
    let first_failure = holds.iter().position(|h| !h).map(|n| i_from + n);
    Ok(LogConcavityCheck { from: i_from, to: i_to, holds, first_failure })
}
