//! Cohomology dimensions of finite cochain complexes.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::poly::{ParamPoly, ParamSet};
use crate::rank::{rank_auto, rank_generic, GenericRank};
use crate::sparse::SparseMat;
use crate::LinAlgError;

/// A cochain complex of finite-dimensional spaces `C^k` with differentials
/// `d_k : C^k -> C^{k+1}` stored as `dim C^{k+1} x dim C^k` matrices.
#[derive(Clone, Debug)]
pub struct CochainDims<C> {
    pub dims: BTreeMap<i64, usize>,
    pub diffs: BTreeMap<i64, SparseMat<C>>,
}

impl<C: crate::sparse::Entry> CochainDims<C> {
    pub fn new() -> Self {
        CochainDims {
            dims: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    fn dim(&self, k: i64) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    /// Checks shapes and `d_{k+1} d_k = 0` for every degree.
    pub fn check_square_zero(&self) -> Result<(), LinAlgError> {
        for (&k, d) in &self.diffs {
            if d.cols() != self.dim(k) || d.rows() != self.dim(k + 1) {
                return Err(LinAlgError::DimensionMismatch {
                    left: (d.rows(), d.cols()),
                    right: (self.dim(k + 1), self.dim(k)),
                });
            }
            if let Some(next) = self.diffs.get(&(k + 1)) {
                if !next.mul(d)?.is_zero() {
                    return Err(LinAlgError::NonzeroSquare { degree: k });
                }
            }
        }
        Ok(())
    }
}

impl<C: crate::sparse::Entry> Default for CochainDims<C> {
    fn default() -> Self {
        Self::new()
    }
}

fn assemble(
    dims: &BTreeMap<i64, usize>,
    ranks: &BTreeMap<i64, usize>,
) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for (&k, &n) in dims {
        let r_out = ranks.get(&k).copied().unwrap_or(0);
        let r_in = ranks.get(&(k - 1)).copied().unwrap_or(0);
        out.insert(k, n - r_out - r_in);
    }
    out
}

/// `dim H^k = dim C^k - rank d_k - rank d_{k-1}` after verifying `d^2 = 0`.
pub fn cohomology_dims(
    complex: &CochainDims<BigRational>,
) -> Result<BTreeMap<i64, usize>, LinAlgError> {
    complex.check_square_zero()?;
    let mut ranks = BTreeMap::new();
    for (&k, d) in &complex.diffs {
        ranks.insert(k, rank_auto(d)?);
    }
    Ok(assemble(&complex.dims, &ranks))
}

/// Cohomology dimensions of a parametric complex at a generic parameter point.
/// `d^2 = 0` is checked as a polynomial identity before any rank is taken.
pub fn cohomology_dims_generic(
    complex: &CochainDims<ParamPoly>,
    params: &ParamSet,
    trials: usize,
    seed: u64,
) -> Result<(BTreeMap<i64, usize>, BTreeMap<i64, GenericRank>), LinAlgError> {
    complex.check_square_zero()?;
    let mut ranks = BTreeMap::new();
    let mut reports = BTreeMap::new();
    for (&k, d) in &complex.diffs {
        let g = rank_generic(d, params, trials, seed ^ (k as u64).wrapping_mul(0x9e37_79b9))?;
        ranks.insert(k, g.rank);
        reports.insert(k, g);
    }
    Ok((assemble(&complex.dims, &ranks), reports))
}
