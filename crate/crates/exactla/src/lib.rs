//! Exact sparse linear algebra.
//!
//! Ranks are computed over the rationals (fraction-free elimination), over
//! word-sized prime fields, or generically for matrices whose entries are
//! polynomials in undetermined parameters. Elimination is single-threaded per
//! matrix so results never depend on scheduling.

mod complex;
mod field;
mod poly;
mod rank;
mod sparse;

pub use complex::{cohomology_dims, cohomology_dims_generic, CochainDims};
pub use field::{
    add_mod, inv_mod, lift_symmetric, mul_mod, pow_mod, reduce_bigint, reduce_i64,
    reduce_rational, sub_mod, Field, Fp, FpA, FpB, PRIMES_62,
};
pub use poly::{Monomial, ParamPoly, ParamSet};
pub use rank::{
    rank_auto, rank_exact, rank_generic, rank_mod_p, rank_mod_p_rows, rank_multimodular,
    rank_of_dense, GenericRank, MultimodularRank, EXACT_NNZ_LIMIT,
};
pub use sparse::{Entry, SparseMat};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("d^2 != 0: composite of the differentials out of degrees {degree} and {} is nonzero", degree + 1)]
    NonzeroSquare { degree: i64 },
    #[error("a denominator vanishes modulo {0}")]
    BadPrime(u64),
    #[error("generic rank unstable across trials: {0:?}")]
    GenericRankUnstable(Vec<usize>),
    #[error("unsupported number of generic-rank trials: {0}")]
    TrialCount(usize),
    #[error("cannot parse matrix line {0:?}")]
    Parse(String),
}
