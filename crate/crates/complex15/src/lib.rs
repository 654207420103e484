//! The graph complexes computing the type (15,0) part of compactly
//! supported cohomology of moduli of marked curves, and the commutative
//! graph complex.
//!
//! `X_{g,n}` is spanned by stable graphs with one special genus-1 vertex
//! carrying a subset of marked half-edges, all other vertices of genus 0.
//! It is acyclic. The quotient by graphs with at most `r` marked half-edges
//! (`B`) and that subcomplex (`C`) have isomorphic cohomology after the
//! shifts `2r + 2` and `2r + 1`; the default is `r = 14`.

mod complex;
mod differential;
mod equivariant;

pub use complex::{
    build_colored, build_complex, build_gc0, generator_bases, quotient_excess, ChainComplex,
    ComplexMeta, Family, DEFAULT_TRUNCATION, MAX_B_EXCESS,
};
pub use differential::{internal_splits, omega_terms, raw_differential, special_splits};
pub use equivariant::{chain_multiplicities, equivariant_cohomology, EquivCohomology};

use exactla::LinAlgError;
use graphcore::{generator_excess, GraphError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("unsupported scope: {0}")]
    Unsupported(String),
    #[error("multiplicity check failed: {0}")]
    Multiplicity(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("({g}, {n}) has generators, but vanishing was expected")]
    NotVanishing { g: usize, n: usize },
}

/// Confirms that `B` has no generators when `3g + 2n <= 32`.
pub fn verify_vanishing(g: usize, n: usize) -> Result<(), ComplexError> {
    let e = generator_excess(g, n, DEFAULT_TRUNCATION + 1);
    if e >= 0 {
        return Err(ComplexError::Unsupported(format!(
            "({g}, {n}) has nonnegative excess {e}; vanishing is not expected"
        )));
    }
    let c = build_complex(Family::B15, g, n, DEFAULT_TRUNCATION)?;
    if c.total_dim() != 0 {
        return Err(ComplexError::NotVanishing { g, n });
    }
    Ok(())
}
