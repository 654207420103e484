//! Equivariant Euler characteristics of the type (15,0) weight-graded part of
//! compactly supported cohomology of moduli spaces of marked curves.
//!
//! The generating function is
//!
//! `sum u^{g+n} chi_{S_n} = -u T_{<=14}( prod_{l>=1} U_l(X_l^num, u) / U_l(X_l^den, u) - 1 )`
//!
//! with `X_l^num = (1/l) sum_{d|l} mu(l/d)(-p_d + 1 - w^d)`,
//! `X_l^den = (1/l) sum_{d|l} mu(l/d)(-p_d)` and `log U_l` expanded as in
//! [`log_u`]. All series arithmetic is exact. By default the whole pipeline
//! runs modulo two 62-bit primes and the integer Schur coefficients are
//! recovered by symmetric lifting, with agreement of both primes required.

mod asymptotics;
mod generating;
mod table;

pub use asymptotics::{asymptotic_constants, asymptotic_estimate, asymptotic_main_term};
pub use generating::{
    coefficient, e_ell, e_ell_inverse, lambda_e, lambda_ell, log_ratio, log_u, x_ell,
};
pub use table::{chi_series, chi_table, chi_table_with, ChiOptions, ChiTable};

use serieskit::SeriesError;
use symkit::SymError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EulerError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("argument of log U has a negative u-exponent")]
    NegativeExponent,
    #[error("a rational constant is not representable in the coefficient field")]
    Denominator,
    #[error("product bound l <= {given} is below the sufficient bound {needed}")]
    InsufficientEllBound { given: u64, needed: u64 },
    #[error("cell ({g}, {n}) has a non-integral Schur coefficient")]
    NonIntegral { g: usize, n: usize },
    #[error("cell ({g}, {n}) has a coefficient too large to represent")]
    Overflow { g: usize, n: usize },
    #[error("cell ({g}, {n}): the two modular evaluations disagree")]
    ModularDisagreement { g: usize, n: usize },
    #[error("the asymptotic estimate needs g >= 20, got {0}")]
    GenusTooSmall(u32),
}
