//! Truncated trigraded series arithmetic.
//!
//! A [`TruncSeries`] is a finite sum of terms `c u^a w^b p_mu` with `a` an
//! integer (Laurent in `u`), `b` bounded by a `w`-cap and `p_mu` a power-sum
//! monomial of bounded degree. Every operation truncates to the caps
//! immediately. Coefficients live in any [`exactla::Field`], so the same
//! code runs over the rationals and over word-sized prime fields.

mod basis;
mod numbers;
mod series;

pub use basis::PartitionBasis;
pub use numbers::{bernoulli, bernoulli_table, divisors, moebius};
pub use series::{SeriesCaps, SeriesContext, TruncSeries};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series with different caps: {left:?} and {right:?}")]
    CapMismatch { left: SeriesCaps, right: SeriesCaps },
    #[error("constant term {0} is not a unit of the required form")]
    NonUnit(String),
    #[error("series has a term with negative u-exponent")]
    NegativeExponent,
    #[error("argument of the exponential is not nilpotent under the caps")]
    NotNilpotent,
    #[error("denominator of {0} is not invertible in the coefficient field")]
    Denominator(String),
}
