//! Command logic behind the `mgn` binary: report builders with a versioned
//! JSON schema, text renderings, a result cache and the consistency checks.

pub mod cache;
pub mod reference;
pub mod report;
pub mod suites;

use thiserror::Error;

pub use cache::{ResultCache, CACHE_ENV};
pub use report::*;
pub use suites::{run_suite, CheckLine, Suite};

/// Version of every JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Largest table accepted without `--force`.
pub const EULER_SOFT_CAP: (usize, usize) = (30, 10);

#[derive(Debug, Error)]
pub enum CliError {
    #[error("euler15: {0}")]
    Euler(#[from] euler15::EulerError),
    #[error("complex15: {0}")]
    Complex15(#[from] complex15::ComplexError),
    #[error("complex13: {0}")]
    Complex13(#[from] complex13::Wt13Error),
    #[error("{0}")]
    Usage(String),
    #[error("cache: {0}")]
    Io(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl CliError {
    /// Whether the error is a refusal to compute outside the supported
    /// range.
    pub fn is_unsupported_scope(&self) -> bool {
        use complex13::Wt13Error;
        use complex15::ComplexError;
        matches!(
            self,
            CliError::Complex15(ComplexError::Unsupported(_))
                | CliError::Complex15(ComplexError::Graph(graphcore::GraphError::Unsupported(_)))
                | CliError::Complex13(Wt13Error::Unsupported(_))
        )
    }
}
