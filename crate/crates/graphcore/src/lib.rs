//! Blown-up decorated graphs: canonical labeling with orientation signs,
//! blown-up components and their excess, and generator enumeration under
//! excess bounds.

pub mod canon;
mod catalog;
mod enumerate;
mod gc0;
mod graph;

pub use catalog::{colorings, component_shapes, excess_component, with_default_word, Component};
pub use enumerate::{
    enumerate_x, excess_budget, generator_excess, Family, Generator, MAX_CATALOG_EXCESS,
};
pub use gc0::{gc0_generators, gc0_multigraphs, GC0_MAX_LOOP_ORDER};
pub use graph::{canonicalize, BlownUpGraph, Canonical, ComponentCode, GraphKey, NodeKind, Odd};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error("component {0:?} has negative excess")]
    NegativeExcess(ComponentCode),
    #[error("unsupported scope: {0}")]
    Unsupported(String),
}
