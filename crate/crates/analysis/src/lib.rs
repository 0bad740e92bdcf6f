//! Empirical measurements on generated edge lists.

pub mod cores;
pub mod error;
pub mod histogram;

pub use cores::{core_decomposition, CoreKind, CoreProfile};
pub use error::{AnalysisError, Result};
pub use histogram::{degree_histogram, degrees, isolated_count, oscillation_score, DegreeHistogram, Orientation};

/// `(source, target)`
pub type Edge = (u64, u64);

pub(crate) fn check_range(edges: &[Edge], nodes: u64) -> Result<()> {
    match edges.iter().find(|&&(u, v)| u >= nodes || v >= nodes) {
        Some(&(u, v)) => Err(AnalysisError::VertexOutOfRange { vertex: if u >= nodes { u } else { v }, nodes }),
        None => Ok(()),
    }
}
