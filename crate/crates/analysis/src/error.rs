use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("vertex {vertex} is not below the vertex count {nodes}")]
    VertexOutOfRange { vertex: u64, nodes: u64 },
    #[error("self-loop at vertex {0} in an undirected core decomposition")]
    SelfLoopPresent(u64),
}

impl AnalysisError {
    pub fn token(&self) -> &'static str {
        match self {
            AnalysisError::VertexOutOfRange { .. } => "VertexOutOfRange",
            AnalysisError::SelfLoopPresent(_) => "SelfLoopPresent",
        }
    }
}

pub type Result<T> = std::result::Result<T, AnalysisError>;
