use skg_analysis::AnalysisError;
use skg_core::SkgError;
use skg_gen::GenError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Params(#[from] SkgError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("vertex count unknown: pass --nodes or keep the .meta sidecar next to the edge file")]
    MissingNodes,
}

impl CliError {
    /// Stable identifier printed as `error[TOKEN]` on stderr.
    pub fn token(&self) -> &'static str {
        match self {
            CliError::Params(e) => e.token(),
            CliError::Gen(e) => e.token(),
            CliError::Analysis(e) => e.token(),
            CliError::Io { .. } => "Io",
            CliError::Usage(_) => "Usage",
            CliError::MissingNodes => "MissingNodes",
        }
    }

    pub fn io(path: impl AsRef<std::path::Path>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.as_ref().display().to_string();
        move |source| CliError::Io { path, source }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
