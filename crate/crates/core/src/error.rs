use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SkgError {
    #[error("generator matrix entries must be positive and sum to 1, got {0:?}")]
    InvalidMatrix([f64; 4]),
    #[error("skew {0} is outside [0, 1/2)")]
    SigmaOutOfRange(f64),
    #[error("this operation requires an even number of levels, got {0}")]
    OddLevels(u32),
    #[error("levels must be in 1..=63, got {0}")]
    LevelsOutOfRange(u32),
    #[error("slice index {r} is outside [-{half}, {half}]")]
    SliceOutOfRange { r: i64, half: i64 },
    #[error("matrix is not symmetric (t2 = {t2}, t3 = {t3})")]
    AsymmetricMatrix { t2: f64, t3: f64 },
    #[error("tau is 1 (zero skew); degree index is undefined")]
    TauIsOne,
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("noise amplitude {b} must be below {bound}")]
    NoiseTooLarge { b: f64, bound: f64 },
    #[error("noise amplitude {0} is invalid for this noise mode")]
    InvalidNoise(f64),
    #[error("insertion count must be positive")]
    ZeroInsertions,
    #[error("expected {expected} level matrices, got {got}")]
    LevelCountMismatch { expected: usize, got: usize },
}

impl SkgError {
    /// Stable machine-readable name of the variant.
    pub fn token(&self) -> &'static str {
        match self {
            SkgError::InvalidMatrix(_) => "InvalidMatrix",
            SkgError::SigmaOutOfRange(_) => "SigmaOutOfRange",
            SkgError::OddLevels(_) => "OddLevels",
            SkgError::LevelsOutOfRange(_) => "LevelsOutOfRange",
            SkgError::SliceOutOfRange { .. } => "SliceOutOfRange",
            SkgError::AsymmetricMatrix { .. } => "AsymmetricMatrix",
            SkgError::TauIsOne => "TauIsOne",
            SkgError::ZeroDegree => "ZeroDegree",
            SkgError::NoiseTooLarge { .. } => "NoiseTooLarge",
            SkgError::InvalidNoise(_) => "InvalidNoise",
            SkgError::ZeroInsertions => "ZeroInsertions",
            SkgError::LevelCountMismatch { .. } => "LevelCountMismatch",
        }
    }
}

pub type Result<T> = std::result::Result<T, SkgError>;
