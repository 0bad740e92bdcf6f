use crate::error::{Result, SkgError};

const SUM_TOLERANCE: f64 = 1e-12;
const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// The 2x2 initiator `[t1, t2; t3, t4]`. Row selects the source bit, column
/// the target bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorMatrix {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub t4: f64,
}

impl GeneratorMatrix {
    pub fn new(t1: f64, t2: f64, t3: f64, t4: f64) -> Result<Self> {
        let m = GeneratorMatrix { t1, t2, t3, t4 };
        m.validate()?;
        Ok(m)
    }

    pub fn from_entries(e: [f64; 4]) -> Result<Self> {
        Self::new(e[0], e[1], e[2], e[3])
    }

    pub fn uniform() -> Self {
        GeneratorMatrix { t1: 0.25, t2: 0.25, t3: 0.25, t4: 0.25 }
    }

    pub fn validate(&self) -> Result<()> {
        let e = self.entries();
        let ok = e.iter().all(|&t| t.is_finite() && t > 0.0) && (e.iter().sum::<f64>() - 1.0).abs() <= SUM_TOLERANCE;
        if ok {
            Ok(())
        } else {
            Err(SkgError::InvalidMatrix(e))
        }
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.t1, self.t2, self.t3, self.t4]
    }

    /// Skew `t1 + t2 - 1/2`.
    pub fn sigma(&self) -> f64 {
        self.t1 + self.t2 - 0.5
    }

    pub fn is_symmetric(&self) -> bool {
        (self.t2 - self.t3).abs() <= SYMMETRY_TOLERANCE
    }

    pub fn require_symmetric(&self) -> Result<()> {
        if self.is_symmetric() {
            Ok(())
        } else {
            Err(SkgError::AsymmetricMatrix { t2: self.t2, t3: self.t3 })
        }
    }

    /// Swaps the roles of source and target; in-degree questions become
    /// out-degree questions on the transpose.
    pub fn transpose(&self) -> Self {
        GeneratorMatrix { t1: self.t1, t2: self.t3, t3: self.t2, t4: self.t4 }
    }

    /// True when `t1` is the largest entry and both marginals exceed 1/2,
    /// the regime the degree-distribution formulas are stated for.
    pub fn in_theory_regime(&self) -> bool {
        let e = self.entries();
        e.iter().all(|&t| t <= self.t1) && (self.t1 + self.t2).min(self.t1 + self.t3) > 0.5
    }

    /// Cumulative quadrant thresholds `[t1, t1+t2, t1+t2+t3]`.
    pub fn thresholds(&self) -> [f64; 3] {
        let a = self.t1;
        let b = a + self.t2;
        [a, b, b + self.t3]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseMode {
    None,
    /// One perturbed matrix per level, shared by every insertion.
    PerLevel,
    /// A fresh perturbation at every level of every insertion.
    PerEdge,
}

impl NoiseMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            NoiseMode::None => "none",
            NoiseMode::PerLevel => "per-level",
            NoiseMode::PerEdge => "per-edge",
        }
    }
}

impl std::str::FromStr for NoiseMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "none" => Ok(NoiseMode::None),
            "per-level" => Ok(NoiseMode::PerLevel),
            "per-edge" => Ok(NoiseMode::PerEdge),
            other => Err(format!("unknown noise mode {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub mode: NoiseMode,
    pub amplitude: f64,
}

impl NoiseSpec {
    pub fn none() -> Self {
        NoiseSpec { mode: NoiseMode::None, amplitude: 0.0 }
    }

    pub fn per_level(b: f64) -> Self {
        NoiseSpec { mode: NoiseMode::PerLevel, amplitude: b }
    }

    pub fn per_edge(b: f64) -> Self {
        NoiseSpec { mode: NoiseMode::PerEdge, amplitude: b }
    }

    /// Largest admissible amplitude (exclusive) for `matrix`:
    /// `min((t1 + t4)/2, t2, t3)`.
    pub fn bound(matrix: &GeneratorMatrix) -> f64 {
        ((matrix.t1 + matrix.t4) / 2.0).min(matrix.t2).min(matrix.t3)
    }

    pub fn validate(&self, matrix: &GeneratorMatrix) -> Result<()> {
        let b = self.amplitude;
        if !b.is_finite() || b < 0.0 {
            return Err(SkgError::InvalidNoise(b));
        }
        match self.mode {
            NoiseMode::None if b != 0.0 => Err(SkgError::InvalidNoise(b)),
            NoiseMode::None => Ok(()),
            _ => {
                let bound = Self::bound(matrix);
                if b < bound {
                    Ok(())
                } else {
                    Err(SkgError::NoiseTooLarge { b, bound })
                }
            }
        }
    }
}

impl Default for NoiseSpec {
    fn default() -> Self {
        Self::none()
    }
}

/// Everything needed to generate one graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkgParams {
    pub matrix: GeneratorMatrix,
    pub levels: u32,
    pub insertions: u64,
    pub seed: u64,
    pub noise: NoiseSpec,
}

impl SkgParams {
    pub fn new(matrix: GeneratorMatrix, levels: u32, insertions: u64, seed: u64) -> Result<Self> {
        Self::with_noise(matrix, levels, insertions, seed, NoiseSpec::none())
    }

    pub fn with_noise(
        matrix: GeneratorMatrix,
        levels: u32,
        insertions: u64,
        seed: u64,
        noise: NoiseSpec,
    ) -> Result<Self> {
        let p = SkgParams { matrix, levels, insertions, seed, noise };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        self.matrix.validate()?;
        if !(1..=63).contains(&self.levels) {
            return Err(SkgError::LevelsOutOfRange(self.levels));
        }
        if self.insertions == 0 {
            return Err(SkgError::ZeroInsertions);
        }
        self.noise.validate(&self.matrix)
    }

    pub fn nodes(&self) -> u64 {
        1u64 << self.levels
    }
}

/// Quantities derived from `(T, levels, insertions)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    pub matrix: GeneratorMatrix,
    pub levels: u32,
    pub insertions: u64,
    /// `2^levels`
    pub n: u64,
    /// Average out-degree `m / n`.
    pub delta: f64,
    pub sigma: f64,
    /// `(1 + 2 sigma) / (1 - 2 sigma)`
    pub tau: f64,
    /// `delta * (1 - 4 sigma^2)^(levels / 2)`
    pub lambda: f64,
}

impl DerivedParams {
    pub fn new(matrix: GeneratorMatrix, levels: u32, insertions: u64) -> Result<Self> {
        matrix.validate()?;
        if !(1..=63).contains(&levels) {
            return Err(SkgError::LevelsOutOfRange(levels));
        }
        let sigma = matrix.sigma();
        if !(0.0..0.5).contains(&sigma) {
            return Err(SkgError::SigmaOutOfRange(sigma));
        }
        let n = 1u64 << levels;
        let delta = insertions as f64 / n as f64;
        let tau = (1.0 + 2.0 * sigma) / (1.0 - 2.0 * sigma);
        let ln_shrink = 0.5 * levels as f64 * (-4.0 * sigma * sigma).ln_1p();
        let lambda = if ln_shrink > -700.0 { delta * ln_shrink.exp() } else { (ln_shrink + delta.ln()).exp() };
        Ok(DerivedParams { matrix, levels, insertions, n, delta, sigma, tau, lambda })
    }

    pub fn half_levels(&self) -> i64 {
        i64::from(self.levels / 2)
    }

    pub fn require_even(&self) -> Result<()> {
        if self.levels.is_multiple_of(2) {
            Ok(())
        } else {
            Err(SkgError::OddLevels(self.levels))
        }
    }
}

pub fn derive_params(p: &SkgParams) -> Result<DerivedParams> {
    DerivedParams::new(p.matrix, p.levels, p.insertions)
}
