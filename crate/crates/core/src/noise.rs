//! Per-level noise on the generator matrix.

use rand::Rng;

use crate::error::{Result, SkgError};
use crate::params::{DerivedParams, GeneratorMatrix, NoiseSpec};

/// Perturbs `t` by `mu`, moving mass between the diagonal and the
/// off-diagonal while keeping the total at 1:
/// `[t1 - 2 mu t1/(t1+t4), t2 + mu; t3 + mu, t4 - 2 mu t4/(t1+t4)]`.
pub fn noisy_matrix(t: &GeneratorMatrix, mu: f64) -> GeneratorMatrix {
    let diag = t.t1 + t.t4;
    GeneratorMatrix {
        t1: t.t1 - 2.0 * mu * t.t1 / diag,
        t2: t.t2 + mu,
        t3: t.t3 + mu,
        t4: t.t4 - 2.0 * mu * t.t4 / diag,
    }
}

/// Draws `mu_i ~ U[-b, b]` for each level and returns the perturbed
/// matrices. Exactly one variate is consumed per level, also when `b = 0`.
pub fn noisy_matrices<R: Rng + ?Sized>(
    matrix: &GeneratorMatrix,
    levels: u32,
    amplitude: f64,
    rng: &mut R,
) -> Result<Vec<GeneratorMatrix>> {
    NoiseSpec::per_level(amplitude).validate(matrix)?;
    Ok((0..levels)
        .map(|_| {
            let u: f64 = rng.gen();
            noisy_matrix(matrix, amplitude * (2.0 * u - 1.0))
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexBias {
    /// `prod_{zero bits} alpha_i * prod_{one bits} beta_i`
    pub rho: f64,
    /// `lambda * rho`
    pub lambda_v: f64,
}

/// Multiplicative change in a vertex's out-edge probability caused by the
/// level matrices. Level 0 decides the most significant bit.
///
/// `alpha_i = (1/2 + sigma_i) / (1/2 + sigma)` and
/// `beta_i = (1/2 - sigma_i) / (1/2 - sigma)` where `sigma_i` is the skew of
/// the `i`-th matrix.
pub fn vertex_bias(dp: &DerivedParams, matrices: &[GeneratorMatrix], vertex: u64) -> Result<VertexBias> {
    let levels = dp.levels as usize;
    if matrices.len() != levels {
        return Err(SkgError::LevelCountMismatch { expected: levels, got: matrices.len() });
    }
    let ln_rho: f64 = matrices
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let bit = (vertex >> (levels - 1 - i)) & 1;
            let s = t.sigma();
            if bit == 0 {
                ((0.5 + s) / (0.5 + dp.sigma)).ln()
            } else {
                ((0.5 - s) / (0.5 - dp.sigma)).ln()
            }
        })
        .sum();
    let rho = ln_rho.exp();
    Ok(VertexBias { rho, lambda_v: dp.lambda * rho })
}
