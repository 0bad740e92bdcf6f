//! Edge insertion and chunk-parallel graph generation.
//!
//! Variate streams are ChaCha8 keyed by the graph seed. Chunk `c` of the
//! insertion sequence reads stream `c`; per-level noise reads stream
//! [`NOISE_STREAM`]. The output is therefore a function of
//! `(seed, params, chunk size)` only.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use skg_core::{noisy_matrices, noisy_matrix, GeneratorMatrix, NoiseMode, SkgParams};

use crate::edges::{Edge, EdgeForm, EdgeList, GraphMeta};
use crate::error::{GenError, Result};

pub const DEFAULT_CHUNK_SIZE: u64 = 1 << 16;

/// Stream id reserved for the per-level noise draws.
pub const NOISE_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChunkPlan {
    pub chunk_size: u64,
}

impl Default for ChunkPlan {
    fn default() -> Self {
        ChunkPlan { chunk_size: DEFAULT_CHUNK_SIZE }
    }
}

impl ChunkPlan {
    pub fn new(chunk_size: u64) -> Self {
        assert!(chunk_size > 0, "chunk size must be positive");
        ChunkPlan { chunk_size }
    }

    pub fn chunk_count(&self, insertions: u64) -> u64 {
        insertions.div_ceil(self.chunk_size)
    }

    /// Half-open insertion range covered by chunk `index`.
    pub fn chunk_range(&self, insertions: u64, index: u64) -> std::ops::Range<u64> {
        let start = index * self.chunk_size;
        start.min(insertions)..(start + self.chunk_size).min(insertions)
    }
}

/// Variate stream for one chunk of insertions.
pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

pub fn noise_rng(seed: u64) -> ChaCha8Rng {
    chunk_rng(seed, NOISE_STREAM)
}

#[inline]
fn place(u: f64, thresholds: &[f64; 3]) -> (u64, u64) {
    if u < thresholds[0] {
        (0, 0)
    } else if u < thresholds[1] {
        (0, 1)
    } else if u < thresholds[2] {
        (1, 0)
    } else {
        (1, 1)
    }
}

/// One recursive insertion. Level `i` draws one uniform variate and picks a
/// quadrant against the cumulative thresholds `t1, t1+t2, t1+t2+t3`; the
/// quadrant supplies bit `levels - 1 - i` of the source and target.
pub fn insert_edge<R: Rng + ?Sized>(rng: &mut R, levels: &[GeneratorMatrix]) -> Edge {
    let mut src = 0u64;
    let mut dst = 0u64;
    for t in levels {
        let (s, d) = place(rng.gen::<f64>(), &t.thresholds());
        src = (src << 1) | s;
        dst = (dst << 1) | d;
    }
    (src, dst)
}

/// Insertion with a fresh perturbation `mu ~ U[-b, b]` at every level. Each
/// level consumes two variates: `mu` first, then the quadrant.
pub fn insert_edge_per_edge_noise<R: Rng + ?Sized>(
    rng: &mut R,
    matrix: &GeneratorMatrix,
    levels: u32,
    amplitude: f64,
) -> Edge {
    let mut src = 0u64;
    let mut dst = 0u64;
    for _ in 0..levels {
        let mu = amplitude * (2.0 * rng.gen::<f64>() - 1.0);
        let t = noisy_matrix(matrix, mu);
        let (s, d) = place(rng.gen::<f64>(), &t.thresholds());
        src = (src << 1) | s;
        dst = (dst << 1) | d;
    }
    (src, dst)
}

/// The matrices used at each level for a whole graph. For per-edge noise
/// this is the unperturbed `T` at every level.
pub fn level_matrices(params: &SkgParams) -> Result<Vec<GeneratorMatrix>> {
    params.validate()?;
    let mut noise = noise_rng(params.seed);
    let m = params.matrix;
    Ok(match params.noise.mode {
        NoiseMode::PerLevel => noisy_matrices(&m, params.levels, params.noise.amplitude, &mut noise)?,
        NoiseMode::None | NoiseMode::PerEdge => vec![m; params.levels as usize],
    })
}

/// Fills `out` with the insertions of chunk `index`. `out.len()` must equal
/// the chunk's length under `plan`.
pub fn generate_chunk(
    params: &SkgParams,
    plan: &ChunkPlan,
    matrices: &[GeneratorMatrix],
    index: u64,
    out: &mut [Edge],
) {
    debug_assert_eq!(out.len() as u64, plan.chunk_range(params.insertions, index).count() as u64);
    let mut rng = chunk_rng(params.seed, index);
    match params.noise.mode {
        NoiseMode::PerEdge => {
            for e in out.iter_mut() {
                *e = insert_edge_per_edge_noise(&mut rng, &params.matrix, params.levels, params.noise.amplitude);
            }
        }
        _ => {
            let thresholds: Vec<[f64; 3]> = matrices.iter().map(GeneratorMatrix::thresholds).collect();
            for e in out.iter_mut() {
                let mut src = 0u64;
                let mut dst = 0u64;
                for t in &thresholds {
                    let (s, d) = place(rng.gen::<f64>(), t);
                    src = (src << 1) | s;
                    dst = (dst << 1) | d;
                }
                *e = (src, dst);
            }
        }
    }
}

/// Generates the multigraph: exactly `m` insertions in insertion order.
/// Runs on the current rayon pool.
pub fn generate(params: &SkgParams, plan: &ChunkPlan) -> Result<EdgeList> {
    let matrices = level_matrices(params)?;
    let m = usize::try_from(params.insertions)
        .map_err(|_| GenError::Metadata("insertion count exceeds address space".into()))?;
    let mut edges: Vec<Edge> = vec![(0, 0); m];
    let chunk = plan.chunk_size as usize;
    edges.par_chunks_mut(chunk).enumerate().for_each(|(i, out)| {
        generate_chunk(params, plan, &matrices, i as u64, out);
    });
    Ok(EdgeList {
        edges,
        nodes: params.nodes(),
        form: EdgeForm::Multigraph,
        meta: Some(GraphMeta { params: *params, chunk_size: plan.chunk_size }),
    })
}

/// [`generate`] on a dedicated pool of `threads` workers.
pub fn generate_with_threads(params: &SkgParams, plan: &ChunkPlan, threads: usize) -> Result<EdgeList> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| GenError::ThreadPool(e.to_string()))?;
    pool.install(|| generate(params, plan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::mock::StepRng;
    use skg_core::{NoiseSpec, Preset};

    #[test]
    fn all_low_variates_give_origin() {
        let eps = 1e-9;
        let t = GeneratorMatrix::new(1.0 - 3.0 * eps, eps, eps, eps).unwrap();
        let mut rng = StepRng::new(0, 0);
        assert_eq!(insert_edge(&mut rng, &vec![t; 10]), (0, 0));
    }

    #[test]
    fn all_high_variates_give_last_vertex() {
        let t = Preset::graph500().matrix;
        let mut rng = StepRng::new(u64::MAX, 0);
        let levels = 12;
        assert_eq!(insert_edge(&mut rng, &vec![t; levels]), ((1 << levels) - 1, (1 << levels) - 1));
    }

    #[test]
    fn most_significant_bit_comes_first() {
        // First level lands in the t4 band, the rest in t1.
        struct Seq(Vec<u64>);
        impl rand::RngCore for Seq {
            fn next_u32(&mut self) -> u32 {
                self.next_u64() as u32
            }
            fn next_u64(&mut self) -> u64 {
                self.0.remove(0)
            }
            fn fill_bytes(&mut self, _: &mut [u8]) {
                unimplemented!()
            }
            fn try_fill_bytes(&mut self, _: &mut [u8]) -> std::result::Result<(), rand::Error> {
                unimplemented!()
            }
        }
        let t = Preset::graph500().matrix;
        let mut rng = Seq(vec![u64::MAX, 0, 0, 0]);
        assert_eq!(insert_edge(&mut rng, &[t; 4]), (0b1000, 0b1000));
    }

    #[test]
    fn chunk_plan_ranges() {
        let plan = ChunkPlan::new(10);
        assert_eq!(plan.chunk_count(25), 3);
        assert_eq!(plan.chunk_range(25, 2), 20..25);
        assert_eq!(plan.chunk_count(20), 2);
    }

    #[test]
    fn exact_edge_count_and_range() {
        let p = SkgParams::new(Preset::graph500().matrix, 10, 12_345, 1).unwrap();
        let g = generate(&p, &ChunkPlan::new(1000)).unwrap();
        assert_eq!(g.edges.len(), 12_345);
        assert!(g.edges.iter().all(|&(u, v)| u < 1024 && v < 1024));
    }

    #[test]
    fn zero_per_level_noise_matches_noiseless() {
        let t = Preset::graph500().matrix;
        let a = SkgParams::new(t, 12, 50_000, 42).unwrap();
        let b = SkgParams::with_noise(t, 12, 50_000, 42, NoiseSpec::per_level(0.0)).unwrap();
        let plan = ChunkPlan::default();
        assert_eq!(generate(&a, &plan).unwrap().edges, generate(&b, &plan).unwrap().edges);
    }

    #[test]
    fn noise_changes_output() {
        let t = Preset::graph500().matrix;
        let a = SkgParams::new(t, 12, 5_000, 42).unwrap();
        let b = SkgParams::with_noise(t, 12, 5_000, 42, NoiseSpec::per_level(0.1)).unwrap();
        let plan = ChunkPlan::default();
        assert_ne!(generate(&a, &plan).unwrap().edges, generate(&b, &plan).unwrap().edges);
    }

    #[test]
    fn rejects_large_noise() {
        let t = Preset::graph500().matrix;
        let p = SkgParams { matrix: t, levels: 8, insertions: 10, seed: 0, noise: NoiseSpec::per_edge(0.25) };
        assert_eq!(generate(&p, &ChunkPlan::default()).unwrap_err().token(), "NoiseTooLarge");
    }

    #[test]
    fn per_level_matrices_are_stochastic() {
        let t = Preset::graph500().matrix;
        for seed in 0..20 {
            let p = SkgParams::with_noise(t, 16, 1, seed, NoiseSpec::per_level(0.15)).unwrap();
            for m in level_matrices(&p).unwrap() {
                assert!((m.entries().iter().sum::<f64>() - 1.0).abs() < 1e-12);
                assert!(m.entries().iter().all(|&x| x > 0.0));
            }
        }
    }
}
