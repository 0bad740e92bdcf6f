mod analyze;
mod compare;
mod generate;
mod predict;

pub use analyze::run_analyze;
pub use compare::run_compare;
pub use generate::run_generate;
pub use predict::run_predict;

use crate::error::{CliError, Result};

/// Runs `f` on a pool of `threads` workers, or the global pool.
pub(crate) fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match threads {
        None => f(),
        Some(0) => Err(CliError::Usage("--threads must be positive".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| skg_gen::GenError::ThreadPool(e.to_string()))?
            .install(f),
    }
}

/// Largest `d` with `d * d <= n`.
pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}
