//! Deterministic, chunk-parallel SKG and noisy-SKG edge generation.

pub mod edges;
pub mod error;
pub mod generate;
pub mod io;

pub use edges::{deduplicate, symmetrize_upper, undirect, Edge, EdgeForm, EdgeList, GraphMeta};
pub use error::{GenError, Result};
pub use generate::{
    chunk_rng, generate, generate_chunk, generate_with_threads, insert_edge, insert_edge_per_edge_noise,
    level_matrices, noise_rng, ChunkPlan, DEFAULT_CHUNK_SIZE, NOISE_STREAM,
};
pub use io::{encode_edges, read_edge_file, write_edge_file, EdgeFormat, EdgeWriter, Sidecar, BINARY_MAGIC};
