//! Stochastic Kronecker graph parameters and closed-form predictions.

pub mod error;
pub mod noise;
pub mod numeric;
pub mod params;
pub mod preset;
pub mod theory;

pub use error::{Result, SkgError};
pub use noise::{noisy_matrices, noisy_matrix, vertex_bias, VertexBias};
pub use params::{derive_params, DerivedParams, GeneratorMatrix, NoiseMode, NoiseSpec, SkgParams};
pub use preset::{EdgeRule, Preset, GRAPH500_LEVELS};
pub use theory::{
    degree_curves, degree_index, degree_regime, expected_degree_count_exact, expected_degree_count_lemma,
    expected_degree_count_lemma_terms, expected_degree_count_theorem, expected_degree_curve_exact,
    expected_distinct_edges, isolated_expectation, isolated_expectation_exact, ln_slice_out_probability, ln_slice_size,
    repeat_fraction, slice_degree_probability_approx, slice_degree_probability_exact, slice_incident_probability,
    slice_out_probability, slice_size, DegreeCurvePoint, DegreeIndex, DegreeMethod, Flagged, PredictionReport,
};
