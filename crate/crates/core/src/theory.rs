//! Closed-form predictions for SKG degree distributions, isolated vertices
//! and repeated edges.
//!
//! Vertices are grouped into slices: slice `r` holds the vertices whose
//! `levels`-bit id has exactly `levels/2 + r` zero bits. All vertices in a
//! slice share one out-degree distribution, so every expectation below is a
//! sum over at most `levels + 1` slices.

use std::f64::consts::{E, LN_2, PI};

use crate::error::{Result, SkgError};
use crate::numeric::{exp_floor, hit_probability, ln_binomial_pmf, ln_choose, ln_multinomial, log_sum_exp};
use crate::params::{DerivedParams, GeneratorMatrix};
use statrs::function::factorial::ln_factorial;

/// A value computed outside the range its approximation is stated for still
/// gets returned, with `in_regime = false`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flagged {
    pub value: f64,
    pub in_regime: bool,
}

fn check_slice(dp: &DerivedParams, r: i64) -> Result<()> {
    dp.require_even()?;
    let half = dp.half_levels();
    if r < -half || r > half {
        return Err(SkgError::SliceOutOfRange { r, half });
    }
    Ok(())
}

fn check_slice_levels(levels: u32, r: i64) -> Result<()> {
    if !levels.is_multiple_of(2) {
        return Err(SkgError::OddLevels(levels));
    }
    let half = i64::from(levels / 2);
    if r < -half || r > half {
        return Err(SkgError::SliceOutOfRange { r, half });
    }
    Ok(())
}

/// Number of vertices in slice `r`: `C(levels, levels/2 + r)`.
pub fn slice_size(levels: u32, r: i64) -> Result<u64> {
    check_slice_levels(levels, r)?;
    let k = (i64::from(levels / 2) + r) as u64;
    // C(63, k) < 2^63, so the float is an exact integer below 2^53 or
    // rounds only in the last place; recompute exactly in integers.
    let mut c: u128 = 1;
    let kk = k.min(u64::from(levels) - k);
    for i in 0..kk {
        c = c * u128::from(u64::from(levels) - i) / u128::from(i + 1);
    }
    Ok(c as u64)
}

/// `ln C(levels, levels/2 + r)`, usable past the range of `u64`.
pub fn ln_slice_size(levels: u32, r: i64) -> Result<f64> {
    check_slice_levels(levels, r)?;
    Ok(ln_choose(u64::from(levels), (i64::from(levels / 2) + r) as u64))
}

/// Log-probability that one insertion is an out-edge of a vertex with
/// `zeros` zero bits: `(1/2 + sigma)^zeros (1/2 - sigma)^(levels - zeros)`.
fn ln_out_probability_by_zeros(dp: &DerivedParams, zeros: f64) -> f64 {
    let ones = f64::from(dp.levels) - zeros;
    let up = zeros * (0.5 + dp.sigma).ln();
    let down = if ones == 0.0 { 0.0 } else { ones * (0.5 - dp.sigma).ln() };
    up + down
}

pub fn ln_slice_out_probability(dp: &DerivedParams, r: i64) -> Result<f64> {
    check_slice(dp, r)?;
    Ok(ln_out_probability_by_zeros(dp, (dp.half_levels() + r) as f64))
}

/// `p_r`: probability that a single insertion produces an out-edge at a
/// given vertex of slice `r`.
pub fn slice_out_probability(dp: &DerivedParams, r: i64) -> Result<f64> {
    Ok(exp_floor(ln_slice_out_probability(dp, r)?))
}

/// `q_r = 2 p_r`: probability that one insertion touches a given vertex of
/// slice `r` as source or target. The self-loop overlap, at most
/// `sigma^levels * p_r`, is not subtracted.
pub fn slice_incident_probability(dp: &DerivedParams, r: i64) -> Result<f64> {
    dp.matrix.require_symmetric()?;
    Ok(2.0 * slice_out_probability(dp, r)?)
}

/// Position of a degree relative to the slice lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeIndex {
    pub d: u64,
    /// `ln(d / lambda) / ln(tau)`
    pub theta: f64,
    /// Nearest integer to `theta`; halves round up.
    pub nearest: i64,
    /// `|theta - nearest|`, in `[0, 1/2]`.
    pub gamma: f64,
    /// `floor(theta)`
    pub floor: i64,
    /// `theta - floor`, in `[0, 1)`.
    pub frac: f64,
}

pub fn degree_index(dp: &DerivedParams, d: u64) -> Result<DegreeIndex> {
    if d == 0 {
        return Err(SkgError::ZeroDegree);
    }
    if dp.tau <= 1.0 {
        return Err(SkgError::TauIsOne);
    }
    let theta = ((d as f64).ln() - dp.lambda.ln()) / dp.tau.ln();
    let floor = theta.floor();
    let nearest = (theta + 0.5).floor();
    Ok(DegreeIndex {
        d,
        theta,
        nearest: nearest as i64,
        gamma: (theta - nearest).abs(),
        floor: floor as i64,
        frac: theta - floor,
    })
}

/// `Pr[deg(v) = d]` for `v` in slice `r`: the Binomial(m, p_r) pmf.
pub fn slice_degree_probability_exact(dp: &DerivedParams, r: i64, d: u64) -> Result<f64> {
    let ln_p = ln_slice_out_probability(dp, r)?;
    Ok(exp_floor(ln_binomial_pmf(dp.insertions, ln_p.exp(), d)))
}

/// Poisson-type approximation `lambda^d tau^(rd) / (d! exp(lambda tau^r))`,
/// valid while `p_r <= 1/sqrt(m)` and `d <= sqrt(n)`.
pub fn slice_degree_probability_approx(dp: &DerivedParams, r: i64, d: u64) -> Result<Flagged> {
    let ln_p = ln_slice_out_probability(dp, r)?;
    let in_regime = ln_p <= -0.5 * (dp.insertions as f64).ln() && (d as f64) <= (dp.n as f64).sqrt();
    let ln_rate = dp.lambda.ln() + r as f64 * dp.tau.ln();
    let df = d as f64;
    let ln_value = if d == 0 { -ln_rate.exp() } else { df * ln_rate - ln_factorial(d) - ln_rate.exp() };
    Ok(Flagged { value: exp_floor(ln_value), in_regime })
}

/// Degree window `[(e ln 2) levels, sqrt(n)]` in which the lemma and theorem
/// forms are stated.
pub fn degree_regime(dp: &DerivedParams) -> (f64, f64) {
    (E * LN_2 * f64::from(dp.levels), (dp.n as f64).sqrt())
}

fn in_degree_regime(dp: &DerivedParams, d: u64) -> bool {
    let (lo, hi) = degree_regime(dp);
    let d = d as f64;
    d >= lo && d <= hi
}

/// Expected number of vertices with out-degree exactly `d` in the
/// multigraph, summed slice by slice with exact binomial probabilities.
pub fn expected_degree_count_exact(dp: &DerivedParams, d: u64) -> Result<f64> {
    dp.require_even()?;
    if d > dp.insertions {
        return Ok(0.0);
    }
    let half = dp.half_levels();
    let m = dp.insertions;
    let ln_c = ln_choose(m, d);
    let rest = (m - d) as f64;
    let terms = (-half..=half).map(|r| {
        let zeros = (half + r) as f64;
        let ln_p = ln_out_probability_by_zeros(dp, zeros);
        let p = ln_p.exp();
        let tail = if rest == 0.0 { 0.0 } else { rest * (-p).ln_1p() };
        ln_choose(u64::from(dp.levels), (half + r) as u64) + ln_c + d as f64 * ln_p + tail
    });
    Ok(exp_floor(log_sum_exp(terms)))
}

/// `E[X_d]` for `d = 0..=max_degree`.
pub fn expected_degree_curve_exact(dp: &DerivedParams, max_degree: u64) -> Result<Vec<f64>> {
    (0..=max_degree).map(|d| expected_degree_count_exact(dp, d)).collect()
}

/// The two slice terms of the lemma form, `(floor term, ceiling term)`.
/// Each is `exp(-d x^2 ln^2(tau) / 2) C(levels, levels/2 + k) / sqrt(2 pi d)`
/// with `(k, x) = (r_d, delta_d)` and `(r_d + 1, 1 - delta_d)`.
pub fn expected_degree_count_lemma_terms(dp: &DerivedParams, d: u64) -> Result<(f64, f64)> {
    dp.require_even()?;
    let idx = degree_index(dp, d)?;
    let half = dp.half_levels();
    if idx.floor >= half {
        return Ok((0.0, 0.0));
    }
    let ln_tau2 = dp.tau.ln().powi(2);
    let df = d as f64;
    let norm = -0.5 * (2.0 * PI * df).ln();
    let term = |k: i64, x: f64| -> f64 {
        if k < -half || k > half {
            return 0.0;
        }
        let ln_c = ln_choose(u64::from(dp.levels), (half + k) as u64);
        exp_floor(ln_c - df * x * x * ln_tau2 / 2.0 + norm)
    };
    Ok((term(idx.floor, idx.frac), term(idx.floor + 1, 1.0 - idx.frac)))
}

/// Two-term approximation of `E[X_d]`. Zero once `r_d >= levels/2`.
pub fn expected_degree_count_lemma(dp: &DerivedParams, d: u64) -> Result<Flagged> {
    let (a, b) = expected_degree_count_lemma_terms(dp, d)?;
    Ok(Flagged { value: a + b, in_regime: in_degree_regime(dp, d) })
}

/// One-term envelope
/// `exp(-d gamma_d^2 ln^2(tau) / 2) C(levels, levels/2 + Gamma_d) / sqrt(d)`.
/// It bounds `E[X_d]` from above up to an additive exponentially small tail.
pub fn expected_degree_count_theorem(dp: &DerivedParams, d: u64) -> Result<Flagged> {
    dp.require_even()?;
    let idx = degree_index(dp, d)?;
    let half = dp.half_levels();
    let in_regime = in_degree_regime(dp, d);
    if idx.nearest >= half || idx.nearest < -half {
        return Ok(Flagged { value: 0.0, in_regime });
    }
    let df = d as f64;
    let ln_c = ln_choose(u64::from(dp.levels), (half + idx.nearest) as u64);
    let ln_value = ln_c - df * idx.gamma * idx.gamma * dp.tau.ln().powi(2) / 2.0 - 0.5 * df.ln();
    Ok(Flagged { value: exp_floor(ln_value), in_regime })
}

/// Iterates `(C(levels, zeros), r)` with `r = zeros - levels/2`. For odd
/// `levels` the slice offsets are half-integers.
fn zero_count_classes(levels: u32) -> impl Iterator<Item = (f64, f64)> {
    let l = u64::from(levels);
    (0..=l).map(move |zeros| (ln_choose(l, zeros), zeros as f64 - f64::from(levels) / 2.0))
}

/// Expected number of isolated vertices,
/// `sum_r C(levels, levels/2 + r) exp(-2 lambda tau^r)`.
///
/// Also defined for odd `levels`, where `r` runs over half-integers.
pub fn isolated_expectation(dp: &DerivedParams) -> Result<f64> {
    dp.matrix.require_symmetric()?;
    if dp.insertions == 0 {
        return Ok(dp.n as f64);
    }
    let ln_two_lambda = (2.0 * dp.lambda).ln();
    let ln_tau = dp.tau.ln();
    Ok(zero_count_classes(dp.levels)
        .map(|(ln_c, r)| {
            let ln_rate = ln_two_lambda + r * ln_tau;
            // exp(-rate) is below e^-700 once ln(rate) > ln(700).
            if ln_rate > 700f64.ln() {
                0.0
            } else {
                exp_floor(ln_c - ln_rate.exp())
            }
        })
        .sum())
}

/// Expected isolated count without the exponential approximation:
/// `sum_r C(levels, levels/2 + r) (1 - 2 p_r)^m`.
pub fn isolated_expectation_exact(dp: &DerivedParams) -> Result<f64> {
    dp.matrix.require_symmetric()?;
    if dp.insertions == 0 {
        return Ok(dp.n as f64);
    }
    let m = dp.insertions as f64;
    Ok(zero_count_classes(dp.levels)
        .map(|(ln_c, r)| {
            let zeros = r + f64::from(dp.levels) / 2.0;
            let q = 2.0 * ln_out_probability_by_zeros(dp, zeros).exp();
            if q >= 1.0 {
                0.0
            } else {
                exp_floor(ln_c + m * (-q).ln_1p())
            }
        })
        .sum())
}

/// Expected number of distinct `(source, target)` pairs after `insertions`
/// insertions. Cells of the `2^levels x 2^levels` probability matrix are
/// grouped by how many levels chose each quadrant, giving `O(levels^3)`
/// multinomial classes.
pub fn expected_distinct_edges(matrix: &GeneratorMatrix, levels: u32, insertions: u64) -> f64 {
    let l = u64::from(levels);
    let ln_t = matrix.entries().map(f64::ln);
    let m = insertions as f64;
    let mut total = 0.0;
    for a in 0..=l {
        for b in 0..=l - a {
            for c in 0..=l - a - b {
                let d = l - a - b - c;
                let ln_mult = ln_multinomial(&[a, b, c, d]);
                let ln_p = a as f64 * ln_t[0] + b as f64 * ln_t[1] + c as f64 * ln_t[2] + d as f64 * ln_t[3];
                let term = if ln_p < -690.0 {
                    // 1 - (1 - p)^m == m p to double precision here.
                    exp_floor(ln_mult + m.ln() + ln_p)
                } else {
                    ln_mult.exp() * hit_probability(ln_p.exp(), m)
                };
                total += term;
            }
        }
    }
    total
}

/// Fraction of insertions that land on an already-occupied cell.
pub fn repeat_fraction(matrix: &GeneratorMatrix, levels: u32, insertions: u64) -> f64 {
    1.0 - expected_distinct_edges(matrix, levels, insertions) / insertions as f64
}

/// Which approximation a degree curve value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DegreeMethod {
    Exact,
    Lemma,
    Theorem,
}

impl DegreeMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            DegreeMethod::Exact => "exact",
            DegreeMethod::Lemma => "lemma",
            DegreeMethod::Theorem => "theorem",
        }
    }

    pub fn evaluate(&self, dp: &DerivedParams, d: u64) -> Result<Flagged> {
        match self {
            DegreeMethod::Exact => Ok(Flagged { value: expected_degree_count_exact(dp, d)?, in_regime: true }),
            DegreeMethod::Lemma => expected_degree_count_lemma(dp, d),
            DegreeMethod::Theorem => expected_degree_count_theorem(dp, d),
        }
    }
}

impl std::str::FromStr for DegreeMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exact" => Ok(DegreeMethod::Exact),
            "lemma" => Ok(DegreeMethod::Lemma),
            "theorem" => Ok(DegreeMethod::Theorem),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeCurvePoint {
    pub d: u64,
    pub exact: f64,
    pub lemma: Flagged,
    pub theorem: Flagged,
}

/// Analytic summary of one parameter setting.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionReport {
    pub isolated_expectation: f64,
    pub isolated_fraction: f64,
    pub distinct_edge_expectation: f64,
    /// `1 - distinct / m`
    pub repeat_fraction: f64,
    /// Distinct edges over non-isolated vertices.
    pub nonisolated_avg_degree: f64,
    pub degree_curves: Vec<DegreeCurvePoint>,
}

impl PredictionReport {
    /// Isolated-vertex and repeat-edge figures; requires symmetric `T`.
    pub fn isolated(dp: &DerivedParams) -> Result<Self> {
        let isolated = isolated_expectation(dp)?;
        let distinct = expected_distinct_edges(&dp.matrix, dp.levels, dp.insertions);
        let n = dp.n as f64;
        Ok(PredictionReport {
            isolated_expectation: isolated,
            isolated_fraction: isolated / n,
            distinct_edge_expectation: distinct,
            repeat_fraction: 1.0 - distinct / dp.insertions as f64,
            nonisolated_avg_degree: distinct / (n - isolated),
            degree_curves: Vec::new(),
        })
    }

    /// Adds exact, lemma and theorem values for every `d` in `degrees`.
    /// Degrees where the index is undefined (`tau = 1`) get NaN for the two
    /// approximations.
    pub fn with_degree_curves(mut self, dp: &DerivedParams, degrees: impl IntoIterator<Item = u64>) -> Result<Self> {
        self.degree_curves = degree_curves(dp, degrees)?;
        Ok(self)
    }
}

pub fn degree_curves(dp: &DerivedParams, degrees: impl IntoIterator<Item = u64>) -> Result<Vec<DegreeCurvePoint>> {
    let nan = Flagged { value: f64::NAN, in_regime: false };
    degrees
        .into_iter()
        .map(|d| {
            let exact = expected_degree_count_exact(dp, d)?;
            let approx = |f: fn(&DerivedParams, u64) -> Result<Flagged>| match f(dp, d) {
                Ok(v) => Ok(v),
                Err(SkgError::TauIsOne) | Err(SkgError::ZeroDegree) => Ok(nan),
                Err(e) => Err(e),
            };
            Ok(DegreeCurvePoint {
                d,
                exact,
                lemma: approx(expected_degree_count_lemma)?,
                theorem: approx(expected_degree_count_theorem)?,
            })
        })
        .collect()
}
