//! Multi-instance experiments shared by `compare` and the acceptance suite.

use clap::ValueEnum;
use skg_analysis::{core_decomposition, degree_histogram, isolated_count, CoreKind, DegreeHistogram, Orientation};
use skg_core::{degree_regime, DegreeMethod, DerivedParams, SkgError, SkgParams};
use skg_gen::{deduplicate, generate, symmetrize_upper, undirect, ChunkPlan, EdgeList};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Symmetrize {
    /// Keep an undirected edge wherever either direction was generated.
    Undirect,
    /// Keep only pairs above the diagonal and mirror them.
    Upper,
}

impl Symmetrize {
    pub fn apply(&self, list: &EdgeList) -> EdgeList {
        match self {
            Symmetrize::Undirect => undirect(list),
            Symmetrize::Upper => symmetrize_upper(list),
        }
    }
}

/// Measurements of one generated graph; the edges themselves are dropped.
#[derive(Debug, Clone)]
pub struct InstanceStats {
    pub seed: u64,
    pub isolated: u64,
    pub distinct: u64,
    pub multigraph: DegreeHistogram,
    pub simple: DegreeHistogram,
}

pub fn instance_stats(params: &SkgParams, plan: &ChunkPlan) -> Result<InstanceStats> {
    let g = generate(params, plan)?;
    let n = g.nodes;
    let multigraph = degree_histogram(&g.edges, n, Orientation::Out)?;
    let isolated = isolated_count(&g.edges, n)?;
    let g = deduplicate(g);
    let simple = degree_histogram(&g.edges, n, Orientation::Out)?;
    Ok(InstanceStats { seed: params.seed, isolated, distinct: g.len() as u64, multigraph, simple })
}

#[derive(Debug, Clone)]
pub struct Ensemble {
    pub instances: Vec<InstanceStats>,
}

impl Ensemble {
    /// Instance `i` is generated with seed `base.seed + i`.
    pub fn run(base: &SkgParams, count: usize, plan: &ChunkPlan) -> Result<Self> {
        let instances = (0..count as u64)
            .map(|i| instance_stats(&SkgParams { seed: base.seed.wrapping_add(i), ..*base }, plan))
            .collect::<Result<_>>()?;
        Ok(Ensemble { instances })
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn mean_isolated(&self) -> f64 {
        self.instances.iter().map(|s| s.isolated as f64).sum::<f64>() / self.len() as f64
    }

    pub fn mean_distinct(&self) -> f64 {
        self.instances.iter().map(|s| s.distinct as f64).sum::<f64>() / self.len() as f64
    }

    /// Out-degree counts summed over all instances.
    pub fn pooled(&self, simple: bool) -> DegreeHistogram {
        let mut h = DegreeHistogram::empty(Orientation::Out);
        for s in &self.instances {
            h.accumulate(if simple { &s.simple } else { &s.multigraph });
        }
        h
    }
}

/// Largest core number of the undirected version of one generated graph.
pub fn max_core(params: &SkgParams, plan: &ChunkPlan, how: Symmetrize) -> Result<u32> {
    let g = generate(params, plan)?;
    let u = how.apply(&g);
    Ok(core_decomposition(&u.edges, u.nodes, CoreKind::Undirected)?.max_core)
}

pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx).powi(2);
        syy += (y - my).powi(2);
    }
    sxy / (sxx * syy).sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub d: u64,
    pub empirical_mean: f64,
    /// Indexed like the `methods` argument of [`compare_degrees`].
    pub predicted: Vec<f64>,
}

/// Predicted counts for every degree in `dmin..=dmax` beside the mean
/// empirical count. Undefined predictions (`tau = 1`) are NaN.
pub fn compare_degrees(
    dp: &DerivedParams,
    pooled: &DegreeHistogram,
    instances: usize,
    methods: &[DegreeMethod],
    dmin: u64,
    dmax: u64,
) -> Result<Vec<ComparisonRow>> {
    let mut rows = Vec::new();
    for d in dmin..=dmax {
        let predicted = methods
            .iter()
            .map(|m| match m.evaluate(dp, d) {
                Ok(f) => Ok(f.value),
                Err(SkgError::TauIsOne) | Err(SkgError::ZeroDegree) => Ok(f64::NAN),
                Err(e) => Err(e),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        rows.push(ComparisonRow { d, empirical_mean: pooled.count(d) as f64 / instances as f64, predicted });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorSummary {
    pub method: DegreeMethod,
    pub points: usize,
    pub max_rel_error: f64,
    pub mean_rel_error: f64,
    /// Degree with the largest error, if any point qualified.
    pub worst_degree: Option<u64>,
}

/// Relative error `|predicted / empirical - 1|` over degrees inside the
/// theory regime whose empirical mean is at least `min_count`.
pub fn summarize(
    dp: &DerivedParams,
    rows: &[ComparisonRow],
    methods: &[DegreeMethod],
    min_count: f64,
) -> Vec<ErrorSummary> {
    let (lo, hi) = degree_regime(dp);
    methods
        .iter()
        .enumerate()
        .map(|(i, &method)| {
            let errs: Vec<(u64, f64)> = rows
                .iter()
                .filter(|r| (r.d as f64) >= lo && (r.d as f64) <= hi && r.empirical_mean >= min_count)
                .filter(|r| r.predicted[i].is_finite())
                .map(|r| (r.d, (r.predicted[i] / r.empirical_mean - 1.0).abs()))
                .collect();
            let worst = errs.iter().copied().max_by(|a, b| a.1.total_cmp(&b.1));
            ErrorSummary {
                method,
                points: errs.len(),
                max_rel_error: worst.map_or(f64::NAN, |w| w.1),
                mean_rel_error: if errs.is_empty() {
                    f64::NAN
                } else {
                    errs.iter().map(|e| e.1).sum::<f64>() / errs.len() as f64
                },
                worst_degree: worst.map(|w| w.0),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pearson_of_lines() {
        let x = [1.0, 2.0, 3.0, 4.0];
        assert!((pearson(&x, &[3.0, 5.0, 7.0, 9.0]) - 1.0).abs() < 1e-12);
        assert!((pearson(&x, &[4.0, 3.0, 2.0, 1.0]) + 1.0).abs() < 1e-12);
    }
}
