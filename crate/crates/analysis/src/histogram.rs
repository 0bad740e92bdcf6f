use std::collections::BTreeMap;

use crate::{check_range, Edge, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Out,
    In,
    /// Both endpoints count; a self-loop adds 2 to its vertex.
    Undirected,
}

impl Orientation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Orientation::Out => "out",
            Orientation::In => "in",
            Orientation::Undirected => "undirected",
        }
    }
}

impl std::str::FromStr for Orientation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "out" => Ok(Orientation::Out),
            "in" => Ok(Orientation::In),
            "undirected" => Ok(Orientation::Undirected),
            other => Err(format!("unknown orientation {other:?}")),
        }
    }
}

/// Number of vertices at each degree, degree 0 included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeHistogram {
    pub orientation: Orientation,
    pub counts: BTreeMap<u64, u64>,
    /// Total vertices represented; equals the sum of `counts`.
    pub n: u64,
}

impl DegreeHistogram {
    pub fn empty(orientation: Orientation) -> Self {
        DegreeHistogram { orientation, counts: BTreeMap::new(), n: 0 }
    }

    pub fn count(&self, d: u64) -> u64 {
        self.counts.get(&d).copied().unwrap_or(0)
    }

    /// `sum_d d * count(d)`
    pub fn endpoint_total(&self) -> u64 {
        self.counts.iter().map(|(d, c)| d * c).sum()
    }

    pub fn max_degree(&self) -> u64 {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    /// Pools another histogram into this one, as if the two graphs were a
    /// single disjoint union.
    pub fn accumulate(&mut self, other: &DegreeHistogram) {
        assert_eq!(self.orientation, other.orientation, "orientations differ");
        for (&d, &c) in &other.counts {
            *self.counts.entry(d).or_insert(0) += c;
        }
        self.n += other.n;
    }

    /// Per-degree counts divided by `instances`.
    pub fn mean_counts(&self, instances: usize) -> BTreeMap<u64, f64> {
        self.counts.iter().map(|(&d, &c)| (d, c as f64 / instances as f64)).collect()
    }
}

/// Degree of every vertex in `[0, nodes)`.
pub fn degrees(edges: &[Edge], nodes: u64, orientation: Orientation) -> Result<Vec<u64>> {
    check_range(edges, nodes)?;
    let mut deg = vec![0u64; nodes as usize];
    for &(u, v) in edges {
        match orientation {
            Orientation::Out => deg[u as usize] += 1,
            Orientation::In => deg[v as usize] += 1,
            Orientation::Undirected => {
                deg[u as usize] += 1;
                deg[v as usize] += 1;
            }
        }
    }
    Ok(deg)
}

pub fn degree_histogram(edges: &[Edge], nodes: u64, orientation: Orientation) -> Result<DegreeHistogram> {
    let mut counts = BTreeMap::new();
    for d in degrees(edges, nodes, orientation)? {
        *counts.entry(d).or_insert(0) += 1;
    }
    Ok(DegreeHistogram { orientation, counts, n: nodes })
}

/// Vertices that are neither the source nor the target of any edge.
pub fn isolated_count(edges: &[Edge], nodes: u64) -> Result<u64> {
    check_range(edges, nodes)?;
    let mut touched = vec![false; nodes as usize];
    for &(u, v) in edges {
        touched[u as usize] = true;
        touched[v as usize] = true;
    }
    Ok(touched.iter().filter(|&&t| !t).count() as u64)
}

/// Number of deep dips in the window `[2 levels, sqrt(2^levels)]`.
///
/// Only degrees with a nonzero count are kept, in increasing order. Entry `i`
/// is a deep dip when both neighbours are at least twice its count.
pub fn oscillation_score(h: &DegreeHistogram, levels: u32) -> usize {
    let lo = 2 * u64::from(levels);
    let hi = 2f64.powf(f64::from(levels) / 2.0).floor() as u64;
    let window: Vec<u64> = h.counts.range(lo..=hi).filter(|(_, &c)| c > 0).map(|(_, &c)| c).collect();
    window.windows(3).filter(|w| w[0] >= 2 * w[1] && w[2] >= 2 * w[1]).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::AnalysisError;

    fn hist(pairs: &[(u64, u64)]) -> DegreeHistogram {
        DegreeHistogram {
            orientation: Orientation::Out,
            counts: pairs.iter().copied().collect(),
            n: pairs.iter().map(|p| p.1).sum(),
        }
    }

    #[test]
    fn empty_graph() {
        let h = degree_histogram(&[], 8, Orientation::Out).unwrap();
        assert_eq!(h.counts, BTreeMap::from([(0, 8)]));
        assert_eq!(isolated_count(&[], 16).unwrap(), 16);
    }

    #[test]
    fn hand_counted_out_degrees() {
        let e = [(0, 1), (0, 2), (1, 2)];
        let h = degree_histogram(&e, 4, Orientation::Out).unwrap();
        assert_eq!(h.counts, BTreeMap::from([(2, 1), (1, 1), (0, 2)]));
        let h = degree_histogram(&e, 4, Orientation::In).unwrap();
        assert_eq!(h.counts, BTreeMap::from([(0, 2), (1, 1), (2, 1)]));
        let h = degree_histogram(&e, 4, Orientation::Undirected).unwrap();
        assert_eq!(h.endpoint_total(), 6);
    }

    #[test]
    fn self_loop_is_incident() {
        assert_eq!(isolated_count(&[(3, 3)], 4).unwrap(), 3);
    }

    #[test]
    fn out_of_range_vertices() {
        assert_eq!(
            degree_histogram(&[(0, 9)], 8, Orientation::Out),
            Err(AnalysisError::VertexOutOfRange { vertex: 9, nodes: 8 })
        );
        assert!(isolated_count(&[(8, 0)], 8).is_err());
    }

    #[test]
    fn accumulate_pools_instances() {
        let mut a = degree_histogram(&[(0, 1)], 2, Orientation::Out).unwrap();
        let b = degree_histogram(&[(0, 1), (1, 0)], 2, Orientation::Out).unwrap();
        a.accumulate(&b);
        assert_eq!(a.n, 4);
        assert_eq!(a.counts, BTreeMap::from([(0, 1), (1, 3)]));
        assert_eq!(a.mean_counts(2)[&1], 1.5);
    }

    #[test]
    fn oscillation_examples() {
        // levels 8: window [16, 16]; levels 10: [20, 32].
        let decreasing = hist(&[(20, 100), (21, 80), (22, 50), (25, 10), (30, 1)]);
        assert_eq!(oscillation_score(&decreasing, 10), 0);
        let dip = hist(&[(20, 100), (21, 10), (22, 100)]);
        assert_eq!(oscillation_score(&dip, 10), 1);
        // Zero counts are skipped, so 100, 0, 100 has no dip.
        let gap = hist(&[(20, 100), (21, 0), (22, 100)]);
        assert_eq!(oscillation_score(&gap, 10), 0);
        // Degrees outside the window are ignored.
        let outside = hist(&[(10, 100), (11, 1), (12, 100), (40, 100), (41, 1), (42, 100)]);
        assert_eq!(oscillation_score(&outside, 10), 0);
        // Factor exactly 2 counts.
        let edge = hist(&[(20, 20), (21, 10), (22, 20), (23, 5), (24, 40)]);
        assert_eq!(oscillation_score(&edge, 10), 2);
    }
}
