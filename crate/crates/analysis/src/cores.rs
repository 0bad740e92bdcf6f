//! k-core and k-out-core decomposition by bucket peeling.

use crate::{check_range, AnalysisError, Edge, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoreKind {
    /// Input is an undirected simple graph, each edge listed once.
    Undirected,
    /// Directed input; a vertex stays while it keeps `k` out-edges inside
    /// the subgraph.
    OutCore,
}

impl CoreKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CoreKind::Undirected => "undirected",
            CoreKind::OutCore => "out",
        }
    }
}

impl std::str::FromStr for CoreKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "undirected" => Ok(CoreKind::Undirected),
            "out" => Ok(CoreKind::OutCore),
            other => Err(format!("unknown core kind {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreProfile {
    pub kind: CoreKind,
    pub core_numbers: Vec<u32>,
    /// `sizes[k]` = vertices with core number at least `k`, for
    /// `k = 0..=max_core`.
    pub sizes: Vec<u64>,
    pub max_core: u32,
}

impl CoreProfile {
    /// Size of the maximal k-core; 0 past `max_core`.
    pub fn size(&self, k: u32) -> u64 {
        self.sizes.get(k as usize).copied().unwrap_or(0)
    }
}

/// Compressed lists of the vertices whose degree drops when a vertex is
/// removed.
struct Dependents {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Dependents {
    fn build(nodes: usize, pairs: impl Iterator<Item = (u32, u32)> + Clone) -> Self {
        let mut offsets = vec![0usize; nodes + 1];
        for (owner, _) in pairs.clone() {
            offsets[owner as usize + 1] += 1;
        }
        for i in 0..nodes {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0u32; offsets[nodes]];
        for (owner, t) in pairs {
            targets[fill[owner as usize]] = t;
            fill[owner as usize] += 1;
        }
        Dependents { offsets, targets }
    }

    fn of(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }
}

/// Repeatedly removes a vertex of minimum current degree, in O(n + m).
/// Vertices of equal degree leave in increasing id order at the start.
fn peel(mut deg: Vec<u32>, deps: &Dependents) -> Vec<u32> {
    let n = deg.len();
    let max_deg = deg.iter().copied().max().unwrap_or(0) as usize;
    let mut bin_start = vec![0usize; max_deg + 2];
    for &d in &deg {
        bin_start[d as usize + 1] += 1;
    }
    for d in 0..=max_deg {
        bin_start[d + 1] += bin_start[d];
    }
    let mut vert = vec![0u32; n];
    let mut pos = vec![0usize; n];
    let mut next = bin_start.clone();
    for v in 0..n {
        let d = deg[v] as usize;
        pos[v] = next[d];
        vert[next[d]] = v as u32;
        next[d] += 1;
    }
    for i in 0..n {
        let v = vert[i] as usize;
        let dv = deg[v];
        for &u in deps.of(v) {
            let u = u as usize;
            let du = deg[u];
            if du > dv {
                // Move u to the front of its bin, then shrink the bin.
                let front = bin_start[du as usize];
                let w = vert[front] as usize;
                if w != u {
                    vert.swap(front, pos[u]);
                    pos[w] = pos[u];
                    pos[u] = front;
                }
                bin_start[du as usize] += 1;
                deg[u] = du - 1;
            }
        }
    }
    deg
}

pub fn core_decomposition(edges: &[Edge], nodes: u64, kind: CoreKind) -> Result<CoreProfile> {
    check_range(edges, nodes)?;
    let n = nodes as usize;
    let mut deg = vec![0u32; n];
    let core_numbers = match kind {
        CoreKind::Undirected => {
            if let Some(&(v, _)) = edges.iter().find(|(u, v)| u == v) {
                return Err(AnalysisError::SelfLoopPresent(v));
            }
            for &(u, v) in edges {
                deg[u as usize] += 1;
                deg[v as usize] += 1;
            }
            let pairs = edges.iter().flat_map(|&(u, v)| [(u as u32, v as u32), (v as u32, u as u32)]);
            peel(deg, &Dependents::build(n, pairs))
        }
        CoreKind::OutCore => {
            for &(u, _) in edges {
                deg[u as usize] += 1;
            }
            // Removing v takes away one out-edge from each of its in-neighbours.
            let pairs = edges.iter().map(|&(u, v)| (v as u32, u as u32));
            peel(deg, &Dependents::build(n, pairs))
        }
    };
    let max_core = core_numbers.iter().copied().max().unwrap_or(0);
    let mut sizes = vec![0u64; max_core as usize + 2];
    for &c in &core_numbers {
        sizes[c as usize] += 1;
    }
    for k in (0..=max_core as usize).rev() {
        sizes[k] += sizes[k + 1];
    }
    sizes.truncate(max_core as usize + 1);
    Ok(CoreProfile { kind, core_numbers, sizes, max_core })
}
