use rayon::prelude::*;

use skg_core::SkgParams;

/// `(source, target)`, both below `2^levels`.
pub type Edge = (u64, u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeForm {
    /// Raw insertion output, in insertion order.
    Multigraph,
    /// Sorted, no repeated `(source, target)` pairs. Self-loops kept.
    Simple,
    /// Each undirected edge once as `(min, max)`, sorted, no self-loops.
    Undirected,
}

impl EdgeForm {
    pub fn as_str(&self) -> &'static str {
        match self {
            EdgeForm::Multigraph => "multigraph",
            EdgeForm::Simple => "simple",
            EdgeForm::Undirected => "undirected",
        }
    }
}

impl std::str::FromStr for EdgeForm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "multigraph" => Ok(EdgeForm::Multigraph),
            "simple" => Ok(EdgeForm::Simple),
            "undirected" => Ok(EdgeForm::Undirected),
            other => Err(format!("unknown edge form {other:?}")),
        }
    }
}

/// How a list was generated; enough to regenerate it bit for bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphMeta {
    pub params: SkgParams,
    pub chunk_size: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeList {
    pub edges: Vec<Edge>,
    pub nodes: u64,
    pub form: EdgeForm,
    pub meta: Option<GraphMeta>,
}

impl EdgeList {
    pub fn from_edges(edges: Vec<Edge>, nodes: u64, form: EdgeForm) -> Self {
        EdgeList { edges, nodes, form, meta: None }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    fn canonical(mut edges: Vec<Edge>, nodes: u64, form: EdgeForm, meta: Option<GraphMeta>) -> Self {
        edges.par_sort_unstable();
        edges.dedup();
        EdgeList { edges, nodes, form, meta }
    }
}

/// Collapses repeated `(u, v)` pairs; output sorted by `(source, target)`.
pub fn deduplicate(list: EdgeList) -> EdgeList {
    let EdgeList { edges, nodes, meta, .. } = list;
    EdgeList::canonical(edges, nodes, EdgeForm::Simple, meta)
}

/// Forgets edge direction: `(u, v)` and `(v, u)` become one edge
/// `(min, max)`. Self-loops are dropped.
pub fn undirect(list: &EdgeList) -> EdgeList {
    let edges = list.edges.par_iter().filter(|(u, v)| u != v).map(|&(u, v)| (u.min(v), u.max(v))).collect();
    EdgeList::canonical(edges, list.nodes, EdgeForm::Undirected, list.meta)
}

/// Keeps the strict upper triangle of the adjacency matrix and mirrors it;
/// pairs below the diagonal are discarded. The mirrored copy is implicit in
/// the undirected `(min, max)` representation.
pub fn symmetrize_upper(list: &EdgeList) -> EdgeList {
    let edges = list.edges.par_iter().filter(|(u, v)| u < v).copied().collect();
    EdgeList::canonical(edges, list.nodes, EdgeForm::Undirected, list.meta)
}
