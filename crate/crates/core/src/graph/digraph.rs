use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("negative weight {0}")]
    NegativeWeight(f64),
    #[error("non-finite weight {0}")]
    NonFiniteWeight(f64),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
}

/// Immutable weighted digraph over vertices `0..n`.
///
/// Edges are stored sorted by `(src, dst)` with parallel edges merged to the
/// minimum weight, so the edge ids of two graphs built from the same edge
/// multiset agree.
#[derive(Clone, PartialEq)]
pub struct WeightedDigraph {
    n: usize,
    edges: Vec<Edge>,
    out_adj: Vec<Vec<EdgeId>>,
    in_adj: Vec<Vec<EdgeId>>,
}

impl WeightedDigraph {
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, f64)>,
    ) -> Result<Self, GraphError> {
        let mut merged: BTreeMap<(VertexId, VertexId), f64> = BTreeMap::new();
        for (src, dst, weight) in edges {
            validate_edge(n, src, dst, weight)?;
            merged
                .entry((src, dst))
                .and_modify(|w| *w = w.min(weight))
                .or_insert(weight);
        }
        let edges = merged
            .into_iter()
            .map(|((src, dst), weight)| Edge { src, dst, weight })
            .collect();
        Ok(Self::from_sorted_unique(n, edges))
    }

    fn from_sorted_unique(n: usize, edges: Vec<Edge>) -> Self {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            out_adj[e.src].push(id);
            in_adj[e.dst].push(id);
        }
        WeightedDigraph {
            n,
            edges,
            out_adj,
            in_adj,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    #[inline]
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_adj[v]
    }

    #[inline]
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_adj[v]
    }

    pub fn find_edge(&self, src: VertexId, dst: VertexId) -> Option<EdgeId> {
        self.out_adj[src]
            .iter()
            .copied()
            .find(|&e| self.edges[e].dst == dst)
    }

    pub fn max_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).fold(0.0, f64::max)
    }

    /// Smallest strictly positive edge weight, if any edge has one.
    pub fn min_positive_weight(&self) -> Option<f64> {
        self.edges
            .iter()
            .map(|e| e.weight)
            .filter(|&w| w > 0.0)
            .min_by(f64::total_cmp)
    }

    /// Same topology with every edge weight replaced.
    pub fn with_weights(&self, weights: &[f64]) -> Result<Self, GraphError> {
        assert_eq!(weights.len(), self.edges.len());
        let mut edges = self.edges.clone();
        for (e, &w) in edges.iter_mut().zip(weights) {
            validate_edge(self.n, e.src, e.dst, w)?;
            e.weight = w;
        }
        Ok(Self::from_sorted_unique(self.n, edges))
    }
}

fn validate_edge(n: usize, src: VertexId, dst: VertexId, weight: f64) -> Result<(), GraphError> {
    for vertex in [src, dst] {
        if vertex >= n {
            return Err(GraphError::VertexOutOfRange { vertex, n });
        }
    }
    if src == dst {
        return Err(GraphError::SelfLoop(src));
    }
    if !weight.is_finite() {
        return Err(GraphError::NonFiniteWeight(weight));
    }
    if weight < 0.0 {
        return Err(GraphError::NegativeWeight(weight));
    }
    Ok(())
}

impl fmt::Debug for WeightedDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedDigraph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}
