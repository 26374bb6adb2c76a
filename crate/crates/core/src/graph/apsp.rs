use std::sync::OnceLock;

use super::digraph::{VertexId, WeightedDigraph};
use super::paths::sssp;
use super::view::ActiveView;

/// Lazily filled all-pairs distance table of a graph; each row is one
/// Dijkstra run on first use. Shareable across threads and across samples
/// drawn for the same graph.
pub struct Distances<'g> {
    graph: &'g WeightedDigraph,
    rows: Vec<OnceLock<Vec<f64>>>,
}

impl<'g> Distances<'g> {
    pub fn new(graph: &'g WeightedDigraph) -> Self {
        Distances {
            graph,
            rows: (0..graph.n()).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn graph(&self) -> &'g WeightedDigraph {
        self.graph
    }

    pub fn row(&self, u: VertexId) -> &[f64] {
        self.rows[u].get_or_init(|| sssp(&ActiveView::full(self.graph), u))
    }

    #[inline]
    pub fn get(&self, u: VertexId, v: VertexId) -> f64 {
        self.row(u)[v]
    }

    #[inline]
    pub fn reaches(&self, u: VertexId, v: VertexId) -> bool {
        self.get(u, v).is_finite()
    }

    /// Same value as [`weak_diameter`](super::weak_diameter), from the table.
    pub fn weak_diameter(&self, cluster: &[VertexId]) -> f64 {
        let mut diam: f64 = 0.0;
        for &u in cluster {
            let row = self.row(u);
            for &v in cluster {
                diam = diam.max(row[v]);
            }
        }
        diam
    }
}

impl std::fmt::Debug for Distances<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let filled = self.rows.iter().filter(|r| r.get().is_some()).count();
        write!(f, "Distances {{ n: {}, rows filled: {filled} }}", self.rows.len())
    }
}
