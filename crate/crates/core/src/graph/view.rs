use super::digraph::{EdgeId, VertexId, WeightedDigraph};

/// Overlay on a [`WeightedDigraph`] selecting an active vertex subset.
///
/// An edge is visible iff both endpoints are active and the edge has not
/// been removed. The view may also carry a replacement weight per edge; the
/// base graph is never mutated.
#[derive(Clone, Debug)]
pub struct ActiveView<'g> {
    graph: &'g WeightedDigraph,
    active: Vec<bool>,
    active_count: usize,
    removed: Option<Vec<bool>>,
    weights: Option<Vec<f64>>,
}

impl<'g> ActiveView<'g> {
    pub fn full(graph: &'g WeightedDigraph) -> Self {
        ActiveView {
            graph,
            active: vec![true; graph.n()],
            active_count: graph.n(),
            removed: None,
            weights: None,
        }
    }

    pub fn induced(graph: &'g WeightedDigraph, vertices: &[VertexId]) -> Self {
        let mut active = vec![false; graph.n()];
        for &v in vertices {
            active[v] = true;
        }
        let active_count = active.iter().filter(|&&a| a).count();
        ActiveView {
            graph,
            active,
            active_count,
            removed: None,
            weights: None,
        }
    }

    /// Hide the given edges in addition to the inactive-endpoint rule.
    pub fn without_edges(mut self, edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let removed = self
            .removed
            .get_or_insert_with(|| vec![false; self.graph.m()]);
        for e in edges {
            removed[e] = true;
        }
        self
    }

    /// Replace the weight used for every edge (indexed by edge id).
    pub fn with_weights(mut self, weights: Vec<f64>) -> Self {
        assert_eq!(weights.len(), self.graph.m());
        self.weights = Some(weights);
        self
    }

    #[inline]
    pub fn graph(&self) -> &'g WeightedDigraph {
        self.graph
    }

    #[inline]
    pub fn is_active(&self, v: VertexId) -> bool {
        self.active[v]
    }

    pub fn active_count(&self) -> usize {
        self.active_count
    }

    pub fn deactivate(&mut self, v: VertexId) {
        if std::mem::replace(&mut self.active[v], false) {
            self.active_count -= 1;
        }
    }

    /// Active vertices in ascending id order.
    pub fn active_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.active
            .iter()
            .enumerate()
            .filter_map(|(v, &a)| a.then_some(v))
    }

    #[inline]
    pub fn weight(&self, e: EdgeId) -> f64 {
        match &self.weights {
            Some(w) => w[e],
            None => self.graph.edge(e).weight,
        }
    }

    #[inline]
    pub fn is_edge_visible(&self, e: EdgeId) -> bool {
        let edge = self.graph.edge(e);
        self.active[edge.src]
            && self.active[edge.dst]
            && !self.removed.as_ref().is_some_and(|r| r[e])
    }

    /// Visible out-edges of `v` as `(edge id, head, weight)`.
    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = (EdgeId, VertexId, f64)> + '_ {
        let live = self.active[v];
        self.graph
            .out_edges(v)
            .iter()
            .filter(move |&&e| live && self.is_edge_visible(e))
            .map(move |&e| (e, self.graph.edge(e).dst, self.weight(e)))
    }

    /// Visible in-edges of `v` as `(edge id, tail, weight)`.
    pub fn in_edges(&self, v: VertexId) -> impl Iterator<Item = (EdgeId, VertexId, f64)> + '_ {
        let live = self.active[v];
        self.graph
            .in_edges(v)
            .iter()
            .filter(move |&&e| live && self.is_edge_visible(e))
            .map(move |&e| (e, self.graph.edge(e).src, self.weight(e)))
    }

    pub fn visible_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.graph.m()).filter(|&e| self.is_edge_visible(e))
    }

    pub fn visible_edge_count(&self) -> usize {
        self.visible_edges().count()
    }
}
