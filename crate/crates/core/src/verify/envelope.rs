use crate::graph::WeightedDigraph;

/// Initial scale `n·W` in units of the smallest positive weight (at least 1).
pub fn normalized_scale(g: &WeightedDigraph) -> f64 {
    match g.min_positive_weight() {
        Some(w0) => (g.n() as f64 * g.max_weight() / w0).max(1.0),
        None => 1.0,
    }
}

/// Bound on the number of clusters containing one vertex:
/// `2·(log₂(m+1) + log₂ Δ_init + 2)`.
pub fn depth_envelope(g: &WeightedDigraph) -> f64 {
    2.0 * (((g.m() + 1) as f64).log2() + normalized_scale(g).log2() + 2.0)
}

/// Bound on `|E(D1)|` and `|E(D2)|`:
/// `8·(n·log₂(n+1) + (m+1)·depth_envelope²)`.
pub fn sparsity_envelope(g: &WeightedDigraph) -> f64 {
    let n = g.n() as f64;
    let d = depth_envelope(g);
    8.0 * (n * (n + 1.0).log2() + (g.m() + 1) as f64 * d * d)
}
