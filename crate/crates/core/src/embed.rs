//! One draw of the stochastic embedding, and DAG covers built from several.

use crate::config::EmbedConfig;
use crate::dag::{build_dag_pair_with, Dag, DagPair};
use crate::graph::{Distances, WeightedDigraph};
use crate::laminar::{laminar_topological_order_with, LaminarOrder};
use crate::partition::PartitionError;
use crate::rng::SeedTree;

#[derive(Clone, Debug)]
pub struct Embedding {
    pub pair: DagPair,
    pub order: LaminarOrder,
}

pub fn sample_embedding(g: &WeightedDigraph, cfg: &EmbedConfig) -> Result<Embedding, PartitionError> {
    sample_embedding_with(&Distances::new(g), cfg)
}

/// As [`sample_embedding`], sharing a distance table across draws.
pub fn sample_embedding_with(dist: &Distances<'_>, cfg: &EmbedConfig) -> Result<Embedding, PartitionError> {
    let order = laminar_topological_order_with(dist, cfg, SeedTree::new(cfg.seed))?;
    let pair = build_dag_pair_with(dist, &order, cfg.mode);
    Ok(Embedding { pair, order })
}

/// Seed of draw `i` in a sequence of draws: draw 0 uses the configured
/// seed itself.
pub fn draw_seed(seed: u64, i: usize) -> u64 {
    if i == 0 {
        seed
    } else {
        SeedTree::new(seed).child(i as u64).key()
    }
}

pub fn draw_config(cfg: &EmbedConfig, i: usize) -> EmbedConfig {
    EmbedConfig {
        seed: draw_seed(cfg.seed, i),
        ..*cfg
    }
}

#[derive(Clone, Debug)]
pub struct DagCover {
    /// `D1, D2` of draw 0, then of draw 1, …
    pub dags: Vec<Dag>,
    pub k: usize,
}

/// Union of the DAG pairs of `k` independent draws.
pub fn build_dag_cover(g: &WeightedDigraph, k: usize, cfg: &EmbedConfig) -> Result<DagCover, PartitionError> {
    build_dag_cover_with(&Distances::new(g), k, cfg)
}

pub fn build_dag_cover_with(dist: &Distances<'_>, k: usize, cfg: &EmbedConfig) -> Result<DagCover, PartitionError> {
    assert!(k >= 1, "a cover needs at least one draw");
    let mut dags = Vec::with_capacity(2 * k);
    for i in 0..k {
        let e = sample_embedding_with(dist, &draw_config(cfg, i))?;
        dags.push(e.pair.d1);
        dags.push(e.pair.d2);
    }
    Ok(DagCover { dags, k })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_graph_gives_empty_dags() {
        let g = WeightedDigraph::empty(1);
        let e = sample_embedding(&g, &EmbedConfig::default()).unwrap();
        assert_eq!(e.pair.d1.graph.n(), 1);
        assert_eq!(e.pair.d1.graph.m(), 0);
        assert_eq!(e.pair.d2.graph.m(), 0);
    }

    #[test]
    fn draws_are_reproducible() {
        let g = WeightedDigraph::from_edges(9, (0..9).map(|i| (i, (i + 1) % 9, 1.0 + i as f64))).unwrap();
        let cfg = EmbedConfig::with_seed(42);
        let a = sample_embedding(&g, &cfg).unwrap();
        let b = sample_embedding(&g, &cfg).unwrap();
        assert_eq!(a.pair, b.pair);
        assert_eq!(a.order, b.order);
    }

    #[test]
    fn one_draw_cover_is_one_pair() {
        let g = WeightedDigraph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5, 1.0))).unwrap();
        let cfg = EmbedConfig::with_seed(3);
        let cover = build_dag_cover(&g, 1, &cfg).unwrap();
        let e = sample_embedding(&g, &cfg).unwrap();
        assert_eq!(cover.dags, vec![e.pair.d1, e.pair.d2]);
    }
}
