//! Seeded synthetic digraph families.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{VertexId, WeightedDigraph};
use crate::rng::SeedTree;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    /// Directed cycle `0 → 1 → … → n−1 → 0`.
    Cycle { n: usize },
    /// Every ordered pair independently with probability `p`.
    Er { n: usize, p: f64 },
    /// About `√n` layers; each vertex gets forward edges into the next
    /// layer, the last layer points back into the first, and a few random
    /// back edges go to earlier layers.
    Layered { n: usize },
    /// `rows × cols` torus with right and down edges.
    Torus { rows: usize, cols: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "weights", rename_all = "snake_case")]
pub enum WeightDist {
    Unit,
    /// Uniform real in `[1, max]`.
    Uniform { max: f64 },
    /// `max^U` with `U` uniform in `[0, 1]`: log-uniform over `[1, max]`.
    ExpSpread { max: f64 },
}

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("need at least one vertex")]
    Empty,
    #[error("edge probability must be in (0, 1], got {0}")]
    Probability(f64),
    #[error("maximum weight must be finite and at least 1, got {0}")]
    MaxWeight(f64),
}

fn structure<R: Rng>(family: &Family, rng: &mut R) -> Result<(usize, Vec<(VertexId, VertexId)>), GenError> {
    Ok(match *family {
        Family::Cycle { n } => {
            if n == 0 {
                return Err(GenError::Empty);
            }
            let edges = if n == 1 { Vec::new() } else { (0..n).map(|i| (i, (i + 1) % n)).collect() };
            (n, edges)
        }
        Family::Er { n, p } => {
            if n == 0 {
                return Err(GenError::Empty);
            }
            if !(p > 0.0 && p <= 1.0) {
                return Err(GenError::Probability(p));
            }
            let mut edges = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            (n, edges)
        }
        Family::Layered { n } => {
            if n == 0 {
                return Err(GenError::Empty);
            }
            let k = ((n as f64).sqrt().round() as usize).clamp(1, n);
            let layers: Vec<Vec<VertexId>> = (0..k).map(|i| (i * n / k..(i + 1) * n / k).collect()).collect();
            let mut edges = Vec::new();
            for i in 0..k {
                let next = &layers[(i + 1) % k];
                if k == 1 {
                    break;
                }
                // Every vertex of the next layer gets an in-edge.
                for &v in next {
                    edges.push((*layers[i].choose(rng).unwrap(), v));
                }
                for &u in &layers[i] {
                    let targets: Vec<VertexId> = next.choose_multiple(rng, 2.min(next.len())).copied().collect();
                    edges.extend(targets.into_iter().map(|v| (u, v)));
                    if i >= 2 && rng.gen_bool(0.05) {
                        let back = &layers[rng.gen_range(0..i - 1)];
                        edges.push((u, *back.choose(rng).unwrap()));
                    }
                }
            }
            (n, edges)
        }
        Family::Torus { rows, cols } => {
            if rows == 0 || cols == 0 {
                return Err(GenError::Empty);
            }
            let id = |r: usize, c: usize| r * cols + c;
            let mut edges = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if cols > 1 {
                        edges.push((id(r, c), id(r, (c + 1) % cols)));
                    }
                    if rows > 1 {
                        edges.push((id(r, c), id((r + 1) % rows, c)));
                    }
                }
            }
            (rows * cols, edges)
        }
    })
}

/// A graph from `family` with weights from `weights`, deterministic in `seed`.
pub fn generate(family: &Family, weights: &WeightDist, seed: u64) -> Result<WeightedDigraph, GenError> {
    let mut rng = SeedTree::new(seed).rng();
    let (n, mut edges) = structure(family, &mut rng)?;
    edges.sort_unstable();
    edges.dedup();
    let weighted: Vec<(VertexId, VertexId, f64)> = match *weights {
        WeightDist::Unit => edges.into_iter().map(|(u, v)| (u, v, 1.0)).collect(),
        WeightDist::Uniform { max } | WeightDist::ExpSpread { max } => {
            if !(max >= 1.0 && max.is_finite()) {
                return Err(GenError::MaxWeight(max));
            }
            let spread = matches!(weights, WeightDist::ExpSpread { .. });
            edges
                .into_iter()
                .map(|(u, v)| {
                    let w = if spread { max.powf(rng.gen::<f64>()) } else { rng.gen_range(1.0..=max) };
                    (u, v, w)
                })
                .collect()
        }
    };
    Ok(WeightedDigraph::from_edges(n, weighted).expect("generated edges are valid"))
}
