use serde::{Deserialize, Serialize};

use crate::config::Mode;
use crate::dag::{DagPair, PreparedDag};
use crate::graph::{Distances, VertexId, WeightedDigraph};
use crate::laminar::{leq_tol, LaminarOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DagId {
    D1,
    D2,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructuralViolation {
    VertexCount { dag: DagId, n: usize, expected: usize },
    Cycle { dag: DagId, vertex: VertexId },
    /// D1 edges must go up in rank, D2 edges down.
    RankOrder { dag: DagId, src: VertexId, dst: VertexId },
    /// A DAG edge `(u, v)` with `v` unreachable from `u` in `G`.
    EdgeNotReachable { dag: DagId, src: VertexId, dst: VertexId },
    Domination { dag: DagId, s: VertexId, t: VertexId, d_g: f64, d_dag: f64, path: Vec<VertexId> },
    /// `t` reachable from `s` in a DAG but not in `G`.
    Spurious { dag: DagId, s: VertexId, t: VertexId, path: Vec<VertexId> },
    BothReach { s: VertexId, t: VertexId },
    NeitherReach { s: VertexId, t: VertexId },
    TwoDelta { s: VertexId, t: VertexId, embedded: f64, delta_st: f64 },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StructuralReport {
    pub violations: Vec<StructuralViolation>,
    pub pairs_checked: usize,
}

impl StructuralReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_structural(g: &WeightedDigraph, pair: &DagPair, lo: &LaminarOrder) -> StructuralReport {
    check_structural_with(&Distances::new(g), &pair.d1.graph, &pair.d2.graph, lo, pair.mode)
}

/// Acyclicity, rank direction, domination, exclusive reachability and
/// `min(d_D1, d_D2) ≤ 2Δ_st` over all ordered pairs. `Δ_st` is the stored
/// cluster diam in fast mode and the recomputed weak diameter in exact mode.
pub fn check_structural_with(
    dist: &Distances<'_>,
    d1: &WeightedDigraph,
    d2: &WeightedDigraph,
    lo: &LaminarOrder,
    mode: Mode,
) -> StructuralReport {
    let g = dist.graph();
    let n = g.n();
    let mut out = Vec::new();
    let dags = [(DagId::D1, d1), (DagId::D2, d2)];
    for (id, d) in dags {
        if d.n() != n {
            out.push(StructuralViolation::VertexCount { dag: id, n: d.n(), expected: n });
        }
    }
    if !out.is_empty() || lo.order.len() != n {
        return StructuralReport { violations: out, pairs_checked: 0 };
    }
    let mut prepared = Vec::new();
    for (id, d) in dags {
        for e in d.edges() {
            let forward = lo.rank[e.src] < lo.rank[e.dst];
            if forward != (id == DagId::D1) {
                out.push(StructuralViolation::RankOrder { dag: id, src: e.src, dst: e.dst });
            }
            if !dist.reaches(e.src, e.dst) {
                out.push(StructuralViolation::EdgeNotReachable { dag: id, src: e.src, dst: e.dst });
            }
        }
        match PreparedDag::new(d) {
            Ok(p) => prepared.push(p),
            Err(c) => out.push(StructuralViolation::Cycle { dag: id, vertex: c.0 }),
        }
    }
    if prepared.len() < 2 {
        return StructuralReport { violations: out, pairs_checked: 0 };
    }

    let mut cluster_delta: Vec<Option<f64>> = vec![None; lo.clusters.len()];
    let mut delta_st = |s: VertexId, t: VertexId| -> f64 {
        match lo.parent_cluster(s, t) {
            None => f64::INFINITY,
            Some(c) => *cluster_delta[c].get_or_insert_with(|| match mode {
                Mode::Fast => lo.clusters[c].diam,
                Mode::Exact => dist.weak_diameter(lo.members(c)),
            }),
        }
    };

    let mut pairs = 0;
    for s in 0..n {
        let row = dist.row(s);
        let r1 = prepared[0].sssp(s);
        let r2 = prepared[1].sssp(s);
        for t in 0..n {
            if t == s {
                continue;
            }
            pairs += 1;
            for (id, r, p) in [(DagId::D1, &r1, &prepared[0]), (DagId::D2, &r2, &prepared[1])] {
                if r[t].is_finite() && row[t].is_infinite() {
                    out.push(StructuralViolation::Spurious { dag: id, s, t, path: p.path(s, t).unwrap_or_default() });
                } else if r[t].is_finite() && !leq_tol(row[t], r[t]) {
                    out.push(StructuralViolation::Domination {
                        dag: id,
                        s,
                        t,
                        d_g: row[t],
                        d_dag: r[t],
                        path: p.path(s, t).unwrap_or_default(),
                    });
                }
            }
            if row[t].is_infinite() {
                continue;
            }
            match (r1[t].is_finite(), r2[t].is_finite()) {
                (true, true) => out.push(StructuralViolation::BothReach { s, t }),
                (false, false) => out.push(StructuralViolation::NeitherReach { s, t }),
                _ => {}
            }
            let embedded = r1[t].min(r2[t]);
            let bound = 2.0 * delta_st(s, t);
            if !leq_tol(embedded, bound) {
                out.push(StructuralViolation::TwoDelta { s, t, embedded, delta_st: bound / 2.0 });
            }
        }
    }
    StructuralReport {
        violations: out,
        pairs_checked: pairs,
    }
}
