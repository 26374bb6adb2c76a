use serde::{Deserialize, Serialize};

use crate::config::{EmbedConfig, PartitionKind};
use crate::graph::{ball, scc_decompose, ActiveView, Distances, EdgeId, VertexId};
use crate::laminar::{leq_tol, round_weights, LaminarOrder};
use crate::partition::PartitionParams;

use super::envelope::depth_envelope;

/// A partition-call guarantee that failed on replay. `call` indexes
/// `LaminarOrder::calls`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AuditViolation {
    RadiusOutOfRange { call: usize, phase: usize, radius: f64 },
    /// The center's balls at carve time miss the density window.
    DensityWindow { call: usize, phase: usize, center: VertexId, inner: usize, outer: usize },
    OverlappingBall { call: usize, vertex: VertexId },
    BallCount { call: usize, phase: usize, count: usize, cap: f64 },
    ResidualMismatch { call: usize },
    CutMismatch { call: usize },
    /// An SCC of the cut graph straddles two carved pieces.
    SplitScc { call: usize, members: Vec<VertexId> },
    DenseScc { call: usize, phase: usize, members: Vec<VertexId>, edges: usize, cap: f64 },
    WideResidualScc { call: usize, members: Vec<VertexId>, diam: f64, bound: f64 },
    NoProgress { call: usize, members: Vec<VertexId>, edges: usize, diam: f64 },
    /// An edge lighter than `Δ/n⁷` entered the cut set under rounding.
    LightEdgeCut { call: usize, edge: EdgeId, weight: f64, threshold: f64 },
    /// A surviving edge between two child SCCs was cut elsewhere.
    LostCrossEdge { call: usize, edge: EdgeId },
    DepthEnvelope { depth: usize, bound: f64 },
}

/// Replays every recorded partition call of `lo` and checks: radii in
/// range; carve-time density windows; disjoint balls; per-phase ball
/// counts; the cut and residual sets; SCC containment in one piece; SCC
/// edge caps per phase; residual SCC diameters `≤ 2r_L`; progress (edges
/// `≤ m/2`, or `5m/8` soft, or diameter `≤ Δ/2`); no light edge cut under
/// rounding; cross-SCC survivors kept; and the nesting-depth envelope.
///
/// Under rounding the diameter bounds gain `(n−1)·Δ/n⁷`, the most the
/// zeroed edges can add to a path.
pub fn audit_laminar(dist: &Distances<'_>, lo: &LaminarOrder, cfg: &EmbedConfig) -> Vec<AuditViolation> {
    let g = dist.graph();
    let n = g.n();
    let soft = cfg.partition == PartitionKind::Soft;
    let mut out = Vec::new();
    let mut in_global = vec![false; g.m()];
    for &e in &lo.global_cut {
        in_global[e] = true;
    }
    for (ci, call) in lo.calls.iter().enumerate() {
        let base = ActiveView::induced(g, &call.members);
        let slack = call.rounding_threshold.map_or(0.0, |t| (n.saturating_sub(1)) as f64 * t);
        if let Some(t) = call.rounding_threshold {
            for &e in &call.cut {
                let w = g.edge(e).weight;
                if w < t {
                    out.push(AuditViolation::LightEdgeCut { call: ci, edge: e, weight: w, threshold: t });
                }
            }
        }
        // Cross-SCC survivors.
        let mut child_of = vec![usize::MAX; n];
        for (k, ch) in call.children.iter().enumerate() {
            for &v in &ch.members {
                child_of[v] = k;
            }
        }
        let mut in_call_cut = vec![false; g.m()];
        for &e in &call.cut {
            in_call_cut[e] = true;
        }
        for e in base.visible_edges() {
            let edge = g.edge(e);
            if !in_call_cut[e] && child_of[edge.src] != child_of[edge.dst] && in_global[e] {
                out.push(AuditViolation::LostCrossEdge { call: ci, edge: e });
            }
        }
        let Some(res) = &call.result else { continue };
        let p = match PartitionParams::derive(call.m, call.delta) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let mut work = match call.rounding_threshold {
            Some(_) => base.clone().with_weights(round_weights(g, call.delta, n)),
            None => base.clone(),
        };
        let mut owner = vec![usize::MAX; n];
        let mut per_phase = vec![0usize; p.levels + 1];
        let mut cut: Vec<EdgeId> = Vec::new();
        for (k, c) in res.trace.iter().enumerate() {
            if !(p.r(c.phase - 1) <= c.radius && c.radius <= p.r(c.phase)) {
                out.push(AuditViolation::RadiusOutOfRange { call: ci, phase: c.phase, radius: c.radius });
            }
            let inner = ball(&work, c.center, p.r(c.phase - 1), c.dir).edge_count;
            let outer = ball(&work, c.center, p.r(c.phase), c.dir).edge_count;
            let (lo_b, hi_b) = if soft {
                (0.5 * p.density(c.phase - 1), 1.25 * p.density(c.phase))
            } else {
                (p.density(c.phase - 1), p.density(c.phase))
            };
            if !(lo_b <= inner as f64 && outer as f64 <= hi_b) {
                out.push(AuditViolation::DensityWindow { call: ci, phase: c.phase, center: c.center, inner, outer });
            }
            let carved = ball(&work, c.center, c.radius, c.dir);
            cut.extend_from_slice(&carved.boundary);
            for &v in &carved.members {
                if owner[v] != usize::MAX || !work.is_active(v) {
                    out.push(AuditViolation::OverlappingBall { call: ci, vertex: v });
                }
                owner[v] = k;
            }
            for &v in &carved.members {
                work.deactivate(v);
            }
            per_phase[c.phase] += 1;
        }
        for l in 1..=p.levels {
            let cap = if soft { 2.0 * p.mu(l - 1) } else { p.mu(l - 1) };
            if per_phase[l] as f64 > cap {
                out.push(AuditViolation::BallCount { call: ci, phase: l, count: per_phase[l], cap });
            }
        }
        let residual: Vec<VertexId> = work.active_vertices().collect();
        if residual != res.residual {
            out.push(AuditViolation::ResidualMismatch { call: ci });
        }
        cut.extend(work.visible_edges().filter(|&e| work.weight(e) > p.r(0)));
        cut.sort_unstable();
        cut.dedup();
        if cut != res.cut {
            out.push(AuditViolation::CutMismatch { call: ci });
        }

        let after = base.clone().without_edges(res.cut.iter().copied());
        for scc in scc_decompose(&after) {
            let first_owner = owner[scc[0]];
            if scc.iter().any(|&v| owner[v] != first_owner) {
                out.push(AuditViolation::SplitScc { call: ci, members: scc.clone() });
                continue;
            }
            let edges = ActiveView::induced(g, &scc)
                .without_edges(res.cut.iter().copied())
                .visible_edge_count();
            let diam = if scc.len() > 1 { dist.weak_diameter(&scc) } else { 0.0 };
            if first_owner == usize::MAX {
                let bound = 2.0 * p.r(p.levels) + slack;
                if !leq_tol(diam, bound) {
                    out.push(AuditViolation::WideResidualScc { call: ci, members: scc.clone(), diam, bound });
                }
            } else {
                let phase = res.trace[first_owner].phase;
                let cap = if soft { 1.25 * p.density(phase) } else { p.density(phase) };
                if edges as f64 > cap {
                    out.push(AuditViolation::DenseScc { call: ci, phase, members: scc.clone(), edges, cap });
                }
            }
            let edge_cap = if soft { 0.625 * call.m as f64 } else { 0.5 * call.m as f64 };
            if edges as f64 > edge_cap && !leq_tol(diam, call.delta / 2.0 + slack) {
                out.push(AuditViolation::NoProgress { call: ci, members: scc, edges, diam });
            }
        }
    }
    let bound = depth_envelope(g);
    let depth = lo.max_depth();
    if depth as f64 > bound {
        out.push(AuditViolation::DepthEnvelope { depth, bound });
    }
    out
}
