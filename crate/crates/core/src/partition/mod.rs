//! One call of the digraph partition procedure: phases `ℓ = L..1` carve
//! in- or out-balls of truncated-exponential radius around centers whose
//! balls have the right edge density, then every heavy edge left among the
//! never-carved (residual) vertices is cut.

mod params;
mod sampler;
mod soft;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ball, ball_profile, ActiveView, Direction, EdgeId, VertexId};
use crate::rng::SeedTree;

pub use params::PartitionParams;
pub use sampler::RadiusSampler;
pub use soft::{round_budget, SoftConfig};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PartitionError {
    #[error("edge parameter m must be at least 1")]
    ZeroEdgeParameter,
    #[error("scale Δ must be positive and finite, got {0}")]
    InvalidScale(f64),
    #[error("edge parameter m = {m_param} is below the {visible} visible edges")]
    EdgeParameterTooSmall { m_param: usize, visible: usize },
}

/// Center selection rule.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PartitionMode {
    /// Exact density window `m/μ_(ℓ−1) ≤ |B(x, r_(ℓ−1))| ≤ |B(x, r_ℓ)| ≤ m/μ_ℓ`,
    /// first qualifying `(vertex, direction)` in ascending id order.
    Strict,
    /// Randomized good-set rounds accepting the relaxed window
    /// `½·m/μ_(ℓ−1) ≤ … ≤ (5/4)·m/μ_ℓ`.
    Soft(SoftConfig),
}

impl PartitionMode {
    pub fn soft() -> Self {
        PartitionMode::Soft(SoftConfig::default())
    }

    pub fn is_soft(&self) -> bool {
        matches!(self, PartitionMode::Soft(_))
    }
}

/// Audit record for one carved ball.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CarveRecord {
    pub phase: usize,
    /// 1-based, reset at each phase.
    pub iter: usize,
    pub center: VertexId,
    pub dir: Direction,
    pub radius: f64,
    /// Sorted ball members (removed from the active set by this carve).
    pub members: Vec<VertexId>,
    /// Boundary edges added to the cut set by this carve.
    pub cut_edges: Vec<EdgeId>,
    /// Soft mode only: the round in which the ball was carved.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub round: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutResult {
    /// Cut set `S`, sorted edge ids.
    pub cut: Vec<EdgeId>,
    /// Residual set `R` of never-carved vertices, sorted.
    pub residual: Vec<VertexId>,
    /// Edges inside `R` cut for being heavier than `r_0`.
    pub heavy: Vec<EdgeId>,
    pub trace: Vec<CarveRecord>,
    /// Soft mode: rounds run beyond the configured count because the good
    /// set had not emptied.
    pub extra_rounds: usize,
}

impl CutResult {
    fn trivial(view: &ActiveView<'_>) -> Self {
        CutResult {
            cut: Vec::new(),
            residual: view.active_vertices().collect(),
            heavy: Vec::new(),
            trace: Vec::new(),
            extra_rounds: 0,
        }
    }

    pub fn balls_in_phase(&self, phase: usize) -> usize {
        self.trace.iter().filter(|c| c.phase == phase).count()
    }
}

/// Strict-mode center search: the first active `x` (ascending id, `Out`
/// before `In`) whose balls satisfy
/// `m/μ_(ℓ−1) ≤ |B(x, r_(ℓ−1))| ≤ |B(x, r_ℓ)| ≤ m/μ_ℓ` in the active view.
pub fn find_center_strict(
    view: &ActiveView<'_>,
    params: &PartitionParams,
    phase: usize,
) -> Option<(VertexId, Direction)> {
    assert!((1..=params.levels).contains(&phase));
    let upper = params.density(phase);
    let lower = params.density(phase - 1);
    if view.active_count() == 0 {
        return None;
    }
    let cap = upper.floor() as usize;
    for x in view.active_vertices() {
        for dir in Direction::BOTH {
            let profile = ball_profile(view, x, params.r(phase), dir, Some(cap));
            if profile.truncated {
                continue;
            }
            let outer = profile.edges_within(params.r(phase)) as f64;
            let inner = profile.edges_within(params.r(phase - 1)) as f64;
            if lower <= inner && outer <= upper {
                return Some((x, dir));
            }
        }
    }
    None
}

/// Carve `B*(center, R)` from the active view, with `R` drawn from the
/// phase's truncated exponential. Boundary edges go to `cut`.
fn carve(
    view: &mut ActiveView<'_>,
    params: &PartitionParams,
    phase: usize,
    iter: usize,
    center: VertexId,
    dir: Direction,
    seeds: SeedTree,
    cut: &mut Vec<EdgeId>,
) -> CarveRecord {
    let mut rng = seeds.path(&[phase as u64, iter as u64]).rng();
    let radius = params.sampler(phase).sample(&mut rng);
    let b = ball(view, center, radius, dir);
    cut.extend_from_slice(&b.boundary);
    for &v in &b.members {
        view.deactivate(v);
    }
    CarveRecord {
        phase,
        iter,
        center,
        dir,
        radius,
        members: b.members,
        cut_edges: b.boundary,
        round: None,
    }
}

/// One partition call on the visible subgraph of `view`.
///
/// `m_param` must be at least the number of visible edges. The view's
/// weight overlay (if any) is the metric used for center search, carving
/// and the heavy-edge rule.
pub fn digraph_partition(
    view: &ActiveView<'_>,
    delta_cap: f64,
    m_param: usize,
    seeds: SeedTree,
    mode: &PartitionMode,
) -> Result<CutResult, PartitionError> {
    let visible = view.visible_edge_count();
    if m_param < visible {
        return Err(PartitionError::EdgeParameterTooSmall { m_param, visible });
    }
    if visible == 0 {
        if !(delta_cap > 0.0) {
            return Err(PartitionError::InvalidScale(delta_cap));
        }
        return Ok(CutResult::trivial(view));
    }
    let params = PartitionParams::derive(m_param, delta_cap)?;
    let radius_seeds = seeds.child(0);
    let mut work = view.clone();
    let mut cut = Vec::new();
    let mut trace = Vec::new();
    let mut extra_rounds = 0;

    for phase in (1..=params.levels).rev() {
        match mode {
            PartitionMode::Strict => {
                let mut iter = 1;
                while let Some((x, dir)) = find_center_strict(&work, &params, phase) {
                    trace.push(carve(&mut work, &params, phase, iter, x, dir, radius_seeds, &mut cut));
                    iter += 1;
                }
            }
            PartitionMode::Soft(cfg) => {
                let mut iter = 1;
                for dir in Direction::BOTH {
                    let part_seeds = seeds.path(&[1, phase as u64, dir as u64]);
                    extra_rounds += soft::soft_phase_part(
                        &mut work,
                        &params,
                        phase,
                        dir,
                        cfg,
                        part_seeds,
                        |work, x, round| {
                            let mut rec =
                                carve(work, &params, phase, iter, x, dir, radius_seeds, &mut cut);
                            rec.round = Some(round);
                            iter += 1;
                            trace.push(rec);
                        },
                    );
                }
            }
        }
    }

    let residual: Vec<VertexId> = work.active_vertices().collect();
    let r0 = params.r(0);
    let heavy: Vec<EdgeId> = work.visible_edges().filter(|&e| work.weight(e) > r0).collect();
    cut.extend_from_slice(&heavy);
    cut.sort_unstable();
    cut.dedup();
    Ok(CutResult {
        cut,
        residual,
        heavy,
        trace,
        extra_rounds,
    })
}

/// Uniform index draw shared by the soft rounds.
pub(crate) fn pick<R: rand::Rng>(rng: &mut R, len: usize) -> usize {
    rng.gen_range(0..len)
}

#[cfg(test)]
mod tests;
