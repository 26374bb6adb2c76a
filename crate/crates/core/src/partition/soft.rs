//! Soft-inequality center selection. Ball sizes are counted exactly (with
//! early exit) instead of estimated.

use serde::{Deserialize, Serialize};

use super::{pick, PartitionParams};
use crate::graph::{ball_profile, ActiveView, Direction, VertexId};
use crate::rng::SeedTree;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SoftConfig {
    /// Slack `ε` of the good-set tests.
    pub epsilon: f64,
    /// Rounds per part are `rounds_factor·⌈log₂ n⌉ + 1`, extended while
    /// good vertices remain.
    pub rounds_factor: usize,
    /// `c_r` in `κ = c_r·μ_(ℓ−1)·⌈log₂ n⌉` iterations per round.
    pub kappa_constant: usize,
}

impl Default for SoftConfig {
    fn default() -> Self {
        SoftConfig {
            epsilon: 0.1,
            rounds_factor: 1,
            kappa_constant: 4,
        }
    }
}

fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// `|B*(v, radius)| ≥ threshold`, stopping as soon as it is decided.
fn at_least(view: &ActiveView<'_>, v: VertexId, radius: f64, dir: Direction, threshold: f64) -> bool {
    if threshold <= 0.0 {
        return true;
    }
    let cap = threshold.ceil() as usize - 1;
    ball_profile(view, v, radius, dir, Some(cap)).truncated
}

/// `|B*(v, radius)| ≤ threshold`.
fn at_most(view: &ActiveView<'_>, v: VertexId, radius: f64, dir: Direction, threshold: f64) -> bool {
    !ball_profile(view, v, radius, dir, Some(threshold.floor() as usize)).truncated
}

/// Rounds per part and iterations per round for phase `phase`.
pub fn round_budget(cfg: &SoftConfig, params: &PartitionParams, phase: usize, n: usize) -> (usize, u64) {
    let log_n = ceil_log2(n).max(1);
    let rounds = cfg.rounds_factor * log_n + 1;
    let kappa = (cfg.kappa_constant as f64 * params.mu(phase - 1) * log_n as f64).max(1.0) as u64;
    (rounds, kappa)
}

/// One direction part of a soft phase. `carve` is invoked for every
/// accepted center with the round number; it must deactivate the carved
/// ball. Returns the number of rounds run past the configured count.
#[allow(clippy::too_many_arguments)]
pub(crate) fn soft_phase_part<'g, F>(
    work: &mut ActiveView<'g>,
    params: &PartitionParams,
    phase: usize,
    dir: Direction,
    cfg: &SoftConfig,
    seeds: SeedTree,
    mut carve: F,
) -> usize
where
    F: FnMut(&mut ActiveView<'g>, VertexId, usize),
{
    let n = work.graph().n();
    let (rounds, kappa) = round_budget(cfg, params, phase, n);
    let r_hi = params.r(phase);
    let r_lo = params.r(phase - 1);
    let upper = (1.0 + cfg.epsilon) * params.density(phase);
    let carve_lower = 0.5 * params.density(phase - 1);
    let keep_lower = (1.0 - cfg.epsilon) * params.density(phase - 1);

    let mut good: Vec<VertexId> = work
        .active_vertices()
        .filter(|&v| at_most(work, v, r_hi, dir, upper))
        .collect();
    // Balls only shrink during a part, so a vertex once seen below the
    // carving threshold stays below it.
    let mut sparse = vec![false; n];
    let mut round = 0;
    let mut extra = 0;
    while !good.is_empty() {
        round += 1;
        if round > rounds {
            extra += 1;
        }
        let mut rng = seeds.child(round as u64).rng();
        let mut undecided = good.iter().filter(|&&v| !sparse[v]).count();
        let mut j = 0u64;
        // Once every good vertex is known sparse the remaining iterations
        // are no-ops.
        while j < kappa && undecided > 0 {
            j += 1;
            let x = good[pick(&mut rng, good.len())];
            if sparse[x] {
                continue;
            }
            if at_least(work, x, r_lo, dir, carve_lower) {
                carve(work, x, round);
                good.retain(|&v| work.is_active(v));
                undecided = good.iter().filter(|&&v| !sparse[v]).count();
            } else {
                sparse[x] = true;
                undecided -= 1;
            }
        }
        good.retain(|&v| !sparse[v] && at_least(work, v, r_lo, dir, keep_lower));
    }
    extra
}
