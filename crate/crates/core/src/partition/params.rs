use serde::{Deserialize, Serialize};

use super::sampler::RadiusSampler;
use super::PartitionError;

/// Radius and density schedule of one partition call, a function of the
/// edge parameter `m` and the scale `Δ` only.
///
/// With `L` phases:
/// - `radii[ℓ]`: `r_0 = Δ/2^(L+4)`, `r_ℓ = r_(ℓ−1) + Δ/2^(L−ℓ+4) + Δ/(8L)`
/// - `mu[ℓ]`: `μ_ℓ = 2^(2^(L−ℓ))`, so `μ_L = 2` and `μ_0 ≥ m + 1`
/// - `lambda(ℓ)`: `ln(2μ_ℓ/δ) / (r_ℓ − r_(ℓ−1))` for `ℓ ≥ 1`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionParams {
    pub m_param: usize,
    pub delta_cap: f64,
    /// Number of phases `L`.
    pub levels: usize,
    /// Error parameter `δ = log₂(m+1)^(−2)`.
    pub delta: f64,
    /// `r_0..=r_L`.
    pub radii: Vec<f64>,
    /// `μ_0..=μ_L`.
    pub mu: Vec<f64>,
    /// `λ_1..=λ_L` stored at indices `0..L`.
    lambdas: Vec<f64>,
}

/// `⌈log₂ log₂(m+1)⌉`, computed exactly, clamped to at least one phase.
fn phase_count(m: usize) -> usize {
    let target = m as u128 + 1;
    let mut levels = 0usize;
    // 2^(2^L) >= m + 1  <=>  L >= log log (m+1)
    while levels < 7 && (1u128 << (1u32 << levels).min(127)) < target {
        levels += 1;
    }
    levels.max(1)
}

impl PartitionParams {
    pub fn derive(m_param: usize, delta_cap: f64) -> Result<Self, PartitionError> {
        if m_param == 0 {
            return Err(PartitionError::ZeroEdgeParameter);
        }
        if !(delta_cap > 0.0 && delta_cap.is_finite()) {
            return Err(PartitionError::InvalidScale(delta_cap));
        }
        let levels = phase_count(m_param);
        let big_l = levels as f64;
        let log_m = ((m_param + 1) as f64).log2();
        let delta = log_m.powi(-2);

        let mut radii = Vec::with_capacity(levels + 1);
        radii.push(delta_cap / 2f64.powi(levels as i32 + 4));
        for l in 1..=levels {
            let prev = radii[l - 1];
            radii.push(prev + delta_cap / 2f64.powi((levels - l) as i32 + 4) + delta_cap / (8.0 * big_l));
        }
        let mu: Vec<f64> = (0..=levels)
            .map(|l| 2f64.powi(1 << (levels - l)))
            .collect();
        let lambdas = (1..=levels)
            .map(|l| (2.0 * mu[l] / delta).ln() / (radii[l] - radii[l - 1]))
            .collect();

        let params = PartitionParams {
            m_param,
            delta_cap,
            levels,
            delta,
            radii,
            mu,
            lambdas,
        };
        debug_assert!((1..=levels).all(|l| {
            params.lambda(l) <= 64.0 / delta_cap * big_l * params.mu[l].log2() * (1.0 + 1e-12)
        }));
        Ok(params)
    }

    #[inline]
    pub fn r(&self, l: usize) -> f64 {
        self.radii[l]
    }

    #[inline]
    pub fn mu(&self, l: usize) -> f64 {
        self.mu[l]
    }

    /// Rate for phase `l` (`1 ≤ l ≤ L`).
    #[inline]
    pub fn lambda(&self, l: usize) -> f64 {
        self.lambdas[l - 1]
    }

    /// `m / μ_l`.
    #[inline]
    pub fn density(&self, l: usize) -> f64 {
        self.m_param as f64 / self.mu[l]
    }

    pub fn sampler(&self, l: usize) -> RadiusSampler {
        RadiusSampler::new(self.lambda(l), self.r(l - 1), self.r(l))
    }
}
