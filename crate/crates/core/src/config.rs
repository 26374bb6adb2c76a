use serde::{Deserialize, Serialize};

use crate::partition::{PartitionMode, SoftConfig};

/// How cluster diameters and DAG edge weights are obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Weak diameters recomputed per cluster; DAG edges weighted by `d_G`.
    #[default]
    Exact,
    /// Diameters passed down the recursion; surrogate edge weights and
    /// per-cluster spanners.
    Fast,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionKind {
    #[default]
    Strict,
    Soft,
}

/// Everything that determines one embedding draw besides the graph.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbedConfig {
    pub mode: Mode,
    pub partition: PartitionKind,
    /// Zero out edges lighter than `Δ/n⁷` inside every partition call.
    pub weight_rounding: bool,
    /// Soft mode: rounds per part are `rounds_constant·⌈log₂ n⌉ + 1`.
    pub rounds_constant: usize,
    /// Soft mode: `c_r` in the per-round iteration budget.
    pub kappa_constant: usize,
    pub seed: u64,
}

impl Default for EmbedConfig {
    fn default() -> Self {
        let soft = SoftConfig::default();
        EmbedConfig {
            mode: Mode::Exact,
            partition: PartitionKind::Strict,
            weight_rounding: false,
            rounds_constant: soft.rounds_factor,
            kappa_constant: soft.kappa_constant,
            seed: 0,
        }
    }
}

impl EmbedConfig {
    pub fn with_seed(seed: u64) -> Self {
        EmbedConfig {
            seed,
            ..Self::default()
        }
    }

    pub fn partition_mode(&self) -> PartitionMode {
        match self.partition {
            PartitionKind::Strict => PartitionMode::Strict,
            PartitionKind::Soft => PartitionMode::Soft(SoftConfig {
                rounds_factor: self.rounds_constant,
                kappa_constant: self.kappa_constant,
                ..SoftConfig::default()
            }),
        }
    }
}
