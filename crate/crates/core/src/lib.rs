//! Stochastic embeddings of weighted digraphs into pairs of DAGs.

pub mod config;
pub mod dag;
pub mod embed;
pub mod generators;
pub mod graph;
pub mod laminar;
pub mod partition;
pub mod rng;
pub mod verify;

pub use config::{EmbedConfig, Mode, PartitionKind};
pub use dag::{build_dag_pair, two_hop_spanner, Dag, DagPair, Provenance};
pub use embed::{build_dag_cover, sample_embedding, DagCover, Embedding};
pub use graph::{Distances, Edge, EdgeId, VertexId, WeightedDigraph};
pub use laminar::{laminar_topological_order, validate_laminar, Cluster, LaminarOrder};
pub use partition::{digraph_partition, CutResult, PartitionError, PartitionMode, PartitionParams};
pub use rng::SeedTree;
