//! Digraph substrate: storage, active-subset views, shortest paths, balls,
//! strongly connected components and reachability.

mod apsp;
mod digraph;
pub mod io;
mod paths;
mod scc;
mod view;

pub use apsp::Distances;
pub use digraph::{Edge, EdgeId, GraphError, VertexId, WeightedDigraph};
pub use io::{format_graph, parse_graph, ParseError};
pub use paths::{
    ball, ball_profile, boundary_edges, directed_sssp, sssp, weak_diameter, BallProfile,
    BallResult, Direction,
};
pub use scc::{condensation_reachability, scc_decompose, Reachability};
pub use view::ActiveView;
