use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::digraph::{EdgeId, VertexId, WeightedDigraph};
use super::view::ActiveView;

/// Ball orientation: `Out` collects vertices reachable from the center
/// within the radius, `In` collects vertices that reach the center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Out,
    In,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::Out, Direction::In];
}

#[derive(Copy, Clone, PartialEq)]
struct HeapEntry {
    dist: f64,
    v: VertexId,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    // Min-heap on distance, ties on vertex id.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.v.cmp(&self.v))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact single-source distances in the visible subgraph; unreachable
/// vertices (and inactive ones) get `f64::INFINITY`.
pub fn sssp(view: &ActiveView<'_>, source: VertexId) -> Vec<f64> {
    directed_sssp(view, source, Direction::Out)
}

/// Distances from `source` (`Out`) or to `source` (`In`).
pub fn directed_sssp(view: &ActiveView<'_>, source: VertexId, dir: Direction) -> Vec<f64> {
    let n = view.graph().n();
    let mut dist = vec![f64::INFINITY; n];
    if !view.is_active(source) {
        return dist;
    }
    dist[source] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(HeapEntry { dist: 0.0, v: source });
    while let Some(HeapEntry { dist: d, v }) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        relax(view, v, dir, |u, w| {
            let nd = d + w;
            if nd < dist[u] {
                dist[u] = nd;
                heap.push(HeapEntry { dist: nd, v: u });
            }
        });
    }
    dist
}

#[inline]
fn relax(view: &ActiveView<'_>, v: VertexId, dir: Direction, mut f: impl FnMut(VertexId, f64)) {
    match dir {
        Direction::Out => view.out_edges(v).for_each(|(_, u, w)| f(u, w)),
        Direction::In => view.in_edges(v).for_each(|(_, u, w)| f(u, w)),
    }
}

/// Vertices settled by a bounded Dijkstra in nondecreasing distance order,
/// with the number of visible edges among the first `k` settled vertices.
#[derive(Clone, Debug)]
pub struct BallProfile {
    pub center: VertexId,
    pub dir: Direction,
    pub settled: Vec<(VertexId, f64)>,
    /// `cum_edges[k]` = edges with both endpoints among `settled[..=k]`.
    pub cum_edges: Vec<usize>,
    /// True if exploration stopped early because the edge cap was exceeded.
    pub truncated: bool,
}

impl BallProfile {
    fn prefix_len(&self, radius: f64) -> usize {
        self.settled.partition_point(|&(_, d)| d <= radius)
    }

    /// `|B(center, radius)|`, the number of edges fully inside the ball.
    /// Exact whenever `radius` is within the explored limit and the
    /// profile was not truncated (a truncated profile reports a lower bound
    /// that already exceeds the cap).
    pub fn edges_within(&self, radius: f64) -> usize {
        match self.prefix_len(radius) {
            0 => 0,
            k => self.cum_edges[k - 1],
        }
    }

    pub fn members_within(&self, radius: f64) -> impl Iterator<Item = VertexId> + '_ {
        self.settled[..self.prefix_len(radius)].iter().map(|&(v, _)| v)
    }
}

/// Bounded Dijkstra around `center` up to `limit`. When `edge_cap` is
/// given, exploration stops as soon as more than `edge_cap` edges are
/// known to lie inside the explored ball.
pub fn ball_profile(
    view: &ActiveView<'_>,
    center: VertexId,
    limit: f64,
    dir: Direction,
    edge_cap: Option<usize>,
) -> BallProfile {
    let mut profile = BallProfile {
        center,
        dir,
        settled: Vec::new(),
        cum_edges: Vec::new(),
        truncated: false,
    };
    if !view.is_active(center) {
        return profile;
    }
    let n = view.graph().n();
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    dist[center] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(HeapEntry { dist: 0.0, v: center });
    let mut count = 0usize;
    while let Some(HeapEntry { dist: d, v }) = heap.pop() {
        if done[v] || d > dist[v] {
            continue;
        }
        done[v] = true;
        // Edges between v and already-settled vertices, both orientations.
        count += view.out_edges(v).filter(|&(_, u, _)| done[u] && u != v).count();
        count += view.in_edges(v).filter(|&(_, u, _)| done[u] && u != v).count();
        profile.settled.push((v, d));
        profile.cum_edges.push(count);
        if edge_cap.is_some_and(|cap| count > cap) {
            profile.truncated = true;
            break;
        }
        relax(view, v, dir, |u, w| {
            let nd = d + w;
            if nd <= limit && nd < dist[u] {
                dist[u] = nd;
                heap.push(HeapEntry { dist: nd, v: u });
            }
        });
    }
    profile
}

/// Ball membership, inner edge count and boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct BallResult {
    /// Sorted member ids.
    pub members: Vec<VertexId>,
    /// Visible edges with both endpoints in `members`.
    pub edge_count: usize,
    /// Visible boundary edges: `δ+(members)` for out-balls, `δ−(members)`
    /// for in-balls.
    pub boundary: Vec<EdgeId>,
}

pub fn ball(view: &ActiveView<'_>, center: VertexId, radius: f64, dir: Direction) -> BallResult {
    let profile = ball_profile(view, center, radius, dir, None);
    let edge_count = profile.edges_within(radius);
    let mut members: Vec<VertexId> = profile.members_within(radius).collect();
    members.sort_unstable();
    let boundary = boundary_edges(view, &members, dir);
    BallResult {
        members,
        edge_count,
        boundary,
    }
}

/// Visible edges leaving (`Out`) or entering (`In`) the sorted vertex set.
pub fn boundary_edges(view: &ActiveView<'_>, members: &[VertexId], dir: Direction) -> Vec<EdgeId> {
    let inside = |v: VertexId| members.binary_search(&v).is_ok();
    let mut out = Vec::new();
    for &v in members {
        match dir {
            Direction::Out => out.extend(view.out_edges(v).filter(|&(_, u, _)| !inside(u)).map(|(e, _, _)| e)),
            Direction::In => out.extend(view.in_edges(v).filter(|&(_, u, _)| !inside(u)).map(|(e, _, _)| e)),
        }
    }
    out.sort_unstable();
    out
}

/// Weak diameter: the largest distance between two cluster vertices
/// measured in the full base graph. `+∞` iff some ordered pair is
/// unreachable.
pub fn weak_diameter(graph: &WeightedDigraph, cluster: &[VertexId]) -> f64 {
    let view = ActiveView::full(graph);
    let mut diam: f64 = 0.0;
    for &u in cluster {
        let dist = sssp(&view, u);
        for &v in cluster {
            diam = diam.max(dist[v]);
            if diam.is_infinite() {
                return diam;
            }
        }
    }
    diam
}
