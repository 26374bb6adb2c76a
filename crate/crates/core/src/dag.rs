//! The 2-hop spanner and the two output DAGs.

use std::collections::btree_map::{BTreeMap, Entry};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::Mode;
use crate::graph::{Distances, VertexId, WeightedDigraph};
use crate::laminar::LaminarOrder;

/// Directed 2-hop spanner over positions `0..n`: every pair `i < j` is an
/// edge or has a midpoint `q ∈ (i, j)` with `(i, q)` and `(q, j)` present.
/// Built by connecting everything in a range to its midpoint
/// `k = lo + ⌈len/2⌉ − 1` and recursing on both sides.
pub fn two_hop_spanner(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut stack = vec![(0usize, n)];
    while let Some((lo, hi)) = stack.pop() {
        if hi - lo < 2 {
            continue;
        }
        let k = lo + (hi - lo).div_ceil(2) - 1;
        out.extend((lo..k).map(|i| (i, k)));
        out.extend((k + 1..hi).map(|j| (k, j)));
        stack.push((lo, k));
        stack.push((k + 1, hi));
    }
    out.sort_unstable();
    out
}

/// Exhaustive 2-hop check over all pairs; returns the first pair with no
/// edge and no midpoint, or an out-of-range / non-forward edge.
pub fn check_two_hop(n: usize, edges: &[(usize, usize)]) -> Result<(), (usize, usize)> {
    let mut out = vec![FixedBitSet::with_capacity(n); n];
    let mut inc = vec![FixedBitSet::with_capacity(n); n];
    for &(i, j) in edges {
        if !(i < j && j < n) {
            return Err((i, j));
        }
        out[i].insert(j);
        inc[j].insert(i);
    }
    let mut mid = FixedBitSet::with_capacity(n);
    for i in 0..n {
        for j in i + 1..n {
            if out[i].contains(j) {
                continue;
            }
            mid.clone_from(&out[i]);
            mid.intersect_with(&inc[j]);
            // Any common neighbour lies strictly between i and j.
            if mid.is_clear() {
                return Err((i, j));
            }
        }
    }
    Ok(())
}

/// `n·⌈log₂ n⌉`, the spanner size bound.
pub fn spanner_size_bound(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        n * (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Why an edge is in a DAG. The jump kinds name which endpoint was
/// replaced by a cluster endpoint: `u → C_v^first`, `C_u^last → v`,
/// `C_u^last → C_v^first`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Spanner,
    Surviving,
    #[serde(rename = "jump_uF")]
    JumpUF,
    #[serde(rename = "jump_Lv")]
    JumpLV,
    #[serde(rename = "jump_LF")]
    JumpLF,
}

impl Provenance {
    pub const ALL: [Provenance; 5] = [
        Provenance::Spanner,
        Provenance::Surviving,
        Provenance::JumpUF,
        Provenance::JumpLV,
        Provenance::JumpLF,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Provenance::Spanner => "spanner",
            Provenance::Surviving => "surviving",
            Provenance::JumpUF => "jump_uF",
            Provenance::JumpLV => "jump_Lv",
            Provenance::JumpLF => "jump_LF",
        }
    }
}

/// One output DAG with the provenance of each edge (indexed like
/// `graph.edges()`).
#[derive(Clone, Debug, PartialEq)]
pub struct Dag {
    pub graph: WeightedDigraph,
    pub provenance: Vec<Provenance>,
}

impl Dag {
    pub fn provenance_counts(&self) -> BTreeMap<&'static str, usize> {
        let mut c: BTreeMap<&'static str, usize> = Provenance::ALL.iter().map(|p| (p.name(), 0)).collect();
        for p in &self.provenance {
            *c.get_mut(p.name()).unwrap() += 1;
        }
        c
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DagPair {
    pub d1: Dag,
    pub d2: Dag,
    pub mode: Mode,
}

/// Edge accumulator merging parallel edges by minimum weight. On a tie
/// the earlier insertion wins.
struct EdgeSet {
    n: usize,
    edges: BTreeMap<(VertexId, VertexId), (f64, Provenance)>,
}

impl EdgeSet {
    fn new(n: usize) -> Self {
        EdgeSet {
            n,
            edges: BTreeMap::new(),
        }
    }

    fn add(&mut self, u: VertexId, v: VertexId, w: f64, p: Provenance) {
        debug_assert!(u != v && w.is_finite());
        match self.edges.entry((u, v)) {
            Entry::Vacant(e) => {
                e.insert((w, p));
            }
            Entry::Occupied(mut e) => {
                if w < e.get().0 {
                    e.insert((w, p));
                }
            }
        }
    }

    fn finish(self) -> Dag {
        let provenance = self.edges.values().map(|&(_, p)| p).collect();
        let graph = WeightedDigraph::from_edges(self.n, self.edges.into_iter().map(|((u, v), (w, _))| (u, v, w)))
            .expect("DAG edges are valid");
        Dag { graph, provenance }
    }
}

/// Jump-edge endpoints for a surviving edge `(u, v)`: every pair of
/// disjoint clusters `C_u ∋ u`, `C_v ∋ v` from the two ancestor chains.
fn for_each_jump(lo: &LaminarOrder, u: VertexId, v: VertexId, mut f: impl FnMut(usize, usize, Provenance)) {
    let (ru, rv) = (lo.rank[u], lo.rank[v]);
    let cu: Vec<usize> = lo.chain(u).into_iter().take_while(|&c| !lo.clusters[c].contains_rank(rv)).collect();
    let cv: Vec<usize> = lo.chain(v).into_iter().take_while(|&c| !lo.clusters[c].contains_rank(ru)).collect();
    for &a in &cu {
        for &b in &cv {
            let single_a = lo.clusters[a].size() == 1;
            let single_b = lo.clusters[b].size() == 1;
            let p = match (single_a, single_b) {
                (true, true) => Provenance::Surviving,
                (true, false) => Provenance::JumpUF,
                (false, true) => Provenance::JumpLV,
                (false, false) => Provenance::JumpLF,
            };
            f(a, b, p);
        }
    }
}

/// `D1` and `D2` from a laminar order. Exact mode weights every edge by
/// `d_G`; fast mode uses per-cluster spanners weighted by the cluster's
/// diam and jump edges weighted `Δ_(C_u) + w(e) + Δ_(C_v)`.
pub fn build_dag_pair(g: &WeightedDigraph, lo: &LaminarOrder, mode: Mode) -> DagPair {
    build_dag_pair_with(&Distances::new(g), lo, mode)
}

pub fn build_dag_pair_with(dist: &Distances<'_>, lo: &LaminarOrder, mode: Mode) -> DagPair {
    let g = dist.graph();
    let n = g.n();
    let mut d1 = EdgeSet::new(n);
    let mut d2 = EdgeSet::new(n);
    match mode {
        Mode::Exact => {
            let spanner = two_hop_spanner(n);
            for &(i, j) in &spanner {
                let (u, v) = (lo.order[i], lo.order[j]);
                if dist.reaches(u, v) {
                    d1.add(u, v, dist.get(u, v), Provenance::Spanner);
                }
                let (u, v) = (lo.order[n - 1 - i], lo.order[n - 1 - j]);
                if dist.reaches(u, v) {
                    d2.add(u, v, dist.get(u, v), Provenance::Spanner);
                }
            }
        }
        Mode::Fast => {
            for (c, cl) in lo.clusters.iter().enumerate() {
                let k = cl.size();
                if k < 2 {
                    continue;
                }
                let members = lo.members(c);
                for (i, j) in two_hop_spanner(k) {
                    d1.add(members[i], members[j], cl.diam, Provenance::Spanner);
                    d2.add(members[k - 1 - i], members[k - 1 - j], cl.diam, Provenance::Spanner);
                }
            }
        }
    }
    let mut in_cut = vec![false; g.m()];
    for &e in &lo.global_cut {
        in_cut[e] = true;
    }
    for (e, edge) in g.edges().iter().enumerate() {
        if in_cut[e] {
            continue;
        }
        for_each_jump(lo, edge.src, edge.dst, |a, b, p| {
            let (x, y) = (lo.clusters[a].last, lo.clusters[b].first);
            let w = match mode {
                Mode::Exact => dist.get(x, y),
                Mode::Fast => lo.clusters[a].diam + edge.weight + lo.clusters[b].diam,
            };
            d1.add(x, y, w, p);
        });
    }
    DagPair {
        d1: d1.finish(),
        d2: d2.finish(),
        mode,
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("graph has a cycle through vertex {0}")]
pub struct CycleError(pub VertexId);

/// Topological order of an acyclic graph (Kahn, smallest id first).
pub fn topological_order(g: &WeightedDigraph) -> Result<Vec<VertexId>, CycleError> {
    let n = g.n();
    let mut indeg: Vec<usize> = (0..n).map(|v| g.in_edges(v).len()).collect();
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<VertexId>> =
        (0..n).filter(|&v| indeg[v] == 0).map(std::cmp::Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(std::cmp::Reverse(v)) = heap.pop() {
        order.push(v);
        for &e in g.out_edges(v) {
            let t = g.edge(e).dst;
            indeg[t] -= 1;
            if indeg[t] == 0 {
                heap.push(std::cmp::Reverse(t));
            }
        }
    }
    if order.len() < n {
        let v = (0..n).find(|&v| indeg[v] > 0).unwrap();
        return Err(CycleError(v));
    }
    Ok(order)
}

/// A DAG with its topological order, for repeated single-source queries.
#[derive(Clone, Debug)]
pub struct PreparedDag<'d> {
    graph: &'d WeightedDigraph,
    topo: Vec<VertexId>,
    pos: Vec<usize>,
}

impl<'d> PreparedDag<'d> {
    pub fn new(graph: &'d WeightedDigraph) -> Result<Self, CycleError> {
        let topo = topological_order(graph)?;
        let mut pos = vec![0; graph.n()];
        for (i, &v) in topo.iter().enumerate() {
            pos[v] = i;
        }
        Ok(PreparedDag { graph, topo, pos })
    }

    /// Distances from `s`, `+∞` where unreachable.
    pub fn sssp(&self, s: VertexId) -> Vec<f64> {
        self.sssp_with_pred(s).0
    }

    pub fn sssp_with_pred(&self, s: VertexId) -> (Vec<f64>, Vec<Option<VertexId>>) {
        let n = self.graph.n();
        let mut dist = vec![f64::INFINITY; n];
        let mut pred = vec![None; n];
        dist[s] = 0.0;
        for &v in &self.topo[self.pos[s]..] {
            let dv = dist[v];
            if dv.is_infinite() {
                continue;
            }
            for &e in self.graph.out_edges(v) {
                let edge = self.graph.edge(e);
                let nd = dv + edge.weight;
                if nd < dist[edge.dst] {
                    dist[edge.dst] = nd;
                    pred[edge.dst] = Some(v);
                }
            }
        }
        (dist, pred)
    }

    /// A shortest `s → t` path, or `None` if `t` is unreachable.
    pub fn path(&self, s: VertexId, t: VertexId) -> Option<Vec<VertexId>> {
        let (dist, pred) = self.sssp_with_pred(s);
        if dist[t].is_infinite() {
            return None;
        }
        let mut p = vec![t];
        let mut cur = t;
        while cur != s {
            cur = pred[cur]?;
            p.push(cur);
        }
        p.reverse();
        Some(p)
    }
}

/// Single-source distances in a DAG by one pass in topological order.
pub fn dag_sssp(g: &WeightedDigraph, s: VertexId) -> Result<Vec<f64>, CycleError> {
    Ok(PreparedDag::new(g)?.sssp(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{sssp, ActiveView};
    use crate::rng::SeedTree;
    use rand::Rng;

    #[test]
    fn small_spanners() {
        assert!(two_hop_spanner(1).is_empty());
        assert_eq!(two_hop_spanner(2), vec![(0, 1)]);
        // 1-based {(1,2),(2,3),(2,4),(3,4)}.
        assert_eq!(two_hop_spanner(4), vec![(0, 1), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(check_two_hop(4, &two_hop_spanner(4)), Ok(()));
    }

    #[test]
    fn spanner_check_catches_gaps() {
        let mut h = two_hop_spanner(9);
        h.retain(|&e| e != (0, 4));
        assert!(check_two_hop(9, &h).is_err());
        assert_eq!(check_two_hop(3, &[(1, 0)]), Err((1, 0)));
    }

    #[test]
    fn spanners_up_to_128() {
        for n in 1..=128 {
            let h = two_hop_spanner(n);
            assert_eq!(check_two_hop(n, &h), Ok(()), "n = {n}");
            assert!(h.len() <= spanner_size_bound(n));
        }
    }

    #[test]
    fn dag_sssp_edge_cases() {
        let g = WeightedDigraph::empty(3);
        assert_eq!(dag_sssp(&g, 1).unwrap(), vec![f64::INFINITY, 0.0, f64::INFINITY]);
        let chain = WeightedDigraph::from_edges(4, [(0, 1, 2.0), (1, 2, 3.0), (2, 3, 4.0)]).unwrap();
        assert_eq!(dag_sssp(&chain, 0).unwrap(), vec![0.0, 2.0, 5.0, 9.0]);
        let cyc = WeightedDigraph::from_edges(2, [(0, 1, 1.0), (1, 0, 1.0)]).unwrap();
        assert!(dag_sssp(&cyc, 0).is_err());
    }

    #[test]
    fn dag_sssp_matches_dijkstra_on_random_dags() {
        let mut rng = SeedTree::new(11).rng();
        for _ in 0..1000 {
            let n = rng.gen_range(1..12);
            let perm = {
                let mut p: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    p.swap(i, rng.gen_range(0..=i));
                }
                p
            };
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.3) {
                        edges.push((perm[i], perm[j], rng.gen_range(0..10) as f64));
                    }
                }
            }
            let g = WeightedDigraph::from_edges(n, edges).unwrap();
            let p = PreparedDag::new(&g).unwrap();
            for s in 0..n {
                assert_eq!(p.sssp(s), sssp(&ActiveView::full(&g), s));
                for t in 0..n {
                    if let Some(path) = p.path(s, t) {
                        let len: f64 = path
                            .windows(2)
                            .map(|w| g.edge(g.find_edge(w[0], w[1]).unwrap()).weight)
                            .sum();
                        assert_eq!(len, p.sssp(s)[t]);
                    }
                }
            }
        }
    }
}
