use std::cmp::Reverse;
use std::collections::BinaryHeap;

use fixedbitset::FixedBitSet;

use super::digraph::{VertexId, WeightedDigraph};
use super::view::ActiveView;

/// Tarjan's algorithm, iterative. Returns component ids per vertex
/// (`usize::MAX` for inactive vertices) and the number of components.
fn tarjan(view: &ActiveView<'_>) -> (Vec<usize>, usize) {
    const UNSEEN: usize = usize::MAX;
    let n = view.graph().n();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut ncomp = 0;

    let succ: Vec<Vec<VertexId>> = (0..n)
        .map(|v| view.out_edges(v).map(|(_, u, _)| u).collect())
        .collect();

    for root in view.active_vertices() {
        if index[root] != UNSEEN {
            continue;
        }
        // (vertex, next successor position)
        let mut call: Vec<(VertexId, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&u) = succ[v].get(*pos) {
                *pos += 1;
                if index[u] == UNSEEN {
                    index[u] = next_index;
                    low[u] = next_index;
                    next_index += 1;
                    stack.push(u);
                    on_stack[u] = true;
                    call.push((u, 0));
                } else if on_stack[u] {
                    low[v] = low[v].min(index[u]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    comp[w] = ncomp;
                    if w == v {
                        break;
                    }
                }
                ncomp += 1;
            }
        }
    }
    (comp, ncomp)
}

/// Strongly connected components of the visible subgraph, in a
/// topological order of the condensation: a visible edge from component
/// `j` to component `j'` implies `j < j'`. Incomparable components are
/// ordered by their smallest vertex id. Members of each component are
/// sorted ascending.
pub fn scc_decompose(view: &ActiveView<'_>) -> Vec<Vec<VertexId>> {
    let (comp, ncomp) = tarjan(view);
    let mut members: Vec<Vec<VertexId>> = vec![Vec::new(); ncomp];
    for v in view.active_vertices() {
        members[comp[v]].push(v);
    }

    let mut indeg = vec![0usize; ncomp];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
    for e in view.visible_edges() {
        let edge = view.graph().edge(e);
        let (a, b) = (comp[edge.src], comp[edge.dst]);
        if a != b {
            succ[a].push(b);
            indeg[b] += 1;
        }
    }

    // Kahn's algorithm keyed by smallest member id.
    let mut ready: BinaryHeap<Reverse<(VertexId, usize)>> = (0..ncomp)
        .filter(|&c| indeg[c] == 0)
        .map(|c| Reverse((members[c][0], c)))
        .collect();
    let mut out = Vec::with_capacity(ncomp);
    while let Some(Reverse((_, c))) = ready.pop() {
        for &d in &succ[c] {
            indeg[d] -= 1;
            if indeg[d] == 0 {
                ready.push(Reverse((members[d][0], d)));
            }
        }
        out.push(std::mem::take(&mut members[c]));
    }
    debug_assert_eq!(out.len(), ncomp);
    out
}

/// Whole-graph reachability through the SCC condensation.
#[derive(Clone, Debug)]
pub struct Reachability {
    comp_of: Vec<usize>,
    /// `closure[c]` holds every component reachable from `c` (including `c`).
    closure: Vec<FixedBitSet>,
}

impl Reachability {
    pub fn component_of(&self, v: VertexId) -> usize {
        self.comp_of[v]
    }

    pub fn component_count(&self) -> usize {
        self.closure.len()
    }

    pub fn components_reach(&self, a: usize, b: usize) -> bool {
        self.closure[a].contains(b)
    }

    /// `u ⇝ v` in the base graph (reflexive).
    pub fn reaches(&self, u: VertexId, v: VertexId) -> bool {
        self.closure[self.comp_of[u]].contains(self.comp_of[v])
    }
}

pub fn condensation_reachability(graph: &WeightedDigraph) -> Reachability {
    let view = ActiveView::full(graph);
    let comps = scc_decompose(&view);
    let k = comps.len();
    let mut comp_of = vec![0; graph.n()];
    for (c, members) in comps.iter().enumerate() {
        for &v in members {
            comp_of[v] = c;
        }
    }
    let mut closure = vec![FixedBitSet::with_capacity(k); k];
    // Components are topologically ordered, so successors have larger ids.
    for c in (0..k).rev() {
        let mut set = FixedBitSet::with_capacity(k);
        set.insert(c);
        for &v in &comps[c] {
            for &e in graph.out_edges(v) {
                let d = comp_of[graph.edge(e).dst];
                if d != c && !set.contains(d) {
                    set.union_with(&closure[d]);
                }
            }
        }
        closure[c] = set;
    }
    Reachability { comp_of, closure }
}
