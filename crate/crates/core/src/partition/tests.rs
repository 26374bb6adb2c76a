use super::*;
use crate::graph::{scc_decompose, weak_diameter, WeightedDigraph};
use proptest::prelude::*;

fn cycle(n: usize) -> WeightedDigraph {
    WeightedDigraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n, 1.0))).unwrap()
}

/// Floyd–Warshall over the visible subgraph.
fn fw(view: &ActiveView<'_>) -> Vec<Vec<f64>> {
    let n = view.graph().n();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for v in view.active_vertices() {
        d[v][v] = 0.0;
    }
    for e in view.visible_edges() {
        let edge = view.graph().edge(e);
        d[edge.src][edge.dst] = d[edge.src][edge.dst].min(view.weight(e));
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Edge count of a ball computed from an all-pairs table.
fn brute_ball_edges(view: &ActiveView<'_>, d: &[Vec<f64>], x: VertexId, r: f64, dir: Direction) -> usize {
    let inside = |v: VertexId| match dir {
        Direction::Out => d[x][v] <= r,
        Direction::In => d[v][x] <= r,
    };
    view.visible_edges()
        .filter(|&e| {
            let edge = view.graph().edge(e);
            inside(edge.src) && inside(edge.dst)
        })
        .count()
}

fn brute_center(view: &ActiveView<'_>, p: &PartitionParams, l: usize) -> Option<(VertexId, Direction)> {
    let d = fw(view);
    for x in view.active_vertices() {
        for dir in Direction::BOTH {
            let inner = brute_ball_edges(view, &d, x, p.r(l - 1), dir) as f64;
            let outer = brute_ball_edges(view, &d, x, p.r(l), dir) as f64;
            if p.density(l - 1) <= inner && outer <= p.density(l) {
                return Some((x, dir));
            }
        }
    }
    None
}

/// Checks the post-conditions of one call against an independent replay.
/// Returns a description of the first violation.
fn check_call(
    g: &WeightedDigraph,
    view: &ActiveView<'_>,
    delta: f64,
    m: usize,
    res: &CutResult,
    mode: &PartitionMode,
) -> Result<(), String> {
    let p = PartitionParams::derive(m, delta).unwrap();
    let mut work = view.clone();
    let mut per_phase = vec![0usize; p.levels + 1];
    let mut owner = vec![usize::MAX; g.n()];
    for (i, c) in res.trace.iter().enumerate() {
        if !(p.r(c.phase - 1) <= c.radius && c.radius <= p.r(c.phase)) {
            return Err(format!("radius {} out of range", c.radius));
        }
        let d = fw(&work);
        let inner = brute_ball_edges(&work, &d, c.center, p.r(c.phase - 1), c.dir) as f64;
        let outer = brute_ball_edges(&work, &d, c.center, p.r(c.phase), c.dir) as f64;
        let (lo, hi) = match mode {
            PartitionMode::Strict => (p.density(c.phase - 1), p.density(c.phase)),
            PartitionMode::Soft(_) => (0.5 * p.density(c.phase - 1), 1.25 * p.density(c.phase)),
        };
        if !(lo <= inner && outer <= hi) {
            return Err(format!("carve {i}: window violated ({inner}, {outer})"));
        }
        for &v in &c.members {
            if !work.is_active(v) {
                return Err(format!("carve {i}: member {v} already inactive"));
            }
            owner[v] = i;
            work.deactivate(v);
        }
        per_phase[c.phase] += 1;
    }
    for l in 1..=p.levels {
        let cap = match mode {
            PartitionMode::Strict => p.mu(l - 1),
            PartitionMode::Soft(_) => 2.0 * p.mu(l - 1),
        };
        if per_phase[l] as f64 > cap {
            return Err(format!("phase {l}: {} balls", per_phase[l]));
        }
    }
    let residual: Vec<VertexId> = work.active_vertices().collect();
    if residual != res.residual {
        return Err("residual mismatch".into());
    }
    let after = view.clone().without_edges(res.cut.iter().copied());
    for scc in scc_decompose(&after) {
        let owners: std::collections::BTreeSet<usize> = scc.iter().map(|&v| owner[v]).collect();
        if owners.len() != 1 {
            return Err(format!("SCC {scc:?} straddles pieces"));
        }
        let inner_edges = scc
            .iter()
            .flat_map(|&v| g.out_edges(v).iter().copied())
            .filter(|&e| after.is_edge_visible(e) && scc.binary_search(&g.edge(e).dst).is_ok())
            .count() as f64;
        let o = *owners.iter().next().unwrap();
        if o == usize::MAX {
            if scc.len() > 1 && weak_diameter(g, &scc) > 2.0 * p.r(p.levels) {
                return Err(format!("residual SCC {scc:?} too wide"));
            }
        } else {
            let l = res.trace[o].phase;
            let cap = match mode {
                PartitionMode::Strict => p.density(l),
                PartitionMode::Soft(_) => 1.25 * p.density(l),
            };
            if inner_edges > cap {
                return Err(format!("SCC {scc:?} in phase-{l} ball has {inner_edges} edges"));
            }
        }
        if inner_edges > m as f64 / 2.0 * if mode.is_soft() { 1.25 } else { 1.0 }
            && weak_diameter(g, &scc) > delta / 2.0
        {
            return Err(format!("SCC {scc:?} makes no progress"));
        }
    }
    Ok(())
}

#[test]
fn single_vertex_is_trivial() {
    let g = WeightedDigraph::empty(1);
    let view = ActiveView::full(&g);
    let r = digraph_partition(&view, 5.0, 1, SeedTree::new(0), &PartitionMode::Strict).unwrap();
    assert!(r.cut.is_empty());
    assert_eq!(r.residual, vec![0]);
}

#[test]
fn rejects_small_edge_parameter() {
    let g = cycle(4);
    let view = ActiveView::full(&g);
    let err = digraph_partition(&view, 3.0, 3, SeedTree::new(0), &PartitionMode::Strict);
    assert_eq!(err, Err(PartitionError::EdgeParameterTooSmall { m_param: 3, visible: 4 }));
}

#[test]
fn center_search_edge_cases() {
    let g = cycle(4);
    let p = PartitionParams::derive(4, 3.0).unwrap();
    let mut view = ActiveView::full(&g);
    for v in 0..4 {
        view.deactivate(v);
    }
    assert_eq!(find_center_strict(&view, &p, 1), None);
    let single = ActiveView::induced(&g, &[2]);
    for l in 1..=p.levels {
        assert_eq!(find_center_strict(&single, &p, l), None);
    }
}

#[test]
fn planted_dense_out_ball() {
    // Unit triangle with a heavy tail; m = 15, Δ = 64 gives r = [1, 7, 15]
    // and μ = [16, 4, 2]. Phase 1 wants 15/16 ≤ |B(x, 1)| and
    // |B(x, 7)| ≤ 15/4: the triangle has 1 and 3 edges from vertex 0.
    let g = WeightedDigraph::from_edges(5, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0), (2, 3, 20.0), (3, 4, 20.0)])
        .unwrap();
    let p = PartitionParams::derive(15, 64.0).unwrap();
    let view = ActiveView::full(&g);
    assert_eq!(find_center_strict(&view, &p, 1), Some((0, Direction::Out)));
    assert_eq!(find_center_strict(&view, &p, 2), None);
    for l in 1..=p.levels {
        assert_eq!(find_center_strict(&view, &p, l), brute_center(&view, &p, l));
    }
}

#[test]
fn c8_postconditions_over_seeds() {
    let g = cycle(8);
    let view = ActiveView::full(&g);
    for mode in [PartitionMode::Strict, PartitionMode::soft()] {
        for seed in 0..100 {
            let r = digraph_partition(&view, 7.0, 8, SeedTree::new(seed), &mode).unwrap();
            check_call(&g, &view, 7.0, 8, &r, &mode).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        }
    }
}

#[test]
fn deterministic_given_seed() {
    let g = cycle(12);
    let view = ActiveView::full(&g);
    for mode in [PartitionMode::Strict, PartitionMode::soft()] {
        let a = digraph_partition(&view, 11.0, 12, SeedTree::new(9), &mode).unwrap();
        let b = digraph_partition(&view, 11.0, 12, SeedTree::new(9), &mode).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn soft_phase_leaves_no_dense_center() {
    // End of every part: each remaining vertex has an outer ball above
    // m/μ_ℓ at part start, or an inner ball below m/μ_(ℓ−1) now.
    let g = WeightedDigraph::from_edges(
        10,
        (0..10).flat_map(|i| [(i, (i + 1) % 10, 1.0), (i, (i + 3) % 10, 2.0)]),
    )
    .unwrap();
    let m = g.m();
    let p = PartitionParams::derive(m, 18.0).unwrap();
    for seed in 0..20 {
        let mut work = ActiveView::full(&g);
        let cfg = SoftConfig::default();
        for l in (1..=p.levels).rev() {
            for dir in Direction::BOTH {
                let start = work.clone();
                let d0 = fw(&start);
                soft::soft_phase_part(&mut work, &p, l, dir, &cfg, SeedTree::new(seed), |w, x, _| {
                    let b = ball(w, x, p.r(l - 1), dir);
                    for v in b.members {
                        w.deactivate(v);
                    }
                });
                let d1 = fw(&work);
                for v in work.active_vertices() {
                    let outer = brute_ball_edges(&start, &d0, v, p.r(l), dir) as f64;
                    let inner = brute_ball_edges(&work, &d1, v, p.r(l - 1), dir) as f64;
                    assert!(outer > p.density(l) || inner < p.density(l - 1));
                }
            }
        }
    }
}

#[test]
fn radius_distribution_ks() {
    // Two-sided KS at the 1% level: D_n < 1.628 / sqrt(n).
    let n = 100_000;
    for (lambda, lo, hi) in [(0.5, 7.0, 15.0), (0.8087, 1.0, 7.0), (5.0, 0.0, 2.0)] {
        let s = RadiusSampler::new(lambda, lo, hi);
        let mut rng = SeedTree::new(77).rng();
        let mut xs: Vec<f64> = (0..n).map(|_| s.sample(&mut rng)).collect();
        xs.sort_by(f64::total_cmp);
        let f = |y: f64| ((-lambda * lo).exp() - (-lambda * y).exp()) / ((-lambda * lo).exp() - (-lambda * hi).exp());
        let ks = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let fx = f(x);
                (fx - i as f64 / n as f64).abs().max(((i + 1) as f64 / n as f64 - fx).abs())
            })
            .fold(0.0, f64::max);
        assert!(ks < 1.628 / (n as f64).sqrt(), "KS {ks} for λ = {lambda}");
    }
}

fn small_graph() -> impl Strategy<Value = WeightedDigraph> {
    (2usize..8).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n, 1u32..6), 1..(3 * n)).prop_map(move |es| {
            WeightedDigraph::from_edges(
                n,
                es.into_iter().filter(|(u, v, _)| u != v).map(|(u, v, w)| (u, v, w as f64)),
            )
            .unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strict_center_matches_brute_force(g in small_graph(), delta in 1.0f64..60.0, slack in 0usize..4) {
        let m = g.m() + slack;
        prop_assume!(m > 0);
        let p = PartitionParams::derive(m, delta).unwrap();
        let view = ActiveView::full(&g);
        for l in 1..=p.levels {
            prop_assert_eq!(find_center_strict(&view, &p, l), brute_center(&view, &p, l));
        }
    }

    #[test]
    fn postconditions_hold(g in small_graph(), delta in 1.0f64..40.0, seed in 0u64..1000, soft in any::<bool>()) {
        prop_assume!(g.m() > 0);
        let view = ActiveView::full(&g);
        let mode = if soft { PartitionMode::soft() } else { PartitionMode::Strict };
        let r = digraph_partition(&view, delta, g.m(), SeedTree::new(seed), &mode).unwrap();
        // Only calls on clusters whose weak diameter is within Δ carry the guarantees.
        let all: Vec<VertexId> = (0..g.n()).collect();
        prop_assume!(weak_diameter(&g, &all) <= delta);
        let checked = check_call(&g, &view, delta, g.m(), &r, &mode);
        prop_assert!(checked.is_ok(), "{:?}", checked);
    }
}
