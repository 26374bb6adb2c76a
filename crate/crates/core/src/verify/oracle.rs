use crate::graph::WeightedDigraph;

/// All-pairs distances and reachability by Floyd–Warshall over the raw
/// edge list.
#[derive(Clone, Debug, PartialEq)]
pub struct Oracle {
    pub dist: Vec<Vec<f64>>,
    pub reach: Vec<Vec<bool>>,
}

/// Reference tables for graphs with at most 10 vertices.
pub fn brute_force_oracle(g: &WeightedDigraph) -> Oracle {
    let n = g.n();
    assert!(n <= 10, "brute-force oracle is for n ≤ 10, got {n}");
    let mut dist = vec![vec![f64::INFINITY; n]; n];
    let mut reach = vec![vec![false; n]; n];
    for i in 0..n {
        dist[i][i] = 0.0;
        reach[i][i] = true;
    }
    for e in g.edges() {
        dist[e.src][e.dst] = dist[e.src][e.dst].min(e.weight);
        reach[e.src][e.dst] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if dist[i][k] + dist[k][j] < dist[i][j] {
                    dist[i][j] = dist[i][k] + dist[k][j];
                }
                reach[i][j] |= reach[i][k] && reach[k][j];
            }
        }
    }
    Oracle { dist, reach }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{sssp, ActiveView};

    #[test]
    fn unit_c4() {
        let g = WeightedDigraph::from_edges(4, (0..4).map(|i| (i, (i + 1) % 4, 1.0))).unwrap();
        let o = brute_force_oracle(&g);
        assert_eq!(o.dist[0][2], 2.0);
        assert_eq!(o.dist[2][0], 2.0);
    }

    #[test]
    fn disconnected_pair() {
        let g = WeightedDigraph::from_edges(3, [(0, 1, 1.0)]).unwrap();
        let o = brute_force_oracle(&g);
        assert!(o.dist[1][0].is_infinite() && !o.reach[1][0]);
        assert!(o.dist[0][2].is_infinite() && !o.reach[0][2]);
    }

    #[test]
    fn agrees_with_dijkstra_on_all_4_vertex_digraphs() {
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|u| (0..4).filter(move |&v| v != u).map(move |v| (u, v))).collect();
        for mask in 0u32..4096 {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &(u, v))| (u, v, 1.0));
            let g = WeightedDigraph::from_edges(4, edges).unwrap();
            let o = brute_force_oracle(&g);
            let view = ActiveView::full(&g);
            for s in 0..4 {
                let d = sssp(&view, s);
                assert_eq!(d, o.dist[s], "mask {mask}");
                for t in 0..4 {
                    assert_eq!(d[t].is_finite(), o.reach[s][t]);
                }
            }
        }
    }
}
