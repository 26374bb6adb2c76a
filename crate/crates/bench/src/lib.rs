//! Benchmark inputs shared by the criterion benches.

use dagembed::generators::{generate, Family, WeightDist};
use dagembed::WeightedDigraph;

/// Named graphs of roughly `n` vertices from each generator family.
pub fn workloads(n: usize) -> Vec<(String, WeightedDigraph)> {
    let side = (n as f64).sqrt().round().max(2.0) as usize;
    let w = WeightDist::Uniform { max: 16.0 };
    vec![
        (format!("cycle/{n}"), generate(&Family::Cycle { n }, &w, 1).unwrap()),
        (format!("er/{n}"), generate(&Family::Er { n, p: 4.0 / n as f64 }, &w, 1).unwrap()),
        (format!("torus/{}", side * side), generate(&Family::Torus { rows: side, cols: side }, &w, 1).unwrap()),
        (format!("layered/{n}"), generate(&Family::Layered { n }, &w, 1).unwrap()),
    ]
}

#[cfg(test)]
mod tests {
    #[test]
    fn workloads_are_nonempty() {
        for (name, g) in super::workloads(64) {
            assert!(g.n() >= 49 && g.m() > 0, "{name}");
        }
    }
}
