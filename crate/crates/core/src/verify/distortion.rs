use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::EmbedConfig;
use crate::dag::PreparedDag;
use crate::embed::{draw_config, sample_embedding_with};
use crate::graph::{Distances, VertexId, WeightedDigraph};
use crate::partition::PartitionError;

/// Which ordered pairs to measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairSpec {
    /// Every ordered pair `s ≠ t` with `t` reachable from `s`.
    All,
    /// `(u, v)` for every edge.
    Adjacent,
    /// `(v, u)` for every edge `(u, v)` whose reverse is reachable.
    AdjacentReversed,
    List(Vec<(VertexId, VertexId)>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub s: VertexId,
    pub t: VertexId,
    pub d_g: f64,
    pub mean_embedded: f64,
    pub max_embedded: f64,
    pub samples: usize,
    pub stretch: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistortionReport {
    pub pairs: Vec<PairRecord>,
    /// Mean over pairs of the per-pair expected stretch.
    pub mean_stretch: f64,
    /// Standard error of `mean_stretch` across samples.
    pub std_error: f64,
    pub max_mean_stretch: f64,
    pub n: usize,
    pub m: usize,
    pub samples: usize,
    pub config: EmbedConfig,
}

#[derive(Debug, Error, PartialEq)]
pub enum DistortionError {
    #[error("pair ({s}, {t}) is not a reachable pair of distinct vertices")]
    BadPair { s: VertexId, t: VertexId },
    #[error("no pairs to measure")]
    NoPairs,
    #[error("samples must be at least 1")]
    NoSamples,
    #[error("sample {sample}: pair ({s}, {t}) reachable in {reached} of the two DAGs")]
    Exclusivity { sample: usize, s: VertexId, t: VertexId, reached: usize },
    #[error("sample {sample}: no path realizes the distance of ({s}, {t})")]
    Witness { sample: usize, s: VertexId, t: VertexId },
    #[error("sample {sample}: output is not acyclic")]
    Cyclic { sample: usize },
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

fn resolve_pairs(dist: &Distances<'_>, spec: &PairSpec) -> Result<Vec<(VertexId, VertexId)>, DistortionError> {
    let g = dist.graph();
    let n = g.n();
    let pairs: Vec<(VertexId, VertexId)> = match spec {
        PairSpec::All => (0..n)
            .flat_map(|s| (0..n).map(move |t| (s, t)))
            .filter(|&(s, t)| s != t && dist.reaches(s, t))
            .collect(),
        PairSpec::Adjacent => g.edges().iter().map(|e| (e.src, e.dst)).collect(),
        PairSpec::AdjacentReversed => g
            .edges()
            .iter()
            .map(|e| (e.dst, e.src))
            .filter(|&(s, t)| dist.reaches(s, t))
            .collect(),
        PairSpec::List(l) => l.clone(),
    };
    for &(s, t) in &pairs {
        if s >= n || t >= n || s == t || !dist.reaches(s, t) || dist.get(s, t) <= 0.0 {
            return Err(DistortionError::BadPair { s, t });
        }
    }
    if pairs.is_empty() {
        return Err(DistortionError::NoPairs);
    }
    Ok(pairs)
}

pub fn estimate_distortion(
    g: &WeightedDigraph,
    pairs: &PairSpec,
    samples: usize,
    cfg: &EmbedConfig,
) -> Result<DistortionReport, DistortionError> {
    estimate_distortion_with(&Distances::new(g), pairs, samples, cfg)
}

/// Monte-Carlo expected stretch. In each sample the embedded distance of
/// `(s, t)` is its distance in whichever DAG reaches `t` from `s`; one in
/// every hundred measurements is checked against an explicit path.
pub fn estimate_distortion_with(
    dist: &Distances<'_>,
    pairs: &PairSpec,
    samples: usize,
    cfg: &EmbedConfig,
) -> Result<DistortionReport, DistortionError> {
    if samples == 0 {
        return Err(DistortionError::NoSamples);
    }
    let g = dist.graph();
    let pairs = resolve_pairs(dist, pairs)?;
    // Pair indices grouped by source.
    let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, &(s, _)) in pairs.iter().enumerate() {
        by_source[s].push(i);
    }
    let mut sum = vec![0.0; pairs.len()];
    let mut max = vec![0.0f64; pairs.len()];
    let mut per_sample = Vec::with_capacity(samples);
    let mut counter = 0usize;
    for k in 0..samples {
        let e = sample_embedding_with(dist, &draw_config(cfg, k))?;
        let p1 = PreparedDag::new(&e.pair.d1.graph).map_err(|_| DistortionError::Cyclic { sample: k })?;
        let p2 = PreparedDag::new(&e.pair.d2.graph).map_err(|_| DistortionError::Cyclic { sample: k })?;
        let mut stretch_sum = 0.0;
        for (s, idx) in by_source.iter().enumerate() {
            if idx.is_empty() {
                continue;
            }
            let r1 = p1.sssp(s);
            let r2 = p2.sssp(s);
            for &i in idx {
                let t = pairs[i].1;
                let (a, b) = (r1[t].is_finite(), r2[t].is_finite());
                if a == b {
                    return Err(DistortionError::Exclusivity { sample: k, s, t, reached: a as usize * 2 });
                }
                let (d, prep) = if a { (r1[t], &p1) } else { (r2[t], &p2) };
                if counter % 100 == 0 {
                    let path = prep.path(s, t).ok_or(DistortionError::Witness { sample: k, s, t })?;
                    let dg = if a { &e.pair.d1.graph } else { &e.pair.d2.graph };
                    let len: f64 = path
                        .windows(2)
                        .map(|w| dg.find_edge(w[0], w[1]).map_or(f64::INFINITY, |id| dg.edge(id).weight))
                        .sum();
                    if len != d || path.first() != Some(&s) || path.last() != Some(&t) {
                        return Err(DistortionError::Witness { sample: k, s, t });
                    }
                }
                counter += 1;
                sum[i] += d;
                max[i] = max[i].max(d);
                stretch_sum += d / dist.get(s, t);
            }
        }
        per_sample.push(stretch_sum / pairs.len() as f64);
    }
    let records: Vec<PairRecord> = pairs
        .iter()
        .enumerate()
        .map(|(i, &(s, t))| {
            let d_g = dist.get(s, t);
            let mean = sum[i] / samples as f64;
            PairRecord {
                s,
                t,
                d_g,
                mean_embedded: mean,
                max_embedded: max[i],
                samples,
                stretch: mean / d_g,
            }
        })
        .collect();
    let mean_stretch = per_sample.iter().sum::<f64>() / samples as f64;
    let std_error = if samples > 1 {
        let var = per_sample.iter().map(|x| (x - mean_stretch).powi(2)).sum::<f64>() / (samples - 1) as f64;
        (var / samples as f64).sqrt()
    } else {
        0.0
    };
    let max_mean_stretch = records.iter().map(|r| r.stretch).fold(0.0, f64::max);
    Ok(DistortionReport {
        pairs: records,
        mean_stretch,
        std_error,
        max_mean_stretch,
        n: g.n(),
        m: g.m(),
        samples,
        config: *cfg,
    })
}
