use std::error::Error;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;
use dagembed::dag::check_two_hop;
use dagembed::embed::build_dag_cover_with;
use dagembed::embed::sample_embedding_with;
use dagembed::generators::{generate, Family, WeightDist};
use dagembed::graph::io::{format_edge_list, parse_edge_list};
use dagembed::graph::{format_graph, parse_graph, Distances, Edge, WeightedDigraph};
use dagembed::laminar::validate_laminar_with;
use dagembed::verify::{check_structural_with, estimate_distortion_with, sparsity_envelope, PairSpec};
use dagembed::{two_hop_spanner, EmbedConfig, LaminarOrder, Mode};
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::{sha256_hex, FileHash, Outputs, RunManifest, MANIFEST_NAME};
use crate::{Cli, Command, FamilyArg, ModeArg, WeightArg};

type Result<T> = std::result::Result<T, Box<dyn Error>>;

pub enum Outcome {
    Clean,
    Violations,
}

/// What a producing command wrote, for its manifest.
struct Produced {
    dir: PathBuf,
    manifest_name: String,
    outputs: Vec<FileHash>,
    config: Option<EmbedConfig>,
    seed: u64,
    input: Option<FileHash>,
}

pub fn run(cmd: Command, argv: Vec<String>) -> Result<Outcome> {
    execute(cmd, argv).map(|(o, _)| o)
}

fn execute(cmd: Command, mut argv: Vec<String>) -> Result<(Outcome, Option<Vec<FileHash>>)> {
    let start = Instant::now();
    let name = command_name(&cmd).to_string();
    let produced = match cmd {
        Command::Gen {
            family,
            n,
            p,
            rows,
            cols,
            weights,
            max_weight,
            seed,
            out,
        } => gen(family, n, p, rows, cols, weights, max_weight, seed, &out)?,
        Command::Sample { input, embed, out_dir } => {
            let (g, hash) = load_input(&input, &mut argv)?;
            sample(&g, embed.config(), hash, &out_dir)?
        }
        Command::Cover { input, k, embed, out_dir } => {
            let (g, hash) = load_input(&input, &mut argv)?;
            cover(&g, k, embed.config(), hash, &out_dir)?
        }
        Command::Distortion {
            input,
            samples,
            pairs,
            embed,
            out_dir,
        } => {
            let (g, hash) = load_input(&input, &mut argv)?;
            distortion(&g, samples, &pairs, embed.config(), hash, &out_dir)?
        }
        Command::Verify {
            input,
            d1,
            d2,
            order,
            cut,
            mode,
        } => return Ok((verify(&input, &d1, &d2, &order, cut.as_deref(), mode)?, None)),
        Command::Spanner { n, out, check } => return Ok((spanner(n, out.as_deref(), check.as_deref())?, None)),
        Command::Replay { manifest, out_dir } => return Ok((replay(&manifest, &out_dir)?, None)),
    };
    let manifest = RunManifest {
        command: name,
        argv,
        config: produced.config,
        seed: produced.seed,
        input: produced.input,
        outputs: produced.outputs.clone(),
        wall_time_ms: start.elapsed().as_millis(),
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    crate::output::write_atomic(&produced.dir.join(&produced.manifest_name), text.as_bytes())?;
    Ok((Outcome::Clean, Some(produced.outputs)))
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Gen { .. } => "gen",
        Command::Sample { .. } => "sample",
        Command::Cover { .. } => "cover",
        Command::Verify { .. } => "verify",
        Command::Distortion { .. } => "distortion",
        Command::Spanner { .. } => "spanner",
        Command::Replay { .. } => "replay",
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn read_graph(path: &Path) -> Result<WeightedDigraph> {
    parse_graph(&read(path)?).map_err(|e| format!("{}: {e}", path.display()).into())
}

/// Parse the input graph, hash it, and point the recorded argv at its
/// absolute path so the manifest replays from any directory.
fn load_input(path: &Path, argv: &mut [String]) -> Result<(WeightedDigraph, FileHash)> {
    let text = read(path)?;
    let g = parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let abs = fs::canonicalize(path)?.to_string_lossy().into_owned();
    let mut i = 0;
    while i < argv.len() {
        if argv[i] == "--input" && i + 1 < argv.len() {
            argv[i + 1] = abs.clone();
            i += 1;
        } else if argv[i].starts_with("--input=") {
            argv[i] = format!("--input={abs}");
        }
        i += 1;
    }
    Ok((
        g,
        FileHash {
            file: abs,
            sha256: sha256_hex(text.as_bytes()),
        },
    ))
}

#[allow(clippy::too_many_arguments)]
fn gen(
    family: FamilyArg,
    n: Option<usize>,
    p: Option<f64>,
    rows: Option<usize>,
    cols: Option<usize>,
    weights: WeightArg,
    max_weight: f64,
    seed: u64,
    out: &Path,
) -> Result<Produced> {
    let need_n = || n.ok_or("--n is required for this family");
    let fam = match family {
        FamilyArg::Cycle => Family::Cycle { n: need_n()? },
        FamilyArg::Er => Family::Er {
            n: need_n()?,
            p: p.ok_or("--p is required for er")?,
        },
        FamilyArg::Layered => Family::Layered { n: need_n()? },
        FamilyArg::Torus => Family::Torus {
            rows: rows.ok_or("--rows is required for torus")?,
            cols: cols.ok_or("--cols is required for torus")?,
        },
    };
    let w = match weights {
        WeightArg::Unit => WeightDist::Unit,
        WeightArg::Uniform => WeightDist::Uniform { max: max_weight },
        WeightArg::Spread => WeightDist::ExpSpread { max: max_weight },
    };
    let g = generate(&fam, &w, seed)?;
    let file = out.file_name().ok_or("--out must name a file")?.to_string_lossy().into_owned();
    let dir = out.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut o = Outputs::new(&dir);
    o.put(&file, format_graph(&g).as_bytes())?;
    println!("wrote {} (n={}, m={})", out.display(), g.n(), g.m());
    Ok(Produced {
        dir,
        manifest_name: format!("{file}.manifest.json"),
        outputs: o.written,
        config: None,
        seed,
        input: None,
    })
}

fn cut_text(g: &WeightedDigraph, order: &LaminarOrder) -> String {
    let edges: Vec<Edge> = order.global_cut.iter().map(|&e| g.edge(e)).collect();
    format_edge_list(g.n(), edges.iter())
}

fn sample(g: &WeightedDigraph, cfg: EmbedConfig, input: FileHash, out_dir: &Path) -> Result<Produced> {
    let dist = Distances::new(g);
    let e = sample_embedding_with(&dist, &cfg)?;
    let mut o = Outputs::new(out_dir);
    o.put("d1.txt", format_graph(&e.pair.d1.graph).as_bytes())?;
    o.put("d2.txt", format_graph(&e.pair.d2.graph).as_bytes())?;
    o.put("order.txt", e.order.to_text().as_bytes())?;
    o.put("cut.txt", cut_text(g, &e.order).as_bytes())?;
    let sidecar = json!({
        "order_file": "order.txt",
        "cut_file": "cut.txt",
        "d1_file": "d1.txt",
        "d2_file": "d2.txt",
        "mode": cfg.mode,
        "provenance_counts": {
            "d1": e.pair.d1.provenance_counts(),
            "d2": e.pair.d2.provenance_counts(),
        },
        "sparsity": {
            "n": g.n(),
            "m": g.m(),
            "d1_edges": e.pair.d1.graph.m(),
            "d2_edges": e.pair.d2.graph.m(),
            "envelope": sparsity_envelope(g),
        },
    });
    o.put_json("pair.json", &sidecar)?;
    println!(
        "sampled: |D1|={} |D2|={} clusters={} depth={}",
        e.pair.d1.graph.m(),
        e.pair.d2.graph.m(),
        e.order.clusters.len(),
        e.order.max_depth()
    );
    Ok(Produced {
        dir: out_dir.to_path_buf(),
        manifest_name: MANIFEST_NAME.into(),
        outputs: o.written,
        config: Some(cfg),
        seed: cfg.seed,
        input: Some(input),
    })
}

#[derive(Serialize)]
struct CoverEntry {
    file: String,
    draw: usize,
    dag: &'static str,
    edges: usize,
}

fn cover(g: &WeightedDigraph, k: usize, cfg: EmbedConfig, input: FileHash, out_dir: &Path) -> Result<Produced> {
    if k == 0 {
        return Err("--k must be at least 1".into());
    }
    let dist = Distances::new(g);
    let c = build_dag_cover_with(&dist, k, &cfg)?;
    let mut o = Outputs::new(out_dir);
    let mut entries = Vec::new();
    for (i, d) in c.dags.iter().enumerate() {
        let file = format!("dag_{i}.txt");
        o.put(&file, format_graph(&d.graph).as_bytes())?;
        entries.push(CoverEntry {
            file,
            draw: i / 2,
            dag: if i % 2 == 0 { "d1" } else { "d2" },
            edges: d.graph.m(),
        });
    }
    let total: usize = entries.iter().map(|e| e.edges).sum();
    o.put_json(
        "summary.json",
        &json!({ "k": k, "n": g.n(), "m": g.m(), "config": cfg, "total_edges": total, "dags": entries }),
    )?;
    println!("cover: {} DAGs, {} edges total", 2 * k, total);
    Ok(Produced {
        dir: out_dir.to_path_buf(),
        manifest_name: MANIFEST_NAME.into(),
        outputs: o.written,
        config: Some(cfg),
        seed: cfg.seed,
        input: Some(input),
    })
}

fn parse_pairs(spec: &str) -> Result<PairSpec> {
    Ok(match spec {
        "all" => PairSpec::All,
        "adjacent" => PairSpec::Adjacent,
        "reversed" => PairSpec::AdjacentReversed,
        path => {
            let mut list = Vec::new();
            for (i, line) in read(Path::new(path))?.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let toks: Vec<&str> = line.split_whitespace().collect();
                let bad = || format!("{path}:{}: expected \"s t\"", i + 1);
                if toks.len() != 2 {
                    return Err(bad().into());
                }
                list.push((toks[0].parse().map_err(|_| bad())?, toks[1].parse().map_err(|_| bad())?));
            }
            PairSpec::List(list)
        }
    })
}

fn distortion(
    g: &WeightedDigraph,
    samples: usize,
    pairs: &str,
    cfg: EmbedConfig,
    input: FileHash,
    out_dir: &Path,
) -> Result<Produced> {
    let spec = parse_pairs(pairs)?;
    let dist = Distances::new(g);
    let rep = estimate_distortion_with(&dist, &spec, samples, &cfg)?;
    let mut o = Outputs::new(out_dir);
    o.put_json("distortion.json", &rep)?;
    println!(
        "mean stretch {:.6} (se {:.6}) over {} pairs, max per-pair {:.6}",
        rep.mean_stretch,
        rep.std_error,
        rep.pairs.len(),
        rep.max_mean_stretch
    );
    Ok(Produced {
        dir: out_dir.to_path_buf(),
        manifest_name: MANIFEST_NAME.into(),
        outputs: o.written,
        config: Some(cfg),
        seed: cfg.seed,
        input: Some(input),
    })
}

/// Witness lines go to stdout; a closed pipe is not an error.
fn emit(lines: &[String]) {
    let mut out = std::io::stdout().lock();
    for l in lines {
        if writeln!(out, "{l}").is_err() {
            return;
        }
    }
}

fn tagged<T: Serialize>(check: &str, v: &T) -> String {
    let mut val = serde_json::to_value(v).expect("serializable");
    if let Value::Object(map) = &mut val {
        map.insert("check".into(), Value::String(check.into()));
    }
    val.to_string()
}

fn verify(input: &Path, d1: &Path, d2: &Path, order: &Path, cut: Option<&Path>, mode: ModeArg) -> Result<Outcome> {
    let g = read_graph(input)?;
    let d1 = read_graph(d1)?;
    let d2 = read_graph(d2)?;
    let mut lo = LaminarOrder::from_text(&read(order)?).map_err(|e| format!("{}: {e}", order.display()))?;
    let mode = match mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Fast => Mode::Fast,
    };
    let dist = Distances::new(&g);
    let mut lines = Vec::new();
    if let Some(path) = cut {
        let (_, edges) = parse_edge_list(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
        for (line, e) in edges {
            let id = g
                .find_edge(e.src, e.dst)
                .ok_or_else(|| format!("{}:{line}: ({}, {}) is not an edge of the input", path.display(), e.src, e.dst))?;
            lo.global_cut.push(id);
        }
        lo.global_cut.sort_unstable();
        lo.global_cut.dedup();
        if lo.order.len() == g.n() {
            for v in &validate_laminar_with(&dist, &lo).violations {
                lines.push(tagged("laminar", v));
            }
        }
    }
    let rep = check_structural_with(&dist, &d1, &d2, &lo, mode);
    if lo.order.len() != g.n() {
        lines.push(json!({"check": "order", "kind": "vertex_count", "n": lo.order.len(), "expected": g.n()}).to_string());
    }
    for v in &rep.violations {
        lines.push(tagged("structural", v));
    }
    emit(&lines);
    eprintln!("verify: {} pairs checked, {} violations", rep.pairs_checked, lines.len());
    Ok(if lines.is_empty() { Outcome::Clean } else { Outcome::Violations })
}

fn spanner(n: Option<usize>, out: Option<&Path>, check: Option<&Path>) -> Result<Outcome> {
    if let Some(path) = check {
        let (n, edges) = parse_edge_list(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
        let pairs: Vec<(usize, usize)> = edges.iter().map(|(_, e)| (e.src, e.dst)).collect();
        return Ok(match check_two_hop(n, &pairs) {
            Ok(()) => {
                eprintln!("spanner: 2-hop property holds on {n} positions ({} edges)", pairs.len());
                Outcome::Clean
            }
            Err((i, j)) => {
                emit(&[json!({"check": "spanner", "kind": "no_two_hop_path", "from": i, "to": j}).to_string()]);
                Outcome::Violations
            }
        });
    }
    let n = n.ok_or("--n or --check is required")?;
    let edges: Vec<Edge> = two_hop_spanner(n)
        .into_iter()
        .map(|(src, dst)| Edge { src, dst, weight: 1.0 })
        .collect();
    let text = format_edge_list(n, edges.iter());
    match out {
        Some(p) => crate::output::write_atomic(p, text.as_bytes())?,
        None => print!("{text}"),
    }
    Ok(Outcome::Clean)
}

fn replay(manifest: &Path, out_dir: &Path) -> Result<Outcome> {
    let m: RunManifest = serde_json::from_str(&read(manifest)?).map_err(|e| format!("{}: {e}", manifest.display()))?;
    let cli = Cli::try_parse_from(std::iter::once("dagembed".to_string()).chain(m.argv.iter().cloned()))
        .map_err(|e| format!("manifest argv does not parse: {e}"))?;
    let mut cmd = cli.command;
    match &mut cmd {
        Command::Gen { out, .. } => {
            let name = out.file_name().ok_or("manifest output has no file name")?.to_owned();
            *out = out_dir.join(name);
        }
        Command::Sample { input, out_dir: d, .. }
        | Command::Cover { input, out_dir: d, .. }
        | Command::Distortion { input, out_dir: d, .. } => {
            let recorded = m.input.as_ref().ok_or("manifest has no input record")?;
            let text = read(Path::new(&recorded.file))?;
            if sha256_hex(text.as_bytes()) != recorded.sha256 {
                return Err(format!("{}: input changed since the manifest was written", recorded.file).into());
            }
            *input = PathBuf::from(&recorded.file);
            *d = out_dir.to_path_buf();
        }
        _ => return Err(format!("command {:?} does not write a manifest", m.command).into()),
    }
    let (_, outputs) = execute(cmd, m.argv.clone())?;
    let outputs = outputs.unwrap_or_default();
    let mut lines = Vec::new();
    for want in &m.outputs {
        let got = outputs.iter().find(|o| o.file == want.file);
        if got.map(|g| &g.sha256) != Some(&want.sha256) {
            lines.push(
                json!({"check": "replay", "kind": "hash_mismatch", "file": want.file, "expected": want.sha256,
                       "got": got.map(|g| g.sha256.clone())})
                .to_string(),
            );
        }
    }
    for got in &outputs {
        if !m.outputs.iter().any(|w| w.file == got.file) {
            lines.push(json!({"check": "replay", "kind": "unexpected_output", "file": got.file}).to_string());
        }
    }
    emit(&lines);
    eprintln!("replay: {} outputs, {} mismatches", m.outputs.len(), lines.len());
    Ok(if lines.is_empty() { Outcome::Clean } else { Outcome::Violations })
}
