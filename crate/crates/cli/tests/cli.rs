use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dagembed")).args(args).output().unwrap()
}

fn s(p: &Path) -> String {
    p.to_string_lossy().into_owned()
}

fn gen_cycle(dir: &Path, n: usize) -> String {
    let g = dir.join("g.txt");
    let out = run(&["gen", "--family", "cycle", "--n", &n.to_string(), "--weights", "uniform", "--seed", "1", "--out", &s(&g)]);
    assert!(out.status.success());
    s(&g)
}

fn sample(input: &str, dir: &Path, extra: &[&str]) -> String {
    let mut a = vec!["sample", "--input", input, "--seed", "7"];
    a.extend_from_slice(extra);
    let d = s(dir);
    a.extend_from_slice(&["--out-dir", &d]);
    assert!(run(&a).status.success());
    d
}

#[test]
fn gen_examples() {
    let t = tempfile::tempdir().unwrap();
    let p = t.path().join("c4.txt");
    assert!(run(&["gen", "--family", "cycle", "--n", "4", "--seed", "0", "--out", &s(&p)]).status.success());
    assert_eq!(fs::read_to_string(&p).unwrap(), "4 4\n0 1 1\n1 2 1\n2 3 1\n3 0 1\n");
    let p = t.path().join("k10.txt");
    assert!(run(&["gen", "--family", "er", "--n", "10", "--p", "1", "--seed", "0", "--out", &s(&p)]).status.success());
    assert!(fs::read_to_string(&p).unwrap().starts_with("10 90\n"));
    let p = t.path().join("t.txt");
    assert!(run(&["gen", "--family", "torus", "--rows", "4", "--cols", "4", "--seed", "0", "--out", &s(&p)]).status.success());
    assert!(fs::read_to_string(&p).unwrap().starts_with("16 32\n"));
    assert!(t.path().join("t.txt.manifest.json").exists());
}

#[test]
fn verify_fresh_sample_is_clean() {
    let t = tempfile::tempdir().unwrap();
    let g = gen_cycle(t.path(), 20);
    for (k, extra) in [&[][..], &["--mode", "fast"], &["--partition", "soft"]].iter().enumerate() {
        let d = sample(&g, &t.path().join(format!("s{k}")), extra);
        let mode = if extra.contains(&"fast") { "fast" } else { "exact" };
        let out = run(&[
            "verify", "--input", &g, "--d1", &format!("{d}/d1.txt"), "--d2", &format!("{d}/d2.txt"), "--order",
            &format!("{d}/order.txt"), "--cut", &format!("{d}/cut.txt"), "--mode", mode,
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn verify_tampered_dag_exits_2_with_witnesses() {
    let t = tempfile::tempdir().unwrap();
    let g = gen_cycle(t.path(), 12);
    let d = sample(&g, &t.path().join("s"), &[]);
    let d1 = format!("{d}/d1.txt");
    let text = fs::read_to_string(&d1).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let toks: Vec<&str> = lines[1].split_whitespace().collect();
    lines[1] = format!("{} {} {}", toks[1], toks[0], toks[2]);
    fs::write(&d1, lines.join("\n") + "\n").unwrap();
    let out = run(&["verify", "--input", &g, "--d1", &d1, "--d2", &format!("{d}/d2.txt"), "--order", &format!("{d}/order.txt")]);
    assert_eq!(out.status.code(), Some(2));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let first: serde_json::Value = serde_json::from_str(stdout.lines().next().unwrap()).unwrap();
    assert_eq!(first["check"], "structural");
    assert!(first["kind"].is_string());
}

#[test]
fn verify_detects_empty_cut() {
    let t = tempfile::tempdir().unwrap();
    let g = gen_cycle(t.path(), 12);
    let d = sample(&g, &t.path().join("s"), &[]);
    let cut = format!("{d}/cut.txt");
    let text = fs::read_to_string(&cut).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let n: usize = lines[0].split_whitespace().next().unwrap().parse().unwrap();
    assert!(lines.len() > 1, "a cycle always needs a cut edge");
    // Without any cut edge some cycle edge runs backward in the order.
    fs::write(&cut, format!("{n} 0\n")).unwrap();
    let out = run(&[
        "verify", "--input", &g, "--d1", &format!("{d}/d1.txt"), "--d2", &format!("{d}/d2.txt"), "--order",
        &format!("{d}/order.txt"), "--cut", &cut,
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"check\":\"laminar\""));
}

#[test]
fn same_seed_same_hashes() {
    let t = tempfile::tempdir().unwrap();
    let g = gen_cycle(t.path(), 16);
    let a = sample(&g, &t.path().join("a"), &[]);
    let b = sample(&g, &t.path().join("b"), &[]);
    let hashes = |d: &str| {
        let m: serde_json::Value = serde_json::from_str(&fs::read_to_string(format!("{d}/manifest.json")).unwrap()).unwrap();
        m["outputs"].clone()
    };
    assert_eq!(hashes(&a), hashes(&b));
    let c = sample(&g, &t.path().join("c"), &["--mode", "fast"]);
    assert_ne!(hashes(&a), hashes(&c));
}

#[test]
fn replay_detects_changed_input() {
    let t = tempfile::tempdir().unwrap();
    let g = gen_cycle(t.path(), 8);
    let d = sample(&g, &t.path().join("s"), &[]);
    fs::write(&g, "2 1\n0 1 1\n").unwrap();
    let out = run(&["replay", &format!("{d}/manifest.json"), "--out-dir", &s(&t.path().join("r"))]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_and_io_errors_exit_1() {
    assert_eq!(run(&["sample", "--input", "x.txt", "--out-dir", "o"]).status.code(), Some(1));
    assert_eq!(run(&["sample", "--nonsense"]).status.code(), Some(1));
    assert_eq!(
        run(&["sample", "--input", "/nonexistent/g.txt", "--seed", "1", "--out-dir", "/tmp/x"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let t = tempfile::tempdir().unwrap();
    let bad = t.path().join("bad.txt");
    fs::write(&bad, "3 1\n0 7 1\n").unwrap();
    assert_eq!(run(&["sample", "--input", &s(&bad), "--seed", "1", "--out-dir", &s(t.path())]).status.code(), Some(1));
}

#[test]
fn spanner_emit_and_check() {
    let out = run(&["spanner", "--n", "4"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "4 4\n0 1 1\n1 2 1\n1 3 1\n2 3 1\n");
    let t = tempfile::tempdir().unwrap();
    let p = t.path().join("h.txt");
    fs::write(&p, "4 2\n0 1 1\n2 3 1\n").unwrap();
    let out = run(&["spanner", "--check", &s(&p)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("no_two_hop_path"));
}

#[test]
fn cover_and_distortion_outputs() {
    let t = tempfile::tempdir().unwrap();
    let g = gen_cycle(t.path(), 10);
    let c = t.path().join("c");
    assert!(run(&["cover", "--input", &g, "--k", "2", "--seed", "1", "--out-dir", &s(&c)]).status.success());
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(c.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["dags"].as_array().unwrap().len(), 4);
    let pairs = t.path().join("pairs.txt");
    fs::write(&pairs, "# s t\n0 5\n3 1\n").unwrap();
    let d = t.path().join("d");
    let out = run(&["distortion", "--input", &g, "--samples", "5", "--pairs", &s(&pairs), "--seed", "2", "--out-dir", &s(&d)]);
    assert!(out.status.success());
    let rep: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("distortion.json")).unwrap()).unwrap();
    assert_eq!(rep["pairs"].as_array().unwrap().len(), 2);
    assert!(rep["mean_stretch"].as_f64().unwrap() >= 1.0);
}
