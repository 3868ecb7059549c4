use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn brc(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brc"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn brc")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json_file(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn tree_outputs_and_cache_rerun_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--threads", "1", "tree", "--depth", "4", "--out", "run"];
    let first = brc(dir.path(), &args);
    assert_eq!(code(&first), 0, "{}", String::from_utf8_lossy(&first.stderr));
    let files = ["run.spectrum.csv", "run.summary.json", "run.curves.csv", "run.hist.csv"];
    let before: Vec<Vec<u8>> = files.iter().map(|f| fs::read(dir.path().join(f)).unwrap()).collect();

    let second = brc(dir.path(), &args);
    assert_eq!(code(&second), 0);
    assert!(String::from_utf8_lossy(&second.stdout).contains("(cached)"));
    for (f, old) in files.iter().zip(&before) {
        assert_eq!(&fs::read(dir.path().join(f)).unwrap(), old, "{f} changed on rerun");
    }

    let summary = json_file(&dir.path().join("run.summary.json"));
    assert_eq!(summary["count"], 750);
    let cache = fs::read_to_string(dir.path().join("run.spectrum.csv")).unwrap();
    assert!(cache.starts_with("N,functional,convention,count\n4,L,outermost,750\n"));
    let curves = fs::read_to_string(dir.path().join("run.curves.csv")).unwrap();
    assert!(curves.starts_with("q,tau,D,alpha,f\n"));
    assert_eq!(curves.lines().count(), 202);
}

#[test]
fn depth_one_gives_six_equal_values() {
    let dir = tempfile::tempdir().unwrap();
    let o = brc(dir.path(), &["tree", "--depth", "1", "--out", "one"]);
    assert_eq!(code(&o), 0);
    let cache = fs::read_to_string(dir.path().join("one.spectrum.csv")).unwrap();
    let values: Vec<&str> = cache.lines().skip(2).collect();
    assert_eq!(values.len(), 6);
    assert!(values.iter().all(|v| *v == values[0]));
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("cfg.json"), r#"{"depth": 3, "out": "from_cfg"}"#).unwrap();
    let o = brc(dir.path(), &["--config", "cfg.json", "tree"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_file(&dir.path().join("from_cfg.summary.json"))["n"], 3);

    let o = brc(dir.path(), &["--config", "cfg.json", "tree", "--depth", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_file(&dir.path().join("from_cfg.summary.json"))["n"], 2);

    fs::write(dir.path().join("bad.json"), r#"{"depht": 3}"#).unwrap();
    assert_eq!(code(&brc(dir.path(), &["--config", "bad.json", "tree"])), 2);
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = brc(dir.path(), &["group", "verify", "--samples", "20", "--out", "v.json"]);
    assert_eq!(code(&ok), 0);
    assert_eq!(json_file(&dir.path().join("v.json"))["passed"], true);

    assert_eq!(code(&brc(dir.path(), &["group", "verify", "--samples", "0"])), 2);

    let strict = brc(dir.path(), &["group", "verify", "--samples", "20", "--tol", "1e-30"]);
    assert_eq!(code(&strict), 1);
    assert!(String::from_utf8_lossy(&strict.stderr).contains("failing relations"));
}

#[test]
fn markov_reads_matching_cache() {
    let dir = tempfile::tempdir().unwrap();
    let o = brc(dir.path(), &["markov", "--depth", "3", "--out", "m.json"]);
    assert_eq!(code(&o), 0);
    let m = json_file(&dir.path().join("m.json"));
    assert!(m["exact"].is_null());
    assert_eq!(m["weight_identity"], true);
    assert_eq!(m["weight_sum"], 9);

    assert_eq!(code(&brc(dir.path(), &["tree", "--depth", "3"])), 0);
    let o = brc(dir.path(), &["markov", "--depth", "3", "--out", "m.json"]);
    assert_eq!(code(&o), 0);
    let m = json_file(&dir.path().join("m.json"));
    assert!(m["exact"]["mean"].as_f64().unwrap() > 0.0);
}

#[test]
fn teich_commands() {
    let dir = tempfile::tempdir().unwrap();
    let o = brc(dir.path(), &["teich", "lambda", "--heights", "0.5,0.5,0.5,0.5,0.5,0.5", "--out", "l.json"]);
    assert_eq!(code(&o), 0);
    let l = json_file(&dir.path().join("l.json"));
    let lambdas: Vec<f64> = l["edges"].as_array().unwrap().iter().map(|e| e["lambda"].as_f64().unwrap()).collect();
    assert_eq!(lambdas.len(), 12);
    assert!(lambdas.iter().all(|&x| x == lambdas[0]));

    let o = brc(dir.path(), &["teich", "mcg", "--word", "t1 t1 t1 t1", "--out", "m.json"]);
    assert_eq!(code(&o), 0);
    let m = json_file(&dir.path().join("m.json"));
    assert_eq!(m["image"], m["u_bar"]);
    assert_eq!(m["structure_passed"], true);

    let o = brc(dir.path(), &["teich", "hexagons", "--heights", "0.1,0.1,0.1,0.1,0.1,0.1"]);
    assert_eq!(code(&o), 3);

    fs::write(dir.path().join("d.json"), r#"{"heights": [0.8, 0.8, 0.8, 0.8, 0.8, 1.2]}"#).unwrap();
    assert_ne!(code(&brc(dir.path(), &["teich", "lambda", "--decoration", "d.json"])), 0);
}

#[test]
fn sine_gordon_tables() {
    let dir = tempfile::tempdir().unwrap();
    let o = brc(dir.path(), &["sg", "action", "--epsilon", "0,0.25,0.5,0.75"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("epsilon,J"));
    let j: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(j[0], 2.0);
    assert!(j.windows(2).all(|w| w[1] < w[0]));

    let o = brc(dir.path(), &["sg", "kink", "--samples", "11"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("kink energy = 1.000000"));

    let o = brc(dir.path(), &["sg", "portrait", "--samples", "21"]);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("phi,p,H\n"));
}

#[test]
fn geodesic_and_orbit_meshes() {
    let dir = tempfile::tempdir().unwrap();
    let o = brc(dir.path(), &["geodesic", "--from", "0.5,0,0", "--to", "0,0.5,0", "--out", "g.txt"]);
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    let (d, l) = (r["distance"].as_f64().unwrap(), r["arc_length"].as_f64().unwrap());
    assert!((d - l).abs() < 1e-9);
    assert!(fs::read_to_string(dir.path().join("g.txt")).unwrap().lines().count() > 2);

    let o = brc(dir.path(), &["group", "orbit", "--words", ";h1", "--samples", "5"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.split("\n\n").filter(|b| !b.trim().is_empty()).count(), 24);

    assert_eq!(code(&brc(dir.path(), &["geodesic", "--from", "2,0,0", "--to", "0,0,0"])), 2);
}
