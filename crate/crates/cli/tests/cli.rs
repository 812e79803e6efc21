use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

use torus_roots::corpus::named_fans;
use torus_roots::random::{instance_rng, random_quasi_affine_fan, FanParams};
use torus_roots::Fan;
use torus_roots_cli::document::FanDocument;
use torus_roots_cli::report::ReportDocument;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_torus-roots"));
    c.env_remove("TORUS_ROOTS_SEARCH_CAP");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> ReportDocument {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad report ({e}): {}\nstderr: {}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn fan_text(name: &str, fan: &Fan) -> String {
    let meta = BTreeMap::from([("name".to_string(), name.to_string())]);
    let mut s = serde_json::to_string_pretty(&FanDocument::from_fan(fan, meta)).unwrap();
    s.push('\n');
    s
}

fn fan_file(name: &str) -> PathBuf {
    golden_dir().join(format!("{name}.fan.json"))
}

fn check_or_update(path: &Path, actual: &str) {
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {}", path.display());
}

#[test]
fn golden_corpus() {
    let commands: [(&str, &[&str]); 3] =
        [("quasi-affine", &[]), ("roots", &["--bound", "2", "--classify"]), ("reconstruct", &[])];
    for (name, fan) in named_fans().unwrap() {
        let path = fan_file(name);
        check_or_update(&path, &fan_text(name, &fan));
        for (cmd, extra) in commands {
            let mut args = vec![cmd, "--input", path.to_str().unwrap(), "--pretty"];
            args.extend_from_slice(extra);
            let out = run(&args);
            assert_eq!(out.status.code(), Some(0), "{name} {cmd}: {}", String::from_utf8_lossy(&out.stderr));
            let text = String::from_utf8(out.stdout).unwrap();
            check_or_update(&golden_dir().join(format!("{name}.{cmd}.json")), &text);
        }
    }
}

fn corpus_path(name: &str) -> String {
    fan_file(name).to_str().unwrap().to_string()
}

#[test]
fn root_counts() {
    let r = report(&run(&["roots", "--input", &corpus_path("affine-plane"), "--bound", "2"]));
    assert_eq!(r.results["count"], 6);
    let r = report(&run(&["roots", "--input", &corpus_path("punctured-plane"), "--bound", "2"]));
    assert_eq!(r.results["count"], 4);
    assert!(r.passed);
}

#[test]
fn cone_commands() {
    let out = run(&["dual", "--input", &corpus_path("affine-plane")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out).results["cones"][0]["self_dual"], true);

    let r = report(&run(&["quasi-affine", "--input", &corpus_path("punctured-plane")]));
    assert_eq!(r.results["quasi_affine"], true);
    let boundary = r.results["boundary_faces"].as_array().unwrap();
    assert_eq!(boundary.len(), 1);
    assert_eq!(boundary[0]["rays"], serde_json::json!([[0, 1], [1, 0]]));

    let r = report(&run(&["faces", "--input", &corpus_path("a1-cone")]));
    assert_eq!(r.results["cones"][0]["faces"].as_array().unwrap().len(), 4);
    assert!(r.passed);
}

#[test]
fn reconstruct_cases() {
    for (name, case) in [("punctured-plane", "Convex"), ("cylinder-2", "HalfSpace"), ("torus-2", "Torus")] {
        let r = report(&run(&["reconstruct", "--input", &corpus_path(name)]));
        assert_eq!(r.results["verdict"], "EQUAL", "{name}");
        assert_eq!(r.results["case"], case, "{name}");
    }
}

const P1: &str = r#"{"schema_version": "torus-roots/1", "lattice_rank": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]]}"#;

#[test]
fn exit_codes() {
    let out = run_stdin(&["roots"], P1);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not quasi-affine"));

    let r = report(&run_stdin(&["quasi-affine"], P1));
    assert_eq!(r.results["quasi_affine"], false);

    let out = run_stdin(&["dual"], "{\n  \"schema_version\": \"torus-roots/1\",\n  \"rays\": [1, 0\n}");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");

    let bad_index = r#"{"schema_version": "torus-roots/1", "lattice_rank": 2, "rays": [[1, 0]], "max_cones": [[0, 3]]}"#;
    let out = run_stdin(&["dual"], bad_index);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("max_cones[0][1]"));

    let wrong_version = r#"{"schema_version": "torus-roots/0", "lattice_rank": 1, "rays": [[1]], "max_cones": [[0]]}"#;
    assert_eq!(run_stdin(&["dual"], wrong_version).status.code(), Some(2));

    assert_eq!(run(&["counterexample", "--d", "1", "--s", "2"]).status.code(), Some(2));
    assert_eq!(run(&["counterexample", "--d", "2", "--s", "2", "--n", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--instances", "0"]).status.code(), Some(2));
    assert_eq!(run(&["roots", "--input", &corpus_path("affine-plane"), "--bound", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));

    let out = bin().args(["reconstruct", "--input", &corpus_path("affine-plane")]).env("TORUS_ROOTS_SEARCH_CAP", "lots").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["reconstruct", "--input", &corpus_path("affine-plane")]).env("TORUS_ROOTS_SEARCH_CAP", "16").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn non_primitive_rays_are_normalized() {
    let doc = r#"{"schema_version": "torus-roots/1", "lattice_rank": 2, "rays": [[2, 0], [0, 3]], "max_cones": [[0, 1]]}"#;
    let out = run_stdin(&["dual"], doc);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("normalized"));
    let r = report(&out);
    assert_eq!(r.warnings.len(), 2);
    assert_eq!(r.results["cones"][0]["cone"]["rays"], serde_json::json!([[0, 1], [1, 0]]));
}

#[test]
fn counterexample_reports() {
    let r = report(&run(&["counterexample", "--d", "2", "--s", "2", "--n", "2"]));
    assert_eq!(r.results["witness"], 2);
    assert_eq!(r.results["thinned"]["elements"], serde_json::json!([0, 4, 6, 8]));
    let r = report(&run(&["counterexample", "--d", "5", "--s", "3", "--n", "4"]));
    assert_eq!(r.results["witness"], 5);
    assert!(r.passed && r.results["distinct"] == Value::Bool(true));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "all", "--instances", "8", "--seed", "42", "--rank", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    let r = report(&a);
    assert_eq!(r.seed, Some(42));
    assert_eq!(r.results["passed"], 8);
    let instances = r.results["instances"].as_array().unwrap();
    assert!(instances.iter().enumerate().all(|(i, x)| x["instance"] == i && x["seed"] == 42));
}

#[test]
fn verify_reconstruct_suite() {
    let r = report(&run(&["verify", "--suite", "reconstruct", "--instances", "100", "--seed", "42"]));
    assert_eq!(r.results["passed"], 100);
    assert!(r.passed);
}

#[test]
fn verify_demazure_suite() {
    let r = report(&run(&["verify", "--suite", "demazure", "--instances", "200", "--seed", "7"]));
    assert_eq!(r.results["passed"], 200, "{:?}", r.verdicts.iter().filter(|v| !v.pass).collect::<Vec<_>>());
}

#[test]
fn fan_documents_round_trip() {
    for i in 0..60 {
        let fan: Fan = random_quasi_affine_fan(&mut instance_rng(3, i), &FanParams::default());
        let text = serde_json::to_string(&FanDocument::from_fan(&fan, BTreeMap::new())).unwrap();
        let back = FanDocument::parse(&text).unwrap().to_fan().unwrap();
        assert!(back.warnings.is_empty());
        assert_eq!(back.fan, fan);
    }
}
