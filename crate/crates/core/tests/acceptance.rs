//! The seven acceptance criteria, one PASS/FAIL line each.
//!
//! Lines are written to the real stdout so they show up even when the test
//! harness captures output.

use std::io::Write;
use std::process::Command;
use std::time::Instant;

use polyfactor::cli::{self, SAMPLES};
use polyfactor::suites::{self, SuiteResult};

const SEED: u64 = 20240;

fn line(criterion: usize, r: &SuiteResult) -> String {
    format!("[criterion {criterion}] {}", r.summary())
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polyfactor"))
}

/// Runs the binary with `--json` and returns (exit code, json bytes, stdout).
fn run_json(args: &[&str], dir: &std::path::Path, tag: &str) -> (i32, Vec<u8>, Vec<u8>) {
    let json = dir.join(format!("{tag}.json"));
    let out = bin()
        .args(args)
        .arg("--json")
        .arg(&json)
        .output()
        .expect("binary runs");
    let bytes = std::fs::read(&json).unwrap_or_default();
    (out.status.code().unwrap_or(-1), bytes, out.stdout)
}

/// Every command twice through the binary, and vertex-permuted inputs.
fn binary_determinism() -> SuiteResult {
    let start = Instant::now();
    let dir = tempfile::tempdir().expect("temp dir");
    for (name, text) in SAMPLES {
        std::fs::write(dir.path().join(name), text).expect("write sample");
    }
    let p = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let mut runs: Vec<Vec<String>> = Vec::new();
    for v in ["square.vtx", "cube3.vtx", "birkhoff3.vtx", "point.vtx", "triangle.vtx"] {
        runs.push(vec!["factor".into(), "--verify".into(), p(v)]);
        if v != "point.vtx" {
            runs.push(vec!["deform".into(), p(v)]);
        }
    }
    for (family, input) in [("order", "chain2.poset"), ("flow", "double_diamond.flow"), ("group", "s3.group")] {
        runs.push(vec!["family".into(), family.into(), p(input), p(&format!("{family}.out.vtx"))]);
    }
    for (family, input) in [("chain", "antichain2.poset"), ("matching", "cycle4.graph"), ("matroid-bases", "u23.matroid")] {
        runs.push(vec!["oracle".into(), family.into(), p(input)]);
    }
    runs.push(vec!["poly".into(), p("product.poly")]);

    let mut failures = Vec::new();
    for (i, args) in runs.iter().enumerate() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (c1, j1, o1) = run_json(&args, dir.path(), &format!("a{i}"));
        let (c2, j2, o2) = run_json(&args, dir.path(), &format!("b{i}"));
        if c1 != 0 || c2 != 0 {
            failures.push(format!("{args:?}: exit codes {c1}, {c2}"));
        }
        if j1.is_empty() || j1 != j2 || o1 != o2 {
            failures.push(format!("{args:?}: repeated runs differ"));
        }
        if args[0] == "factor" || args[0] == "deform" {
            let input = args.last().expect("input path");
            let permuted = cli::permute_lines(&std::fs::read_to_string(input).unwrap(), 1);
            let alt = dir.path().join(format!("perm{i}.vtx"));
            std::fs::write(&alt, permuted).unwrap();
            let mut alt_args = args.clone();
            let alt_s = alt.to_string_lossy().into_owned();
            *alt_args.last_mut().unwrap() = &alt_s;
            let (_, j3, _) = run_json(&alt_args, dir.path(), &format!("c{i}"));
            if j3 != j1 {
                failures.push(format!("{args:?}: permuted vertex lines change the report"));
            }
        }
    }
    SuiteResult {
        name: "binary determinism".into(),
        instances: runs.len(),
        failures,
        elapsed: start.elapsed(),
        time_limit: None,
    }
}

/// In-process reports plus the same commands through the binary.
fn determinism() -> SuiteResult {
    let mut r = cli::determinism_suite();
    let b = binary_determinism();
    r.instances += b.instances;
    r.failures.extend(b.failures);
    r.elapsed += b.elapsed;
    r
}

#[test]
fn acceptance_criteria() {
    let corpus = suites::polytope_corpus(SEED);
    let results: Vec<(usize, SuiteResult)> = vec![
        (1, suites::cube_theorem(&corpus)),
        (2, suites::factorization_soundness(&corpus)),
        (3, suites::known_answers()),
        (4, suites::oracle_agreement(SEED)),
        (5, suites::simple_polytopes(SEED)),
        (6, suites::multiaffine(SEED)),
        (7, determinism()),
    ];
    let mut out = std::io::stdout().lock();
    writeln!(out).unwrap();
    for (c, r) in &results {
        writeln!(out, "{}", line(*c, r)).unwrap();
    }
    out.flush().unwrap();
    let failed: Vec<String> = results
        .iter()
        .filter(|(_, r)| !r.passed())
        .map(|(c, r)| line(*c, r))
        .collect();
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
}
