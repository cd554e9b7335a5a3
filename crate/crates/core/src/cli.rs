//! The `polyfactor` command line: argument parsing, the six commands, and
//! canonical reports.
//!
//! Every command produces a [`Report`]. Its JSON form has sorted keys and
//! renders rationals as `p/q`, so identical inputs give byte-identical
//! output. Wall-clock timings go to stderr only.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::factor::{factorize, flip_normalize, verify_deformation_cube, verify_minkowski_sum, FactorError};
use crate::families::{self, FamilyError, Limits};
use crate::multiaffine::{expand_product, factor_multiaffine, MultiAffinePoly, PolyError};
use crate::polytope::{bitstring, Polytope01, PolytopeError};
use crate::suites::{self, SuiteResult};

pub const TOOL: &str = "polyfactor";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "polyfactor", version, about = "Cartesian factorization of 0/1-polytopes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Also write the report as canonical JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Cap on the number of vertices read or enumerated.
    #[arg(long, global = true, value_name = "K")]
    pub max_vertices: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor a polytope given as a .vtx file.
    Factor {
        input: PathBuf,
        /// Also check the Minkowski sum and the deformation cube.
        #[arg(long)]
        verify: bool,
    },
    /// Certify the cube structure of the deformation space.
    Deform { input: PathBuf },
    /// Build a family member and write its vertices as .vtx.
    Family {
        family: String,
        input: PathBuf,
        output: PathBuf,
    },
    /// Compare the combinatorial criterion with the geometric factorization.
    Oracle { family: String, input: PathBuf },
    /// Factor a multi-affine polynomial.
    Poly { input: PathBuf },
    /// Run the randomized self-test suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Exit status 2 for bad input, 1 for a state that contradicts a theorem.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("internal failure: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<PolytopeError> for CliError {
    fn from(e: PolytopeError) -> Self {
        match e {
            PolytopeError::InvalidTwoFace(_) => CliError::Internal(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<FactorError> for CliError {
    fn from(e: FactorError) -> Self {
        match e {
            FactorError::Polytope(p) => p.into(),
            FactorError::Improper => CliError::Validation(e.to_string()),
            FactorError::Inconsistent(_) => CliError::Internal(e.to_string()),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Polytope(p) => p.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Factor(f) => f.into(),
            PolyError::Inconsistent(_) => CliError::Internal(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

/// A command result. `ok` is false when the command ran but found a
/// contradiction (an oracle disagreement or a failed check); the process
/// then exits with status 1 after printing the report.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub payload: Value,
    pub ok: bool,
}

impl Report {
    fn new(command: &str, canonical_input: &str, payload: Value, ok: bool) -> Self {
        Report {
            command: command.to_string(),
            input_digest: digest(canonical_input),
            payload,
            ok,
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "tool": TOOL,
            "version": VERSION,
            "command": self.command,
            "input_digest": self.input_digest,
            "payload": self.payload,
        })
    }

    /// Compact JSON; object keys come out sorted.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }

    /// One `key: value` line per payload entry, values in compact JSON.
    pub fn to_text(&self) -> String {
        let mut s = format!("{TOOL} {VERSION} {}\ninput_digest: {}\n", self.command, self.input_digest);
        if let Value::Object(map) = &self.payload {
            for (k, v) in map {
                let v = match v {
                    Value::String(x) => x.clone(),
                    other => other.to_string(),
                };
                let _ = writeln!(s, "{k}: {v}");
            }
        }
        s
    }
}

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn limits_with(max_vertices: Option<usize>) -> Limits {
    let mut l = Limits::default();
    if let Some(k) = max_vertices {
        l.max_vertices = k;
    }
    l
}

fn read_polytope(text: &str, limits: &Limits) -> Result<Polytope01, CliError> {
    let p = Polytope01::parse(text)?;
    if p.num_vertices() > limits.max_vertices {
        return Err(CliError::Validation(format!(
            "vertex count {} exceeds the cap of {}",
            p.num_vertices(),
            limits.max_vertices
        )));
    }
    Ok(p)
}

fn vertex_strings(p: &Polytope01) -> Vec<String> {
    p.vertices().iter().map(|v| bitstring(v)).collect()
}

pub fn factor_report(text: &str, verify: bool, limits: &Limits) -> Result<Report, CliError> {
    let p = read_polytope(text, limits)?;
    let f = factorize(&p)?;
    let factors: Vec<Value> = f
        .blocks
        .iter()
        .zip(&f.factors)
        .map(|(b, q)| {
            json!({
                "block": one_based(b),
                "num_vertices": q.num_vertices(),
                "dimension": q.dimension(),
                "vertices": vertex_strings(q),
            })
        })
        .collect();
    let fixed: Vec<Value> = f
        .fixed
        .iter()
        .map(|&(i, b)| json!({"coordinate": i + 1, "value": b}))
        .collect();
    let mut payload = json!({
        "ambient_dim": p.ambient_dim(),
        "num_vertices": p.num_vertices(),
        "k": f.k(),
        "indecomposable": f.k() == 1,
        "blocks": f.blocks.iter().map(|b| one_based(b)).collect::<Vec<_>>(),
        "fixed": fixed,
        "factors": factors,
    });
    let mut ok = true;
    if verify {
        let (normalized, _) = flip_normalize(&p);
        let minkowski = verify_minkowski_sum(&normalized, &f.summands);
        let cube = if p.num_vertices() > 1 {
            let r = verify_deformation_cube(&p)?;
            serde_json::to_value(&r).expect("report serializes")
        } else {
            Value::Null
        };
        ok = minkowski;
        payload["minkowski_sum_verified"] = json!(minkowski);
        payload["deformation"] = cube;
    }
    Ok(Report::new("factor", &p.to_vtx(), payload, ok))
}

pub fn deform_report(text: &str, limits: &Limits) -> Result<Report, CliError> {
    let p = read_polytope(text, limits)?;
    if p.num_vertices() == 1 {
        return Err(CliError::Validation("a single point has no edges to deform".into()));
    }
    let r = verify_deformation_cube(&p)?;
    let mut payload = serde_json::to_value(&r).expect("report serializes");
    payload["cube_verified"] = json!(r.cube_verified());
    Ok(Report::new("deform", &p.to_vtx(), payload, r.cube_verified()))
}

fn check_family(family: &str) -> Result<(), CliError> {
    if families::FAMILY_NAMES.contains(&family) {
        Ok(())
    } else {
        Err(CliError::Validation(format!(
            "unknown family `{family}`; expected one of {}",
            families::FAMILY_NAMES.join(", ")
        )))
    }
}

/// Builds the polytope; returns the report and the .vtx text to write.
pub fn family_report(family: &str, text: &str, limits: &Limits) -> Result<(Report, String), CliError> {
    check_family(family)?;
    let p = families::build(family, text, limits)?;
    let vtx = p.to_vtx();
    let payload = json!({
        "family": family,
        "num_vertices": p.num_vertices(),
        "ambient_dim": p.ambient_dim(),
        "dimension": p.dimension(),
        "vtx_digest": digest(&vtx),
    });
    Ok((Report::new("family", text, payload, true), vtx))
}

#[derive(Serialize)]
struct OracleVerdicts {
    family: String,
    criterion: &'static str,
    oracle_connected: bool,
    oracle_factor_count: usize,
    geometric_k: usize,
    geometric_indecomposable: bool,
    literal_verdict_matches: bool,
    agree: bool,
}

/// `agree` compares the predicted factor count with the geometric one;
/// `literal_verdict_matches` compares the bare connectivity verdict.
pub fn oracle_report(family: &str, text: &str, limits: &Limits) -> Result<Report, CliError> {
    check_family(family)?;
    let pred = families::oracle(family, text, limits)?;
    let p = families::build(family, text, limits)?;
    let k = factorize(&p)?.k();
    let verdicts = OracleVerdicts {
        family: family.to_string(),
        criterion: pred.criterion,
        oracle_connected: pred.connected,
        oracle_factor_count: pred.factor_count,
        geometric_k: k,
        geometric_indecomposable: k == 1,
        literal_verdict_matches: pred.connected == (k == 1),
        agree: pred.factor_count == k,
    };
    let ok = verdicts.agree;
    let payload = serde_json::to_value(&verdicts).expect("report serializes");
    Ok(Report::new("oracle", text, payload, ok))
}

pub fn poly_report(text: &str) -> Result<Report, CliError> {
    let f = MultiAffinePoly::parse(text)?;
    let out = factor_multiaffine(&f)?;
    let verified = expand_product(&out.factors, &out.content, &out.unit)? == f;
    let content: Vec<usize> = (0..out.n).filter(|&i| out.content[i] == 1).map(|i| i + 1).collect();
    let factors: Vec<Value> = out
        .factors
        .iter()
        .zip(&out.blocks)
        .map(|(g, b)| {
            let terms: Vec<Value> = g
                .terms()
                .iter()
                .map(|(a, c)| json!({"support": bitstring(a), "coefficient": c.to_pq()}))
                .collect();
            json!({"variables": one_based(b), "polynomial": g.to_string(), "terms": terms})
        })
        .collect();
    let payload = json!({
        "num_vars": out.n,
        "content": content,
        "unit": out.unit.to_pq(),
        "factors": factors,
        "newton_blocks": out.newton_blocks.iter().map(|b| one_based(b)).collect::<Vec<_>>(),
        "coarsened": out.coarsened,
        "verified": verified,
    });
    Ok(Report::new("poly", &f.to_text(), payload, verified))
}

/// Runs every suite; the determinism suite exercises the commands above on
/// the bundled sample inputs.
pub fn selftest_results(seed: u64) -> Vec<SuiteResult> {
    let mut out = suites::run_all(seed);
    out.push(determinism_suite());
    out
}

pub fn selftest_report(seed: u64) -> Report {
    let results = selftest_results(seed);
    for r in &results {
        eprintln!("{}", r.summary());
    }
    let all = results.iter().all(SuiteResult::passed);
    let suites: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "instances": r.instances,
                "failures": r.failures,
                "passed": r.passed(),
            })
        })
        .collect();
    let payload = json!({"seed": seed, "suites": suites, "passed": all});
    Report::new("selftest", &seed.to_string(), payload, all)
}

/// Sample inputs bundled with the crate, keyed by file name.
pub const SAMPLES: [(&str, &str); 19] = [
    ("square.vtx", include_str!("../data/square.vtx")),
    ("segment.vtx", include_str!("../data/segment.vtx")),
    ("triangle.vtx", include_str!("../data/triangle.vtx")),
    ("point.vtx", include_str!("../data/point.vtx")),
    ("cube3.vtx", include_str!("../data/cube3.vtx")),
    ("birkhoff3.vtx", include_str!("../data/birkhoff3.vtx")),
    ("antichain2.poset", include_str!("../data/antichain2.poset")),
    ("chain2.poset", include_str!("../data/chain2.poset")),
    ("path4.graph", include_str!("../data/path4.graph")),
    ("cycle4.graph", include_str!("../data/cycle4.graph")),
    ("complex.complex", include_str!("../data/complex.complex")),
    ("pure.complex", include_str!("../data/pure.complex")),
    ("u23.matroid", include_str!("../data/u23.matroid")),
    ("diamond.flow", include_str!("../data/diamond.flow")),
    ("double_diamond.flow", include_str!("../data/double_diamond.flow")),
    ("s3.group", include_str!("../data/s3.group")),
    ("product.poly", include_str!("../data/product.poly")),
    ("irreducible.poly", include_str!("../data/irreducible.poly")),
    ("square_term.poly", include_str!("../data/square_term.poly")),
];

pub fn sample(name: &str) -> &'static str {
    SAMPLES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .unwrap_or_else(|| panic!("no bundled sample `{name}`"))
}

/// Reverses and rotates the data lines after the header, keeping comments
/// and the header in place.
pub fn permute_lines(text: &str, rotate: usize) -> String {
    let lines: Vec<&str> = text.lines().collect();
    let header = lines
        .iter()
        .position(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .expect("input has a header");
    let mut body: Vec<&str> = lines[header + 1..].to_vec();
    body.reverse();
    if !body.is_empty() {
        let r = rotate % body.len();
        body.rotate_left(r);
    }
    let mut out: Vec<&str> = lines[..=header].to_vec();
    out.extend(body);
    out.join("\n") + "\n"
}

type Runner = Box<dyn Fn(&str) -> Result<String, CliError>>;

/// Byte-identical reports across repeated runs and under permutations of
/// vertex (and term) lines.
pub fn determinism_suite() -> SuiteResult {
    let start = Instant::now();
    let l = Limits::default();
    fn json(r: Result<Report, CliError>) -> Result<String, CliError> {
        r.map(|r| r.to_json())
    }
    let mut cases: Vec<(String, Runner, &'static str, bool)> = Vec::new();
    for name in ["square.vtx", "segment.vtx", "triangle.vtx", "point.vtx", "cube3.vtx", "birkhoff3.vtx"] {
        cases.push((format!("factor {name}"), Box::new(move |t| json(factor_report(t, true, &l))), sample(name), true));
        if name != "point.vtx" {
            cases.push((format!("deform {name}"), Box::new(move |t| json(deform_report(t, &l))), sample(name), true));
        }
    }
    for (family, name) in [
        ("order", "chain2.poset"),
        ("chain", "antichain2.poset"),
        ("stable", "path4.graph"),
        ("clique", "path4.graph"),
        ("matching", "cycle4.graph"),
        ("edgepoly", "cycle4.graph"),
        ("antiblocking", "complex.complex"),
        ("matroid-bases", "u23.matroid"),
        ("matroid-indep", "u23.matroid"),
        ("flow", "double_diamond.flow"),
        ("group", "s3.group"),
    ] {
        cases.push((
            format!("family {family} {name}"),
            Box::new(move |t| family_report(family, t, &l).map(|(r, vtx)| r.to_json() + &vtx)),
            sample(name),
            false,
        ));
        if !matches!(family, "edgepoly" | "group") {
            cases.push((
                format!("oracle {family} {name}"),
                Box::new(move |t| json(oracle_report(family, t, &l))),
                sample(name),
                false,
            ));
        }
    }
    for name in ["product.poly", "irreducible.poly"] {
        cases.push((format!("poly {name}"), Box::new(|t| json(poly_report(t))), sample(name), true));
    }
    cases.push((
        "poly mixed signs".into(),
        Box::new(|t| json(poly_report(t))),
        "3 4\n2 000\n-1/2 110\n1 100\n-1 010\n",
        true,
    ));

    let mut failures = Vec::new();
    for (label, run, text, permutable) in &cases {
        let first = run(text);
        let second = run(text);
        match (&first, &second) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(_), Ok(_)) => failures.push(format!("{label}: two runs differ")),
            (Err(e), _) | (_, Err(e)) => failures.push(format!("{label}: {e}")),
        }
        if *permutable {
            for rot in 0..3 {
                let permuted = permute_lines(text, rot);
                match (&first, run(&permuted)) {
                    (Ok(a), Ok(b)) if *a == b => {}
                    _ => failures.push(format!("{label}: report changes under line permutation {rot}")),
                }
            }
        }
    }
    SuiteResult {
        name: "determinism".into(),
        instances: cases.len(),
        failures,
        elapsed: start.elapsed(),
        time_limit: None,
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let limits = limits_with(cli.max_vertices);
    match &cli.command {
        Command::Factor { input, verify } => factor_report(&read(input)?, *verify, &limits),
        Command::Deform { input } => deform_report(&read(input)?, &limits),
        Command::Family { family, input, output } => {
            let (report, vtx) = family_report(family, &read(input)?, &limits)?;
            std::fs::write(output, vtx)
                .map_err(|e| CliError::Validation(format!("{}: {e}", output.display())))?;
            Ok(report)
        }
        Command::Oracle { family, input } => oracle_report(family, &read(input)?, &limits),
        Command::Poly { input } => poly_report(&read(input)?),
        Command::Selftest { seed } => Ok(selftest_report(*seed)),
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = Instant::now();
    let result = run(&cli);
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(report) => {
            print!("{}", report.to_text());
            if let Some(path) = &cli.json {
                if let Err(e) = std::fs::write(path, report.to_json()) {
                    eprintln!("error: {}: {e}", path.display());
                    return 2;
                }
            }
            if report.ok {
                0
            } else {
                eprintln!("error: the report records a failed check");
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
