use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyfactor"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Runs with `--json` and returns the exit code and the parsed payload.
fn payload(args: &[&str]) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let mut all: Vec<&str> = args.to_vec();
    let p = path.to_string_lossy().into_owned();
    all.extend(["--json", &p]);
    let out = run(&all);
    let code = out.status.code().unwrap();
    let text = std::fs::read_to_string(&path).unwrap_or_else(|_| "null".into());
    let v: Value = serde_json::from_str(&text).unwrap();
    (code, v["payload"].clone())
}

#[test]
fn factor_examples() {
    let (code, p) = payload(&["factor", &data("square.vtx")]);
    assert_eq!(code, 0);
    assert_eq!(p["k"], 2);
    assert_eq!(p["blocks"], serde_json::json!([[1], [2]]));

    let (_, p) = payload(&["factor", &data("birkhoff3.vtx")]);
    assert_eq!(p["k"], 1);
    assert_eq!(p["indecomposable"], true);

    let (_, p) = payload(&["factor", &data("point.vtx")]);
    assert_eq!(p["k"], 0);
    assert_eq!(p["fixed"].as_array().unwrap().len(), 3);

    let (code, p) = payload(&["factor", "--verify", &data("cube3.vtx")]);
    assert_eq!(code, 0);
    assert_eq!(p["minkowski_sum_verified"], true);
    assert_eq!(p["deformation"]["kernel_dim"], 3);
}

#[test]
fn deform_examples() {
    let (_, p) = payload(&["deform", &data("cube3.vtx")]);
    assert_eq!((p["k"].clone(), p["kernel_dim"].clone(), p["cube_verified"].clone()), (3.into(), 3.into(), true.into()));
    let (_, p) = payload(&["deform", &data("triangle.vtx")]);
    assert_eq!((p["k"].clone(), p["kernel_dim"].clone()), (1.into(), 1.into()));
    let (_, p) = payload(&["deform", &data("segment.vtx")]);
    assert_eq!(p["k"], 1);
    assert_eq!(p["num_triangles"], 0);
    assert_eq!(p["num_parallelograms"], 0);
}

#[test]
fn family_examples_write_vtx_files() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("order", "chain2.poset", 3, 2),
        ("flow", "diamond.flow", 2, 4),
        ("group", "s3.group", 6, 9),
    ];
    for (family, input, vertices, ambient) in cases {
        let out = dir.path().join(format!("{family}.vtx"));
        let o = out.to_string_lossy().into_owned();
        let (code, p) = payload(&["family", family, &data(input), &o]);
        assert_eq!(code, 0, "{family}");
        assert_eq!(p["num_vertices"], vertices);
        let written = polyfactor::polytope::Polytope01::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(written.num_vertices(), vertices);
        assert_eq!(written.ambient_dim(), ambient);
    }
}

#[test]
fn oracle_examples() {
    let (code, p) = payload(&["oracle", "order", &data("antichain2.poset")]);
    assert_eq!(code, 0);
    assert_eq!((p["oracle_connected"].clone(), p["geometric_k"].clone(), p["agree"].clone()), (false.into(), 2.into(), true.into()));

    let (_, p) = payload(&["oracle", "stable", &data("path4.graph")]);
    assert_eq!((p["oracle_connected"].clone(), p["geometric_k"].clone(), p["agree"].clone()), (true.into(), 1.into(), true.into()));

    let (_, p) = payload(&["oracle", "flow", &data("double_diamond.flow")]);
    assert_eq!((p["oracle_connected"].clone(), p["geometric_k"].clone(), p["agree"].clone()), (false.into(), 2.into(), true.into()));
}

#[test]
fn poly_examples() {
    let (code, p) = payload(&["poly", &data("product.poly")]);
    assert_eq!(code, 0);
    assert_eq!(p["factors"].as_array().unwrap().len(), 2);
    assert_eq!(p["verified"], true);

    let (_, p) = payload(&["poly", &data("irreducible.poly")]);
    assert_eq!(p["factors"].as_array().unwrap().len(), 1);

    let out = run(&["poly", &data("square_term.poly")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not multi-affine"));
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.vtx");
    std::fs::write(&bad, "2 2\n00\n0x\n").unwrap();
    let out = run(&["factor", &bad.to_string_lossy()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    assert_eq!(run(&["factor", "/no/such/file.vtx"]).status.code(), Some(2));
    assert_eq!(run(&["--max-vertices", "3", "factor", &data("square.vtx")]).status.code(), Some(2));
    assert_eq!(run(&["family", "nope", &data("path4.graph"), "/dev/null"]).status.code(), Some(2));
    assert_eq!(run(&["oracle", "edgepoly", &data("cycle4.graph")]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn text_and_json_carry_the_same_facts() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let out = run(&["factor", &data("square.vtx"), "--json", &json.to_string_lossy()]);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(text.contains(v["input_digest"].as_str().unwrap()));
    for (k, val) in v["payload"].as_object().unwrap() {
        assert!(text.contains(&format!("{k}: {val}")), "missing {k}");
    }
}
