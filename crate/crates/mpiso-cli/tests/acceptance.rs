//! Acceptance gate for the command line: determinism, the exit-code
//! contract, tuple file round-trips, and the full verification table.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Output};

use mpiso::linalg::matrix::C64;
use mpiso::{gallery_names, load_example};
use mpiso_cli::tuple_file::{parse_tuple_file, write_tuple_file, TupleFile};

fn run(args: &[&str]) -> Output {
    run_with_env(args, &[])
}

fn run_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mpiso"));
    cmd.args(args).env_remove("MPISO_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn write_file(dir: &Path, name: &str, doc: &serde_json::Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(doc).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

fn check(ok: bool, detail: &str) {
    assert!(ok, "criterion 9: FAIL - {detail}");
    println!("criterion 9: PASS - {detail}");
}

#[test]
fn criterion_9_reports_are_deterministic() {
    for args in [
        vec!["classify", "gallery:richter_22", "--p", "2", "--q", "2", "--output", "json"],
        vec!["spectral", "gallery:diag_13", "--p", "3", "--output", "json"],
        vec!["verify", "--suite", "q-recursion", "--output", "json"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&a.stderr));
        check(
            a.stdout == b.stdout && !a.stdout.is_empty(),
            &format!("byte-identical reports for {}", args.join(" ")),
        );
    }
}

#[test]
fn criterion_9_exit_code_contract() {
    let dir = tempfile::tempdir().unwrap();

    let out = run(&["classify", "gallery:richter_22", "--p", "2", "--q", "2"]);
    check(out.status.code() == Some(0), "classified tuple exits 0");

    // a strict contraction is never an (m,p)-isometry: no order up to
    // m-max classifies, exit 3
    let contraction = serde_json::json!({
        "field": "real", "dim": 1, "d": 1,
        "matrices": [[[[0.5, 0.0]]]]
    });
    let path = write_file(dir.path(), "contraction.json", &contraction);
    let out = run(&["classify", &path, "--p", "2", "--m-max", "6"]);
    check(out.status.code() == Some(3), "unclassifiable contraction exits 3");

    let ragged = serde_json::json!({
        "field": "real", "dim": 2, "d": 1,
        "matrices": [[[[1.0,0.0],[0.0,0.0],[0.0,0.0]], [[0.0,0.0],[1.0,0.0],[0.0,0.0]]]]
    });
    let path = write_file(dir.path(), "ragged.json", &ragged);
    let out = run(&["classify", &path]);
    check(out.status.code() == Some(2), "2x3 matrix exits 2 (shape error)");

    let noncommuting = serde_json::json!({
        "field": "real", "dim": 2, "d": 2,
        "matrices": [
            [[[0.0,0.0],[1.0,0.0]], [[0.0,0.0],[0.0,0.0]]],
            [[[0.0,0.0],[0.0,0.0]], [[1.0,0.0],[0.0,0.0]]]
        ]
    });
    let path = write_file(dir.path(), "noncommuting.json", &noncommuting);
    let out = run(&["classify", &path]);
    let stderr = String::from_utf8_lossy(&out.stderr);
    check(
        out.status.code() == Some(2) && stderr.contains("operators 1 and 2"),
        &format!("non-commuting pair exits 2 naming the pair: {}", stderr.trim()),
    );

    let out = run(&["verify", "--suite", "no-such-suite"]);
    check(out.status.code() == Some(2), "unknown suite exits 2");

    let out = run(&["classify", "gallery:not_a_fixture"]);
    check(out.status.code() == Some(2), "unknown gallery name exits 2");
}

#[test]
fn criterion_9_gallery_tuples_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for name in gallery_names() {
        let (tuple, spec) = load_example(name, &BTreeMap::new()).unwrap();
        let path = dir.path().join(format!("{name}.json"));
        write_tuple_file(&path, &tuple, Some(spec.name.clone())).unwrap();
        let (parsed, label) = parse_tuple_file(&path).unwrap();
        assert_eq!(label.as_deref(), Some(*name));
        assert_eq!(parsed.dim(), tuple.dim());
        assert_eq!(parsed.len(), tuple.len());
        let mut exact = true;
        for (a, b) in parsed.ops().iter().zip(tuple.ops()) {
            for r in 0..tuple.dim() {
                for c in 0..tuple.dim() {
                    exact &= a[(r, c)] == b[(r, c)];
                }
            }
        }
        check(exact, &format!("{name} round-trips bit-exactly through its file form"));
    }

    // the serialized fixture classifies identically to the gallery address
    let (tuple, _) = load_example("richter_22", &BTreeMap::new()).unwrap();
    let path = dir.path().join("richter_roundtrip.json");
    write_tuple_file(&path, &tuple, None).unwrap();
    let out = run(&["classify", path.to_str().unwrap(), "--p", "2", "--q", "2"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    check(
        out.status.code() == Some(0) && stdout.contains("minimal order: m = 2"),
        "serialized richter_22 parses and classifies at m = 2",
    );
}

#[test]
fn criterion_9_verify_all_passes() {
    let out = run(&["verify", "--suite", "all"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let rows = stdout.lines().filter(|l| l.trim_start().starts_with("ok")).count();
    check(
        out.status.code() == Some(0) && rows >= 15,
        &format!("verify --suite all exits 0 with {rows} passing rows (>= 15)"),
    );
}

#[test]
fn complex_entries_survive_the_schema() {
    let dir = tempfile::tempdir().unwrap();
    let z = C64::new(0.25, -0.75);
    let doc = TupleFile {
        field: "complex".into(),
        dim: 1,
        d: 1,
        matrices: vec![vec![vec![[z.re, z.im]]]],
        label: None,
    };
    let path = dir.path().join("complex.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let (tuple, _) = parse_tuple_file(&path).unwrap();
    assert_eq!(tuple.op(0)[(0, 0)], z);

    // the same entry under a "real" field must be refused, naming the spot
    let doc = TupleFile { field: "real".into(), ..doc };
    let path = dir.path().join("fake_real.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let err = parse_tuple_file(&path).unwrap_err();
    assert!(err.to_string().contains("(1,1)"), "{err}");
}
