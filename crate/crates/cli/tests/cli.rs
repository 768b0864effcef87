use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cohomology"))
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (Output, Value) {
    let out = bin().args(args).output().expect("binary runs");
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out, v)
}

#[test]
fn cohomology_of_z2_with_z2_coefficients() {
    let (out, v) = run(&[
        "cohomology",
        "--group",
        "Z2",
        "--module",
        "Z2triv",
        "--degree",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["free_rank"], json!(0));
    assert_eq!(v["torsion"], json!([2]));
}

#[test]
fn oracle_comparison_passes() {
    let (out, v) = run(&[
        "cohomology",
        "--group",
        "Z4",
        "--module",
        "Ztriv",
        "--oracle",
        "--max-degree",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["pass"], json!(true));
    assert_eq!(v["degrees"][4]["torsion"], json!([4]));
}

#[test]
fn compare_bar_and_sm_over_the_corpus() {
    let (out, v) = run(&[
        "compare",
        "--left",
        "bar",
        "--right",
        "sm",
        "--module-set",
        "corpus",
        "--max-degree",
        "3",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(v["verdict"], json!("all isomorphic"));
    assert!(v["pairs"].as_array().unwrap().len() > 20);
}

#[test]
fn validate_reports_the_non_associative_triple() {
    let (out, v) = run(&["validate", "--doc", &data("bad.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(v["valid"], json!(false));
    assert_eq!(v["errors"][0]["path"], json!("groups.G.table"));
    assert_eq!(v["errors"][0]["witness"], json!([1, 1, 2]));
}

#[test]
fn workbench_document_runs() {
    let (out, v) = run(&["run", "--doc", &data("workbench.json")]);
    assert_eq!(out.status.code(), Some(0), "{v}");
    let tasks = v["tasks"].as_array().unwrap();
    assert_eq!(tasks.len(), 9);
    assert!(tasks.iter().all(|t| t["status"] == json!("computed")));
    assert_eq!(tasks[0]["result"]["torsion"], json!([2]));
    assert_eq!(tasks[4]["result"]["zero"], json!(false));
    assert_eq!(tasks[6]["result"]["order"], json!(4));
    assert_eq!(tasks[7]["result"]["cohomology_dims"], json!([1, 1, 0]));
}

#[test]
fn non_cocycle_extension_is_a_finding() {
    let (out, v) = run(&["run", "--doc", &data("nonassociative_task.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(v["tasks"][0]["result"]["associative"], json!(false));
}

#[test]
fn unknown_fixture_is_invalid_input() {
    let (out, _) = run(&["cohomology", "--group", "Z9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown group"));
}

#[test]
fn output_is_byte_stable() {
    for args in [
        &["specseq", "--random", "7", "--count", "5"][..],
        &[
            "tau", "--group", "Z2", "--module", "Z2triv", "--degree", "2", "--ses", "Z2-Z4-Z2",
        ][..],
        &["les", "--group", "Z3", "--format", "table"][..],
    ] {
        let a = bin().args(args).output().unwrap();
        let b = bin().args(args).output().unwrap();
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn timing_is_opt_in() {
    let (_, plain) = run(&["lie", "--algebra", "heis3"]);
    assert!(plain.get("timing").is_none());
    let (_, timed) = run(&["lie", "--algebra", "heis3", "--timing"]);
    assert!(timed["timing"]["elapsed_ms"].is_u64());
}

#[test]
fn every_subcommand_is_reachable() {
    let cases: &[&[&str]] = &[
        &[
            "sm",
            "--group",
            "Z3",
            "--module",
            "Zrot",
            "--max-degree",
            "2",
        ],
        &[
            "cech",
            "--group",
            "Z3",
            "--module",
            "Z3triv",
            "--cover",
            "singleton",
        ],
        &["xmod", "--instance", "doubling"],
        &["xmod", "--group", "Z3", "--module", "Z3triv"],
        &[
            "cup",
            "--group",
            "Z2",
            "--module",
            "Z2triv",
            "--leibniz",
            "10",
        ],
        &["les", "--group", "V4"],
        &["lie", "--algebra", "sl2"],
        &["fixtures"],
    ];
    for args in cases {
        let (out, _) = run(args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}
