use std::process::{Command, Output};

use tempfile::tempdir;
use weakscheme::io::{write_scenario_file, SchemeDocument};
use weakscheme::scenarios::hardy;

fn weakscheme(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weakscheme"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn run_cheshire_prints_grid() {
    let o = weakscheme(&["run", "cheshire"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("scenario: cheshire"));
    assert!(text.contains("-1.0000"));
    assert!(text.contains("total sum: +1.0000"));
}

#[test]
fn scenario_list_names_everything() {
    let text = stdout(&weakscheme(&["scenario", "list"]));
    for name in weakscheme::scenarios::NAMES {
        assert!(text.contains(name), "{name}");
    }
}

#[test]
fn gamma_required_for_gamma_family() {
    let o = weakscheme(&["run", "hardy-gamma"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--gamma"));

    let o = weakscheme(&["run", "hardy-gamma", "--gamma", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("OrthogonalSelection"));

    let o = weakscheme(&["run", "hardy-gamma", "--gamma", "-3.14159", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = SchemeDocument::from_json(&stdout(&o)).unwrap();
    assert!((doc.overlap[0] - 2.0).abs() < 1e-4);
}

#[test]
fn unknown_names_are_usage_errors() {
    assert_eq!(weakscheme(&["run", "schrodinger"]).status.code(), Some(2));
    assert_eq!(weakscheme(&["evolve", "--family", "nope", "--time", "1"]).status.code(), Some(2));
    assert_eq!(weakscheme(&["evolve", "--family", "psit1", "--time", "1"]).status.code(), Some(2));
    assert_eq!(weakscheme(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn evolve_compare_reports_fidelity() {
    let o = weakscheme(&["evolve", "--family", "psit1", "--eps", "1", "--time", "1.5707963267948966", "--compare"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let fidelity: f64 = text
        .lines()
        .find_map(|l| l.trim().strip_prefix("fidelity: "))
        .expect("fidelity line")
        .parse()
        .unwrap();
    assert!((fidelity - 0.625).abs() < 1e-6, "{fidelity}");
}

#[test]
fn evolve_exact_system() {
    let o = weakscheme(&["evolve", "--family", "exact", "--system", "GHZ2", "--phi", "0.5", "--time", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("exact evolution"));
    assert!(text.contains("|000000>  -1.000000"));
}

#[test]
fn realize_table() {
    let o = weakscheme(&["realize", "--levels", "2", "--axes", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("   5  |101>"));
    assert!(text.contains("diagonal cells: |000> |111>"));
}

#[test]
fn tensor_from_files() {
    let dir = tempdir().unwrap();
    let both = dir.path().join("hardy.json");
    write_scenario_file(&hardy(), &both).unwrap();

    let o = weakscheme(&["tensor", "--pre", both.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc = SchemeDocument::from_json(&stdout(&o)).unwrap();
    let expected = SchemeDocument::from_scenario(&hardy()).unwrap();
    assert_eq!(doc.components, expected.components);

    let svg = dir.path().join("out.svg");
    let o = weakscheme(&[
        "tensor",
        "--pre",
        both.to_str().unwrap(),
        "--post",
        both.to_str().unwrap(),
        "--format",
        "svg",
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<?xml"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"shape":[2,2],"pre":{"amps":[[1,0],[0,0],[0,0]]}}"#).unwrap();
    let o = weakscheme(&["tensor", "--pre", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("SchemaViolation"));
}
