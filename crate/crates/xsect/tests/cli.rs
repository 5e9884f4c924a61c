//! Command-line behavior: golden reports, determinism, exit codes and file outputs.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the golden reports.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use xsect::catalog::FIXTURES;

fn xsect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xsect")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("xsect-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Small grids keep every fixture fast while exercising each report section.
fn small_args(name: &str, dim: usize) -> Vec<String> {
    let grid = if dim == 3 { "8" } else { "16" };
    ["sections", "--flow", name, "--grid", grid, "--refine", "2", "--window", "1"].iter().map(|s| s.to_string()).collect()
}

#[test]
fn golden_reports() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatched = Vec::new();
    for fx in FIXTURES {
        let args = small_args(fx.name, fx.dim);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = xsect(&refs);
        assert!(out.status.code().is_some_and(|c| c == 0 || c == 3), "{}: {:?}", fx.name, out);
        let text = stdout(&out);
        let path = golden_dir().join(format!("{}.json", fx.name));
        if update {
            std::fs::create_dir_all(golden_dir()).unwrap();
            std::fs::write(&path, &text).unwrap();
        } else if std::fs::read_to_string(&path).ok().as_deref() != Some(text.as_str()) {
            mismatched.push(fx.name);
        }
    }
    assert!(mismatched.is_empty(), "reports differ from golden files: {mismatched:?}");
}

#[test]
fn reports_are_deterministic() {
    let args = ["sections", "--flow", "slowed-vertical", "--grid", "32", "--refine", "2"];
    let one = Command::new(env!("CARGO_BIN_EXE_xsect")).args(args).env("RAYON_NUM_THREADS", "1").output().unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_xsect")).args(args).env("RAYON_NUM_THREADS", "4").output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(one.stdout, xsect(&args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(xsect(&["analyze", "--flow", "no-such-flow"]).status.code(), Some(2));
    assert_eq!(xsect(&["analyze", "--flow", "constant", "--alpha", "1,x"]).status.code(), Some(2));
    assert_eq!(xsect(&["analyze", "--flow", "constant", "--alpha", "1,0,0"]).status.code(), Some(2));
    // The horizontal class of a vertical flow has no section.
    let out = xsect(&["extract", "--flow", "constant", "--alpha", "1,0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("negative-cycle"));
    let capped = Command::new(env!("CARGO_BIN_EXE_xsect"))
        .args(["analyze", "--flow", "constant", "--grid", "64"])
        .env("XSECT_MAX_CELLS", "100")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(4));
    assert_eq!(xsect(&["fried-sum", "--flow", "constant", "--alpha", "0,1"]).status.code(), Some(2));
}

#[test]
fn examples_lists_every_fixture() {
    let out = xsect(&["examples"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for fx in FIXTURES {
        assert!(text.contains(fx.name) && text.contains(fx.locus), "{}", fx.name);
    }
}

#[test]
fn emitted_graph_reproduces_the_analysis() {
    let dir = scratch("emit");
    let graph = dir.join("reeb.graph");
    let direct = xsect(&["analyze", "--flow", "reeb2d", "--grid", "24", "--emit-graph", graph.to_str().unwrap()]);
    assert!(direct.status.success());
    let imported = xsect(&["analyze", "--graph", graph.to_str().unwrap(), "--alpha", "0,1"]);
    assert!(imported.status.success(), "{imported:?}");
    let a: serde_json::Value = serde_json::from_slice(&direct.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&imported.stdout).unwrap();
    assert_eq!(a["graph"]["edges"], b["graph"]["edges"]);
    assert_eq!(a["graph"]["recurrence_chains"], b["graph"]["recurrence_chains"]);
    assert_eq!(a["alphas"][0]["existence"], b["alphas"][0]["existence"]);
    assert_eq!(a["alphas"][0]["cardinality"], b["alphas"][0]["cardinality"]);
    assert_eq!(b["flow"]["source"], "graph");
}

#[test]
fn config_file_with_outputs() {
    let dir = scratch("config");
    let report = dir.join("report.json");
    let svg = dir.join("svg");
    let config = dir.join("run.toml");
    std::fs::write(
        &config,
        format!(
            "[flow]\nbuiltin = \"figure1-phi1\"\n[grid]\nresolution = [32, 32]\n[analysis]\nalphas = [[1, 0]]\ncommands = [\"sections\"]\nmax_sections = 2\n[output]\nreport = {:?}\nsvg_dir = {:?}\n",
            report.display().to_string(),
            svg.display().to_string()
        ),
    )
    .unwrap();
    let out = xsect(&["run", "--config", config.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    assert!(out.stdout.is_empty());
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let sections = r["alphas"][0]["sections"].as_array().unwrap();
    assert!(!sections.is_empty() && sections.len() <= 2);
    for s in sections {
        let path = s["svg"].as_str().expect("svg written");
        assert!(std::fs::read_to_string(path).unwrap().starts_with("<svg"));
    }
}

#[test]
fn extract_with_labelings() {
    let out = xsect(&[
        "extract", "--flow", "slowed-vertical", "--refine", "1", "--labeling", "0,1", "--labeling", "0,-1",
    ]);
    assert!(out.status.success(), "{out:?}");
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let sections = r["alphas"][0]["sections"].as_array().unwrap();
    assert_eq!(sections.len(), 2);
    assert!(sections.iter().all(|s| s["round_trip"] == true));
    let bad = xsect(&["extract", "--flow", "slowed-vertical", "--refine", "1", "--labeling", "0,99"]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(stdout(&bad).contains("infeasible"));
}

#[test]
fn directions_fan() {
    let out = xsect(&["directions", "--flow", "psi1", "--grid", "16", "--refine", "2", "--fan", "8"]);
    assert!(out.status.success(), "{out:?}");
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["fan"].as_array().unwrap().len(), 8);
    assert_eq!(r["alphas"][0]["support_trend"].as_array().unwrap().len(), 2);
}
