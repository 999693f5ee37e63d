//! End-to-end runs of the `tightcut` binary.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tightcut_core::corpus::named;
use tightcut_core::graph::io::{to_edge_list, to_graph6};
use tightcut_core::graph::CutRecord;
use tightcut_core::{boundary, Cut, Multigraph, VertexSet};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tightcut"))
}

/// Writes `text` to a fresh file under the target temp dir.
fn file(name: &str, text: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn c6() -> PathBuf {
    file("c6.mcg", &to_edge_list(&named::cycle(6)))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    serde_json::from_str(text.lines().next().expect("a report line")).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn check_reports_matching_coverage() {
    let out = run(&["check", c6().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["result"]["matching_covered"], true);
    assert_eq!(r["result"]["brick_number"], 0);
    assert_eq!(r["command"][0], "check");
    assert_eq!(r["input_digest"].as_str().unwrap().len(), 64);

    let path = file("p3.mcg", &to_edge_list(&named::path(3)));
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["result"]["matching_covered"], false);
    assert_eq!(r["result"]["deficiency"]["deficiency"], 1);
}

#[test]
fn laminar_on_a_tight_cut_is_certified() {
    let out = run(&["laminar", c6().to_str().unwrap(), "--shore", "1,2,3"]);
    assert_eq!(code(&out), 0);
    let r = &report(&out)["result"];
    let cert = &r["result"]["certificate"];
    for key in ["structure_valid", "nontrivial", "placement_valid"] {
        assert_eq!(cert[key], true, "{key}");
    }
    assert_eq!(r["result"]["divergence"], Value::Null);
    assert_eq!(
        r["derived_elp_cut"]["cut"]["shore"],
        serde_json::json!([1, 2, 3])
    );

    for policy in ["separation-first", "barrier-first"] {
        let out = run(&[
            "laminar",
            c6().to_str().unwrap(),
            "--shore",
            "4,5,6",
            "--policy",
            policy,
            "--strict",
        ]);
        assert_eq!(code(&out), 0, "{policy}");
    }
}

#[test]
fn laminar_rejects_a_loose_cut_with_a_witness() {
    let out = run(&["laminar", c6().to_str().unwrap(), "--shore", "1,2,4"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cut is not tight"));
    let err = &report(&out)["result"]["error"];
    assert_eq!(err["kind"], "domain");
    assert_eq!(err["message"], "cut is not tight");
    assert_eq!(
        err["witness"]["pairs"],
        serde_json::json!([[2, 3], [4, 5], [6, 1]])
    );
}

#[test]
fn avoiding_search_from_the_cli() {
    let out = run(&[
        "laminar",
        c6().to_str().unwrap(),
        "--shore",
        "1,2,3",
        "--avoid",
        "6",
    ]);
    assert_eq!(code(&out), 0);
    let outcome = &report(&out)["result"]["outcome"];
    assert_eq!(outcome["type"], "sep_through_t");
    assert_eq!(outcome["shore"], serde_json::json!([4, 5, 6]));
}

#[test]
fn domain_errors_exit_one() {
    let c6 = c6();
    let c6 = c6.to_str().unwrap();
    for args in [
        vec!["laminar", c6, "--shore", "1"],
        vec!["laminar", c6, "--shore", "1,9"],
        vec!["tight", c6, "--shore", "1,2"],
    ] {
        assert_eq!(code(&run(&args)), 1, "{args:?}");
    }
    let p4 = file("p4.mcg", &to_edge_list(&named::path(4)));
    let out = run(&["decompose", p4.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(
        report(&out)["result"]["error"]["message"],
        "graph is not matching covered"
    );
    let broken = file("broken.mcg", "p mcg 3 1\ne 1 1\n");
    assert_eq!(code(&run(&["check", broken.to_str().unwrap()])), 1);
}

#[test]
fn usage_errors_exit_two() {
    let c6 = c6();
    let c6 = c6.to_str().unwrap();
    for args in [
        vec!["bogus"],
        vec![],
        vec!["laminar", c6],
        vec!["laminar", c6, "--shore", "1,x"],
        vec!["decompose", c6, "--strategy", "z"],
        vec!["check", "/nonexistent/graph.mcg"],
        vec!["check", c6, "--format", "yaml"],
    ] {
        assert_eq!(code(&run(&args)), 2, "{args:?}");
    }
    let two = file(
        "two.g6",
        &format!(
            "{}\n{}\n",
            to_graph6(&named::cycle(6)).unwrap(),
            to_graph6(&named::complete(4)).unwrap()
        ),
    );
    assert_eq!(code(&run(&["check", two.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn graph6_on_stdin_matches_the_edge_list() {
    let g6 = to_graph6(&named::cycle(6)).unwrap();
    let from_stdin = run_stdin(&["tight", "-", "--shore", "1,2,3"], &format!("{g6}\n"));
    let from_file = run(&["tight", c6().to_str().unwrap(), "--shore", "1,2,3"]);
    assert_eq!(code(&from_stdin), 0);
    // graph6 numbers edges in its own order, so compare shores and verdicts
    let (a, b) = (
        report(&from_stdin)["result"].clone(),
        report(&from_file)["result"].clone(),
    );
    assert_eq!(a["cut"]["shore"], b["cut"]["shore"]);
    assert_eq!(a["tight"], true);
    assert_eq!(b["tight"], true);
    assert_eq!(a["cut"]["edges"], serde_json::json!([[1, 6], [3, 4]]));
}

#[test]
fn cut_payload_has_the_canonical_shape() {
    let out = run(&["tight", c6().to_str().unwrap(), "--shore", "4,5,6"]);
    let cut = &report(&out)["result"]["cut"];
    assert_eq!(
        cut.to_string(),
        r#"{"edge_ids":[2,5],"edges":[[3,4],[6,1]],"shore":[1,2,3]}"#
    );
    let rec: CutRecord = serde_json::from_value(cut.clone()).unwrap();
    let g = named::cycle(6);
    assert_eq!(
        Cut::from_record(&g, &rec).unwrap(),
        boundary(&g, &VertexSet::from([1, 2, 3])).unwrap()
    );
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let c6 = c6();
    for args in [
        vec!["decompose", c6.to_str().unwrap(), "--strategy", "c"],
        vec!["elp", c6.to_str().unwrap()],
        vec!["laminar", c6.to_str().unwrap(), "--shore", "1,2,6"],
    ] {
        let strip = |out: Output| {
            let mut v = report(&out);
            v["elapsed_ms"] = Value::Null;
            v
        };
        let (a, b) = (strip(run(&args)), strip(run(&args)));
        assert_eq!(a.to_string(), b.to_string());
        // keys come out sorted, so a reparse re-serializes byte for byte
        let again: Value = serde_json::from_str(&a.to_string()).unwrap();
        assert_eq!(again.to_string(), a.to_string());
    }
    let out = run(&["corpus", "--max-n", "6"]);
    let graphs = report(&out)["result"]["graphs"].as_array().unwrap().clone();
    assert!(graphs.iter().any(|g| g["graph6"].is_string()));
    for g in graphs {
        let parsed: Multigraph = serde_json::from_value(g["graph"].clone()).unwrap();
        assert_eq!(serde_json::to_value(&parsed).unwrap(), g["graph"]);
    }
}

#[test]
fn a_brick_decomposes_to_one_leaf() {
    let k4 = file("k4.mcg", &to_edge_list(&named::complete(4)));
    let out = run(&["decompose", k4.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let tree = &report(&out)["result"];
    assert_eq!(tree["brick_number"], 1);
    assert_eq!(tree["root"]["node"], "leaf");
    assert_eq!(tree["root"]["kind"], "brick");
}

#[test]
fn text_format_renders_the_same_data() {
    let out = run(&[
        "--format",
        "text",
        "tight",
        c6().to_str().unwrap(),
        "--shore",
        "1,2,3",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("shore: [1, 2, 3]"), "{text}");
    assert!(text.contains("tight: true"), "{text}");
}

#[test]
fn verify_emits_a_passing_report_per_graph() {
    let list = format!(
        "{}\n{}\n{}\n",
        to_graph6(&named::complete(4)).unwrap(),
        to_graph6(&named::cycle(6)).unwrap(),
        to_graph6(&named::path(4)).unwrap()
    );
    let path = file("three.g6", &list);
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[1]["result"]["nontrivial_tight_cuts"], 3);
    assert_eq!(lines[2]["result"]["matching_covered"], false);
    for l in &lines {
        assert!(l["result"]["checks"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["passed"] == true));
    }

    let out = bin()
        .args(["verify", path.to_str().unwrap()])
        .env("TIGHTCUT_MAX_N", "4")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 2);
}
