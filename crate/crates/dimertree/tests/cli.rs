use std::path::PathBuf;

use dimertree::checkerboard::{validate_checkerboard, CheckerboardPolygon};
use dimertree::io::load_quiver;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dimertree").chain(args.iter().copied());
    let code = dimertree::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dimertree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn weights_table_for_q9() {
    let (code, out, _) = run(&["weights", &fixture("q9")]);
    assert_eq!(code, 0);
    for row in [
        "1->2->3->4->6->9  1",
        "3->1->2           2",
        "8->3->4->5        1",
        "7->8->3           2",
        "6->7->8           2",
        "6->9->4           2",
        "9->4->6->7        1",
        "4->5->2           2",
        "5->2->3->1        1",
    ] {
        assert!(out.lines().any(|l| l == row), "missing {row:?} in\n{out}");
    }
    assert!(out.ends_with("total weight 14\n"));
}

#[test]
fn weights_as_json() {
    let (code, out, _) = run(&["weights", &fixture("c5"), "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["total"], 10);
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
}

#[test]
fn reduce_writes_a_trace() {
    let path = scratch("q7-trace.json");
    let (code, out, _) = run(&["reduce", &fixture("q7"), "--trace", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("final: 6-cycle"));
    let t: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(t["final_cycle_length"], 6);
    assert_eq!(t["total_weight"], 12);
    for m in t["moves"].as_array().unwrap() {
        assert_eq!(m["total_weight_before"], m["total_weight_after"]);
        assert!(["derived", "singular"].contains(&m["equivalence"].as_str().unwrap()));
        assert!(m["quiver_after"]["arrows"].is_array());
    }
}

#[test]
fn reduce_dot_files() {
    let dir = scratch("dots");
    let (code, _, _) = run(&["reduce", &fixture("q9"), "--dot-dir", dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    let first = std::fs::read_to_string(dir.join("step-000.dot")).unwrap();
    assert!(first.starts_with("digraph") && first.contains("\"1\" -> \"2\""));
    assert!(dir.join("step-001.dot").exists());
}

#[test]
fn cycles_reduce_without_moves() {
    let (code, out, _) = run(&["reduce", &fixture("c4")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("C4: total weight 8, 0 moves"));
}

#[test]
fn oracle_passes_on_q9() {
    let (code, out, _) = run(&["oracle", &fixture("q9"), "--check", "all", "--field", "32003"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("over F_32003") && !out.contains("FAIL"));
    let (code, out, _) = run(&["oracle", &fixture("c3"), "--check", "schurian", "--field", "Q"]);
    assert_eq!(code, 0);
    assert!(out.contains("over Q"));
}

#[test]
fn oracle_rejects_bad_arguments() {
    assert_eq!(run(&["oracle", &fixture("c3"), "--check", "lemma9"]).0, 2);
    assert_eq!(run(&["oracle", &fixture("c3"), "--field", "12"]).0, 2);
}

#[test]
fn bad_input_exits_2() {
    let (code, _, err) = run(&["weights", &fixture("missing")]);
    assert_eq!(code, 2);
    assert!(err.contains("missing"));
    let p = scratch("two-cycle.json");
    std::fs::write(&p, r#"{"name": "T", "vertices": [1, 2], "arrows": [[1, 2], [2, 1]]}"#).unwrap();
    let (code, _, err) = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("2-cycle") && err.contains("arrows[1]"), "{err}");
    assert_eq!(run(&["validate", &fixture("q9"), "--bogus"]).0, 2);
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["diag", "--size", "7"]).0, 2);
    assert_eq!(run(&["resolve", &fixture("c3"), "--diagonal", "1,2"]).0, 2);
}

#[test]
fn failed_checks_exit_1() {
    let p = scratch("path.json");
    std::fs::write(&p, r#"{"name": "A3", "arrows": [[1, 2], [2, 3]]}"#).unwrap();
    let (code, out, _) = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL Q1_every_arrow_in_a_cycle"));
    assert_eq!(run(&["weights", p.to_str().unwrap()]).0, 1);
    assert_eq!(run(&["reduce", p.to_str().unwrap()]).0, 1);
    assert_eq!(run(&["all", p.to_str().unwrap()]).0, 1);
}

#[test]
fn polygon_output_is_stable_and_reparses() {
    let (code, a, _) = run(&["polygon", &fixture("q9"), "--format", "structured"]);
    assert_eq!(code, 0);
    let (_, b, _) = run(&["polygon", &fixture("q9"), "--format", "structured", "--seed", "6->7"]);
    assert_eq!(a, b);
    let cp = CheckerboardPolygon::from_structured(&serde_json::from_str(&a).unwrap()).unwrap();
    let q = load_quiver(fixture("q9").as_ref()).unwrap();
    assert!(validate_checkerboard(&cp, &q).pass);
    for f in ["svg", "dot", "text"] {
        let (code, x, _) = run(&["polygon", &fixture("q7"), "--format", f]);
        assert_eq!(code, 0);
        assert_eq!(x, run(&["polygon", &fixture("q7"), "--format", f]).1);
    }
}

#[test]
fn diag_by_size_and_by_file() {
    let (code, out, _) = run(&["diag", "--size", "10"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("10-gon: 15 2-diagonals, 20 pivot arrows, tau-orbit sizes 5 5 5"));
    let (code, out, _) = run(&["diag", &fixture("c3")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("6-gon: 3 2-diagonals"));
    let (_, dot, _) = run(&["diag", "--size", "8", "--format", "dot"]);
    assert!(dot.starts_with("digraph diag8"));
}

#[test]
fn resolve_the_caption_diagonal() {
    let (code, out, _) = run(&["resolve", &fixture("q9"), "--diagonal", "5,12", "--steps", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next().unwrap(), "R^0 (5,12): P(5)+P(6) -> P(3)+P(4)");
    let (_, json, _) = run(&["resolve", &fixture("q9"), "--diagonal", "5,12", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["minimal_period"], 7);
}

#[test]
fn all_on_the_fixtures() {
    for f in ["q9", "q7", "c3", "c6"] {
        let (code, out, _) = run(&["all", &fixture(f), "--field", "32003"]);
        assert_eq!(code, 0, "{f}: {out}");
        assert!(!out.contains("FAIL"));
    }
}
