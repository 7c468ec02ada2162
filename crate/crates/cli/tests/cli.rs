use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_omnitonal");
const GRAPHS_5: &str = include_str!("../../core/tests/data/graphs_5.g6");
const TREES_LE8: &str = include_str!("../../core/tests/data/trees_le8.g6");
const GRAPHS_LE7: &str = include_str!("../../core/tests/data/graphs_le7.g6");

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn one(args: &[&str]) -> Value {
    let out = run(args, "");
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut lines = json_lines(&out);
    assert_eq!(lines.len(), 1);
    lines.remove(0)
}

#[test]
fn classify_named() {
    let k4 = one(&["classify", "--named", "K4"]);
    assert_eq!(k4["schema"], "omnitonal.classify/1");
    assert_eq!(k4["balanceable"], true);
    assert_eq!(k4["omnitonal"], false);
    assert_eq!(one(&["classify", "--named", "C6"])["balanceable"], false);
}

#[test]
fn classify_census_keeps_implications() {
    let out = run(&["classify"], GRAPHS_LE7);
    assert_eq!(out.status.code(), Some(0));
    let rows = json_lines(&out);
    assert_eq!(rows.len(), 1252);
    for r in rows {
        if r["omnitonal"] == true {
            assert_eq!(r["balanceable"], true);
            assert_eq!(r["bipartite"], true);
        }
    }
}

#[test]
fn classify_reports_bad_lines() {
    let out = run(&["classify"], "Bw\nxx\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(json_lines(&out).len(), 1);
}

#[test]
fn amoeba_verdicts() {
    assert_eq!(one(&["amoeba", "--named", "P4", "--range", "6..8"])["connected_on_range"], true);
    assert_eq!(one(&["amoeba", "--named", "C4", "--range", "5..7"])["connected_on_range"], false);
    let paw = one(&["amoeba", "--named", "K13+pendant"]);
    assert_eq!(paw["connected_on_range"], true);
    assert_eq!(paw["verdict"], "amoeba on [5,7]");
}

#[test]
fn oracle_runs() {
    let ex = one(&["oracle", "ex", "--named", "P3", "--n", "6"]);
    assert_eq!(ex["value"], 6);
    assert_eq!(ex["mode"], "ex");
    let ot = one(&["oracle", "ot", "--named", "K_{1,2}", "--n", "6"]);
    assert_eq!(ot["value"], 3);
    let bal = one(&["oracle", "bal", "--named", "K_{1,4}", "--n", "7"]);
    assert_eq!(bal["value"], 6);
    let forced = one(&["oracle", "bal", "--named", "K2", "--n", "4"]);
    assert_eq!(forced["value"], -1);
}

#[test]
fn oracle_output_is_independent_of_jobs() {
    let a = run(&["oracle", "bal", "--named", "P4", "--n", "6", "--jobs", "1"], "");
    let b = run(&["oracle", "bal", "--named", "P4", "--n", "6", "--jobs", "3"], "");
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn budget_exit_code() {
    let out = run(&["oracle", "bal", "--named", "P3", "--n", "9"], "");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["oracle", "bal", "--named", "Q7", "--n", "5"], "").status.code(), Some(2));
    assert_eq!(run(&["oracle", "bal-r", "--named", "P4", "--n", "5"], "").status.code(), Some(2));
    assert_eq!(run(&["formula", "bal_star", "--n", "10", "--k", "3"], "").status.code(), Some(2));
}

#[test]
fn formulas() {
    let v = one(&["formula", "bal_star", "--n", "10", "--k", "4"]);
    assert_eq!((v["value"].as_i64(), v["valid"].as_bool()), (Some(9), Some(true)));
    assert_eq!(one(&["formula", "ot_star", "--n", "16", "--k", "4"])["value"], 29);
    let v = one(&["formula", "bal_star", "--n", "4", "--k", "4"]);
    assert_eq!(v["value"], 3);
    assert_eq!(v["valid"], false);
    assert_eq!(v["threshold"], "n >= 5");
    assert_eq!(one(&["formula", "rtz_q", "--t", "2"])["value"], 4);
}

#[test]
fn colorings() {
    let c = one(&["coloring", "split", "--n", "10", "--p", "1"]);
    assert_eq!(c["red_edges"], 9);
    let line = c["coloring"].as_str().unwrap().to_string();
    let tones = one(&["coloring", "tones", "--line", &line, "--named", "S4"]);
    assert_eq!(tones["balanced"], false);
    assert_eq!(one(&["coloring", "bal-k4", "--n", "8"])["red_edges"], 8);
}

#[test]
fn census_trees_all_omnitonal() {
    let out = run(&["census", "--format", "json"], TREES_LE8);
    let rows = json_lines(&out);
    let summary = rows.last().unwrap();
    assert_eq!(summary["schema"], "omnitonal.census-summary/1");
    assert_eq!(summary["rows"], 47);
    assert_eq!(summary["omnitonal"], 47);
}

#[test]
fn census_five_vertex_csv() {
    let out = run(&["census", "--jobs", "2"], GRAPHS_5);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("graph6,n,e,balanceable,omnitonal,bipartite,r_tonal"));
    let rows: Vec<&str> = text.lines().skip(1).filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 34);
    for r in rows {
        let f: Vec<&str> = r.split(',').collect();
        if f[4] == "true" {
            assert_eq!(f[5], "true", "{r}");
        }
    }
    assert!(text.contains("# rows=34"));
    assert_eq!(run(&["census", "--jobs", "1"], GRAPHS_5).stdout, out.stdout);
}

#[test]
fn census_amoeba_window_and_lenient() {
    let input = "Bw\nnonsense\nCr\n";
    let out = run(&["census", "--format", "json", "--amoeba-window", "1"], input);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let out = run(&["census", "--format", "json", "--amoeba-window", "1", "--lenient"], input);
    assert_eq!(out.status.code(), Some(0));
    let rows = json_lines(&out);
    assert_eq!(rows.len(), 3);
    assert!(rows[0]["amoeba"].as_str().unwrap().contains("amoeba on [4,4]"));
    assert_eq!(rows[2]["skipped"], 1);
}

#[test]
fn census_empty_input() {
    let out = run(&["census"], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn census_to_file() {
    let path = std::env::temp_dir().join(format!("omnitonal-census-{}.csv", std::process::id()));
    let out = run(&["census", "--output", path.to_str().unwrap()], "Bw\n");
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(text.starts_with("graph6,"));
    assert!(text.contains("Bw,3,3,true,false,false,1"));
}
