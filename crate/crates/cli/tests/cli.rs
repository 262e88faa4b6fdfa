use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn updp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_updp")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const EDGE: &str = "v 1 0 0\nv 2 0 1\ne 1 2\np 1 2\n";

#[test]
fn solve_single_edge() {
    let dir = TempDir::new().unwrap();
    let inst = file(&dir, "e.txt", EDGE);
    let o = updp(&["solve", s(&inst)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "path 0: 1 2\n");
    let o = updp(&["solve", "--oracle", s(&inst)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "path 0: 1 2\n");
}

#[test]
fn solve_reports_no_solution_and_invalid() {
    let dir = TempDir::new().unwrap();
    // both pairs need the middle vertex
    let blocked = file(
        &dir,
        "b.txt",
        "v 1 -1 0\nv 2 1 0\nv 3 0 1\nv 4 -1 2\nv 5 1 2\ne 1 3\ne 2 3\ne 3 4\ne 3 5\np 1 4\np 2 5\n",
    );
    assert_eq!(code(&updp(&["solve", s(&blocked)])), 1);
    assert_eq!(code(&updp(&["solve", "--oracle", s(&blocked)])), 1);
    let down = file(&dir, "d.txt", "v 1 0 1\nv 2 0 0\ne 1 2\np 1 2\n");
    let o = updp(&["solve", s(&down)]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&updp(&["validate", s(&down)])), 2);
}

#[test]
fn report_file_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let inst = file(&dir, "e.txt", EDGE);
    let r1 = dir.path().join("r1");
    let r2 = dir.path().join("r2");
    updp(&["solve", s(&inst), "--report", s(&r1)]);
    updp(&["solve", s(&inst), "--report", s(&r2)]);
    let a = fs::read_to_string(&r1).unwrap();
    assert_eq!(a, fs::read_to_string(&r2).unwrap());
    assert!(a.starts_with("command=solve\n"));
    assert!(a.contains("status=SOLVED\n"));
}

#[test]
fn budget_and_guardrail_exit_three() {
    let dir = TempDir::new().unwrap();
    let mut text = String::new();
    for i in 0..11 {
        text += &format!(
            "v {} {i} 0\nv {} {i} 1\ne {} {}\np {} {}\n",
            2 * i,
            2 * i + 1,
            2 * i,
            2 * i + 1,
            2 * i,
            2 * i + 1
        );
    }
    let inst = file(&dir, "k11.txt", &text);
    assert_eq!(code(&updp(&["solve", s(&inst)])), 3);
    assert_eq!(code(&updp(&["solve", "--oracle", "--max-nodes", "3", s(&inst)])), 3);
    assert_eq!(code(&updp(&["solve", "--max-k", "11", s(&inst)])), 0);
}

#[test]
fn usage_and_io_errors() {
    assert_eq!(code(&updp(&["frobnicate"])), 64);
    assert_eq!(code(&updp(&["solve", "--bogus", "x"])), 64);
    assert_eq!(code(&updp(&["validate", "/nonexistent/instance.txt"])), 74);
    assert_eq!(code(&updp(&["--help"])), 0);
}

#[test]
fn reduce_validate_witness_pipeline() {
    let dir = TempDir::new().unwrap();
    let cnf = file(&dir, "f.cnf", "p cnf 1 1\n1 0\n");
    let inst = dir.path().join("r.txt");
    let labels = dir.path().join("r.lab");
    assert_eq!(code(&updp(&["reduce", s(&cnf), "-o", s(&inst), "--labels", s(&labels)])), 0);
    assert_eq!(code(&updp(&["validate", s(&inst)])), 0);
    let o = updp(&["witness", s(&inst), "--labels", s(&labels), "--assignment", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 28);
    assert_eq!(code(&updp(&["witness", s(&inst), "--labels", s(&labels), "--assignment", "0"])), 1);
    assert_eq!(code(&updp(&["witness", s(&inst), "--labels", s(&labels), "--assignment", "01"])), 64);

    let sol = file(&dir, "w.txt", &stdout(&o));
    let dot = updp(&["export-dot", s(&inst), "--solution", s(&sol)]);
    assert_eq!(code(&dot), 0);
    assert_eq!(stdout(&dot).matches("path=").count(), stdout(&o).split_whitespace().count() - 28 * 3);
}

#[test]
fn bad_dimacs_is_invalid_input() {
    let dir = TempDir::new().unwrap();
    let cnf = file(&dir, "bad.cnf", "p cnf 1 1\n2 0\n");
    let o = updp(&["reduce", s(&cnf)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("out of range"));
}

#[test]
fn rightmost_and_order() {
    let dir = TempDir::new().unwrap();
    // a diamond: 1 -> {2 left, 3 right} -> 4
    let inst = file(&dir, "dia.txt", "v 1 0 0\nv 2 -1 1\nv 3 1 1\nv 4 0 2\ne 1 2\ne 1 3\ne 2 4\ne 3 4\np 1 4\n");
    let o = updp(&["rightmost", s(&inst), "--from", "1", "--to", "4"]);
    assert_eq!(stdout(&o), "path: 1 3 4\n");
    let o = updp(&["rightmost", s(&inst), "--from", "4", "--to", "1"]);
    assert_eq!((code(&o), stdout(&o)), (1, "NONE\n".to_string()));

    let rails = file(&dir, "rails.txt", "v 1 0 0\nv 2 0 2\nv 3 1 0\nv 4 1 2\ne 1 2\ne 3 4\np 1 2\np 3 4\n");
    let paths = file(&dir, "p.txt", "path 0: 1 2\npath 1: 3 4\n");
    let o = updp(&["order", s(&rails), "--paths", s(&paths)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("p0 -> p1;"));
    let shared = file(&dir, "q.txt", "path 0: 1 2\npath 1: 1 2\n");
    assert_eq!(code(&updp(&["order", s(&rails), "--paths", s(&shared)])), 2);
}

#[test]
fn gadgets_validate() {
    let dir = TempDir::new().unwrap();
    for args in [
        vec!["routing"],
        vec!["crossing", "--drop", "e+"],
        vec!["crossing", "--drop", "e-"],
        vec!["row", "--len", "2", "--entry", "minus"],
        vec!["column", "--len", "2"],
    ] {
        let out = dir.path().join(format!("{}.txt", args.join("_")));
        let mut full = vec!["gadget"];
        full.extend(&args);
        full.extend(["-o", s(&out)]);
        assert_eq!(code(&updp(&full)), 0, "{args:?}");
        assert_eq!(code(&updp(&["validate", s(&out)])), 0, "{args:?}");
    }
    assert_eq!(code(&updp(&["gadget", "crossing", "--drop", "e*"])), 64);
}

#[test]
fn routing_gadget_solves() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("routing.txt");
    updp(&["gadget", "routing", "-o", s(&out)]);
    let o = updp(&["solve", s(&out)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 4);
}
