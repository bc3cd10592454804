// SPDX-License-Identifier: Apache-2.0

mod common;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use smtkit::oracle::enumerate_models;
use smtkit::problems::{ColoringProblem, GraphSpec};

fn smtkit(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_smtkit"));
    cmd.args(args).env_remove("SMTKIT_SOLVER");
    cmd
}

fn run(args: &[&str]) -> Output {
    smtkit(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn have_z3() -> bool {
    common::z3().is_some()
}

const UNKNOWN_SOLVER: &str = r#"while read -r l; do
  case "$l" in
    "(check-sat)"*) echo unknown ;;
    *) echo success ;;
  esac
done"#;

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["pigeonhole", "0"]).status.code(), Some(1));
    assert_eq!(run(&["color", "g.txt"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn missing_file_exits_1() {
    let o = run(&["check", "/nonexistent/missing.smt2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing.smt2"));
}

#[test]
fn missing_solver_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.smt2");
    fs::write(&path, "(assert true)(check-sat)").unwrap();
    let o = run(&[
        "--solver-cmd",
        "/no/such/solver",
        "check",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unknown_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let solver = dir.path().join("solver.sh");
    fs::write(&solver, UNKNOWN_SOLVER).unwrap();
    let file = dir.path().join("t.smt2");
    fs::write(&file, "(assert true)\n(check-sat)\n").unwrap();
    let cmd = format!("sh {}", solver.display());
    let o = run(&["--solver-cmd", &cmd, "check", file.to_str().unwrap()]);
    assert_eq!(stdout(&o), "unknown\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn env_var_selects_solver() {
    let dir = tempfile::tempdir().unwrap();
    let solver = dir.path().join("solver.sh");
    fs::write(&solver, UNKNOWN_SOLVER).unwrap();
    let o = smtkit(&["pigeonhole", "1"])
        .env("SMTKIT_SOLVER", format!("sh {}", solver.display()))
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "unknown\n");
    // an explicit --solver-cmd wins over the environment
    let o = smtkit(&["--solver-cmd", "/no/such/solver", "pigeonhole", "1"])
        .env("SMTKIT_SOLVER", format!("sh {}", solver.display()))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn emit_writes_a_checkable_script() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p3.smt2");
    let p = path.to_str().unwrap();
    let o = run(&["pigeonhole", "3", "--emit", p]);
    assert!(o.status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("(set-option :produce-models true)\n(declare-fun P_1_1 () Int)\n"));
    assert!(text.ends_with("(check-sat)\n"));
    assert_eq!(text.matches("(declare-fun").count(), 12);
    assert_eq!(text.matches("(assert").count(), 4 + 3 + 12 + 12);

    if !have_z3() {
        return;
    }
    let o = run(&["check", p]);
    assert_eq!(stdout(&o), "unsat\n");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn pigeonhole_is_unsat() {
    if !have_z3() {
        return;
    }
    for n in ["1", "3"] {
        let o = run(&["--solver", "z3", "--timeout", "30", "pigeonhole", n]);
        assert_eq!(stdout(&o), "unsat\n", "n = {n}");
        assert_eq!(o.status.code(), Some(0));
    }
}

#[test]
fn trivial_file_is_sat() {
    if !have_z3() {
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.smt2");
    fs::write(&path, "(assert true)(check-sat)").unwrap();
    let o = run(&["check", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "sat\n");
    assert_eq!(o.status.code(), Some(0));
}

fn color(dir: &Path, graph: &str, k: &str, find: Option<&str>) -> Output {
    let path = dir.join("g.txt");
    fs::write(&path, graph).unwrap();
    let mut args = vec!["color", path.to_str().unwrap(), "--colors", k];
    if let Some(m) = find {
        args.extend(["--find", m]);
    }
    run(&args)
}

#[test]
fn malformed_graph_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    for bad in ["", "3\n1 4\n", "3\n2 2\n", "three\n", "3\n1 2 3\n"] {
        let o = color(dir.path(), bad, "3", None);
        assert_eq!(o.status.code(), Some(1), "{bad:?}");
    }
}

#[test]
fn coloring_counts() {
    if !have_z3() {
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let k3 = "3\n1 2\n2 3\n1 3\n";

    let o = color(dir.path(), k3, "3", Some("10"));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 7, "{out}");
    assert_eq!(lines[6], "6 coloring(s)");
    let mut seen: Vec<&str> = lines[..6].to_vec();
    seen.sort_unstable();
    seen.dedup();
    assert_eq!(seen.len(), 6);
    for l in &lines[..6] {
        let colors: Vec<&str> = l.split(' ').map(|p| p.split('=').nth(1).unwrap()).collect();
        assert!(colors[0] != colors[1] && colors[1] != colors[2] && colors[0] != colors[2]);
        assert!(l.starts_with("1=") && l.contains(" 2=") && l.contains(" 3="));
    }

    let o = color(dir.path(), k3, "2", None);
    assert_eq!(stdout(&o), "0 coloring(s)\n");
    assert_eq!(o.status.code(), Some(0));

    let o = color(dir.path(), "1\n", "1", Some("5"));
    assert_eq!(stdout(&o), "1=1\n1 coloring(s)\n");

    // the default search stops after five
    let o = color(dir.path(), k3, "3", None);
    assert_eq!(stdout(&o).lines().last(), Some("5 coloring(s)"));
}

#[test]
fn coloring_counts_match_the_oracle() {
    if !have_z3() {
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let graphs = [
        "4\n1 2\n2 3\n3 4\n4 1\n",
        "5\n1 2\n2 3\n3 4\n4 5\n5 1\n",
        "6\n1 2\n1 3\n2 3\n4 5\n5 6\n",
        "4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n",
    ];
    for text in graphs {
        let spec: GraphSpec = text.parse().unwrap();
        for k in 2..=3u32 {
            let p = ColoringProblem::new(&spec, k).unwrap();
            let want = enumerate_models(&p.constraints(), &p.domains(k))
                .unwrap()
                .len();
            let o = color(dir.path(), text, &k.to_string(), Some("1000"));
            let last = stdout(&o).lines().last().unwrap().to_owned();
            assert_eq!(last, format!("{want} coloring(s)"), "{text:?} k={k}");
        }
    }
}

#[test]
fn repl_passthrough() {
    if !have_z3() {
        return;
    }
    let mut child = smtkit(&["repl"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"(check-sat)\n(echo \"hi\")\n:q\n(check-sat)\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "sat\nhi\n");
}

#[test]
fn repl_reports_solver_death() {
    let dir = tempfile::tempdir().unwrap();
    let solver = dir.path().join("solver.sh");
    fs::write(
        &solver,
        "read l; echo success; read l; echo success; read l; exit 0",
    )
    .unwrap();
    let mut child = smtkit(&["--solver-cmd", &format!("sh {}", solver.display()), "repl"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"(check-sat)\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}
