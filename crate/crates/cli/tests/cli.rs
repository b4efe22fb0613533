use std::fs;
use std::process::{Command, Output};

fn orthokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthokit"))
        .args(args)
        .env_remove("ORTHOKIT_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn samples() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../samples")
}

#[test]
fn check_orthomodularity_in_o6() {
    let o = orthokit(&["--format", "machine", "check", "--lattice", "O6", "a|b = ((a|b)&b')|b"]);
    assert_eq!(o.status.code(), Some(1));
    // first countermodel of this literal form in enumeration order
    assert_eq!(stdout(&o).trim(), "VERDICT fails LATTICE O6 WITNESS a=y b=x");
    let o = orthokit(&["--format", "machine", "check", "-l", "O6", "a | (a' & (a | b)) = a | b"]);
    assert_eq!(stdout(&o).trim(), "VERDICT fails LATTICE O6 WITNESS a=x b=y");
    let o = orthokit(&["check", "-l", "O6", "L8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("holds in O6 (36 valuations)"));
}

#[test]
fn machine_output_is_stable() {
    let args = ["--format", "machine", "quasi", "-l", "M12", "-l", "F2", "ident-trans[3]"];
    let a = stdout(&orthokit(&args));
    let b = stdout(&orthokit(&args));
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 2);
    let seq = stdout(&orthokit(&[&["--jobs", "1"][..], &args[..]].concat()));
    assert_eq!(a, seq);
}

#[test]
fn quasi_and_check_split() {
    let o = orthokit(&["check", "-l", "O6", "a ==5 b => a = b"]);
    assert_eq!(o.status.code(), Some(2));
    let o = orthokit(&["--format", "machine", "quasi", "-l", "O6", "a ==5 b => a = b"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "VERDICT fails LATTICE O6 WITNESS a=x b=y");
}

#[test]
fn table1_grid() {
    let o = orthokit(&["--format", "machine", "table1"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(rows[0], "ROW 0 ≡0 ≡4 ≡3 ≡2 ≡1 ≡5");
    assert_eq!(rows[4], "ROW 4 ≡4 ≡4 ≡5 ≡5 ≡5 ≡5");
    assert_eq!(rows[5], "ROW 5 ≡5 ≡5 ≡5 ≡5 ≡5 ≡5");
}

#[test]
fn classify_boolean() {
    let o = orthokit(&["--format", "machine", "classify", "--lattice", "2^4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        "CLASSES LATTICE 2^4 OL=yes WOML=yes OML=yes WDL=yes DL=yes"
    );
}

#[test]
fn canon_and_equality() {
    let o = orthokit(&["--format", "machine", "canon", "a ->5 0"]);
    let p = orthokit(&["--format", "machine", "canon", "a'"]);
    assert_eq!(stdout(&o), stdout(&p));
    assert_eq!(orthokit(&["canon", "a <->1 b", "--equal", "a ==5 b"]).status.code(), Some(0));
    assert_eq!(orthokit(&["canon", "a ==1 b", "--equal", "a ==5 b"]).status.code(), Some(1));
    assert_eq!(orthokit(&["canon", "a | b | c"]).status.code(), Some(2));
}

#[test]
fn derive_samples_and_rejection() {
    for s in ["ql_symmetry.drv", "cl_mp.drv"] {
        let o = orthokit(&["derive", samples().join(s).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{s}: {}", stdout(&o));
    }
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.drv");
    fs::write(&bad, "system QL i=5\n1 A | B ==5 B | A axiom QL1 A:=A B:=B\n2 B | A ==5 A | B rule QLR4 2\n").unwrap();
    let o = orthokit(&["--format", "machine", "derive", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("REJECTED LINE 2 "));
    fs::write(&bad, "1 A premise 1\n").unwrap();
    assert_eq!(orthokit(&["derive", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn congruence_in_o6() {
    let o = orthokit(&["--format", "machine", "congruence", "-l", "O6", "A | (~A & (A | B))", "A | B"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "VERDICT fails LATTICE O6 WITNESS a=x b=y");
    let o = orthokit(&["congruence", "-l", "O6", "A | (~A & (A | B))", "A | B", "--premise", "A"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn search_writes_lattice_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("found");
    let o = orthokit(&[
        "--format", "machine", "search", "--target", "L7", "--mode", "failing", "--max-n", "8",
        "--limit", "2", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("VERDICT fails LATTICE OL6_"));
    // the written files are lattices in which the target fails
    for entry in fs::read_dir(&out).unwrap() {
        let path = entry.unwrap().path();
        let o = orthokit(&["check", "-l", path.to_str().unwrap(), "L7"]);
        assert_eq!(o.status.code(), Some(1));
    }
    let o = orthokit(&["search", "--target", "a | b = b | a", "--max-n", "8"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(orthokit(&["search", "--target", "L7", "--max-n", "14"]).status.code(), Some(2));
}

#[test]
fn atlas_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("atlas.lat");
    let o = orthokit(&["atlas"]);
    assert_eq!(o.status.code(), Some(0));
    fs::write(&file, stdout(&o)).unwrap();
    let all = orthokit(&["--format", "machine", "classify", "-l", file.to_str().unwrap()]);
    let stock = orthokit(&[
        "--format", "machine", "classify", "-l", "2", "-l", "2^2", "-l", "2^3", "-l", "2^4", "-l",
        "MO2", "-l", "O6", "-l", "F9G", "-l", "F3B", "-l", "M12", "-l", "F2",
    ]);
    assert_eq!(stdout(&all), stdout(&stock));
    let dot = stdout(&orthokit(&["--format", "dot", "atlas", "O6"]));
    assert!(dot.starts_with("digraph \"O6\""));
    assert_eq!(dot.matches("->").count(), 6);
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(orthokit(&["check", "-l", "Q7", "a = a"]).status.code(), Some(2));
    assert_eq!(orthokit(&["check", "-l", "O6", "a ->9 b"]).status.code(), Some(2));
    assert_eq!(orthokit(&["eval", "-l", "O6", "a", "a=q"]).status.code(), Some(2));
    assert_eq!(orthokit(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_orthokit"))
        .args(["check", "-l", "F2", "a | (b | c) = (a | b) | c"])
        .env("ORTHOKIT_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}
