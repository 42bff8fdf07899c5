use std::path::Path;
use std::process::{Command, Output};

const E2: &str = "4 8\n10001100\n01000110\n00100011\n00011001\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stopdist")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn stop_reports_value_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "e2.txt", E2);
    let o = run(&["stop", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "u = 3\nwitness = {0,1,5}\n");
    let o = run(&["dist", &f]);
    assert!(stdout(&o).starts_with("eps = 3"));
}

#[test]
fn json_output_is_deterministic_and_parses() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "e2.txt", E2);
    let a = stdout(&run(&["--json", "stop", &f]));
    let b = stdout(&run(&["--json", "stop", &f]));
    assert_eq!(a, b);
    let report = stopdist::report::RunReport::from_json(&a).unwrap();
    assert!(report.input_digest.unwrap().starts_with("sha256:"));
    let g1 = stdout(&run(&["--json", "greedy", &f, "--rho", "0.4", "--seed", "9", "--trials", "3"]));
    let g2 = stdout(&run(&["--json", "greedy", &f, "--rho", "0.4", "--seed", "9", "--trials", "3"]));
    assert_eq!(g1, g2);
    let e1 = stdout(&run(&["--json", "extremal", "--rows", "3", "--cols", "6", "--workers", "1"]));
    let e4 = stdout(&run(&["--json", "extremal", "--rows", "3", "--cols", "6", "--workers", "4"]));
    let r1 = stopdist::report::RunReport::from_json(&e1).unwrap();
    let r4 = stopdist::report::RunReport::from_json(&e4).unwrap();
    assert_eq!(r1.results, r4.results);
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "2 3\n101\n1x1\n");
    let o = run(&["stop", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(run(&["stop", "/definitely/missing"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["greedy", &bad, "--rho", "0.4"]).status.code(), Some(2));
}

#[test]
fn peel_lists_steps() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "e2.txt", E2);
    let o = run(&["peel", &f, "--erased", "0,1,5"]);
    assert_eq!(stdout(&o), "residual = {0,1,5}\n");
    let o = run(&["peel", &f, "--erased", "0,1"]);
    assert!(stdout(&o).ends_with("residual = {}\n"));
}

#[test]
fn construct_then_solve() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("u3.txt");
    let o = run(&["construct", "uk", "--k", "3", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let padded = dir.path().join("p.txt");
    run(&["construct", "pad", out.to_str().unwrap(), "--times", "2", "-o", padded.to_str().unwrap()]);
    let o = run(&["stop", padded.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("u = 4\n"));
    let o = run(&["construct", "tree", "--path", "3"]);
    assert_eq!(stdout(&o), "2 3\n110\n011\n");
    let o = run(&["construct", "standard", "--k", "2", "--counts", "0,1,1,2"]);
    assert_eq!(stdout(&o), "4 6\n100011\n010011\n001010\n000101\n");
    let o = run(&["construct", "circulant", "--n", "4", "--c", "2"]);
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn bounds_and_lp() {
    assert_eq!(stdout(&run(&["bound", "parity", "--rows", "4", "--cols", "8"])), "parity(4,8) = 4\n");
    assert_eq!(stdout(&run(&["bound", "eps-upper", "--rows", "6", "--cols", "9"])), "eps-upper(6,9) = 4\n");
    assert_eq!(stdout(&run(&["bound", "closed-form", "--rows", "7", "--cols", "10"])), "closed-form(7,10) = 5\n");
    let o = stdout(&run(&["lp", "--n", "11", "--k", "3", "--ilp"]));
    assert!(o.contains("lp value = 6/1"));
    assert!(o.contains("ilp value = 6"));
    assert!(o.contains("bracket = (6,9)"));
}

#[test]
fn extremal_with_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("t.tsv");
    let c = cache.to_str().unwrap();
    let o = run(&["extremal", "--rows", "4", "--cols", "8", "--stat", "eps", "--cache", c]);
    assert!(stdout(&o).starts_with("eps(4,8) = 4"));
    let again = run(&["extremal", "--rows", "4", "--cols", "8", "--stat", "eps", "--cache", c]);
    assert_eq!(stdout(&o), stdout(&again));
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 1);
    let o = run(&["extremal", "--rows", "4", "--cols", "8", "--row-weight", "3"]);
    assert!(stdout(&o).starts_with("u(4,8) = 3 [row_weight=3]"));
}

#[test]
fn verify_suites_pass() {
    for suite in ["paper-small", "lp", "dense", "census"] {
        let o = run(&["verify", "--suite", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).contains(" 0 failed"));
    }
}
