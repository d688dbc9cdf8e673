use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_girale");

fn fixture(name: &str) -> String {
    format!("{}/../core/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn check_g2_as_girale() {
    let o = run(&["check", &fixture("g2.alg"), "--profile", "girale"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "G2 GIRALE: pass\n");
}

#[test]
fn verbatim_g3_fails_crl_through_a_pipe() {
    let gen = run(&["gen", "gn", "3", "--verbatim-neg"]);
    assert_eq!(gen.status.code(), Some(0));
    let o = run_stdin(&["check", "--profile", "crl"], &stdout(&gen));
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("mult-associative (a3, a3, zero)"), "{}", stdout(&o));
    let j = json(&run_stdin(&["--json", "check", "--profile", "crl"], &stdout(&gen)));
    assert_eq!(j["verdict"], "fail");
    assert_eq!(j["failed_layer"], "monoid");
    assert_eq!(j["violations"][0]["witness"], serde_json::json!(["a3", "a3", "zero"]));
}

#[test]
fn gen_output_matches_fixture() {
    let o = run(&["gen", "gn", "2"]);
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("g2.alg")).unwrap());
}

#[test]
fn translate_examples() {
    assert_eq!(stdout(&run(&["translate", "--tau", "p"])), "p /\\ 1 = 1\n");
    assert_eq!(stdout(&run(&["translate", "--rho", "p = q"])), "p -> q\nq -> p\n");
    let j = json(&run(&["--json", "translate", "--tau", "p -> q"]));
    assert_eq!(j["tau"], "(p -> q) /\\ 1 = 1");
}

#[test]
fn eval_reports_first_falsifying_assignment() {
    let g2 = fixture("g2.alg");
    let o = run(&["eval", &g2, "-e", "p"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "p: fail at p=bot\n");
    let o = run(&["eval", &g2, "-e", "p -> p", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 5);
    let j = json(&run(&["--json", "eval", &g2, "-e", "x /\\ y = y /\\ x"]));
    assert_eq!(j["verdict"], "pass");
    assert_eq!(j["counterexample"], Value::Null);
}

#[test]
fn derivation_checks_and_scans() {
    let o = run(&[
        "derive",
        &fixture("designation_intro.drv"),
        "--scan",
        &fixture("g1.alg"),
        &fixture("g2.alg"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let j = json(&run(&["--json", "derive", &fixture("designation_elim.drv")]));
    assert_eq!(j["verdict"], "pass");
    assert_eq!(j["steps"], 5);
    assert_eq!(j["conclusion"], "p");
}

#[test]
fn filters_and_congruences_of_g2() {
    let g2 = fixture("g2.alg");
    let j = json(&run(&["--json", "filters", &g2]));
    assert_eq!(j["count"], 2);
    assert_eq!(j["filters"][0], serde_json::json!(["one", "top"]));
    let o = run(&["con", &g2]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2 congruences\n"));
    assert_eq!(run(&["edpc", &g2]).status.code(), Some(0));
}

#[test]
fn constructions_feed_back_into_check() {
    let g2 = fixture("g2.alg");
    for (args, profile) in [
        (vec!["heyt", g2.as_str()], "heyting"),
        (vec!["complete", "phase", g2.as_str()], "bounded-girard"),
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let c = run_stdin(&["check", "--profile", profile], &stdout(&o));
        assert_eq!(c.status.code(), Some(0), "{args:?}: {}", stdout(&c));
    }
    let o = run(&["induce", &g2, "--subset", "bot,one"]);
    assert_eq!(stdout(&o), std::fs::read_to_string(&g2).unwrap());
    let o = run(&["induce", &g2, "--subset", "top"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn frame_completion_of_a_small_reduct() {
    let reduct = "algebra C2\nsize 2\nelements f t\nconst one = t\ntable meet\nf f\nf t\ntable imp\nt t\nf t\n";
    let o = run_stdin(&["complete", "frame"], reduct);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let c = run_stdin(&["check", "--profile", "crl"], &stdout(&o));
    assert_eq!(c.status.code(), Some(0));
}

#[test]
fn search_counts_and_countermodels() {
    let j = json(&run(&["--json", "search", "--profile", "girale", "--max-size", "4"]));
    let counts: Vec<u64> = j["counts"].as_array().unwrap().iter().map(|c| c["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![1, 1, 2, 13]);
    assert_eq!(j["exhausted"], true);
    let o = run(&["search", "--profile", "crl", "--size", "3", "--falsify", "x /\\ 1 = x"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample: CRL-3-"));
    let o = run(&["search", "--profile", "gs", "--max-size", "3", "--falsify", "x /\\ y = y /\\ x"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("no counterexample\n"));
}

#[test]
fn reports_are_deterministic() {
    let args = ["--json", "search", "--profile", "bounded-girale", "--max-size", "4", "--models"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(run(&["check", "/nonexistent.alg", "--profile", "crl"]).status.code(), Some(2));
    assert_eq!(run(&["check", &fixture("g2.alg"), "--profile", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["search", "--profile", "gs", "--size", "6"]).status.code(), Some(2));
    assert_eq!(run(&["search", "--profile", "crl"]).status.code(), Some(2));
    assert_eq!(run_stdin(&["check", "--profile", "crl"], "algebra X\nsize 2\n").status.code(), Some(2));
    assert_eq!(run(&["translate", "--tau", "p ->"]).status.code(), Some(2));
}
