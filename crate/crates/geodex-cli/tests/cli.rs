//! End-to-end tests that drive the compiled binary.

use geodex::families::gen_petersen;
use geodex::formats::{parse_graph, render_edge_list};
use serde_json::Value;
use std::io::Write;
use std::process::{Command, Stdio};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn geodex(args: &[&str]) -> Run {
    geodex_with(args, None, &[])
}

fn geodex_with(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_geodex"));
    cmd.args(args);
    for (key, value) in env {
        cmd.env(key, value);
    }
    let output = match stdin {
        Some(text) => {
            cmd.stdin(Stdio::piped())
                .stdout(Stdio::piped())
                .stderr(Stdio::piped());
            let mut child = cmd.spawn().expect("binary starts");
            // A child that fails fast may close the pipe before reading it.
            let _ = child
                .stdin
                .take()
                .expect("stdin is piped")
                .write_all(text.as_bytes());
            child.wait_with_output().expect("binary finishes")
        }
        None => cmd.output().expect("binary runs"),
    };
    Run {
        code: output.status.code().expect("no signal"),
        stdout: String::from_utf8(output.stdout).expect("stdout is UTF-8"),
        stderr: String::from_utf8(output.stderr).expect("stderr is UTF-8"),
    }
}

fn json_body(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).expect("stdout is a JSON report")
}

fn write_temp(contents: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().expect("temp file");
    file.write_all(contents.as_bytes())
        .expect("temp file write");
    file
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let first = geodex(&["formula", "sjoin", "3", "3", "--cross-check"]);
    let second = geodex(&["formula", "sjoin", "3", "3", "--cross-check"]);
    assert_eq!(first.code, 0, "stderr: {}", first.stderr);
    assert_eq!(first.stdout, second.stdout);
    let body = json_body(&first);
    assert_eq!(body["schema_version"], "geodex-report/1");
    assert_eq!(body["results"]["value"], "90");
    assert_eq!(body["results"]["cross_check"], "match");
}

#[test]
fn gpn_counts_the_petersen_graph_from_an_edge_list_file() {
    let file = write_temp(&render_edge_list(&gen_petersen()));
    let path = file.path().to_str().expect("temp path is UTF-8");
    let run = geodex(&["gpn", path, "--expect", "55"]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let body = json_body(&run);
    assert_eq!(body["results"]["gpn"], "55");
    assert_eq!(body["inputs"]["graph"]["format"], "edge-list");
    assert_eq!(body["inputs"]["graph"]["n"], 10);
}

#[test]
fn gpn_reads_graph6_from_stdin() {
    let run = geodex_with(&["gpn", "-"], Some("Cl\n"), &[]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let body = json_body(&run);
    assert_eq!(body["results"]["gpn"], "12");
    assert_eq!(body["inputs"]["graph"]["source"], "stdin");
    assert_eq!(body["inputs"]["graph"]["format"], "graph6");
}

#[test]
fn expect_mismatch_exits_with_code_2() {
    let run = geodex_with(&["gpn", "-", "--expect", "99"], Some("Cl\n"), &[]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("expected 99"), "stderr: {}", run.stderr);
}

#[test]
fn usage_errors_exit_with_code_1() {
    assert_eq!(geodex(&["no-such-command"]).code, 1);
    assert_eq!(geodex(&["gpn", "/no/such/file"]).code, 1);
    assert_eq!(geodex(&["family", "sjoin", "3"]).code, 1);
    assert_eq!(geodex(&["formula", "cube", "5", "--json", "--csv"]).code, 1);
    let garbled = geodex_with(&["gpn", "-"], Some("this is not a graph\n"), &[]);
    assert_eq!(garbled.code, 1);
}

#[test]
fn help_and_version_exit_with_code_0() {
    let help = geodex(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("geodex"));
    assert_eq!(geodex(&["--version"]).code, 0);
}

#[test]
fn csv_mode_projects_the_bipartite_table() {
    let run = geodex(&["bipartite", "6", "--csv"]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let lines: Vec<&str> = run.stdout.lines().collect();
    assert_eq!(
        lines,
        vec![
            "a,b,family,gpn,is_max",
            "1,5,complete-bipartite,21,false",
            "2,4,complete-bipartite,30,false",
            "3,3,complete-bipartite,33,true",
            "3,3,crown,24,false",
        ]
    );
}

#[test]
fn family_emits_a_graph_that_parses_back() {
    let run = geodex(&["family", "cycle", "4", "--emit", "edge-list"]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let body = json_body(&run);
    let payload = body["results"]["graph"].as_str().expect("graph payload");
    let g = parse_graph(payload, None).expect("emitted graph parses");
    assert_eq!(g.n(), 4);
    assert_eq!(g.m(), 4);

    let petersen = geodex(&["family", "petersen"]);
    assert_eq!(petersen.code, 0);
    assert_eq!(json_body(&petersen)["results"]["graph"], "IheA@GUAo");
}

#[test]
fn cactus_improve_logs_monotone_steps_and_ends_balanced() {
    let file = write_temp("5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    let path = file.path().to_str().expect("temp path is UTF-8");
    let run = geodex(&["cactus", "improve", path]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let body = json_body(&run);
    assert_eq!(body["results"]["balanced"], true);
    assert_eq!(body["results"]["gpn_initial"], "15");
    assert_eq!(body["results"]["gpn_final"], "18");
    let steps = body["results"]["steps"].as_array().expect("step log");
    assert!(!steps.is_empty());
    for step in steps {
        let before: u64 = step["gpn_before"].as_str().unwrap().parse().unwrap();
        let after: u64 = step["gpn_after"].as_str().unwrap().parse().unwrap();
        assert!(after >= before, "step went backwards: {step}");
    }
}

#[test]
fn bound_sweep_reports_violation_counts() {
    let run = geodex(&["bound", "4"]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let body = json_body(&run);
    assert_eq!(body["results"]["classes"], 6);
    assert_eq!(body["results"]["asymptotic_violations"], 6);
    assert_eq!(body["results"]["safe_violations"], 0);
}

#[test]
fn invalid_worker_count_is_rejected() {
    let run = geodex_with(&["gpn", "-"], Some("Cl\n"), &[("GEODEX_WORKERS", "zero")]);
    assert_eq!(run.code, 1);
    assert!(
        run.stderr.contains("GEODEX_WORKERS"),
        "stderr: {}",
        run.stderr
    );

    let pinned = geodex_with(&["gpn", "-"], Some("Cl\n"), &[("GEODEX_WORKERS", "2")]);
    assert_eq!(pinned.code, 0, "stderr: {}", pinned.stderr);
}
