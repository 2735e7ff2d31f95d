use std::process::{Command, Output};

use biperiodic::fastpath::{term_fast, Method};
use biperiodic::identities::SuiteSummary;
use biperiodic::{Params, SequenceKind};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biperiodic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn term_matches_library_output() {
    let p = Params::new(
        "3/2".parse().unwrap(),
        "-5".parse().unwrap(),
        "2/7".parse().unwrap(),
        "1".parse().unwrap(),
        "-1/3".parse().unwrap(),
    )
    .unwrap();
    for n in [-9, 0, 1, 17, 64] {
        for kind in SequenceKind::ALL {
            let o = run(&[
                "term",
                "--a",
                "3/2",
                "--b",
                "-5",
                "--c",
                "2/7",
                "--w0",
                "1",
                "--w1",
                "-1/3",
                "--kind",
                &kind.to_string(),
                "-n",
                &n.to_string(),
            ]);
            assert!(o.status.success());
            let expected = term_fast(&p, kind, n, Method::Doubling).to_string();
            assert_eq!(stdout(&o), format!("{expected}\n"));
        }
    }
}

#[test]
fn term_json_format() {
    let o = run(&["term", "--seq", "pell", "-n", "6", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["value"], "70");
    assert_eq!(doc["seq"], "pell");
    assert_eq!(doc["params"]["c"], "1");
}

#[test]
fn gen_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fib.csv");
    let o = run(&[
        "gen",
        "--seq",
        "fibonacci",
        "--to",
        "7",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text, "n,value\n0,0\n1,1\n2,1\n3,2\n4,3\n5,5\n6,8\n7,13\n");
}

#[test]
fn gen_unwritable_path_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let o = run(&[
        "gen",
        "--seq",
        "pell",
        "--to",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot write"));
}

#[test]
fn gen_negative_range() {
    let o = run(&[
        "gen", "--a", "2", "--b", "3", "--c", "1", "--w0", "1", "--w1", "1", "--from", "-2",
        "--to", "1",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "n,value\n-2,5\n-1,-2\n0,1\n1,1\n");
}

#[test]
fn verify_is_deterministic_and_reports_families() {
    let args = [
        "verify",
        "--suite",
        "catalan",
        "--samples",
        "20",
        "--seed",
        "11",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let summary: SuiteSummary = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(summary.families["CATALAN"].passed, 20);
    assert_eq!(summary.failed, 0);
}

#[test]
fn verify_rejects_bad_arguments() {
    assert_eq!(run(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--max-index", "0"]).status.code(), Some(2));
}

#[test]
fn bench_guard_rail_and_output() {
    let o = run(&[
        "bench",
        "--methods",
        "naive,doubling",
        "--n-list",
        "10,20000000",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["bench", "--n-list", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "bench",
        "--seq",
        "pell",
        "--n-list",
        "500",
        "--methods",
        "naive,matrix,doubling",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text.starts_with("method,n,median_ms,multiplications,value_bits\n"));
}

#[test]
fn catalog_list_plain_and_json() {
    let o = run(&["catalog", "list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("jacobsthal-lucas w(2,1;1,1,2)"));
    assert!(text.contains("k-fibonacci(k) w(0,1;k,k,1)"));
    let o = run(&["catalog", "list", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 16);
}

#[test]
fn help_and_unknown_commands() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}
