use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_castleqec")).args(args).output().expect("binary runs")
}

fn spec(json: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn lines(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

const ELLIPTIC4: &str = r#"{"family":"sep","field":{"p":2,"k":2},"params":{"F":[0,1,1],"G":[0,0,0,1]},"name":"e4"}"#;

#[test]
fn build_reports_dimension() {
    let f = spec(r#"{"family":"suzuki","params":{"q0":2}}"#);
    let o = run(&["build", "--curve-file", f.path().to_str().unwrap(), "--m", "13"]);
    assert!(o.status.success());
    let v = &lines(&o)[0];
    assert_eq!((v["n"].as_u64(), v["k"].as_u64()), (Some(64), Some(5)));
}

#[test]
fn build_with_trace() {
    let f = spec(ELLIPTIC4);
    let o = run(&["build", "--curve-file", f.path().to_str().unwrap(), "--m", "0", "--trace-to", "2"]);
    assert!(o.status.success());
    let rows = lines(&o);
    assert_eq!(rows.len(), 2);
    // the repetition code and its trace
    assert_eq!(rows[0]["k"], 1);
    assert_eq!(rows[0]["d_exact"], 8);
    assert_eq!(rows[1]["q"], 2);
    assert_eq!(rows[1]["k"], 1);
}

#[test]
fn build_norm_trace_is_hermitian_self_orthogonal() {
    let f = spec(r#"{"family":"ntq","params":{"q":2,"r":4,"u":3}}"#);
    let p = f.path().to_str().unwrap();
    let v = &lines(&run(&["build", "--curve-file", p, "--m", "8"]))[0];
    assert_eq!(v["hermitian_self_orthogonal"], true);
    let v = &lines(&run(&["build", "--curve-file", p, "--m", "9"]))[0];
    assert_eq!(v["hermitian_self_orthogonal"], false);
}

#[test]
fn gv_statuses() {
    for (args, want) in [
        (["8", "6", "2", "2"], "exceeds"),
        (["15", "13", "2", "9"], "meets"),
        (["15", "14", "2", "9"], "not-applicable"),
    ] {
        let o = run(&["gv", "--n", args[0], "--k", args[1], "--d", args[2], "--q", args[3]]);
        assert!(o.status.success());
        assert_eq!(lines(&o)[0]["status"], want);
    }
    let o = run(&["gv", "--n", "8", "--k", "6", "--d", "2", "--q", "2", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text, "n,k,d,q,status,d_max,lhs,rhs\n8,6,2,2,exceeds,1,5,8\n");
}

#[test]
fn scan_rows_are_sorted_and_deterministic() {
    let f = spec(ELLIPTIC4);
    let p = f.path().to_str().unwrap();
    let a = run(&["scan", "--curve-file", p, "--construction", "A", "--max-i", "4"]);
    let b = run(&["scan", "--curve-file", p, "--construction", "A", "--max-i", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let rows = lines(&a);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["text"], "[[8,8,1]]_2");
    assert_eq!(rows[1]["text"], "[[8,6,2]]_2‡");
    let ks: Vec<u64> = rows.iter().filter_map(|r| r["k"].as_u64()).collect();
    assert!(ks.windows(2).all(|w| w[0] >= w[1]));
    assert_eq!(rows[3]["available"], false);
}

#[test]
fn scan_construction_c_on_suzuki() {
    let f = spec(r#"{"family":"suzuki","params":{"q0":2}}"#);
    let o = run(&["scan", "--curve-file", f.path().to_str().unwrap(), "--construction", "C", "--max-i", "6"]);
    assert!(o.status.success());
    let rows = lines(&o);
    assert_eq!(rows[1]["text"], "[[64,62,2]]_8†");
    assert_eq!(rows[6]["text"], "[[64,52,4]]_8†");
}

#[test]
fn scan_a_needs_a_self_dual_sequence() {
    let f = spec(r#"{"family":"sep","field":{"p":3,"k":2},"params":{"F":[0,0,1],"G":[0,1,0,1],"fibration":"y"}}"#);
    let o = run(&["scan", "--curve-file", f.path().to_str().unwrap(), "--construction", "A", "--max-i", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("fails at m ="));
}

#[test]
fn reproduce_exit_codes() {
    let o = run(&["reproduce", "--target", "elliptic-gf4"]);
    assert!(o.status.success());
    assert!(lines(&o).iter().all(|r| r["verdict"] == "PASS"));
    let o = run(&["reproduce", "--target", "normtrace"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(lines(&o).iter().filter(|r| r["verdict"] != "PASS").count(), 1);
    let o = run(&["reproduce", "--target", "no-such"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["reproduce", "--list"]);
    assert!(String::from_utf8_lossy(&o.stdout).contains("suzuki8"));
}

#[test]
fn input_errors() {
    let f = spec(r#"{"family":"sep","field":{"p":2,"k":11},"params":{"F":[0,1],"G":[0,1]}}"#);
    let o = run(&["build", "--curve-file", f.path().to_str().unwrap(), "--m", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let f = spec("{not json");
    let o = run(&["build", "--curve-file", f.path().to_str().unwrap(), "--m", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["build", "--curve-file", "/nonexistent/spec.json", "--m", "1"]);
    assert_eq!(o.status.code(), Some(2));
}
