//! End-to-end tests of the command-line interface: exit-code contract,
//! JSON round-trips, and the printed formats.

use std::io::Write;
use std::process::{Command, Stdio};

fn qcjt(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qcjt"));
    cmd.args(args);
    cmd.stdin(Stdio::piped());
    cmd.stdout(Stdio::piped());
    cmd.stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn qcjt");
    if let Some(text) = stdin {
        child
            .stdin
            .as_mut()
            .expect("stdin handle")
            .write_all(text.as_bytes())
            .expect("write stdin");
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().expect("wait qcjt");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn tmp_path(name: &str) -> String {
    let dir = std::env::temp_dir().join("qcjt-cli-tests");
    std::fs::create_dir_all(&dir).expect("create temp dir");
    dir.join(name).to_str().expect("utf-8 path").to_string()
}

/// Module with X = J_2, Y = 0 over GF(7), n = 3: type [2] at (1,0) but
/// [1]^2 at (0,1).
const PAIR_JSON: &str =
    r#"{"p":7,"e":1,"n":3,"c":2,"q":2,"d":2,"matrices":[[0,1,0,0],[0,0,0,0]]}"#;

#[test]
fn new_golden_types() {
    let (code, out, _) = qcjt(
        &["new", "--p", "7", "--n", "3", "--c", "2", "--kind", "k"],
        None,
    );
    assert_eq!(code, 0);
    let (code, jt, _) = qcjt(&["jtype", "-", "--lambda", "3,4"], Some(&out));
    assert_eq!(code, 0);
    assert_eq!(jt.trim(), "[1]");

    let free = tmp_path("free.json");
    let (code, _, _) = qcjt(
        &["new", "--p", "7", "--n", "3", "--c", "2", "--kind", "free", "--out", &free],
        None,
    );
    assert_eq!(code, 0);
    let (code, jt, _) = qcjt(&["jtype", &free, "--lambda", "2,5"], None);
    assert_eq!(code, 0);
    assert_eq!(jt.trim(), "[3]^3");

    let (_, quot, _) = qcjt(
        &[
            "new", "--p", "7", "--n", "3", "--c", "2", "--kind", "radical-quotient",
            "--s", "0", "--t", "3",
        ],
        None,
    );
    let (code, jt, _) = qcjt(&["jtype", "-", "--lambda", "1,1"], Some(&quot));
    assert_eq!(code, 0);
    assert_eq!(jt.trim(), "[1] [2] [3]");
}

#[test]
fn json_round_trip_is_byte_identical() {
    let path = tmp_path("a.json");
    let (code, _, _) = qcjt(
        &[
            "new", "--p", "5", "--e", "2", "--n", "2", "--c", "3", "--kind", "free",
            "--out", &path,
        ],
        None,
    );
    assert_eq!(code, 0);
    let saved = std::fs::read_to_string(&path).expect("read module file");
    let (code, out, _) = qcjt(&["syzygy", &path, "--index", "0"], None);
    assert_eq!(code, 0);
    assert_eq!(out, saved);
}

#[test]
fn cjt_exit_codes_and_witness() {
    let quot = tmp_path("ar3.json");
    let (code, _, _) = qcjt(
        &[
            "new", "--p", "7", "--n", "3", "--c", "2", "--kind", "radical-quotient",
            "--s", "0", "--t", "3", "--out", &quot,
        ],
        None,
    );
    assert_eq!(code, 0);
    let (code, out, _) = qcjt(&["cjt", &quot, "--method", "symbolic"], None);
    assert_eq!(code, 0);
    assert!(out.contains(r#""constant":true"#), "verdict: {out}");

    let (code, out, _) = qcjt(&["cjt", "-", "--method", "exhaustive"], Some(PAIR_JSON));
    assert_eq!(code, 1);
    assert!(out.contains(r#""constant":false"#), "verdict: {out}");
    assert!(out.contains(r#""lambda_a""#), "witness missing: {out}");

    // the symbolic certificate is defined for two generators only
    let three = tmp_path("free3.json");
    let (code, out, err) = qcjt(
        &[
            "new", "--p", "7", "--n", "3", "--c", "3", "--kind", "free", "--out", &three,
        ],
        None,
    );
    assert_eq!(code, 0);
    assert!(out.is_empty() && err.is_empty());
    let (code, _, err) = qcjt(&["cjt", &three, "--method", "symbolic"], None);
    assert_eq!(code, 2);
    assert!(err.contains("error:"), "stderr: {err}");
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = qcjt(
        &["new", "--p", "7", "--n", "3", "--c", "2", "--kind", "mystery"],
        None,
    );
    assert_eq!(code, 2);
    assert!(err.contains("unknown kind"), "stderr: {err}");

    let (code, _, _) = qcjt(&["jtype", "-", "--lambda", "0,0"], Some(PAIR_JSON));
    assert_eq!(code, 2);

    let (code, _, _) = qcjt(&["verify", "--suite", "quick"], None);
    assert_eq!(code, 2);

    let (code, _, _) = qcjt(&["verify", "--grid", "7,1,3"], None);
    assert_eq!(code, 2);
}

#[test]
fn betti_prints_sequence_and_complexity() {
    let (_, k, _) = qcjt(
        &["new", "--p", "7", "--n", "3", "--c", "2", "--kind", "k"],
        None,
    );
    let (code, out, _) = qcjt(&["betti", "-", "--max", "6"], Some(&k));
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("1 2 3 4 5 6 7"));
    assert_eq!(lines.next(), Some("complexity 2"));
}

#[test]
fn rp_exit_codes() {
    let k = tmp_path("k.json");
    let (code, _, _) = qcjt(
        &["new", "--p", "7", "--n", "3", "--c", "2", "--kind", "k", "--out", &k],
        None,
    );
    assert_eq!(code, 0);
    let (code, out, _) = qcjt(&["rp", &k], None);
    assert_eq!(code, 1);
    assert!(out.contains(r#""rp":false"#), "report: {out}");

    let o1 = tmp_path("o1k.json");
    let (code, _, _) = qcjt(&["syzygy", &k, "--index", "1", "--out", &o1], None);
    assert_eq!(code, 0);
    let (code, out, _) = qcjt(&["rp", &o1], None);
    assert_eq!(code, 0);
    assert!(out.contains(r#""rp":true"#), "report: {out}");
}

#[test]
fn classify_prints_trace_and_verdict() {
    let k = tmp_path("k2.json");
    qcjt(
        &["new", "--p", "7", "--n", "3", "--c", "2", "--kind", "k", "--out", &k],
        None,
    );
    let o2 = tmp_path("o2k.json");
    let (code, _, _) = qcjt(&["syzygy", &k, "--index", "2", "--out", &o2], None);
    assert_eq!(code, 0);
    let (code, out, _) = qcjt(&["classify", &o2], None);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.last(), Some(&"SyzygyOfK(2)"));
    // one trace line per descent step, dimensions 10 then 8
    assert!(lines[0].starts_with("dim 10"), "trace: {out}");
    assert!(lines[1].starts_with("dim 8"), "trace: {out}");
    assert!(lines[0].contains("b0") && lines[0].contains("b-1"), "trace: {out}");

    let quot = tmp_path("ar3b.json");
    qcjt(
        &[
            "new", "--p", "7", "--n", "3", "--c", "2", "--kind", "radical-quotient",
            "--s", "0", "--t", "3", "--out", &quot,
        ],
        None,
    );
    let (code, out, _) = qcjt(&["classify", &quot], None);
    assert_eq!(code, 1);
    assert!(out.contains("NotSyzygyOfK"), "verdict: {out}");
}

#[test]
fn verify_small_grid_passes_with_scope_notice() {
    let (code, out, _) = qcjt(&["verify", "--grid", "3,2,2,2"], None);
    assert_eq!(code, 0, "output: {out}");
    assert!(out.contains("12 of 12 checks passed"), "output: {out}");
    assert!(out.contains("out of scope for n = 2"), "output: {out}");
}
