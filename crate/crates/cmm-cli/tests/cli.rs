//! End-to-end coverage of the `cmm` binary: golden output lines, the
//! 0/1/2 exit-code contract, JSON round-tripping, and thread-count
//! independence of the report stream.

use std::process::{Command, Output};

fn cmm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmm"))
        .args(args)
        .output()
        .expect("failed to spawn cmm")
}

fn cmm_env(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cmm"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("failed to spawn cmm")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn mpoly_goldens() {
    let out = cmm(&["mpoly", "--n", "2", "--k", "1", "--lambda", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "P[1] = m[1]\n");

    let out = cmm(&["mpoly", "--n", "2", "--k", "1", "--lambda", "1", "--expand"]);
    assert_eq!(stdout_of(&out), "e[1/2,-1/2] + e[-1/2,1/2]\n");

    let out = cmm(&["mpoly", "--n", "2", "--k", "2", "--lambda", "0"]);
    assert_eq!(stdout_of(&out), "P[0] = m[0]\n");

    let out = cmm(&["mpoly", "--n", "2", "--k", "2", "--lambda", "2"]);
    assert_eq!(
        stdout_of(&out),
        "P[2] = m[2] + ((1 + 2*q^2 + q^4)/(1 + q^2 + q^4))*m[0]\n"
    );

    // engine output for a rank-3 weight with rational coefficients
    let out = cmm(&["mpoly", "--n", "3", "--k", "2", "--lambda", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.starts_with("P[1,1] = m[1,1] + ("), "got: {text}");
}

#[test]
fn mpoly_invalid_weight_exits_2() {
    let out = cmm(&["mpoly", "--n", "2", "--k", "1", "--lambda", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cmm(&["mpoly", "--n", "3", "--k", "1", "--lambda", "1"]);
    assert_eq!(out.status.code(), Some(2), "wrong coefficient count");
    let out = cmm(&["mpoly", "--n", "2", "--k", "0", "--lambda", "1"]);
    assert_eq!(out.status.code(), Some(2), "k < 1");
}

#[test]
fn norm_goldens() {
    let out = cmm(&["norm", "--n", "2", "--k", "1", "--lambda", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "norm_direct  = 1\nnorm_formula = 1\nagree: true\n"
    );

    let out = cmm(&["norm", "--n", "2", "--k", "2", "--lambda", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.starts_with("norm_direct  = q^-4 + q^-2 + 1\n"), "got: {text}");
    assert!(text.ends_with("agree: true\n"));

    let out = cmm(&["norm", "--n", "3", "--k", "2", "--lambda", "1,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).ends_with("agree: true\n"));
}

#[test]
fn check_exit_codes() {
    let out = cmm(&["check", "eq1", "--n", "2", "--k", "1", "--max-coeff", "2"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let out = cmm(&["check", "eq5", "--order", "20"]);
    assert_eq!(out.status.code(), Some(0));

    let out = cmm(&["check", "prop1", "--n", "2", "--order", "-1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = cmm(&["check", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_json_roundtrip_and_passed() {
    let out = cmm(&[
        "check", "norms", "--n", "2", "--k", "2", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut saw = 0;
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).expect("valid JSON line");
        for key in ["identity", "params", "lhs", "rhs", "difference", "passed", "elapsed_ms"] {
            assert!(v.get(key).is_some(), "missing {key} in {line}");
        }
        assert_eq!(v["passed"], serde_json::Value::Bool(true));
        assert_eq!(v["difference"], "0");
        // round-trip: re-serializing the parsed object reproduces the bytes
        let wire: cmm_core::report::JsonReport = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&wire).unwrap(), line);
        saw += 1;
    }
    assert_eq!(saw, 4, "one report per grid lambda");
}

#[test]
fn check_output_independent_of_threads() {
    let strip_elapsed = |s: &str| -> Vec<serde_json::Value> {
        s.lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                v["elapsed_ms"] = 0.into();
                v
            })
            .collect()
    };
    let a = cmm(&[
        "check", "eq8", "--n", "2", "--k", "2", "--max-coeff", "1", "--format", "json",
        "--threads", "1",
    ]);
    let b = cmm_env(
        &["check", "eq8", "--n", "2", "--k", "2", "--max-coeff", "1", "--format", "json"],
        &[("CMM_THREADS", "4")],
    );
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(strip_elapsed(&stdout_of(&a)), strip_elapsed(&stdout_of(&b)));
}

#[test]
fn check_out_file() {
    let dir = std::env::temp_dir().join(format!("cmm-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("reports.jsonl");
    let out = cmm(&[
        "check", "gauss-eval", "--n", "2", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).is_empty(), "reports go to the file");
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 2, "lambda in {{0, omega_1}}");
    for line in written.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["identity"], "GAUSS_EVAL");
        assert_eq!(v["passed"], serde_json::Value::Bool(true));
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn check_eq7_and_symmetry_small() {
    let out = cmm(&["check", "eq7", "--n", "2", "--k", "2", "--max-coeff", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let out = cmm(&["check", "symmetry", "--n", "2", "--k", "3", "--max-coeff", "2"]);
    assert_eq!(out.status.code(), Some(0));
}
