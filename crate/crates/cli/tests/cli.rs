//! End-to-end tests against the compiled binary: output bytes, JSON shape,
//! and the exit-code contract (0 affirmative, 1 negative, 2 usage error).

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spectratope"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn walsh_pm_text() {
    let out = run(&["walsh", "--n", "2", "--format", "pm"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "++++\n+-+-\n++--\n+--+\n"
    );
}

#[test]
fn membership_rejection_with_coefficients() {
    let out = run(&["membership", "--walsh", "2", "--vector", "1,1,1,-1"]);
    assert_eq!(exit_code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["member"], serde_json::json!(false));
    assert_eq!(
        v["coefficients"],
        serde_json::json!(["1/2", "1/2", "1/2", "-1/2"])
    );
}

#[test]
fn membership_acceptance() {
    // v = 4·(first Walsh row) has coefficients (4, 0, 0, 0) ≥ 0.
    let out = run(&["membership", "--walsh", "2", "--vector", "4,4,4,4"]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["member"], serde_json::json!(true));
    assert_eq!(v["coefficients"], serde_json::json!(["4", "0", "0", "0"]));
}

#[test]
fn realize_then_verify_round_trip() {
    let dir = std::env::temp_dir().join("spectratope-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let cert_path = dir.join("cert.json");
    let cert_arg = cert_path.to_str().unwrap();

    let out = run(&[
        "realize",
        "--spectrum",
        "1,-1/4,-1/4,-1/2",
        "--out",
        cert_arg,
    ]);
    assert_eq!(exit_code(&out), 0);
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert_path).unwrap()).unwrap();
    assert_eq!(cert["method"], serde_json::json!("suleimanova"));
    assert_eq!(cert["flags"]["doubly_stochastic"], serde_json::json!(true));
    assert_eq!(cert["numeric"], serde_json::json!(false));

    let out = run(&[
        "verify",
        "--certificate",
        cert_arg,
        "--spectrum",
        "1,-1/4,-1/4,-1/2",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_json(&out)["passed"], serde_json::json!(true));

    // Same certificate against a different spectrum must fail the check.
    let out = run(&[
        "verify",
        "--certificate",
        cert_arg,
        "--spectrum",
        "1,-1/8,-1/8,-1/2",
    ]);
    assert_eq!(exit_code(&out), 1);
    assert_eq!(stdout_json(&out)["passed"], serde_json::json!(false));
}

#[test]
fn realize_failure_is_exit_one() {
    let out = run(&["realize", "--spectrum", "1,-2"]);
    assert_eq!(exit_code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["realizable"], serde_json::json!(false));
    assert!(v["reason"].as_str().unwrap().contains("necessary"));

    let out = run(&["realize", "--spectrum", "1,1/2,1/2,-1/2,-1/2,-1/2"]);
    assert_eq!(exit_code(&out), 1);
    assert_eq!(stdout_json(&out)["realizable"], serde_json::json!(false));
}

#[test]
fn usage_errors_are_exit_two() {
    let out = run(&["realize", "--spectrum", "abc"]);
    assert_eq!(exit_code(&out), 2);

    let out = run(&["membership", "--vector", "1,1"]);
    assert_eq!(exit_code(&out), 2);

    let out = run(&["no-such-command"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn classify_reads_stdin() {
    let mut child = bin()
        .args(["classify", "--matrix", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"[["1","1"],["1","-1"]]"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["is_perron_similarity"], serde_json::json!(true));
    assert_eq!(v["perron_indices"], serde_json::json!([1]));
}

#[test]
fn vertices_and_volume_for_walsh_simplex() {
    let out = run(&["vertices", "--walsh", "1", "--set", "w"]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["set"], serde_json::json!("w"));
    assert_eq!(v["dim"], serde_json::json!(2));
    let vertices = v["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 3);

    let out = run(&["volume", "--walsh", "2", "--set", "w"]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["vertex_count"], serde_json::json!(5));
    // |det H_2| / 4! = 16/24
    assert_eq!(v["volume"], serde_json::json!("2/3"));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["vertices", "--walsh", "2", "--set", "tope"]);
    let b = run(&["vertices", "--walsh", "2", "--set", "tope"]);
    assert_eq!(exit_code(&a), 0);
    assert_eq!(a.stdout, b.stdout);

    let a = run(&["figure", "--which", "fig2", "--a", "1/3"]);
    let b = run(&["figure", "--which", "fig2", "--a", "1/3"]);
    assert_eq!(exit_code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn figure_csv_shape() {
    let out = run(&["figure", "--which", "fig1"]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("region,kind,values"));
    assert!(text.lines().any(|l| l.starts_with("W(H1),vertex,")));
    assert!(text.lines().any(|l| l.starts_with("P(H1),ineq,")));
    assert!(text.lines().any(|l| l.starts_with("P1(H1),vertex,")));

    let out = run(&["figure", "--which", "fig2", "--a", "3/2"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn scheme_queries() {
    let out = run(&["scheme", "--n", "2", "--k", "2", "--l", "3"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_json(&out)["product_index"], serde_json::json!(4));

    let out = run(&["scheme", "--n", "1", "--k", "1", "--format", "csv"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "1,0\n0,1\n");

    let out = run(&["scheme", "--n", "2", "--l", "3"]);
    assert_eq!(exit_code(&out), 2);
}
