// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qubit_qi_cli::report::Report;
use qubit_qi_cli::spec::parse_channel_spec;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qubit-qi"))
}

fn spec(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("specs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_spec(dir: &tempfile::TempDir, text: &str) -> PathBuf {
    let path = dir.path().join("spec.json");
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn report_pauli_text() {
    let out = run(&["report", spec("pauli.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("average fidelity  0.400000 -> 0.733333"), "{text}");
    assert!(text.contains("pi_rotation"), "{text}");
}

#[test]
fn report_json_round_trips_through_kraus_spec() {
    for name in ["pauli.json", "twisted_damping.json", "mixed_rotation.json", "tetrahedron.json", "edge.json"] {
        let out = run(&["report", "--json", spec(name).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let report: Report = serde_json::from_str(&stdout(&out)).unwrap();
        let original = report.spec.build().unwrap();

        let dir = tempfile::tempdir().unwrap();
        let kraus = serde_json::to_string(&report.channel).unwrap();
        let path = write_spec(&dir, &kraus);
        let again = run(&["report", "--json", path.to_str().unwrap()]);
        assert_eq!(again.status.code(), Some(0));
        let second: Report = serde_json::from_str(&stdout(&again)).unwrap();
        let (_, rebuilt) = parse_channel_spec(&kraus).unwrap();
        assert!(original.affine().max_difference(rebuilt.affine()) < 1e-9, "{name}");
        assert!((second.delta_f - report.delta_f).abs() < 1e-9, "{name}");
    }
}

#[test]
fn twisted_damping_report() {
    let out = run(&["report", "--json", spec("twisted_damping.json").to_str().unwrap()]);
    let r: Report = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((r.delta_f - 0.2).abs() < 1e-12);
    assert!((r.optimizer.angle - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    let out = run(&["validate", spec("pauli.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("valid channel"));

    let out = run(&["validate", spec("projector.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not trace preserving"));

    let dir = tempfile::tempdir().unwrap();
    let path = write_spec(&dir, r#"{"kind":"pauli","p":[0.1,0.6]}"#);
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`p`"));

    let path = write_spec(&dir, r#"{"kind":"pauli","p":[0.5,0.6,0.2,0.1]}"#);
    assert_eq!(run(&["report", path.to_str().unwrap()]).status.code(), Some(1));

    assert_eq!(run(&["report", "/nonexistent/spec.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--family", "mobius"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--family", "tetrahedron", "--grid", "p=0:0.9:3"]).status.code(), Some(2));
}

#[test]
fn sweep_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = run(&[
            "sweep",
            "--family",
            "tetrahedron",
            "--grid",
            "p=0:1/2:41,p_prime=0:1/2:41",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "p,p_prime,f_before,delta_f,f_after,lambda_max,phi,axis_x,axis_y,axis_z,region,degenerate"
    );
    // 41 + 40 + … + 1 points in the triangle.
    assert_eq!(lines.count(), 41 * 42 / 2);
}

#[test]
fn sweep_spot_rows() {
    let out = run(&["sweep", "--family", "mixed_rotation", "--grid", "p=1/3:1/3:2,theta=0:2pi/3:2"]);
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0][3], "0");
    assert_eq!(rows[0][10], "identity");
    assert_eq!(rows[1][3], "0.166666666667");
    assert_eq!(rows[1][6], "0.785398163397");
    assert_eq!(rows[1][10], "rotation");

    let out = run(&["sweep", "--family", "tetrahedron", "--grid", "p=0.25:0.3:2,p_prime=0.05:0.1:2"]);
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(&rows[0][..2], ["0.25", "0.05"]);
    assert_eq!(rows[0][10], "identity");
    assert_eq!(&rows[3][..2], ["0.3", "0.1"]);
    assert_eq!(rows[3][3], "0.133333333333");
    assert_eq!(rows[3][10], "pi_rotation");
}

#[test]
fn verify_examples() {
    let out = run(&["verify", spec("pauli.json").to_str().unwrap(), "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(stdout(&out).matches("PASS").count(), 6);

    let out = run(&["verify", spec("edge.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("degenerate"));

    let out = run(&["verify", spec("pauli.json").to_str().unwrap(), "--bf", "10"]);
    assert_eq!(out.status.code(), Some(2));
}
