//! Binary-level checks: file formats, exit codes, refusal messages.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_innerforge")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn density_csv_format() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    write(&w, r#"{"family":"linear","scale":1.0}"#);
    let lat = dir.path().join("l.txt");
    let mut text = String::new();
    let gap = 2.0 * std::f64::consts::PI;
    let mut k = -20;
    while k as f64 * gap <= 130.0 {
        if k as f64 * gap >= -130.0 {
            text.push_str(&format!("{:.17e}\n", k as f64 * gap));
        }
        k += 1;
    }
    write(&lat, &text);
    let out = dir.path().join("d.csv");
    let o = run(&[
        "density",
        "--weight",
        w.to_str().unwrap(),
        "--lattice",
        lat.to_str().unwrap(),
        "--r",
        "30,60,120",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "r,ratio,interval_left,interval_right");
    assert_eq!(lines.count(), 3);
}

#[test]
fn unsorted_lattice_rejected_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    write(&w, r#"{"family":"linear","scale":1.0}"#);
    let lat = dir.path().join("bad.txt");
    write(&lat, "1.0\n0.5\n2.0\n");
    let out = dir.path().join("d.csv");
    let o = run(&[
        "density",
        "--weight",
        w.to_str().unwrap(),
        "--lattice",
        lat.to_str().unwrap(),
        "--r",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "stderr: {err}");
}

#[test]
fn bad_weight_json_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    write(&w, r#"{"family":"cubic"}"#);
    let o = run(&["weight-check", "--weight", w.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_exits_2() {
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn weight_check_flags_failing_weight() {
    // sampled e^x weight fails the doubling diagnostics
    let dir = tempfile::tempdir().unwrap();
    let mut samples = String::from(r#"{"family":"sampled","samples":["#);
    for i in 0..=400 {
        let x = -20.0 + 40.0 * i as f64 / 400.0;
        if i > 0 {
            samples.push(',');
        }
        samples.push_str(&format!("[{x},{}]", x.exp()));
    }
    samples.push_str("]}");
    let w = dir.path().join("w.json");
    write(&w, &samples);
    let cert = dir.path().join("c.json");
    let o = run(&[
        "weight-check",
        "--weight",
        w.to_str().unwrap(),
        "--window",
        "-20,20",
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.contains("comparability") || err.contains("doubling"),
        "stderr: {err}"
    );
    // the certificate is still written with the failing check recorded
    let text = std::fs::read_to_string(&cert).unwrap();
    assert!(text.contains("\"pass\": false"));
}

#[test]
fn majorant_cli_plot_columns() {
    let dir = tempfile::tempdir().unwrap();
    let theta = dir.path().join("theta.json");
    write(&theta, r#"{"zeros":[],"a":1.0}"#);
    let omega = dir.path().join("omega.csv");
    let mut text = String::from("x,value\n");
    for i in 0..=300 {
        let x = -45.0 + 90.0 * i as f64 / 300.0;
        text.push_str(&format!("{x},1.0\n"));
    }
    write(&omega, &text);
    let out = dir.path().join("wit.json");
    let plot = dir.path().join("plot.csv");
    let o = run(&[
        "majorant",
        "--theta",
        theta.to_str().unwrap(),
        "--omega",
        omega.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--plot-out",
        plot.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&plot).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "x,omega,f_final,ratio");
    // every data row satisfies f_final <= omega
    for line in csv.lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!(cols[2] <= cols[1] * (1.0 + 1e-12));
    }
    let wit = std::fs::read_to_string(&out).unwrap();
    assert!(wit.contains("pointwise_domination"));
}

#[test]
fn thread_cap_preserves_output_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.json");
    let many = dir.path().join("many.json");
    let o = Command::new(bin())
        .env("INNERFORGE_THREADS", "1")
        .args(["oracle-test", "--seed", "11", "--out", one.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(o.status.success());
    let o = Command::new(bin())
        .args(["oracle-test", "--seed", "11", "--out", many.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(
        std::fs::read(&one).unwrap(),
        std::fs::read(&many).unwrap(),
        "thread count must not change certified bytes"
    );
}

#[test]
fn build_inner_eval_csv_header() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    write(&w, r#"{"family":"linear","scale":1.0}"#);
    let lat = dir.path().join("l.txt");
    let mut text = String::new();
    for k in -10..=10 {
        text.push_str(&format!("{:.17e}\n", k as f64 * 2.0 * std::f64::consts::PI));
    }
    write(&lat, &text);
    let out = dir.path().join("inner.json");
    let eval = dir.path().join("j.csv");
    let o = run(&[
        "build-inner",
        "--weight",
        w.to_str().unwrap(),
        "--lattice",
        lat.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--eval-out",
        eval.to_str().unwrap(),
        "--grid",
        "200",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&eval).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "x,ReJ,ImJ,argJ,absJprime");
    let dump = std::fs::read_to_string(&out).unwrap();
    assert!(dump.contains("cstar") && dump.contains("clark_sigma1"));
    // unimodularity along the CSV
    for line in csv.lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let norm = (cols[1] * cols[1] + cols[2] * cols[2]).sqrt();
        assert!((norm - 1.0).abs() < 1e-9);
    }
}
