use std::fs;
use std::process::{Command, Output};

use threshold_lab::{
    emit_plot, omega_range, run_threshold_sweep, write_sweep_csv, ExperimentConfig, LabError,
    PlotFormat, CSV_HEADER,
};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_threshold-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn sweep_args(out: &str) -> Vec<&str> {
    vec![
        "sweep", "--n", "10", "--k", "2", "--group", "Z2", "--omega-min", "-3", "--omega-max",
        "3", "--omega-step", "1.5", "--trials", "30", "--seed", "42", "--out", out,
    ]
}

#[test]
fn help_and_usage_errors() {
    assert_eq!(code(&lab(&["--help"])), 0);
    assert_eq!(code(&lab(&["sweep", "--help"])), 0);
    assert_eq!(code(&lab(&[])), 1);
    assert_eq!(code(&lab(&["frobnicate"])), 1);
    assert_eq!(code(&lab(&["dominate", "--n", "forty", "--m", "3", "--epsilon", "0.1"])), 1);
}

#[test]
fn precondition_errors() {
    // n must exceed 2 log(1/ε) + k
    let out = lab(&["dominate", "--n", "5", "--k", "2", "--m", "4", "--epsilon", "0.125"]);
    assert_eq!(code(&out), 2);
    let out = lab(&["audit-bound", "--n", "7", "--k", "2", "--cap", "100"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let mut args = sweep_args(csv.to_str().unwrap());
    args[6] = "Zx";
    assert_eq!(code(&lab(&args)), 2);
    let out = lab(&["cohomology", "--in", "/nonexistent/complex.txt"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn sweep_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let plot = dir.path().join("a.svg");
    let mut args = sweep_args(a.to_str().unwrap());
    args.extend(["--plot", plot.to_str().unwrap()]);
    assert_eq!(code(&lab(&args)), 0);
    assert_eq!(code(&lab(&sweep_args(b.to_str().unwrap()))), 0);
    let text = fs::read(&a).unwrap();
    assert_eq!(text, fs::read(&b).unwrap());
    let text = String::from_utf8(text).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let omegas: Vec<f64> = lines
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(omegas, vec![-3.0, -1.5, 0.0, 1.5, 3.0]);
    assert!(fs::read_to_string(&plot).unwrap().starts_with("<svg"));
}

#[test]
fn library_matches_cli_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cli.csv");
    assert_eq!(code(&lab(&sweep_args(path.to_str().unwrap()))), 0);
    let cfg = ExperimentConfig::new(10, 2, "Z2", omega_range(-3.0, 3.0, 1.5).unwrap(), 30, 42);
    let mut buf = Vec::new();
    write_sweep_csv(&run_threshold_sweep(&cfg).unwrap(), &mut buf).unwrap();
    assert_eq!(buf, fs::read(&path).unwrap());
}

#[test]
fn plot_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig::new(8, 2, "Z2", vec![0.0], 10, 1);
    let rows = run_threshold_sweep(&cfg).unwrap();
    let dat = dir.path().join("one.dat");
    assert_eq!(emit_plot(&rows, &dat).unwrap(), PlotFormat::GnuplotData);
    assert_eq!(fs::read_to_string(&dat).unwrap().lines().count(), 2);
    let svg = dir.path().join("one.SVG");
    assert_eq!(emit_plot(&rows, &svg).unwrap(), PlotFormat::Svg);
    assert!(matches!(emit_plot(&[], &dat), Err(LabError::EmptyPlot)));
}

#[test]
fn audit_and_dominate_succeed() {
    let out = lab(&["audit-bound", "--n", "5", "--k", "2", "--group", "Z2", "--mode", "exhaustive"]);
    assert_eq!(code(&out), 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("cochains checked: 1023"));
    assert!(stdout.contains("violations: 0"));

    let out = lab(&[
        "audit-bound", "--n", "6", "--k", "2", "--group", "Z3", "--mode", "random", "--count",
        "25", "--seed", "3",
    ]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("partition cochain slack: 0"));

    let out = lab(&[
        "dominate", "--n", "30", "--k", "2", "--m", "40", "--epsilon", "0.25", "--attempts",
        "50", "--seed", "7",
    ]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("0 bad"));
}

#[test]
fn cohomology_of_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("y.txt");
    // two components {1,2,3} and {4}: reduced H^0 has order m
    fs::write(&path, "# a small graph\n4 1\n1 2\n2 3\n").unwrap();
    let out = lab(&["cohomology", "--in", path.to_str().unwrap(), "--group", "Z2xZ3"]);
    assert_eq!(code(&out), 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("|H^0(Y; Z2)| = 2"));
    assert!(stdout.contains("|H^0(Y; Z3)| = 3"));
    assert!(stdout.contains("vanishes: false"));

    fs::write(&path, "4 1\n1 2\n2 5\n").unwrap();
    let out = lab(&["cohomology", "--in", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}
