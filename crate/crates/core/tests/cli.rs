use std::collections::HashMap;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_mirror-emission");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn record(line: &str) -> HashMap<String, String> {
    line.split_whitespace()
        .filter_map(|kv| kv.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn number(rec: &HashMap<String, String>, key: &str) -> f64 {
    rec[key].parse().unwrap()
}

#[test]
fn rate_closed_prints_one_record() {
    let o = run(&["rate", "--dipole", "z", "--Z", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    let rec = record(&text);
    assert_eq!(rec["axis"], "z");
    assert!((number(&rec, "gamma_boundary") - 1.903_506_036_82).abs() < 1e-10);
    assert!((number(&rec, "c_total") + 2.762_206_477_21).abs() < 1e-10);
    assert!((number(&rec, "c_rontgen") - 1.903_506_036_82).abs() < 1e-10);
    assert!((number(&rec, "c_recoil") + 4.665_712_514_03).abs() < 1e-10);
}

#[test]
fn rate_both_paths_agree() {
    let o = run(&["rate", "--dipole", "y", "--Z", "2", "--mode", "both", "--mass-ratio", "1e6"]);
    assert_eq!(o.status.code(), Some(0));
    let rec = record(&stdout(&o));
    let closed = number(&rec, "gamma_first_order");
    let numeric = number(&rec, "gamma_numeric");
    assert!((closed - numeric).abs() < 1e-9, "{closed} vs {numeric}");
}

#[test]
fn rate_quadrature_honours_node_spec() {
    let coarse = record(&stdout(&run(&[
        "rate", "--dipole", "z", "--Z", "3", "--mode", "quadrature", "--quad-nodes", "6x8",
    ])));
    let fine = record(&stdout(&run(&[
        "rate", "--dipole", "z", "--Z", "3", "--mode", "quadrature", "--quad-nodes", "64:64",
    ])));
    assert!((number(&coarse, "gamma_numeric") - number(&fine, "gamma_numeric")).abs() > 1e-6);
}

#[test]
fn guard_violation_exits_3_unless_forced() {
    let args = ["rate", "--dipole", "z", "--Z", "50", "--mass-ratio", "1e3"];
    let o = run(&args);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("guard"));
    let mut forced = args.to_vec();
    forced.push("--force");
    assert_eq!(run(&forced).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["rate", "--dipole", "w", "--Z", "1"],
        vec!["rate", "--dipole", "z", "--Z", "-1"],
        vec!["rate", "--dipole", "z", "--Z", "1", "--velocity", "1.5"],
        vec!["rate", "--dipole", "z", "--Z", "1", "--quad-nodes", "1x4"],
        vec!["scan", "--dipole", "z", "--Z-range", "2:1:5"],
        vec!["extrapolate", "--dipole", "z", "--Z", "1", "--rontgen-only", "--recoil-only"],
        vec!["extrapolate", "--dipole", "z", "--Z", "1", "--mu", "4e4,2e4"],
        vec!["bogus"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn scan_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("z.csv");
    let svg = dir.path().join("z.svg");
    let o = run(&[
        "scan",
        "--dipole",
        "z",
        "--Z-range",
        "0.1:10:100",
        "--output",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("Z,axis,gamma_boundary,c_total,c_rontgen,c_recoil"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            assert_eq!(f[1], "z");
            f.iter().enumerate().filter(|(i, _)| *i != 1).map(|(_, v)| v.parse().unwrap()).collect()
        })
        .collect();
    assert_eq!(rows.len(), 100);
    assert_eq!(rows[0][0], 0.1);
    assert_eq!(rows[99][0], 10.0);
    for r in &rows {
        assert!((r[2] - (r[3] + r[4])).abs() < 1e-10);
    }
    let chart = std::fs::read_to_string(&svg).unwrap();
    assert!(chart.starts_with("<svg"));
    assert_eq!(chart.matches("<polyline").count(), 3);
}

#[test]
fn scan_x_and_y_differ_only_in_axis_column() {
    let strip = |axis: &str| {
        let o = run(&["scan", "--dipole", axis, "--Z-range", "0.01:10:500"]);
        assert_eq!(o.status.code(), Some(0));
        stdout(&o).replace(&format!(",{axis},"), ",_,")
    };
    assert_eq!(strip("x"), strip("y"));
}

#[test]
fn scan_to_unwritable_path_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("out.csv");
    let o = run(&["scan", "--dipole", "x", "--Z-range", "1:2:3", "--output", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn verify_passes_by_default_and_fails_on_coarse_grid() {
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 10);
    assert!(!text.contains("FAIL"));

    let coarse = run(&["verify", "--quad-nodes", "8x8", "--seed", "7"]);
    assert_eq!(coarse.status.code(), Some(1));
    assert!(stdout(&coarse).contains("FAIL fixed-atom oracle equivalence"));
}

#[test]
fn extrapolate_reports_slope_against_target() {
    let o = run(&["extrapolate", "--dipole", "z", "--Z", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("mu=10000 "));
    let rec = record(lines[3]);
    assert!(rec.contains_key("target"));
    assert!(number(&rec, "relative_deviation") < 1e-3);
    assert!((number(&rec, "slope") + 2.762_206_477).abs() < 1e-6);
}

#[test]
fn extrapolate_toggles_select_the_matching_target() {
    let rontgen = stdout(&run(&["extrapolate", "--dipole", "x", "--Z", "2", "--rontgen-only"]));
    assert!(rontgen.contains("target=c_rontgen="));
    let recoil = stdout(&run(&["extrapolate", "--dipole", "x", "--Z", "2", "--recoil-only"]));
    assert!(recoil.contains("target=c_recoil="));
    for text in [rontgen, recoil] {
        let rec = record(text.lines().last().unwrap());
        assert!(number(&rec, "relative_deviation") < 1e-3);
    }
}
