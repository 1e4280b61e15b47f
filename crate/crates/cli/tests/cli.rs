use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scarf-scatter"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(
        o.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).unwrap()
}

/// Rows of a scan CSV after the schema and header lines.
fn rows(csv: &str) -> Vec<Vec<f64>> {
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("# scarf-scatter v1 schema"));
    assert_eq!(
        lines.next(),
        Some("E,T_fwd,T_rev,R_left_fwd,R_right_fwd,R_left_rev,R_right_rev,singular_flag")
    );
    lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

/// Energies of local maxima of `col` above `floor`.
fn peaks(rows: &[Vec<f64>], col: usize, floor: f64) -> Vec<f64> {
    (1..rows.len() - 1)
        .filter(|&i| rows[i][col] > floor && rows[i][col] >= rows[i - 1][col] && rows[i][col] >= rows[i + 1][col])
        .map(|i| rows[i][0])
        .collect()
}

#[test]
fn scan_general_instance() {
    let o = run(&[
        "scan",
        "--m",
        "0",
        "--n",
        "0",
        "--alpha",
        "1.41421356",
        "--beta",
        "2.23606798",
        "--emin",
        "0.5",
        "--emax",
        "7",
        "--steps",
        "600",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 600);
    let p = peaks(&r, 1, 10.0);
    assert_eq!(p.len(), 2, "{p:?}");
    assert!((p[0] - 2.0).abs() < 0.02 && (p[1] - 5.0).abs() < 0.02, "{p:?}");
    assert!(peaks(&r, 2, 10.0).is_empty());
}

#[test]
fn scan_hermitian_columns_agree() {
    let o = run(&[
        "scan",
        "--a-re",
        "-2",
        "--b-re",
        "1",
        "--emin",
        "0.1",
        "--emax",
        "6",
        "--steps",
        "200",
        "--spacing",
        "log",
    ]);
    for row in rows(&stdout(&o)) {
        assert!((row[1] - row[2]).abs() < 1e-10);
        assert_eq!(row[7], 0.0);
    }
}

#[test]
fn scan_pt_instance_single_shared_peak() {
    let o = run(&[
        "scan", "--alpha", "sqrt:2", "--beta", "-sqrt:2", "--emin", "0.5", "--emax", "7", "--steps", "601",
    ]);
    let r = rows(&stdout(&o));
    for row in &r {
        if row[1].is_finite() {
            assert!((row[1] - row[2]).abs() / (1.0 + row[1]) < 1e-8);
        }
    }
    let p = peaks(&r, 1, 10.0);
    assert_eq!(p.len(), 1);
    assert!((p[0] - 2.0).abs() < 0.02);
}

#[test]
fn reference_cases() {
    // (case, forward peaks, time-reversed peaks)
    let expected: [(&str, &[f64], &[f64]); 4] = [
        ("a", &[2.0, 5.0], &[]),
        ("b", &[], &[2.0, 5.0]),
        ("c", &[5.0], &[2.0]),
        ("d", &[2.0], &[2.0]),
    ];
    for (case, fwd, rev) in expected {
        let o = run(&["figure1", "--case", case]);
        assert_eq!(o.status.code(), Some(0));
        let r = rows(&stdout(&o));
        assert_eq!(r.len(), 1000);
        assert_eq!((r[0][0], r[999][0]), (0.25, 7.0));
        for (col, want) in [(1, fwd), (2, rev)] {
            let got = peaks(&r, col, 10.0);
            assert_eq!(got.len(), want.len(), "case {case} col {col}: {got:?}");
            for (g, w) in got.iter().zip(want) {
                assert!((g - w).abs() < 0.01, "case {case}: {got:?}");
            }
        }
        let err = String::from_utf8(o.stderr).unwrap();
        assert!(err.contains("expected peak: E = 2.000000"), "{err}");
    }
}

#[test]
fn singular_row_is_flagged() {
    let o = run(&[
        "scan", "--alpha", "sqrt:2", "--beta", "sqrt:5", "--emin", "2", "--emax", "3", "--steps", "2",
    ]);
    let out = stdout(&o);
    let row = out.lines().nth(2).unwrap();
    assert!(row.starts_with("2e0,inf,"), "{row}");
    assert!(row.ends_with(",1"));
}

#[test]
fn ss_mixed_case() {
    let v = json(&run(&[
        "ss",
        "--m",
        "0",
        "--n",
        "0",
        "--alpha",
        "-1.41421356",
        "--beta",
        "2.23606798",
    ]));
    let recs = v["spectral_singularities"].as_array().unwrap();
    assert_eq!(recs.len(), 2);
    assert!((recs[0]["E_star"].as_f64().unwrap() - 2.0).abs() < 1e-6);
    assert_eq!(recs[0]["channel"], "time_reversed");
    assert!((recs[1]["E_star"].as_f64().unwrap() - 5.0).abs() < 1e-6);
    assert_eq!(recs[1]["channel"], "forward");
    assert!(v["bound_states"].as_array().unwrap().is_empty());
}

#[test]
fn ss_confirm_and_mixed_sector() {
    let v = json(&run(&["ss", "--alpha-im", "1.5", "--beta", "sqrt:3", "--confirm"]));
    let ss = v["spectral_singularities"].as_array().unwrap();
    assert_eq!(ss.len(), 1);
    assert_eq!(ss[0]["is_pole"], true);
    let bs = v["bound_states"].as_array().unwrap();
    assert_eq!(bs.len(), 2);
    assert_eq!(bs[0]["energy"], -2.25);
}

#[test]
fn bound_state_branches() {
    let v = json(&run(&[
        "bound-states",
        "--m",
        "0",
        "--n",
        "0",
        "--gamma",
        "2.5",
        "--delta",
        "0.5",
    ]));
    let list = v.as_array().unwrap();
    let plus: Vec<f64> = list
        .iter()
        .filter(|r| r["branch"] == "plus")
        .map(|r| r["energy"].as_f64().unwrap())
        .collect();
    let minus: Vec<f64> = list
        .iter()
        .filter(|r| r["branch"] == "minus")
        .map(|r| r["energy"].as_f64().unwrap())
        .collect();
    assert_eq!(plus, [-6.25, -2.25, -0.25]);
    assert_eq!(minus, [-0.25]);
    assert_eq!(
        run(&["bound-states", "--gamma", "-1", "--delta", "0.5"]).status.code(),
        Some(2)
    );
}

#[test]
fn oracle_check_exit_codes() {
    let v = json(&run(&["oracle-check", "--case", "a", "--k", "1.1"]));
    assert!(v["max_relative_deviation"].as_f64().unwrap() < 5e-3);
    assert_eq!(v["passed"], true);
    let strict = run(&["oracle-check", "--case", "a", "--k", "1.1", "--threshold", "1e-9"]);
    assert_eq!(strict.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&strict.stdout).unwrap();
    assert_eq!(v["passed"], false);
    let grid = json(&run(&["oracle-check", "--alpha", "sqrt:2", "--beta", "sqrt:5"]));
    assert!(grid["points"].as_array().unwrap().len() >= 8);
}

#[test]
fn invariance_report_round_trip_through_sampled_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("v.csv");
    let s = run(&[
        "sample",
        "--alpha",
        "sqrt:2",
        "--beta",
        "-sqrt:2",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(s.status.code(), Some(0));
    let analytic = json(&run(&["invariance", "--alpha", "sqrt:2", "--beta", "-sqrt:2"]));
    assert_eq!(analytic["class_tested"], "pt_symmetric");
    assert_eq!(analytic["verdicts"]["R_pt_cross"], "holds");
    let sampled = json(&run(&[
        "invariance",
        "--potential",
        csv.to_str().unwrap(),
        "--kmin",
        "0.3",
        "--kmax",
        "1.3",
        "--points",
        "10",
    ]));
    assert_eq!(sampled["class_tested"], "pt_symmetric");
    assert_eq!(sampled["verdicts"], analytic["verdicts"]);
    let table = stdout(&run(&[
        "invariance",
        "--a-re",
        "-2",
        "--b-re",
        "1",
        "--format",
        "table",
    ]));
    assert!(table.contains("matches table: true"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(
        run(&["scan", "--alpha", "1", "--a-re", "1", "--emin", "1", "--emax", "2", "--steps", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["scan", "--alpha", "sqrt:x", "--emin", "1", "--emax", "2", "--steps", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["scan", "--emin", "1", "--emax", "2", "--steps", "3"])
            .status
            .code(),
        Some(1)
    );
    let bad = run(&["scan", "--alpha", "1", "--emin", "3", "--emax", "2", "--steps", "3"]);
    assert_eq!(bad.status.code(), Some(2));
    let msg = String::from_utf8(bad.stderr).unwrap();
    assert_eq!(msg.lines().count(), 1);
    assert_eq!(
        run(&["invariance", "--potential", "/nonexistent.csv"]).status.code(),
        Some(2)
    );
    // Grid point on a spectral singularity of the PT instance.
    assert_eq!(
        run(&[
            "invariance",
            "--alpha",
            "sqrt:2",
            "--beta",
            "-sqrt:2",
            "--kmin",
            "sqrt:2",
            "--points",
            "1"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn deterministic_and_atomic_output() {
    let args = ["figure1", "--case", "c"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    let o = run(&["figure1", "--case", "c", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn describe_reports_class_and_poles() {
    let v = json(&run(&["describe", "--a-re", "1", "--a-im", "1"]));
    assert_eq!(v["class"], "p_symmetric");
    assert_eq!(v["real_axis_poles"][0], -1.0);
    assert_eq!(v["parameters"]["A_re"], 1.0);
}
