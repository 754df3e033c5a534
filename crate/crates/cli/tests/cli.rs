use std::process::Command;

use ptchain::run_capture;

fn ok(args: &[&str]) -> String {
    let mut argv = vec!["ptchain"];
    argv.extend_from_slice(args);
    let (code, out, err) = run_capture(argv);
    assert_eq!(code, 0, "stderr: {err}");
    out
}

fn records(csv: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn admissible_curve_is_real() {
    let out = ok(&["curve", "--dim", "4", "--g", "0,0.2444", "--t-min", "0", "--t-max", "0.5", "--steps", "200"]);
    let (header, rows) = records(&out);
    assert_eq!(header[..3], ["t", "re_E1", "im_E1"]);
    assert_eq!(header.len(), 9);
    assert_eq!(rows.len(), 200);
    for row in &rows {
        for (name, cell) in header.iter().zip(row) {
            if name.starts_with("im_") {
                assert_eq!(cell, "0", "row {row:?}");
            }
        }
    }
    assert_eq!(rows.last().unwrap()[0], "0.5");
    assert!(out.ends_with('\n') && !out.contains('\r'));
}

#[test]
fn curve_output_is_byte_stable_and_file_matches() {
    let args = ["curve", "--dim", "6", "--g", "1/3,-2,5", "--t-min", "1/100", "--t-max", "1/2", "--steps", "37"];
    let first = ok(&args);
    assert_eq!(first, ok(&args));

    let dir = std::env::temp_dir().join(format!("ptchain-curve-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("curve.csv");
    let mut with_out: Vec<&str> = args.to_vec();
    let path_str = path.to_str().unwrap();
    with_out.extend(["--out", path_str]);
    assert_eq!(ok(&with_out), "");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn critical_n6_rows() {
    let out = ok(&["critical", "--dim", "6"]);
    let (header, rows) = records(&out);
    assert_eq!(header, ["method", "kind", "shift", "l_star", "energy"]);
    let shifts: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(rows.iter().find(|r| r[1] == "zero_root").unwrap()[2], "225");
    assert!(shifts.iter().any(|s| (s + 323.1387184).abs() < 1e-6));
    // exact value of the upper double root, computed independently at 40 digits
    assert!(shifts.iter().any(|s| (s - 1081.6572369523).abs() < 1e-6));
}

#[test]
fn critical_linearized_n4() {
    let out = ok(&["critical", "--dim", "4", "--linearized"]);
    let (_, rows) = records(&out);
    let lin: Vec<&str> = rows.iter().filter(|r| r[0] == "linearized").map(|r| r[2].as_str()).collect();
    assert_eq!(lin, ["-8", "32"]);
}

#[test]
fn verify_json_passes() {
    let out = ok(&["verify", "--dim-max", "10"]);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["dimension"], 10);
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() > 100);
    for c in checks {
        assert_eq!(c["status"], "pass", "{c}");
        for key in ["name", "expected", "actual"] {
            assert!(c[key].is_string());
        }
    }
}

#[test]
fn eep_and_boundary_tables() {
    let (header, rows) = records(&ok(&["eep", "--dim", "6"]));
    assert_eq!(header, ["n", "c_n", "g_n"]);
    let c: Vec<&str> = rows.iter().map(|r| r[1].as_str()).collect();
    assert_eq!(c, ["5", "8", "9"]);

    let (header, rows) = records(&ok(&["boundary-n4", "--beta-max", "1/20", "--steps", "10"]));
    assert_eq!(header, ["beta", "alpha_lower", "alpha_upper"]);
    assert_eq!(rows.len(), 10);
    for r in rows {
        let v: Vec<f64> = r.iter().map(|x| x.parse().unwrap()).collect();
        assert!(v[1] < v[0] && v[0] < v[2]);
    }
}

#[test]
fn thresholds_accept_rational_literals() {
    let (header, rows) = records(&ok(&["thresholds", "--dim", "4", "--g", "0,4/9", "--t-hi", "1/2"]));
    assert_eq!(header, ["t_qh", "t_ph", "t_h"]);
    assert_eq!(rows.len(), 1);
    // A = 4/9 sits on the tangency, so the spectrum is real throughout
    assert_eq!(rows[0][0], "");
}

#[test]
fn spectrum_raw_and_rescaled_agree() {
    // t = 1/2 and G = (0, 0): c_n = n (N - n) (1 - t) = (3/2, 2)
    let a = records(&ok(&["spectrum", "--dim", "4", "--raw", "3/2,2"])).1;
    let b = records(&ok(&["spectrum", "--dim", "4", "--t", "1/2", "--g", "0,0"])).1;
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x[..4], y[..4]);
    }
    assert_eq!(b[0][4], "QUASI_HERMITIAN_PT");
    let neg = records(&ok(&["spectrum", "--dim", "4", "--t", "1/10", "--g", "-1,2"])).1;
    assert_eq!(neg.len(), 4);
}

#[test]
fn leading_roots_from_shift() {
    let (_, rows) = records(&ok(&["leading", "--dim", "4", "--shift", "16"]));
    // a double root is only resolved to about the square root of the
    // working precision
    for r in &rows {
        let l: f64 = r[3].parse().unwrap();
        let im: f64 = r[4].parse().unwrap();
        assert!((l - 5.0).abs() < 1e-6 && im.abs() < 1e-6, "{r:?}");
    }
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["ptchain", "spectrum", "--dim", "4"],
        vec!["ptchain", "curve", "--dim", "4", "--g", "x", "--t-min", "0", "--t-max", "1", "--steps", "3"],
        vec!["ptchain", "eep", "--dim", "1"],
        vec!["ptchain", "boundary-n4", "--beta-max", "2", "--steps", "4"],
        vec!["ptchain", "frobnicate"],
    ] {
        let (code, _, err) = run_capture(args.clone());
        assert_eq!(code, 1, "{args:?}");
        assert!(!err.is_empty());
    }
    let (code, out, _) = run_capture(["ptchain", "--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ptchain");
    let status = Command::new(bin).args(["verify", "--dim-max", "6", "--format", "text"]).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&status.stdout).contains("0 failed"));
    let status = Command::new(bin).args(["eep", "--dim", "0"]).output().unwrap();
    assert_eq!(status.status.code(), Some(1));
    assert!(status.stdout.is_empty());
}
