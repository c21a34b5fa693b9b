use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const MODEL_A: &str = r#"{"S":4,"p":0,"D":[0.1,0.2,0.3,0.4],"sigma2":[1,1,1,1],"kind":"A"}"#;
const MODEL_B: &str = r#"{"S":4,"p":1,"phi":[[0.7],[0.8],[0.6],[0.4]],"D":[0.1,0.2,0.3,0.4],"sigma2":[1,1,1,1],"kind":"B"}"#;

fn perarfima(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perarfima"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn records(path: &Path) -> Vec<csv::StringRecord> {
    let mut reader = csv::Reader::from_path(path).unwrap();
    reader.records().map(Result::unwrap).collect()
}

#[test]
fn simulate_writes_series_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "a.json", MODEL_A);
    let first = dir.path().join("one.csv");
    let second = dir.path().join("two.csv");
    for out in [&first, &second] {
        let o = perarfima(&[
            "simulate",
            "--spec",
            &spec,
            "--T",
            "1000",
            "--seed",
            "1",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
    let rows = records(&first);
    assert_eq!(rows.len(), 1000);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row[0].parse::<usize>().unwrap(), i + 1);
        assert_eq!(row[1].parse::<usize>().unwrap(), i % 4 + 1);
        assert!(row[2].parse::<f64>().unwrap().is_finite());
    }
}

#[test]
fn out_of_band_order_is_a_validation_error() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "bad.json", &MODEL_A.replace("0.4]", "0.6]"));
    let o = perarfima(&["simulate", "--spec", &spec]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("D out of [0, 0.5)"));
}

#[test]
fn explosive_ar_is_a_numerical_failure() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        &dir,
        "x.json",
        &MODEL_B.replace("[[0.7],[0.8],[0.6],[0.4]]", "[[1.1],[1.2],[1.0],[1.3]]"),
    );
    let o = perarfima(&["theory", "--spec", &spec, "--jmax", "8"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nonstationary"));
}

#[test]
fn empty_or_missing_spec_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "empty.json", "");
    assert_eq!(
        perarfima(&["figures", "--target", "fig1", "--spec", &empty])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(perarfima(&["simulate"]).status.code(), Some(2));
    assert_eq!(
        perarfima(&["figures", "--target", "fig9"]).status.code(),
        Some(2)
    );
    assert_eq!(
        perarfima(&["simulate", "--format", "xml"]).status.code(),
        Some(2)
    );
}

#[test]
fn matrices_without_ar_part_return_omega() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "a.json", &MODEL_A.replace("[1,1,1,1]", "[1,2,3,4]"));
    let out = dir.path().join("m.csv");
    let o = perarfima(&["matrices", "--spec", &spec, "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    for row in records(&out).iter().filter(|r| &r[0] == "fivar") {
        let (r, c): (usize, usize) = (row[1].parse().unwrap(), row[2].parse().unwrap());
        let expected = if r == c { r as f64 } else { 0.0 };
        assert_eq!(row[3].parse::<f64>().unwrap(), expected);
    }
}

#[test]
fn matrix_targets_need_no_spec() {
    let o = perarfima(&["matrices", "--target", "m41", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["fivar"][1][1].as_f64().unwrap() - 2.6744).abs() < 1e-3);
    assert!(v.get("varfi").is_none());
    let o = perarfima(&["matrices", "--target", "m42", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["varfi"][2][2].as_f64().unwrap() - 0.15068).abs() < 1e-4);
}

#[test]
fn figure_one_has_four_series_to_lag_25() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("fig1.csv");
    let o = perarfima(&[
        "figures",
        "--target",
        "fig1",
        "--reps",
        "2",
        "--trunc",
        "500",
        "--burnin",
        "100",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = records(&out);
    let empirical: Vec<_> = rows.iter().filter(|r| &r[8] == "empirical").collect();
    let seasons: std::collections::BTreeSet<_> =
        empirical.iter().map(|r| r[2].to_string()).collect();
    assert_eq!(seasons.len(), 4);
    assert_eq!(
        empirical
            .iter()
            .map(|r| r[3].parse::<usize>().unwrap())
            .max(),
        Some(25)
    );
    assert!(empirical
        .iter()
        .all(|r| &r[0] == "fig1" && &r[1] == "A" && !r[9].is_empty()));
}

#[test]
fn figure_eight_exact_curves_coincide() {
    let o = perarfima(&[
        "figures", "--target", "fig8", "--reps", "1", "--trunc", "2000", "--burnin", "100",
        "--jmax", "12",
    ]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let exact: Vec<_> = reader
        .records()
        .map(Result::unwrap)
        .filter(|r| &r[8] == "exact")
        .collect();
    let (b, c): (Vec<_>, Vec<_>) = exact.iter().partition(|r| &r[1] == "B");
    assert_eq!(b.len(), c.len());
    for (x, y) in b.iter().zip(&c) {
        let (x, y): (f64, f64) = (x[7].parse().unwrap(), y[7].parse().unwrap());
        assert!((x - y).abs() < 1e-10);
    }
}

#[test]
fn acvf_is_independent_of_thread_count() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "b.json", MODEL_B);
    let args = [
        "acvf", "--spec", &spec, "--reps", "4", "--T", "400", "--trunc", "300", "--jmax", "8",
        "--format", "json",
    ];
    let one = Command::new(env!("CARGO_BIN_EXE_perarfima"))
        .args(args)
        .env("PERARFIMA_THREADS", "1")
        .output()
        .unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_perarfima"))
        .args(args)
        .env("PERARFIMA_THREADS", "3")
        .output()
        .unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["grids"][0]["meta"]["replications"], 4);
    assert_eq!(v["std_error"].as_array().unwrap().len(), 4);
}

#[test]
fn theory_emits_exact_and_asymptotic_rows() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "b.json", MODEL_B);
    let out = dir.path().join("t.csv");
    let o = perarfima(&[
        "theory",
        "--spec",
        &spec,
        "--jmax",
        "10",
        "--trunc",
        "1000",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let rows = records(&out);
    assert_eq!(rows.len(), 2 * 4 * 11);
    assert_eq!(
        rows.iter().filter(|r| &r[6] == "asymptotic_fivar").count(),
        44
    );
    // the asymptotic form is undefined where h + delta = 0
    assert!(rows
        .iter()
        .any(|r| &r[6] == "asymptotic_fivar" && r[5].parse::<f64>().unwrap().is_nan()));
}

#[test]
fn companion_and_appendix_outputs() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "b.json", MODEL_B);
    let o = perarfima(&["companion", "--spec", &spec, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["max_modulus"].as_f64().unwrap() - 0.1344).abs() < 1e-12);
    assert_eq!(v["phi0"][1][0], -0.8);
    assert_eq!(v["order"], 1);

    let o = perarfima(&["appendix-ma", "--spec", &spec, "--jmax", "5"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("t,j,psi"));
    assert_eq!(text.lines().count(), 1 + 4 * 6);
}
