mod common;

use std::process::Command;

use common::{rxsens, BUDGET_ARGS, ENHANCE_ARGS};
use serde_json::Value;

fn json(args: &[&str]) -> Value {
    let out = rxsens(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn error_line(args: &[&str], code: i32) -> Value {
    let out = rxsens(args);
    assert_eq!(out.status.code(), Some(code), "{}", String::from_utf8_lossy(&out.stderr));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert_eq!(stderr.lines().count(), 1, "{stderr}");
    serde_json::from_str(&stderr).unwrap()
}

#[test]
fn budget_reports_eb_n0() {
    let v = json(BUDGET_ARGS);
    assert!((v["eb_n0_db"].as_f64().unwrap() - 23.13).abs() < 0.01);
    assert_eq!(v["fsl_check"]["flagged"], Value::Bool(true));
}

#[test]
fn nedt_domain_error_names_flag() {
    let args = [
        "nedt",
        "--antenna-temperature", "250k",
        "--receiver-temperature", "600k",
        "--bandwidth", "0hz",
        "--integration-time", "15ms",
    ];
    let err = error_line(&args, 2);
    assert_eq!(err["flag"], "--bandwidth");
    assert_eq!(err["error"], "domain");
}

#[test]
fn unitless_value_is_a_parse_error() {
    let args = [
        "nedt",
        "--antenna-temperature", "250",
        "--receiver-temperature", "600k",
        "--bandwidth", "1e9hz",
        "--integration-time", "15ms",
    ];
    assert_eq!(error_line(&args, 3)["error"], "usage");
    assert_eq!(error_line(&["nedt", "--bogus", "1"], 3)["error"], "usage");
    assert_eq!(error_line(&["convert", "db-to-linear", "--value", "3dbw"], 3)["error"], "usage");
}

#[test]
fn missing_column_is_a_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "instrument,mission\nA,B\n").unwrap();
    let err = error_line(&["dataset-derive", "--input", path.to_str().unwrap()], 3);
    assert_eq!(err["error"], "schema");
    assert!(err["message"].as_str().unwrap().contains("category"));
}

#[test]
fn derive_csv_round_trips_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("derived.csv");
    let out = rxsens(&["dataset-derive", "--format", "csv", "--output", first.to_str().unwrap()]);
    assert!(out.status.success());
    let again = rxsens(&["dataset-derive", "--format", "csv", "--input", first.to_str().unwrap()]);
    assert!(again.status.success());
    assert_eq!(std::fs::read(&first).unwrap(), again.stdout);
}

#[test]
fn derive_reports_field_mismatches() {
    let v = json(&["dataset-derive"]);
    assert_eq!(v["records"].as_array().unwrap().len(), 21);
    let names: Vec<&str> = v["field_mismatches"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["instrument"].as_str().unwrap())
        .collect();
    assert!(names.iter().any(|n| n.starts_with("SMOS")), "{names:?}");
    assert!(names.iter().any(|n| n.starts_with("Odin")), "{names:?}");
}

#[test]
fn ranges_compare_against_published() {
    let v = json(&["dataset-ranges", "--compare", "bundled"]);
    assert_eq!(v["ranges"].as_array().unwrap().len(), 11);
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn plot_data_includes_converter_marker() {
    let v = json(&["dataset-plotdata", "--converter-bandwidth", "1mhz", "--thermal-reference", "1e-9v/m/rthz"]);
    assert_eq!(v["rectangles"].as_array().unwrap().len(), 11);
    let last = v["markers"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["e_field"].as_f64(), Some(4e-7));
    assert_eq!(v["reference_lines"][0]["e_field"].as_f64(), Some(1e-9));
}

#[test]
fn rounded_eta0_changes_impedance() {
    let run = |compat: bool| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_rxsens"));
        cmd.args(ENHANCE_ARGS);
        if compat {
            cmd.env("RXSENS_ROUNDED_ETA0", "1");
        } else {
            cmd.env_remove("RXSENS_ROUNDED_ETA0");
        }
        let v: Value = serde_json::from_slice(&cmd.output().unwrap().stdout).unwrap();
        v["e_free_v_m_rthz"].as_f64().unwrap()
    };
    let ratio = run(true) / run(false);
    assert!((ratio - (377.0f64 / 376.730313668).sqrt()).abs() < 1e-5);
}

#[test]
fn text_and_csv_formats() {
    let out = rxsens(&["--format", "text", "convert", "linear-to-db", "--value", "100"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "linear = 100\ndb = 20\n");
    let out = rxsens(&["--format", "csv", "convert", "wavelength", "--frequency", "1ghz"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "frequency_hz,wavelength_m\n1e9,0.299792\n");
}

#[test]
fn radar_target_modes() {
    let base = [
        "radar",
        "--transmit-power", "1000w",
        "--tx-gain", "30dbi",
        "--rx-gain", "30dbi",
        "--wavelength", "3cm",
        "--range", "10km",
        "--system-temperature", "500k",
        "--bandwidth", "100mhz",
    ];
    let mut point = base.to_vec();
    point.extend(["--rcs", "1m2"]);
    let v = json(&point);
    assert!(v.get("nesz").is_none());
    let mut imaging = base.to_vec();
    imaging.extend(["--sigma0", "-20db", "--cell-area", "10m2", "--pulse-width", "10us"]);
    let v = json(&imaging);
    assert_eq!(v["processing_gain"].as_f64(), Some(1000.0));
    assert!(v["nesz"].as_f64().unwrap() > 0.0);
}
