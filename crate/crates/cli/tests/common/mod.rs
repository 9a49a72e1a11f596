#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub const BUDGET_ARGS: &[&str] = &[
    "budget",
    "--tx-power", "20dbw",
    "--tx-gain", "45dbi",
    "--tx-feeder-loss", "2db",
    "--free-space-loss", "206.5db",
    "--atmospheric-loss", "2db",
    "--rain-loss", "3db",
    "--other-loss", "1db",
    "--rx-gain", "50dbi",
    "--antenna-temperature", "100k",
    "--receiver-temperature", "100k",
    "--feeder-loss", "1.5",
    "--data-rate", "100mbps",
    "--distance", "36000km",
    "--frequency", "20ghz",
];

pub const RANGES_ARGS: &[&str] = &["dataset-ranges", "--format", "csv"];

pub const ENHANCE_ARGS: &[&str] = &[
    "enhance",
    "--system-temperature", "20k",
    "--diameter", "34m",
    "--center-frequency", "8.4ghz",
    "--signal-bandwidth", "1mhz",
    "--coupling-efficiency", "0.8",
    "--mode-volume", "1e-5",
];

/// (golden file name, arguments)
pub const GOLDEN_CASES: &[(&str, &[&str])] = &[
    ("budget.json", BUDGET_ARGS),
    ("dataset_ranges.csv", RANGES_ARGS),
    ("enhance.json", ENHANCE_ARGS),
];

pub fn rxsens(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rxsens"))
        .args(args)
        .env_remove("RXSENS_ROUNDED_ETA0")
        .output()
        .expect("run rxsens")
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}
