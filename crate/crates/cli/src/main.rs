mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use rxsens::Constants;
use serde_json::json;

use args::Cli;
use commands::CliError;

/// Set to `1` to use η0 = 377 Ω instead of the CODATA value.
const ROUNDED_ETA0_ENV: &str = "RXSENS_ROUNDED_ETA0";

/// Which subcommand reaches each engine operation.
pub const OPERATION_MAP: &[(&str, &str)] = &[
    ("quantities::db_to_linear", "convert db-to-linear"),
    ("quantities::linear_to_db", "convert linear-to-db"),
    ("quantities::frequency_to_wavelength", "convert wavelength"),
    ("quantities::wavelength_to_frequency", "rydberg"),
    ("quantities::power_from_field", "convert power-from-field"),
    ("radiometry::nedt", "nedt"),
    ("radiometry::radiometer_output_power", "convert radiometer-power"),
    ("radiometry::tsys_from_nedt", "convert tsys-from-nedt"),
    ("radiometry::calibrate_hot_cold", "calibrate"),
    ("radar::received_power", "radar"),
    ("radar::processed_received_power", "radar"),
    ("radar::processing_gain_from_pulse", "radar"),
    ("radar::noise_power", "radar"),
    ("radar::snr", "radar"),
    ("radar::nesz", "radar"),
    ("radar::range_resolution", "radar"),
    ("radar::max_range_ratio", "radar"),
    ("linkbudget::eirp", "budget"),
    ("linkbudget::system_noise_temperature", "budget"),
    ("linkbudget::figure_of_merit", "budget"),
    ("linkbudget::free_space_loss", "budget"),
    ("linkbudget::total_loss", "budget"),
    ("linkbudget::c_over_n0", "budget"),
    ("linkbudget::eb_over_n0", "budget"),
    ("linkbudget::evaluate_link", "budget"),
    ("fieldmetrics::sefd", "nef"),
    ("fieldmetrics::nef_from_aperture", "nef"),
    ("fieldmetrics::nef_from_gain", "nef"),
    ("fieldmetrics::tsys_from_nef", "nef"),
    ("fieldmetrics::aperture_from_gain", "convert aperture-from-gain"),
    ("fieldmetrics::aperture_from_physical", "enhance"),
    ("fieldmetrics::trx_from_noise_figure", "convert trx-from-nf"),
    ("fieldmetrics::enhancement_factor_cavity", "enhance"),
    ("fieldmetrics::local_field_requirement", "enhance"),
    ("rydberg_noise::qpn_nef", "rydberg"),
    ("rydberg_noise::photon_shot_noise_nep", "rydberg"),
    ("rydberg_noise::rabi_from_field", "rydberg"),
    ("rydberg_noise::field_from_rabi", "rydberg"),
    ("rydberg_noise::ac_stark_shift", "rydberg"),
    ("rydberg_noise::compare_to_classical", "rydberg"),
    ("dataset::parse_instruments", "dataset-derive"),
    ("dataset::derive_record", "dataset-derive"),
    ("dataset::synthesize_ranges", "dataset-ranges"),
    ("dataset::emit_plot_data", "dataset-plotdata"),
];

fn constants() -> Constants {
    match std::env::var(ROUNDED_ETA0_ENV) {
        Ok(v) if v == "1" => Constants::ROUNDED,
        _ => Constants::CODATA,
    }
}

/// Core parameter names that differ from the flag carrying them.
fn flag_for(param: &str) -> String {
    let name = match param {
        "aperture" => "effective-area",
        "ratio" | "db" => "value",
        "rabi" => "rabi-frequency",
        "system_temperature_1" => "system-temperature",
        "system_temperature_2" => "reference-temperature",
        "noise_figure" => "noise-figure",
        other => return format!("--{}", other.replace('_', "-")),
    };
    format!("--{name}")
}

fn fail(code: u8, kind: &str, flag: Option<String>, message: String) -> ExitCode {
    let line = json!({"error": kind, "flag": flag, "message": message});
    eprintln!("{line}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = e.print();
                    ExitCode::SUCCESS
                }
                _ => {
                    let message = e.to_string();
                    let first = message.lines().next().unwrap_or_default().to_string();
                    fail(3, "usage", None, first.trim_start_matches("error: ").to_string())
                }
            };
        }
    };

    let rendered = commands::run(&constants(), &cli.command).and_then(|r| r.render(cli.format));
    let text = match rendered {
        Ok(text) => text,
        Err(CliError::Core(e)) if e.is_schema() => return fail(3, "schema", None, e.to_string()),
        Err(CliError::Core(e)) => return fail(2, "domain", e.param().map(flag_for), e.to_string()),
        Err(CliError::Usage(m)) => return fail(3, "usage", None, m),
        Err(CliError::Io(m)) => return fail(3, "io", None, m),
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(3, "io", None, e.to_string()),
    }
}
