//! Sensitivity figures of merit for spaceborne RF receivers and Rydberg-atom
//! electrometers: radiometry, radar, link budgets, noise-equivalent field
//! metrics and an instrument dataset pipeline.

pub mod dataset;
pub mod error;
pub mod fieldmetrics;
pub mod linkbudget;
pub mod quantities;
pub mod radar;
pub mod radiometry;
pub mod rydberg_noise;

pub use error::{Error, Result};
pub use quantities::Constants;

/// Every public computation, by module-qualified name. Front ends use this
/// list to check that each one is reachable.
pub const OPERATIONS: &[&str] = &[
    "quantities::db_to_linear",
    "quantities::linear_to_db",
    "quantities::frequency_to_wavelength",
    "quantities::wavelength_to_frequency",
    "quantities::power_from_field",
    "radiometry::nedt",
    "radiometry::radiometer_output_power",
    "radiometry::tsys_from_nedt",
    "radiometry::calibrate_hot_cold",
    "radar::received_power",
    "radar::processed_received_power",
    "radar::processing_gain_from_pulse",
    "radar::noise_power",
    "radar::snr",
    "radar::nesz",
    "radar::range_resolution",
    "radar::max_range_ratio",
    "linkbudget::eirp",
    "linkbudget::system_noise_temperature",
    "linkbudget::figure_of_merit",
    "linkbudget::free_space_loss",
    "linkbudget::total_loss",
    "linkbudget::c_over_n0",
    "linkbudget::eb_over_n0",
    "linkbudget::evaluate_link",
    "fieldmetrics::sefd",
    "fieldmetrics::nef_from_aperture",
    "fieldmetrics::nef_from_gain",
    "fieldmetrics::tsys_from_nef",
    "fieldmetrics::aperture_from_gain",
    "fieldmetrics::aperture_from_physical",
    "fieldmetrics::trx_from_noise_figure",
    "fieldmetrics::enhancement_factor_cavity",
    "fieldmetrics::local_field_requirement",
    "rydberg_noise::qpn_nef",
    "rydberg_noise::photon_shot_noise_nep",
    "rydberg_noise::rabi_from_field",
    "rydberg_noise::field_from_rabi",
    "rydberg_noise::ac_stark_shift",
    "rydberg_noise::compare_to_classical",
    "dataset::parse_instruments",
    "dataset::derive_record",
    "dataset::synthesize_ranges",
    "dataset::emit_plot_data",
];
