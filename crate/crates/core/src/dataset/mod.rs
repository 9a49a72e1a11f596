//! Instrument dataset: parsing, derivation rules, category range synthesis
//! and plot data.
//!
//! The shipped dataset ([`BUNDLED_DATASET`]) is a verbatim transcription of
//! 21 exemplary spaceborne receivers, including provenance tags that record
//! how each aperture and temperature was obtained.

mod plot;
mod ranges;
mod record;

pub use plot::{
    emit_plot_data, instrument_markers, rydberg_converter_marker, Marker, PlotData, PlotOptions,
    Rectangle, ReferenceLine, RYDBERG_CONVERTER_NEF,
};
pub use ranges::{
    compare_ranges, parse_ranges, round_significant, synthesize_all, synthesize_ranges, Bounds,
    CategoryRange, RangeMismatch, Rounding, MARGIN_HIGH, MARGIN_LOW,
};
pub use record::{
    consistency_diagnostics, derive_all, derive_record, parse_instruments, published_mismatches,
    write_instruments, ApertureMethod, BandwidthMethod, DatasetDiagnostic, FieldMismatch,
    InstrumentRecord, ParsedDataset, TaFlag, TrxMethod, TsysMethod, REQUIRED_COLUMNS,
};

/// The receiver dataset shipped with the toolkit.
pub const BUNDLED_DATASET: &str = include_str!("../../data/instruments.csv");

/// Published category ranges for the bundled dataset, in the same CSV
/// layout [`ranges::parse_ranges`] reads.
pub const BUNDLED_RANGES: &str = include_str!("../../data/category_ranges.csv");
