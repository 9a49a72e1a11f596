use serde::{Deserialize, Serialize};

use super::ranges::CategoryRange;
use super::record::InstrumentRecord;

/// Inferred sensitivity of a Rydberg RF-to-optical converter, 4 nV/cm/√Hz.
pub const RYDBERG_CONVERTER_NEF: f64 = 4e-7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub category: String,
    pub bw_min: f64,
    pub bw_max: f64,
    pub e_min: f64,
    pub e_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Marker {
    pub name: String,
    pub bandwidth: f64,
    pub e_field: f64,
}

/// Horizontal line at a fixed field, e.g. a 290 K thermal reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceLine {
    pub name: String,
    pub e_field: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotData {
    pub rectangles: Vec<Rectangle>,
    pub markers: Vec<Marker>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reference_lines: Vec<ReferenceLine>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PlotOptions {
    /// Bandwidth coordinate of the Rydberg converter marker; `None` omits it.
    pub converter_bandwidth: Option<f64>,
    pub reference_lines: Vec<ReferenceLine>,
}

pub fn rydberg_converter_marker(bandwidth: f64) -> Marker {
    Marker {
        name: "Rydberg converter".into(),
        bandwidth,
        e_field: RYDBERG_CONVERTER_NEF,
    }
}

/// One marker per derived record at (bandwidth, Ẽ_free).
pub fn instrument_markers(records: &[InstrumentRecord]) -> Vec<Marker> {
    records
        .iter()
        .filter_map(|r| {
            r.e_free.map(|e| Marker {
                name: r.instrument.clone(),
                bandwidth: r.bandwidth_hz,
                e_field: e,
            })
        })
        .collect()
}

/// Rectangles copy the range bounds unchanged, so pass unrounded ranges to
/// plot pre-rounding envelopes.
pub fn emit_plot_data(ranges: &[CategoryRange], markers: &[Marker], options: &PlotOptions) -> PlotData {
    let rectangles = ranges
        .iter()
        .map(|r| Rectangle {
            category: r.category.clone(),
            bw_min: r.bandwidth_hz.min,
            bw_max: r.bandwidth_hz.max,
            e_min: r.e_free.min,
            e_max: r.e_free.max,
        })
        .collect();
    let mut markers = markers.to_vec();
    if let Some(bw) = options.converter_bandwidth {
        markers.push(rydberg_converter_marker(bw));
    }
    PlotData {
        rectangles,
        markers,
        reference_lines: options.reference_lines.clone(),
    }
}
