use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fieldmetrics::{
    aperture_from_gain, aperture_from_physical, nef_from_aperture, trx_from_noise_figure,
    Coherence, DEFAULT_APERTURE_EFFICIENCY,
};
use crate::quantities::{db_to_linear, Constants};
use crate::radiometry::tsys_from_nedt;

pub const REQUIRED_COLUMNS: [&str; 23] = [
    "instrument",
    "mission",
    "category",
    "coherence",
    "f0_ghz",
    "bandwidth_hz",
    "bandwidth_method",
    "aperture_method",
    "a_e_m2",
    "a_phys_m2",
    "eta_ap",
    "gain_dbi",
    "t_a_k",
    "t_a_flag",
    "t_rx_k",
    "t_rx_method",
    "nf_db",
    "t_sys_k",
    "t_sys_method",
    "nedt_k",
    "tau_s",
    "rho2",
    "reference",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BandwidthMethod {
    #[serde(rename = "RF")]
    Rf,
    #[serde(rename = "noise")]
    Noise,
    #[serde(rename = "chirp")]
    Chirp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ApertureMethod {
    /// η_ap·A_phys.
    Phys,
    /// G·λ²/(4π).
    Gain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TaFlag {
    #[serde(rename = "measured")]
    Measured,
    #[serde(rename = "assumed")]
    Assumed,
    /// Bookkeeping entry expressing coherent-receiver noise in radiometric
    /// form; not an observed antenna temperature.
    #[serde(rename = "coh-eq")]
    CohEq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrxMethod {
    #[serde(rename = "direct")]
    Direct,
    /// (10^(NF/10) − 1)·T_0.
    #[serde(rename = "NF")]
    Nf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TsysMethod {
    /// T_A + T_Rx.
    #[serde(rename = "sum")]
    Sum,
    /// NEDT·sqrt(B·τ).
    #[serde(rename = "NEDT")]
    Nedt,
    /// Quoted directly by the source with no breakdown.
    #[serde(rename = "reported")]
    Reported,
}

/// One receiver. Optional numeric fields are either given by the source or
/// filled in by [`derive_record`]; `e_free` is always computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstrumentRecord {
    pub instrument: String,
    pub mission: String,
    pub category: String,
    pub coherence: Coherence,
    pub f0_ghz: f64,
    pub bandwidth_hz: f64,
    pub bandwidth_method: BandwidthMethod,
    pub aperture_method: ApertureMethod,
    pub a_e_m2: Option<f64>,
    pub a_phys_m2: Option<f64>,
    pub eta_ap: Option<f64>,
    pub gain_dbi: Option<f64>,
    pub t_a_k: Option<f64>,
    pub t_a_flag: Option<TaFlag>,
    pub t_rx_k: Option<f64>,
    pub t_rx_method: Option<TrxMethod>,
    pub nf_db: Option<f64>,
    pub t_sys_k: Option<f64>,
    pub t_sys_method: TsysMethod,
    pub nedt_k: Option<f64>,
    pub tau_s: Option<f64>,
    pub rho2: f64,
    pub reference: String,
    /// Ẽ_free as printed by the source, kept for cross-checking.
    #[serde(default)]
    pub e_free_published: Option<f64>,
    #[serde(default)]
    pub e_free: Option<f64>,
}

impl InstrumentRecord {
    fn check(&self) -> std::result::Result<(), String> {
        if self.f0_ghz.is_nan() || self.f0_ghz <= 0.0 {
            return Err("f0_ghz must be > 0".into());
        }
        if self.bandwidth_hz.is_nan() || self.bandwidth_hz <= 0.0 {
            return Err("bandwidth_hz must be > 0".into());
        }
        if !(self.rho2 > 0.0 && self.rho2 <= 1.0) {
            return Err(format!("rho2 must be in (0, 1], got {}", self.rho2));
        }
        if self.rho2 != self.coherence.default_rho2() {
            return Err(format!(
                "rho2 = {} is inconsistent with coherence {:?}",
                self.rho2, self.coherence
            ));
        }
        match self.aperture_method {
            ApertureMethod::Phys if self.a_e_m2.is_none() && self.a_phys_m2.is_none() => {
                return Err("aperture method 'phys' needs a_e_m2 or a_phys_m2".into())
            }
            ApertureMethod::Gain if self.a_e_m2.is_none() && self.gain_dbi.is_none() => {
                return Err("aperture method 'gain' needs a_e_m2 or gain_dbi".into())
            }
            _ => {}
        }
        match self.t_rx_method {
            Some(TrxMethod::Nf) if self.t_rx_k.is_none() && self.nf_db.is_none() => {
                return Err("t_rx method 'NF' needs t_rx_k or nf_db".into())
            }
            Some(TrxMethod::Direct) if self.t_rx_k.is_none() => {
                return Err("t_rx method 'direct' needs t_rx_k".into())
            }
            None if self.t_rx_k.is_some() => return Err("t_rx_k given without t_rx_method".into()),
            _ => {}
        }
        if self.t_a_k.is_some() != self.t_a_flag.is_some() {
            return Err("t_a_k and t_a_flag must be given together".into());
        }
        if self.t_sys_k.is_none() {
            let derivable = match self.t_sys_method {
                TsysMethod::Sum => self.t_a_k.is_some() && self.t_rx_method.is_some(),
                TsysMethod::Nedt => self.nedt_k.is_some() && self.tau_s.is_some(),
                TsysMethod::Reported => false,
            };
            if !derivable {
                return Err(format!(
                    "t_sys method {:?} has neither t_sys_k nor its inputs",
                    self.t_sys_method
                ));
            }
        }
        Ok(())
    }
}

/// A row-level problem, named by its 1-based data row and instrument.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetDiagnostic {
    pub row: usize,
    pub instrument: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ParsedDataset {
    pub records: Vec<InstrumentRecord>,
    pub diagnostics: Vec<DatasetDiagnostic>,
}

/// Parse the dataset CSV. A missing required column fails the whole
/// document; malformed rows are reported in `diagnostics` and left out of
/// `records`.
pub fn parse_instruments(document: &str) -> Result<ParsedDataset> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(document.as_bytes());
    let headers = reader.headers()?.clone();
    if let Some(missing) = REQUIRED_COLUMNS.iter().find(|c| !headers.iter().any(|h| h == **c)) {
        return Err(Error::MissingColumn(missing.to_string()));
    }
    let name_col = headers.iter().position(|h| h == "instrument");

    let mut out = ParsedDataset::default();
    for (i, row) in reader.records().enumerate() {
        let row_no = i + 1;
        let raw = match row {
            Ok(r) => r,
            Err(e) => {
                out.diagnostics.push(DatasetDiagnostic {
                    row: row_no,
                    instrument: String::new(),
                    message: e.to_string(),
                });
                continue;
            }
        };
        let instrument = name_col.and_then(|c| raw.get(c)).unwrap_or_default().to_string();
        let parsed: std::result::Result<InstrumentRecord, String> = raw
            .deserialize(Some(&headers))
            .map_err(|e| e.to_string())
            .and_then(|r: InstrumentRecord| r.check().map(|_| r));
        match parsed {
            Ok(r) => out.records.push(r),
            Err(message) => out.diagnostics.push(DatasetDiagnostic {
                row: row_no,
                instrument,
                message,
            }),
        }
    }
    Ok(out)
}

/// Serialise records with the same header layout the parser reads.
pub fn write_instruments(records: &[InstrumentRecord]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for r in records {
        writer.serialize(r)?;
    }
    if records.is_empty() {
        let mut header: Vec<&str> = REQUIRED_COLUMNS.to_vec();
        header.extend(["e_free_published", "e_free"]);
        writer.write_record(header)?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Csv(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Csv(e.to_string()))
}

/// Fill in A_e, T_Rx, T_sys and Ẽ_free from each record's method tags.
/// Values already present are kept, so deriving twice changes nothing.
pub fn derive_record(consts: &Constants, r: &InstrumentRecord) -> Result<InstrumentRecord> {
    derive_inner(consts, r).map_err(|e| Error::Record {
        record: r.instrument.clone(),
        source: Box::new(e),
    })
}

fn derive_inner(consts: &Constants, r: &InstrumentRecord) -> Result<InstrumentRecord> {
    let mut d = r.clone();
    if d.a_e_m2.is_none() {
        d.a_e_m2 = Some(match d.aperture_method {
            ApertureMethod::Phys => aperture_from_physical(
                d.a_phys_m2.ok_or_else(|| Error::domain("a_phys_m2", "missing"))?,
                d.eta_ap.unwrap_or(DEFAULT_APERTURE_EFFICIENCY),
            )?,
            ApertureMethod::Gain => aperture_from_gain(
                db_to_linear(d.gain_dbi.ok_or_else(|| Error::domain("gain_dbi", "missing"))?)?,
                d.f0_ghz * 1e9,
            )?,
        });
    }
    if d.t_rx_k.is_none() && d.t_rx_method == Some(TrxMethod::Nf) {
        let nf = d.nf_db.ok_or_else(|| Error::domain("nf_db", "missing"))?;
        d.t_rx_k = Some(trx_from_noise_figure(nf, consts.t0)?);
    }
    if d.t_sys_k.is_none() {
        d.t_sys_k = Some(match d.t_sys_method {
            TsysMethod::Sum => {
                d.t_a_k.ok_or_else(|| Error::domain("t_a_k", "missing"))?
                    + d.t_rx_k.ok_or_else(|| Error::domain("t_rx_k", "missing"))?
            }
            TsysMethod::Nedt => tsys_from_nedt(
                d.nedt_k.ok_or_else(|| Error::domain("nedt_k", "missing"))?,
                d.bandwidth_hz,
                d.tau_s.ok_or_else(|| Error::domain("tau_s", "missing"))?,
            )?,
            TsysMethod::Reported => return Err(Error::domain("t_sys_k", "missing")),
        });
    }
    let a_e = d.a_e_m2.unwrap_or_default();
    let t_sys = d.t_sys_k.unwrap_or_default();
    d.e_free = Some(nef_from_aperture(consts, t_sys, a_e, d.rho2)?);
    Ok(d)
}

pub fn derive_all(consts: &Constants, records: &[InstrumentRecord]) -> Result<Vec<InstrumentRecord>> {
    records.iter().map(|r| derive_record(consts, r)).collect()
}

/// Sum-tagged rows whose printed T_sys disagrees with T_A + T_Rx by more
/// than 1%.
pub fn consistency_diagnostics(records: &[InstrumentRecord]) -> Vec<DatasetDiagnostic> {
    records
        .iter()
        .enumerate()
        .filter_map(|(i, r)| {
            let (TsysMethod::Sum, Some(ta), Some(trx), Some(ts)) =
                (r.t_sys_method, r.t_a_k, r.t_rx_k, r.t_sys_k)
            else {
                return None;
            };
            (((ta + trx) - ts).abs() > 0.01 * ts).then(|| DatasetDiagnostic {
                row: i + 1,
                instrument: r.instrument.clone(),
                message: format!("t_a_k + t_rx_k = {} but t_sys_k = {ts}", ta + trx),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldMismatch {
    pub instrument: String,
    pub published: f64,
    pub recomputed: f64,
    /// recomputed/published − 1.
    pub relative: f64,
}

/// Records whose recomputed Ẽ_free differs from the published value by more
/// than `tolerance` (relative). Records must already be derived.
pub fn published_mismatches(records: &[InstrumentRecord], tolerance: f64) -> Vec<FieldMismatch> {
    records
        .iter()
        .filter_map(|r| {
            let (Some(published), Some(recomputed)) = (r.e_free_published, r.e_free) else {
                return None;
            };
            let relative = recomputed / published - 1.0;
            (relative.abs() > tolerance).then(|| FieldMismatch {
                instrument: r.instrument.clone(),
                published,
                recomputed,
                relative,
            })
        })
        .collect()
}
