//! Satellite communication link budget: EIRP, G/T, C/N0 and Eb/N0.
//!
//! Every quantity in a [`LinkBudget`] is in dB except the temperatures (K),
//! the feeder loss `feeder_loss` (linear, ≥ 1) and the data rate (bit/s).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{require_finite, require_non_negative, require_positive, Error, Result};
use crate::quantities::{frequency_to_wavelength, DbRef, Decibel, BOLTZMANN_DB, T0_REFERENCE};

/// Ledger free-space losses that differ from the geometric value by more
/// than this are reported.
pub const FSL_DIAGNOSTIC_TOLERANCE_DB: f64 = 0.5;

/// EIRP = P_T + G_T − L_FTx, in dBW.
pub fn eirp(tx_power_dbw: f64, tx_gain_dbi: f64, tx_feeder_loss_db: f64) -> Result<f64> {
    let p = Decibel::new(require_finite("tx_power", tx_power_dbw)?, DbRef::Dbw)?;
    let g = Decibel::new(require_finite("tx_gain", tx_gain_dbi)?, DbRef::Dbi)?;
    let l = Decibel::new(require_finite("tx_feeder_loss", tx_feeder_loss_db)?, DbRef::Db)?;
    Ok(p.checked_add(g)?.checked_sub(l)?.value)
}

/// System noise temperature referred to the antenna terminal:
/// T_sys = T_a + (L_F − 1)·T_0 + L_F·T_R.
pub fn system_noise_temperature(
    antenna_temperature: f64,
    receiver_temperature: f64,
    feeder_loss: f64,
    reference_temperature: f64,
) -> Result<f64> {
    require_non_negative("antenna_temperature", antenna_temperature)?;
    require_non_negative("receiver_temperature", receiver_temperature)?;
    require_non_negative("reference_temperature", reference_temperature)?;
    if !(feeder_loss.is_finite() && feeder_loss >= 1.0) {
        return Err(Error::domain("feeder_loss", format!("must be >= 1 (linear), got {feeder_loss}")));
    }
    Ok(antenna_temperature
        + (feeder_loss - 1.0) * reference_temperature
        + feeder_loss * receiver_temperature)
}

/// G/T = G_R − 10·log10(T_sys), in dB/K.
pub fn figure_of_merit(rx_gain_dbi: f64, system_temperature: f64) -> Result<f64> {
    require_finite("rx_gain", rx_gain_dbi)?;
    require_positive("system_temperature", system_temperature)?;
    Ok(rx_gain_dbi - 10.0 * system_temperature.log10())
}

/// L_FSL = 20·log10(4π·d/λ), in dB.
pub fn free_space_loss(distance_m: f64, frequency_hz: f64) -> Result<f64> {
    require_positive("distance", distance_m)?;
    let wavelength = frequency_to_wavelength(frequency_hz)?;
    Ok(20.0 * (4.0 * PI * distance_m / wavelength).log10())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LossKind {
    FreeSpace,
    Atmospheric,
    Rain,
    Scintillation,
    Polarization,
    Ionospheric,
    Other,
}

impl LossKind {
    pub fn key(&self) -> &'static str {
        match self {
            LossKind::FreeSpace => "free_space",
            LossKind::Atmospheric => "atmospheric",
            LossKind::Rain => "rain",
            LossKind::Scintillation => "scintillation",
            LossKind::Polarization => "polarization",
            LossKind::Ionospheric => "ionospheric",
            LossKind::Other => "other",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LossEntry {
    pub kind: LossKind,
    pub db: f64,
}

impl LossEntry {
    pub fn new(kind: LossKind, db: f64) -> Self {
        LossEntry { kind, db }
    }
}

/// L = Σ ledger entries, in dB.
pub fn total_loss(ledger: &[LossEntry]) -> Result<f64> {
    ledger.iter().try_fold(0.0, |acc, e| {
        require_non_negative("loss", e.db)?;
        Ok(acc + e.db)
    })
}

/// C/N0 = EIRP − L + G/T + 228.6, in dBHz.
pub fn c_over_n0(eirp_dbw: f64, total_loss_db: f64, figure_of_merit_db_k: f64) -> Result<f64> {
    require_finite("eirp", eirp_dbw)?;
    require_finite("total_loss", total_loss_db)?;
    require_finite("figure_of_merit", figure_of_merit_db_k)?;
    Ok(eirp_dbw - total_loss_db + figure_of_merit_db_k + BOLTZMANN_DB)
}

/// Eb/N0 = C/N0 − 10·log10(R), in dB.
pub fn eb_over_n0(c_over_n0_dbhz: f64, data_rate_bps: f64) -> Result<f64> {
    require_finite("c_over_n0", c_over_n0_dbhz)?;
    require_positive("data_rate", data_rate_bps)?;
    Ok(c_over_n0_dbhz - 10.0 * data_rate_bps.log10())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModulationThreshold {
    pub name: String,
    pub required_eb_n0_db: f64,
}

/// Indicative required Eb/N0 values for common modulation and coding schemes.
pub fn default_thresholds() -> Vec<ModulationThreshold> {
    [("BPSK 1/2", 3.0), ("QPSK 1/2", 4.0), ("8PSK 3/4", 7.5), ("16QAM 3/4", 11.0)]
        .into_iter()
        .map(|(name, required_eb_n0_db)| ModulationThreshold {
            name: name.to_string(),
            required_eb_n0_db,
        })
        .collect()
}

/// Carrier frequency and distance, used only to cross-check the ledger's
/// free-space loss.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathGeometry {
    pub distance_m: f64,
    pub frequency_hz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkBudget {
    pub tx_power_dbw: f64,
    pub tx_gain_dbi: f64,
    pub tx_feeder_loss_db: f64,
    pub losses: Vec<LossEntry>,
    pub rx_gain_dbi: f64,
    pub antenna_temperature_k: f64,
    pub receiver_temperature_k: f64,
    /// Receive feeder loss, linear.
    pub feeder_loss: f64,
    pub data_rate_bps: f64,
    #[serde(default = "default_thresholds")]
    pub thresholds: Vec<ModulationThreshold>,
    #[serde(default)]
    pub geometry: Option<PathGeometry>,
}

impl LinkBudget {
    /// The worked Ka-band GEO downlink example.
    pub fn ka_band_example() -> Self {
        LinkBudget {
            tx_power_dbw: 20.0,
            tx_gain_dbi: 45.0,
            tx_feeder_loss_db: 2.0,
            losses: vec![
                LossEntry::new(LossKind::FreeSpace, 206.5),
                LossEntry::new(LossKind::Atmospheric, 2.0),
                LossEntry::new(LossKind::Rain, 3.0),
                LossEntry::new(LossKind::Other, 1.0),
            ],
            rx_gain_dbi: 50.0,
            antenna_temperature_k: 100.0,
            receiver_temperature_k: 100.0,
            feeder_loss: 1.5,
            data_rate_bps: 1e8,
            thresholds: default_thresholds(),
            geometry: Some(PathGeometry {
                distance_m: 3.6e7,
                frequency_hz: 20e9,
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Margin {
    pub name: String,
    pub required_eb_n0_db: f64,
    pub margin_db: f64,
    pub closes: bool,
}

/// Disagreement between the ledger's free-space loss and the geometric one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FslCheck {
    pub ledger_db: f64,
    pub computed_db: f64,
    pub discrepancy_db: f64,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkReport {
    pub eirp_dbw: f64,
    pub total_loss_db: f64,
    pub system_temperature_k: f64,
    pub figure_of_merit_db_k: f64,
    pub c_over_n0_dbhz: f64,
    pub eb_over_n0_db: f64,
    pub margins: Vec<Margin>,
    pub fsl_check: Option<FslCheck>,
}

pub fn evaluate_link(budget: &LinkBudget) -> Result<LinkReport> {
    let eirp_dbw = eirp(budget.tx_power_dbw, budget.tx_gain_dbi, budget.tx_feeder_loss_db)?;
    let total_loss_db = total_loss(&budget.losses)?;
    let system_temperature_k = system_noise_temperature(
        budget.antenna_temperature_k,
        budget.receiver_temperature_k,
        budget.feeder_loss,
        T0_REFERENCE,
    )?;
    let figure_of_merit_db_k = figure_of_merit(budget.rx_gain_dbi, system_temperature_k)?;
    let c_over_n0_dbhz = c_over_n0(eirp_dbw, total_loss_db, figure_of_merit_db_k)?;
    let eb_over_n0_db = eb_over_n0(c_over_n0_dbhz, budget.data_rate_bps)?;

    let margins = budget
        .thresholds
        .iter()
        .map(|t| {
            let required = require_finite("threshold", t.required_eb_n0_db)?;
            let margin_db = eb_over_n0_db - required;
            Ok(Margin {
                name: t.name.clone(),
                required_eb_n0_db: required,
                margin_db,
                closes: margin_db >= 0.0,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let ledger_fsl = budget
        .losses
        .iter()
        .filter(|e| e.kind == LossKind::FreeSpace)
        .map(|e| e.db)
        .reduce(|a, b| a + b);
    let fsl_check = match (budget.geometry, ledger_fsl) {
        (Some(g), Some(ledger_db)) => {
            let computed_db = free_space_loss(g.distance_m, g.frequency_hz)?;
            let discrepancy_db = computed_db - ledger_db;
            Some(FslCheck {
                ledger_db,
                computed_db,
                discrepancy_db,
                flagged: discrepancy_db.abs() > FSL_DIAGNOSTIC_TOLERANCE_DB,
            })
        }
        _ => None,
    };

    Ok(LinkReport {
        eirp_dbw,
        total_loss_db,
        system_temperature_k,
        figure_of_merit_db_k,
        c_over_n0_dbhz,
        eb_over_n0_db,
        margins,
        fsl_check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn eirp_examples() {
        assert_eq!(eirp(20.0, 45.0, 2.0).unwrap(), 63.0);
        assert_eq!(eirp(0.0, 0.0, 0.0).unwrap(), 0.0);
        assert_eq!(eirp(10.0, 40.0, 3.0).unwrap(), 47.0);
        assert!(eirp(f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn system_temperature_examples() {
        assert!((system_noise_temperature(100.0, 100.0, 1.5, 290.0).unwrap() - 395.0).abs() < 1e-12);
        assert_eq!(system_noise_temperature(80.0, 45.0, 1.0, 290.0).unwrap(), 125.0);
        assert_eq!(system_noise_temperature(0.0, 0.0, 2.0, 290.0).unwrap(), 290.0);
        let err = system_noise_temperature(100.0, 100.0, 0.9, 290.0).unwrap_err();
        assert_eq!(err.param(), Some("feeder_loss"));
    }

    #[test]
    fn figure_of_merit_examples() {
        assert!((figure_of_merit(50.0, 395.0).unwrap() - 24.03).abs() < 0.005);
        assert_eq!(figure_of_merit(0.0, 1.0).unwrap(), 0.0);
        assert!((figure_of_merit(45.0, 100.0).unwrap() - 25.0).abs() < 1e-12);
        assert!(figure_of_merit(45.0, 0.0).is_err());
    }

    #[test]
    fn free_space_loss_examples() {
        let lambda = frequency_to_wavelength(20e9).unwrap();
        assert!(free_space_loss(lambda / (4.0 * PI), 20e9).unwrap().abs() < 1e-12);
        assert!((free_space_loss(3.6e7, 20e9).unwrap() - 209.6).abs() < 0.05);
        let d = free_space_loss(2e6, 8e9).unwrap() - free_space_loss(1e6, 8e9).unwrap();
        assert!((d - 6.0206).abs() < 1e-4);
        assert!(free_space_loss(0.0, 1e9).is_err());
        assert!(free_space_loss(1.0, 0.0).is_err());
    }

    #[test]
    fn total_loss_examples() {
        let ledger: Vec<_> = [206.5, 2.0, 3.0, 1.0]
            .into_iter()
            .map(|db| LossEntry::new(LossKind::Other, db))
            .collect();
        assert_eq!(total_loss(&ledger).unwrap(), 212.5);
        assert_eq!(total_loss(&[]).unwrap(), 0.0);
        let ones = vec![LossEntry::new(LossKind::Rain, 1.0); 3];
        assert_eq!(total_loss(&ones).unwrap(), 3.0);
        assert!(total_loss(&[LossEntry::new(LossKind::Rain, -1.0)]).is_err());
    }

    #[test]
    fn carrier_and_bit_energy_examples() {
        assert!((c_over_n0(63.0, 212.5, 24.03).unwrap() - 103.13).abs() < 1e-9);
        assert!((c_over_n0(0.0, 0.0, 0.0).unwrap() - 228.6).abs() < 1e-12);
        assert!((c_over_n0(50.0, 200.0, 20.0).unwrap() - 98.6).abs() < 1e-9);

        assert!((eb_over_n0(103.13, 1e8).unwrap() - 23.13).abs() < 1e-9);
        assert_eq!(eb_over_n0(42.0, 1.0).unwrap(), 42.0);
        assert!((eb_over_n0(100.0, 1e6).unwrap() - 40.0).abs() < 1e-12);
        assert!(eb_over_n0(100.0, 0.0).is_err());
    }

    #[test]
    fn ka_band_budget() {
        let report = evaluate_link(&LinkBudget::ka_band_example()).unwrap();
        assert_eq!(report.eirp_dbw, 63.0);
        assert_eq!(report.total_loss_db, 212.5);
        assert!((report.system_temperature_k - 395.0).abs() < 1e-9);
        assert!((report.figure_of_merit_db_k - 24.03).abs() < 0.01);
        assert!((report.c_over_n0_dbhz - 103.13).abs() < 0.01);
        assert!((report.eb_over_n0_db - 23.13).abs() < 0.01);

        let qpsk = report.margins.iter().find(|m| m.name.starts_with("QPSK")).unwrap();
        assert!((qpsk.margin_db - 19.13).abs() < 0.01);
        assert!(qpsk.closes);

        let fsl = report.fsl_check.unwrap();
        assert!(fsl.flagged);
        assert!(fsl.discrepancy_db >= 3.0);
    }

    #[test]
    fn link_that_does_not_close() {
        let mut budget = LinkBudget::ka_band_example();
        budget.thresholds = vec![ModulationThreshold {
            name: "hypothetical".into(),
            required_eb_n0_db: 25.0,
        }];
        let report = evaluate_link(&budget).unwrap();
        assert!((report.margins[0].margin_db + 1.87).abs() < 0.01);
        assert!(!report.margins[0].closes);
    }

    #[test]
    fn fsl_check_absent_without_geometry() {
        let mut budget = LinkBudget::ka_band_example();
        budget.geometry = None;
        assert!(evaluate_link(&budget).unwrap().fsl_check.is_none());
    }

    #[test]
    fn budget_json_defaults() {
        let json = r#"{
            "tx_power_dbw": 20, "tx_gain_dbi": 45, "tx_feeder_loss_db": 2,
            "losses": [{"kind": "free_space", "db": 206.5}, {"kind": "rain", "db": 3}],
            "rx_gain_dbi": 50, "antenna_temperature_k": 100, "receiver_temperature_k": 100,
            "feeder_loss": 1.5, "data_rate_bps": 1e8
        }"#;
        let budget: LinkBudget = serde_json::from_str(json).unwrap();
        assert_eq!(budget.thresholds, default_thresholds());
        assert!(budget.geometry.is_none());
    }

    proptest! {
        #[test]
        fn chain_identities(
            p in -10.0f64..40.0, gt in 0.0f64..60.0, lf in 0.0f64..5.0,
            fsl in 150.0f64..220.0, rain in 0.0f64..20.0,
            gr in 0.0f64..70.0, ta in 0.0f64..300.0, tr in 0.0f64..1000.0,
            feeder in 1.0f64..3.0, rate in 1.0f64..1e10,
        ) {
            let budget = LinkBudget {
                tx_power_dbw: p, tx_gain_dbi: gt, tx_feeder_loss_db: lf,
                losses: vec![LossEntry::new(LossKind::FreeSpace, fsl), LossEntry::new(LossKind::Rain, rain)],
                rx_gain_dbi: gr, antenna_temperature_k: ta + 1.0, receiver_temperature_k: tr,
                feeder_loss: feeder, data_rate_bps: rate,
                thresholds: default_thresholds(), geometry: None,
            };
            let r = evaluate_link(&budget).unwrap();
            prop_assert_eq!(r.c_over_n0_dbhz, r.eirp_dbw - r.total_loss_db + r.figure_of_merit_db_k + 228.6);
            prop_assert!((r.eb_over_n0_db + 10.0 * rate.log10() - r.c_over_n0_dbhz).abs() < 1e-12);
            prop_assert_eq!(&r, &evaluate_link(&budget).unwrap());
        }

        #[test]
        fn system_temperature_monotone(ta in 0.0f64..500.0, tr in 0.0f64..500.0, lf in 1.0f64..5.0, d in 0.0f64..10.0) {
            let base = system_noise_temperature(ta, tr, lf, 290.0).unwrap();
            prop_assert!(system_noise_temperature(ta + d, tr, lf, 290.0).unwrap() >= base);
            prop_assert!(system_noise_temperature(ta, tr + d, lf, 290.0).unwrap() >= base);
            prop_assert!(system_noise_temperature(ta, tr, lf + d, 290.0).unwrap() >= base);
        }

        #[test]
        fn doubling_distance(d in 1.0f64..1e9, f in 1e6f64..1e12) {
            let delta = free_space_loss(2.0 * d, f).unwrap() - free_space_loss(d, f).unwrap();
            prop_assert!((delta - 20.0 * 2f64.log10()).abs() < 1e-9);
        }
    }
}
