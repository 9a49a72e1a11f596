//! Radar equation, noise floor, SNR and NESZ.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::quantities::{linear_to_db, BOLTZMANN, SPEED_OF_LIGHT};

/// What the radar is looking at.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Target {
    /// Point target with radar cross section σ in m².
    Point { rcs: f64 },
    /// Imaging mode: normalised backscatter σ0 over a resolution cell of
    /// `cell_area` m², so σ = σ0·A_res.
    Distributed { sigma0: f64, cell_area: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadarScenario {
    pub transmit_power: f64,
    pub tx_gain: f64,
    pub rx_gain: f64,
    pub wavelength: f64,
    pub target: Target,
    pub range: f64,
    /// Linear system loss, ≥ 1; divides the received power.
    pub system_loss: f64,
    /// Linear propagation loss, ≥ 1.
    pub propagation_loss: f64,
    /// Linear processing gain, ≥ 1.
    pub processing_gain: f64,
    pub system_temperature: f64,
    pub bandwidth: f64,
}

impl RadarScenario {
    pub fn validate(&self) -> Result<()> {
        require_positive("transmit_power", self.transmit_power)?;
        require_positive("tx_gain", self.tx_gain)?;
        require_positive("rx_gain", self.rx_gain)?;
        require_positive("wavelength", self.wavelength)?;
        require_positive("range", self.range)?;
        require_at_least_one("system_loss", self.system_loss)?;
        require_at_least_one("propagation_loss", self.propagation_loss)?;
        require_at_least_one("processing_gain", self.processing_gain)?;
        require_non_negative("system_temperature", self.system_temperature)?;
        require_positive("bandwidth", self.bandwidth)?;
        match self.target {
            Target::Point { rcs } => {
                require_non_negative("rcs", rcs)?;
            }
            Target::Distributed { sigma0, cell_area } => {
                require_non_negative("sigma0", sigma0)?;
                require_positive("cell_area", cell_area)?;
            }
        }
        Ok(())
    }

    pub fn system_loss_db(&self) -> f64 {
        10.0 * self.system_loss.log10()
    }

    pub fn propagation_loss_db(&self) -> f64 {
        10.0 * self.propagation_loss.log10()
    }

    /// P_t·G_t·G_r·λ² / ((4π)³·R⁴·L_s·L_p), the factor multiplying σ.
    fn path_factor(&self) -> f64 {
        let r2 = self.range * self.range;
        self.transmit_power * self.tx_gain * self.rx_gain * self.wavelength * self.wavelength
            / ((4.0 * PI).powi(3) * r2 * r2 * self.system_loss * self.propagation_loss)
    }

    /// Received power for whichever target mode is set; processing gain
    /// is applied only in the distributed mode.
    pub fn signal_power(&self) -> Result<f64> {
        match self.target {
            Target::Point { .. } => received_power(self),
            Target::Distributed { .. } => processed_received_power(self),
        }
    }

    pub fn snr(&self) -> Result<f64> {
        snr(self.signal_power()?, noise_power(self.system_temperature, self.bandwidth)?)
    }
}

fn require_at_least_one(param: &'static str, x: f64) -> Result<f64> {
    if x.is_finite() && x >= 1.0 {
        Ok(x)
    } else {
        Err(Error::domain(param, format!("must be >= 1 (linear), got {x}")))
    }
}

/// Point-target radar equation, in W.
pub fn received_power(s: &RadarScenario) -> Result<f64> {
    s.validate()?;
    match s.target {
        Target::Point { rcs } => Ok(s.path_factor() * rcs),
        Target::Distributed { .. } => Err(Error::TargetMode("received_power needs a point target")),
    }
}

/// Imaging-mode received power including processing gain, in W.
pub fn processed_received_power(s: &RadarScenario) -> Result<f64> {
    s.validate()?;
    match s.target {
        Target::Distributed { sigma0, cell_area } => {
            Ok(s.path_factor() * sigma0 * cell_area * s.processing_gain)
        }
        Target::Point { .. } => Err(Error::TargetMode(
            "processed_received_power needs a distributed target",
        )),
    }
}

/// Pulse-compression gain from the time-bandwidth product B·τ_p.
pub fn processing_gain_from_pulse(bandwidth: f64, pulse_width: f64) -> Result<f64> {
    require_positive("bandwidth", bandwidth)?;
    require_positive("pulse_width", pulse_width)?;
    Ok(bandwidth * pulse_width)
}

/// P_n = k_B·T_sys·B, in W.
pub fn noise_power(system_temperature: f64, bandwidth: f64) -> Result<f64> {
    require_non_negative("system_temperature", system_temperature)?;
    require_positive("bandwidth", bandwidth)?;
    Ok(BOLTZMANN * system_temperature * bandwidth)
}

pub fn snr(signal_power: f64, noise_power: f64) -> Result<f64> {
    require_positive("noise_power", noise_power)?;
    require_non_negative("signal_power", signal_power)?;
    Ok(signal_power / noise_power)
}

/// NESZ = σ0/SNR, with SNR evaluated at that σ0.
pub fn nesz(sigma0: f64, snr: f64) -> Result<f64> {
    require_positive("snr", snr)?;
    require_non_negative("sigma0", sigma0)?;
    Ok(sigma0 / snr)
}

/// The backscatter coefficient giving SNR = 1 for a distributed-target
/// scenario. Under the linear radar equation this equals [`nesz`] of any
/// non-zero σ0.
pub fn nesz_at_unit_snr(s: &RadarScenario) -> Result<f64> {
    let Target::Distributed { cell_area, .. } = s.target else {
        return Err(Error::TargetMode("NESZ needs a distributed target"));
    };
    let unit = RadarScenario {
        target: Target::Distributed {
            sigma0: 1.0,
            cell_area,
        },
        ..*s
    };
    let snr_per_unit_sigma0 = unit.snr()?;
    require_positive("snr", snr_per_unit_sigma0)?;
    Ok(1.0 / snr_per_unit_sigma0)
}

pub fn nesz_db(nesz: f64) -> Result<f64> {
    linear_to_db(nesz)
}

/// δR = c/(2B), in m.
pub fn range_resolution(bandwidth: f64) -> Result<f64> {
    require_positive("bandwidth", bandwidth)?;
    Ok(SPEED_OF_LIGHT / (2.0 * bandwidth))
}

/// R_max,2/R_max,1 = (T_sys,1/T_sys,2)^(1/4).
pub fn max_range_ratio(system_temperature_1: f64, system_temperature_2: f64) -> Result<f64> {
    require_positive("system_temperature_1", system_temperature_1)?;
    require_positive("system_temperature_2", system_temperature_2)?;
    Ok((system_temperature_1 / system_temperature_2).powf(0.25))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn point(rcs: f64) -> RadarScenario {
        RadarScenario {
            transmit_power: 1e3,
            tx_gain: 1e3,
            rx_gain: 1e3,
            wavelength: 0.03,
            target: Target::Point { rcs },
            range: 1e5,
            system_loss: 1.0,
            propagation_loss: 1.0,
            processing_gain: 1.0,
            system_temperature: 290.0,
            bandwidth: 1e6,
        }
    }

    fn imaging(sigma0: f64, cell_area: f64, processing_gain: f64) -> RadarScenario {
        RadarScenario {
            target: Target::Distributed { sigma0, cell_area },
            processing_gain,
            ..point(0.0)
        }
    }

    #[test]
    fn received_power_examples() {
        assert_eq!(received_power(&point(0.0)).unwrap(), 0.0);
        // Hand-evaluated: 1e3·1e3·1e3·9e-4 / (1984.40·1e20).
        let oracle = 1e3 * 1e3 * 1e3 * 9e-4 / (1984.4017075391884 * 1e20);
        let p = received_power(&point(1.0)).unwrap();
        assert!(rel(p, oracle) < 1e-12);
        assert!(rel(p, 4.535e-18) < 1e-3);
        let far = RadarScenario { range: 2e5, ..point(1.0) };
        assert!(rel(received_power(&far).unwrap(), p / 16.0) < 1e-12);
        let zero_range = RadarScenario { range: 0.0, ..point(1.0) };
        assert_eq!(received_power(&zero_range).unwrap_err().param(), Some("range"));
        assert!(matches!(
            received_power(&imaging(1.0, 1.0, 1.0)),
            Err(Error::TargetMode(_))
        ));
    }

    #[test]
    fn processed_power_examples() {
        let p = processed_received_power(&imaging(0.5, 2.0, 1.0)).unwrap();
        assert!(rel(p, received_power(&point(1.0)).unwrap()) < 1e-12);
        assert_eq!(processing_gain_from_pulse(100e6, 10e-6).unwrap().round(), 1000.0);
        assert_eq!(processed_received_power(&imaging(0.0, 2.0, 10.0)).unwrap(), 0.0);
        assert!(processed_received_power(&imaging(0.5, 2.0, 0.5)).is_err());
    }

    #[test]
    fn noise_and_snr_examples() {
        assert_eq!(noise_power(0.0, 1e6).unwrap(), 0.0);
        assert!(rel(noise_power(290.0, 1e6).unwrap(), 4.004e-15) < 1e-3);
        assert!(rel(noise_power(606.0, 1e8).unwrap(), 8.369e-13) < 1e-3);
        assert!(noise_power(290.0, 0.0).is_err());

        assert_eq!(snr(4e-15, 4e-15).unwrap(), 1.0);
        assert!(rel(snr(4e-15, 4e-13).unwrap(), 0.01) < 1e-12);
        assert!(snr(1.0, 0.0).is_err());
        assert!(rel(point(1.0).snr().unwrap(), 1.133e-3) < 1e-3);
    }

    #[test]
    fn nesz_examples() {
        assert!(rel(nesz(0.01, 100.0).unwrap(), 1e-4) < 1e-15);
        assert_eq!(nesz(1.0, 1.0).unwrap(), 1.0);
        assert!(nesz(1.0, 0.0).is_err());
        assert!(nesz(1.0, -2.0).is_err());
    }

    #[test]
    fn nesz_forms_coincide() {
        let s = imaging(0.03, 25.0, 1000.0);
        let literal = nesz(0.03, s.snr().unwrap()).unwrap();
        assert!(rel(nesz_at_unit_snr(&s).unwrap(), literal) < 1e-12);
    }

    #[test]
    fn resolution_and_range_examples() {
        assert!((range_resolution(1e8).unwrap() - 1.499).abs() < 1e-3);
        assert!((range_resolution(SPEED_OF_LIGHT / 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(rel(range_resolution(2e8).unwrap(), range_resolution(1e8).unwrap() / 2.0) < 1e-15);
        assert!(range_resolution(0.0).is_err());

        assert_eq!(max_range_ratio(300.0, 300.0).unwrap(), 1.0);
        assert!((max_range_ratio(1600.0, 100.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((max_range_ratio(290.0, 580.0).unwrap() - 0.8409).abs() < 1e-4);
        assert!(max_range_ratio(0.0, 1.0).is_err());
    }

    #[test]
    fn lowering_tsys_improves_nesz_and_range() {
        let k = 4.0;
        let hot = imaging(0.1, 25.0, 100.0);
        let cold = RadarScenario {
            system_temperature: hot.system_temperature / k,
            ..hot
        };
        let n_hot = nesz(0.1, hot.snr().unwrap()).unwrap();
        let n_cold = nesz(0.1, cold.snr().unwrap()).unwrap();
        assert!(rel(n_hot / n_cold, k) < 1e-12);
        let ratio = max_range_ratio(hot.system_temperature, cold.system_temperature).unwrap();
        assert!(rel(ratio, k.powf(0.25)) < 1e-12);
    }

    proptest! {
        #[test]
        fn received_power_homogeneity(s in 0.1f64..10.0) {
            let base = point(1.0);
            let p = received_power(&base).unwrap();
            let scaled = |f: &dyn Fn(&mut RadarScenario)| {
                let mut x = base;
                f(&mut x);
                received_power(&x).unwrap()
            };
            prop_assert!(rel(scaled(&|x| x.transmit_power *= s), s * p) < 1e-12);
            prop_assert!(rel(scaled(&|x| x.tx_gain *= s), s * p) < 1e-12);
            prop_assert!(rel(scaled(&|x| x.rx_gain *= s), s * p) < 1e-12);
            let with_rcs = scaled(&|x| x.target = Target::Point { rcs: s });
            prop_assert!(rel(with_rcs, s * p) < 1e-12);
            prop_assert!(rel(scaled(&|x| x.wavelength *= s), s * s * p) < 1e-12);
            prop_assert!(rel(scaled(&|x| x.range *= s), p / s.powi(4)) < 1e-12);
            let loss = 1.0 + s;
            prop_assert!(rel(scaled(&|x| x.system_loss = loss), p / loss) < 1e-12);
            prop_assert!(rel(scaled(&|x| x.propagation_loss = loss), p / loss) < 1e-12);
        }

        #[test]
        fn processed_reduces_to_point(sigma0 in 1e-4f64..10.0, area in 1e-2f64..1e4) {
            let proc = processed_received_power(&imaging(sigma0, area, 1.0)).unwrap();
            let direct = received_power(&point(sigma0 * area)).unwrap();
            prop_assert!(rel(proc, direct) < 1e-12);
        }

        #[test]
        fn nesz_identity(sigma0 in 1e-6f64..10.0, g in 1.0f64..1e6) {
            let s = imaging(sigma0, 10.0, g);
            let snr = s.snr().unwrap();
            prop_assert!(rel(nesz(sigma0, snr).unwrap() * snr, sigma0) < 1e-15);
        }
    }
}
