//! Noise-equivalent field (NEF) metrics.
//!
//! A classical receiver with system temperature T_sys and effective aperture
//! A_e is mapped to the plane-wave field spectral density that would deliver
//! its noise power k_B·T_sys through the aperture:
//!
//! ```text
//! Ẽ_free = sqrt(k_B·T_sys·η0 / (ρ²·A_e))      [V·m⁻¹·Hz^(−1/2)]
//! ```
//!
//! A resonant structure in front of the sensor multiplies the free-space
//! field by β_enh; a sensor meets the classical reference when its own NEF
//! does not exceed β_enh·Ẽ_free.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::quantities::{frequency_to_wavelength, Constants, BOLTZMANN, EPSILON_0};

/// Aperture efficiency assumed when a reference gives only the physical area.
pub const DEFAULT_APERTURE_EFFICIENCY: f64 = 0.65;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coherence {
    Coherent,
    Incoherent,
}

impl Coherence {
    /// ρ² = 1 for polarisation-matched coherent reception, 1/2 for
    /// unpolarised emission seen by one linear channel.
    pub fn default_rho2(self) -> f64 {
        match self {
            Coherence::Coherent => 1.0,
            Coherence::Incoherent => 0.5,
        }
    }
}

fn require_rho2(rho2: f64) -> Result<f64> {
    if rho2.is_finite() && rho2 > 0.0 && rho2 <= 1.0 {
        Ok(rho2)
    } else {
        Err(Error::domain("rho2", format!("must be in (0, 1], got {rho2}")))
    }
}

/// How the receiver couples to free space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aperture {
    Effective { area_m2: f64 },
    Gain { gain: f64, frequency_hz: f64 },
}

impl Aperture {
    pub fn effective_area(&self) -> Result<f64> {
        match *self {
            Aperture::Effective { area_m2 } => require_positive("aperture", area_m2),
            Aperture::Gain { gain, frequency_hz } => aperture_from_gain(gain, frequency_hz),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReceiverReference {
    pub system_temperature: f64,
    pub aperture: Aperture,
    pub rho2: f64,
}

impl ReceiverReference {
    pub fn new(system_temperature: f64, aperture: Aperture, rho2: f64) -> Result<Self> {
        require_positive("system_temperature", system_temperature)?;
        require_rho2(rho2)?;
        aperture.effective_area()?;
        Ok(ReceiverReference {
            system_temperature,
            aperture,
            rho2,
        })
    }

    pub fn free_space_nef(&self, consts: &Constants) -> Result<f64> {
        nef_from_aperture(consts, self.system_temperature, self.aperture.effective_area()?, self.rho2)
    }
}

/// SEFD = k_B·T_sys/(ρ²·A_e), in W·m⁻²·Hz⁻¹.
pub fn sefd(system_temperature: f64, effective_area: f64, rho2: f64) -> Result<f64> {
    require_non_negative("system_temperature", system_temperature)?;
    require_positive("aperture", effective_area)?;
    require_rho2(rho2)?;
    Ok(BOLTZMANN * system_temperature / (rho2 * effective_area))
}

/// Ẽ_free = sqrt(k_B·T_sys·η0/(ρ²·A_e)) = sqrt(SEFD·η0).
pub fn nef_from_aperture(
    consts: &Constants,
    system_temperature: f64,
    effective_area: f64,
    rho2: f64,
) -> Result<f64> {
    require_positive("system_temperature", system_temperature)?;
    Ok((sefd(system_temperature, effective_area, rho2)? * consts.eta0).sqrt())
}

/// Gain-based form: NEF = sqrt(4π·f²·k_B·T_sys·η0/(ρ²·c²·G)).
///
/// With η0 = 1/(ε0·c) and ρ² = 1 this is sqrt(4π·f²·k_B·T_sys/(ε0·c³·G));
/// ρ² = 1/2 gives the 8π form.
pub fn nef_from_gain(
    consts: &Constants,
    system_temperature: f64,
    gain: f64,
    frequency_hz: f64,
    rho2: f64,
) -> Result<f64> {
    require_positive("system_temperature", system_temperature)?;
    require_positive("gain", gain)?;
    let wavelength = frequency_to_wavelength(frequency_hz)?;
    require_rho2(rho2)?;
    Ok((4.0 * PI * BOLTZMANN * system_temperature * consts.eta0
        / (rho2 * gain * wavelength * wavelength))
        .sqrt())
}

/// Noise temperature implied by a field sensitivity, the exact inverse of
/// [`nef_from_gain`]. The inversion only holds for the stated (G, f, ρ²);
/// nothing is assumed about the coupling.
pub fn tsys_from_nef(
    consts: &Constants,
    nef: f64,
    gain: f64,
    frequency_hz: f64,
    rho2: f64,
) -> Result<f64> {
    require_positive("nef", nef)?;
    require_positive("gain", gain)?;
    let wavelength = frequency_to_wavelength(frequency_hz)?;
    require_rho2(rho2)?;
    Ok(nef * nef * rho2 * gain * wavelength * wavelength / (4.0 * PI * BOLTZMANN * consts.eta0))
}

/// A_e = G·λ²/(4π), in m².
pub fn aperture_from_gain(gain: f64, frequency_hz: f64) -> Result<f64> {
    require_positive("gain", gain)?;
    let wavelength = frequency_to_wavelength(frequency_hz)?;
    Ok(gain * wavelength * wavelength / (4.0 * PI))
}

/// A_e = η_ap·A_phys.
pub fn aperture_from_physical(physical_area_m2: f64, aperture_efficiency: f64) -> Result<f64> {
    require_positive("physical_area", physical_area_m2)?;
    if !(aperture_efficiency > 0.0 && aperture_efficiency <= 1.0) {
        return Err(Error::domain(
            "aperture_efficiency",
            format!("must be in (0, 1], got {aperture_efficiency}"),
        ));
    }
    Ok(aperture_efficiency * physical_area_m2)
}

/// Effective area of a circular dish of diameter `diameter_m`.
pub fn aperture_from_dish(diameter_m: f64, aperture_efficiency: f64) -> Result<f64> {
    require_positive("diameter", diameter_m)?;
    aperture_from_physical(PI * diameter_m * diameter_m / 4.0, aperture_efficiency)
}

/// T_Rx = (10^(NF/10) − 1)·T_0.
pub fn trx_from_noise_figure(noise_figure_db: f64, reference_temperature: f64) -> Result<f64> {
    require_non_negative("noise_figure", noise_figure_db)?;
    require_positive("reference_temperature", reference_temperature)?;
    Ok((10f64.powf(noise_figure_db / 10.0) - 1.0) * reference_temperature)
}

/// Single resonant cavity mode in front of the sensor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityCoupling {
    pub center_frequency: f64,
    pub external_q: Option<f64>,
    pub internal_q: Option<f64>,
    pub loaded_q: f64,
    /// RF transfer efficiency from the antenna port into the cavity.
    pub coupling_efficiency: f64,
    /// Electric-energy mode volume, m³.
    pub mode_volume: f64,
}

impl CavityCoupling {
    pub fn from_loaded_q(
        center_frequency: f64,
        loaded_q: f64,
        coupling_efficiency: f64,
        mode_volume: f64,
    ) -> Result<Self> {
        let c = CavityCoupling {
            center_frequency,
            external_q: None,
            internal_q: None,
            loaded_q,
            coupling_efficiency,
            mode_volume,
        };
        c.validate()?;
        Ok(c)
    }

    /// 1/Q_L = 1/Q_e + 1/Q_i.
    pub fn from_external_internal(
        center_frequency: f64,
        external_q: f64,
        internal_q: f64,
        coupling_efficiency: f64,
        mode_volume: f64,
    ) -> Result<Self> {
        require_positive("external_q", external_q)?;
        require_positive("internal_q", internal_q)?;
        let loaded_q = 1.0 / (1.0 / external_q + 1.0 / internal_q);
        let c = CavityCoupling {
            external_q: Some(external_q),
            internal_q: Some(internal_q),
            ..Self::from_loaded_q(center_frequency, loaded_q, coupling_efficiency, mode_volume)?
        };
        Ok(c)
    }

    /// Linewidth matched to the signal bandwidth: Q_L = f_0/B_sig.
    pub fn from_signal_bandwidth(
        center_frequency: f64,
        signal_bandwidth: f64,
        coupling_efficiency: f64,
        mode_volume: f64,
    ) -> Result<Self> {
        require_positive("center_frequency", center_frequency)?;
        require_positive("signal_bandwidth", signal_bandwidth)?;
        Self::from_loaded_q(
            center_frequency,
            center_frequency / signal_bandwidth,
            coupling_efficiency,
            mode_volume,
        )
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("center_frequency", self.center_frequency)?;
        require_positive("loaded_q", self.loaded_q)?;
        require_positive("mode_volume", self.mode_volume)?;
        if !(self.coupling_efficiency > 0.0 && self.coupling_efficiency <= 1.0) {
            return Err(Error::domain(
                "coupling_efficiency",
                format!("must be in (0, 1], got {}", self.coupling_efficiency),
            ));
        }
        if let (Some(qe), Some(qi)) = (self.external_q, self.internal_q) {
            let expected = 1.0 / (1.0 / qe + 1.0 / qi);
            if ((self.loaded_q - expected) / expected).abs() > 1e-9 {
                return Err(Error::domain("loaded_q", "inconsistent with external and internal Q"));
            }
        }
        Ok(())
    }

    /// Δf = f_0/Q_L.
    pub fn linewidth(&self) -> f64 {
        self.center_frequency / self.loaded_q
    }
}

/// β_enh = sqrt(η_c)·sqrt(2·Q_L/ω0)·sqrt(A_e/(2·η0·ε0·V_eff)), the ratio of
/// the local RMS field in a critically coupled cavity to the incident
/// free-space field collected through A_e.
pub fn enhancement_factor_cavity(
    consts: &Constants,
    cavity: &CavityCoupling,
    effective_area: f64,
) -> Result<f64> {
    cavity.validate()?;
    require_positive("aperture", effective_area)?;
    let omega0 = 2.0 * PI * cavity.center_frequency;
    Ok(cavity.coupling_efficiency.sqrt()
        * (2.0 * cavity.loaded_q / omega0).sqrt()
        * (effective_area / (2.0 * consts.eta0 * EPSILON_0 * cavity.mode_volume)).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalFieldRequirement {
    pub free_space: f64,
    pub enhancement: f64,
    pub local: f64,
    /// β_enh < 1 attenuates rather than enhances; allowed but reported.
    pub below_unity_enhancement: bool,
}

/// Ẽ_loc = β_enh·Ẽ_free.
pub fn local_field_requirement(
    consts: &Constants,
    reference: &ReceiverReference,
    enhancement: f64,
) -> Result<LocalFieldRequirement> {
    require_positive("enhancement", enhancement)?;
    let free_space = reference.free_space_nef(consts)?;
    Ok(LocalFieldRequirement {
        free_space,
        enhancement,
        local: enhancement * free_space,
        below_unity_enhancement: enhancement < 1.0,
    })
}

/// True when the sensor's NEF at the atoms is no worse than the local
/// requirement (boundary inclusive).
pub fn meets_classical_reference(sensor_local_nef: f64, local_requirement: f64) -> bool {
    sensor_local_nef <= local_requirement
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::{SPEED_OF_LIGHT, ETA0_CODATA};
    use proptest::prelude::*;

    const C: Constants = Constants::CODATA;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    /// ε0·c³ form evaluated directly.
    fn nef_eps0_form(t: f64, g: f64, f: f64, rho2: f64) -> f64 {
        (4.0 * PI * f * f * BOLTZMANN * t / (EPSILON_0 * SPEED_OF_LIGHT.powi(3) * g * rho2)).sqrt()
    }

    #[test]
    fn sefd_examples() {
        assert!(rel(sefd(500.0, 18.4, 0.5).unwrap(), 7.505e-22) < 1e-3);
        assert!(rel(sefd(500.0, 18.4, 0.5).unwrap(), 2.0 * sefd(500.0, 18.4, 1.0).unwrap()) < 1e-15);
        assert_eq!(sefd(0.0, 18.4, 0.5).unwrap(), 0.0);
        assert!(sefd(1.0, 0.0, 0.5).is_err());
        assert!(sefd(1.0, 1.0, 0.0).is_err());
        assert!(sefd(1.0, 1.0, 1.5).is_err());
    }

    #[test]
    fn nef_from_aperture_examples() {
        let dsn = nef_from_aperture(&C, 23.0, 2660.0, 1.0).unwrap();
        assert!(rel(dsn, 6.7e-12) < 0.01);
        let wmap = nef_from_aperture(&C, 29.0, 0.72, 0.5).unwrap();
        assert!(rel(wmap, 6.5e-10) < 0.01);
        let quad = nef_from_aperture(&C, 23.0, 4.0 * 2660.0, 1.0).unwrap();
        assert!(rel(quad, dsn / 2.0) < 1e-12);
        assert!(nef_from_aperture(&C, 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn nef_from_gain_examples() {
        assert!(rel(nef_from_gain(&C, 7000.0, 1.5, 96e9, 0.5).unwrap(), 7.9e-6) < 0.01);
        let base = nef_from_gain(&C, 300.0, 10.0, 10e9, 1.0).unwrap();
        assert!(rel(nef_from_gain(&C, 300.0, 10.0, 20e9, 1.0).unwrap(), 2.0 * base) < 1e-12);
        let half = nef_from_gain(&C, 300.0, 10.0, 10e9, 0.5).unwrap();
        assert!(rel(half, 2f64.sqrt() * base) < 1e-12);
        assert!(rel(base, nef_eps0_form(300.0, 10.0, 10e9, 1.0)) < 1e-9);
        assert!(nef_from_gain(&C, 300.0, 0.0, 10e9, 1.0).is_err());
    }

    #[test]
    fn tsys_from_nef_examples() {
        let t = tsys_from_nef(&C, 7.9e-6, 1.5, 96e9, 0.5).unwrap();
        assert!(rel(t, 7000.0) < 0.01);
        // Carrier not stated for this case; 10.4 GHz reproduces the 80 000 K figure.
        let t = tsys_from_nef(&C, 1.58e-6, 5.0, 10.4e9, 0.5).unwrap();
        assert!(rel(t, 80_000.0) < 0.01);
        assert!(tsys_from_nef(&C, 0.0, 1.5, 96e9, 0.5).is_err());
    }

    #[test]
    fn aperture_examples() {
        let f = SPEED_OF_LIGHT; // λ = 1 m
        assert!(rel(aperture_from_gain(4.0 * PI, f).unwrap(), 1.0) < 1e-15);
        assert!(rel(aperture_from_gain(1.5, 96e9).unwrap(), 1.164e-6) < 1e-3);
        assert!(rel(aperture_from_gain(10f64.powf(4.5), 20e9).unwrap(), 0.5653) < 1e-3);
        assert!(aperture_from_gain(-1.0, 1e9).is_err());
        assert!(rel(aperture_from_dish(34.0, 0.65).unwrap(), 590.148) < 1e-5);
        assert!(aperture_from_physical(1.0, 1.2).is_err());
    }

    #[test]
    fn noise_figure_examples() {
        assert_eq!(trx_from_noise_figure(0.0, 290.0).unwrap(), 0.0);
        assert!((trx_from_noise_figure(10.0 * 2f64.log10(), 290.0).unwrap() - 290.0).abs() < 1e-9);
        assert!((trx_from_noise_figure(3.0103, 290.0).unwrap() - 290.0).abs() < 0.01);
        assert!((trx_from_noise_figure(10.0, 290.0).unwrap() - 2610.0).abs() < 1e-9);
        assert!(trx_from_noise_figure(-0.1, 290.0).is_err());
    }

    #[test]
    fn cavity_constructors() {
        let crit = CavityCoupling::from_external_internal(8.4e9, 2e4, 2e4, 0.8, 1e-5).unwrap();
        assert!(rel(crit.loaded_q, 1e4) < 1e-12);
        let bw = CavityCoupling::from_signal_bandwidth(8.4e9, 1e6, 0.8, 1e-5).unwrap();
        assert!(rel(bw.loaded_q, 8400.0) < 1e-12);
        assert!(rel(bw.linewidth(), 1e6) < 1e-12);
        assert!(CavityCoupling::from_loaded_q(8.4e9, 8400.0, 0.0, 1e-5).is_err());
        assert!(CavityCoupling::from_loaded_q(8.4e9, 8400.0, 0.8, 0.0).is_err());
        let mut bad = crit;
        bad.loaded_q *= 1.01;
        assert!(bad.validate().is_err());
    }

    #[test]
    fn x_band_chain() {
        let ae = aperture_from_dish(34.0, 0.65).unwrap();
        let cavity = CavityCoupling::from_signal_bandwidth(8.4e9, 1e6, 0.8, 1e-5).unwrap();
        let beta = enhancement_factor_cavity(&C, &cavity, ae).unwrap();
        assert!(rel(beta, 4.7e4) < 0.02);
        let reference = ReceiverReference::new(20.0, Aperture::Effective { area_m2: ae }, 1.0).unwrap();
        let req = local_field_requirement(&C, &reference, beta).unwrap();
        assert!(rel(req.free_space, 1.3e-11) < 0.05);
        assert!(rel(req.local, 6.2e-7) < 0.05);
        assert!(!req.below_unity_enhancement);
        assert!(meets_classical_reference(1e-7, 6.2e-7));
        assert!(!meets_classical_reference(1e-5, 6.2e-7));
        assert!(meets_classical_reference(req.local, req.local));
    }

    #[test]
    fn ka_band_chain() {
        let cavity = CavityCoupling::from_signal_bandwidth(32e9, 2e6, 0.7, 2e-6).unwrap();
        let beta = enhancement_factor_cavity(&C, &cavity, 500.0).unwrap();
        assert!(rel(beta, 6.5e4) < 0.02);
        let reference = ReceiverReference::new(70.0, Aperture::Effective { area_m2: 500.0 }, 1.0).unwrap();
        let req = local_field_requirement(&C, &reference, beta).unwrap();
        assert!(rel(req.free_space, 2.7e-11) < 0.05);
        assert!(rel(req.local, 1.7e-6) < 0.05);
    }

    #[test]
    fn unity_and_sub_unity_enhancement() {
        let reference = ReceiverReference::new(50.0, Aperture::Effective { area_m2: 10.0 }, 1.0).unwrap();
        let req = local_field_requirement(&C, &reference, 1.0).unwrap();
        assert_eq!(req.local, req.free_space);
        assert!(local_field_requirement(&C, &reference, 0.5).unwrap().below_unity_enhancement);
    }

    #[test]
    fn reference_from_gain_matches_aperture() {
        let by_gain = ReceiverReference::new(
            100.0,
            Aperture::Gain { gain: 1000.0, frequency_hz: 10e9 },
            1.0,
        )
        .unwrap();
        let ae = aperture_from_gain(1000.0, 10e9).unwrap();
        let by_area = ReceiverReference::new(100.0, Aperture::Effective { area_m2: ae }, 1.0).unwrap();
        assert!(rel(by_gain.free_space_nef(&C).unwrap(), by_area.free_space_nef(&C).unwrap()) < 1e-12);
    }

    #[test]
    fn rounded_impedance_is_used_consistently() {
        let a = nef_from_aperture(&Constants::ROUNDED, 20.0, 590.0, 1.0).unwrap();
        let b = nef_from_aperture(&C, 20.0, 590.0, 1.0).unwrap();
        assert!(rel(a / b, (377.0 / ETA0_CODATA).sqrt()) < 1e-12);
    }

    proptest! {
        #[test]
        fn nef_squared_identity(t in 1e-2f64..1e5, a in 1e-4f64..1e4, rho2 in 0.01f64..1.0) {
            let e = nef_from_aperture(&C, t, a, rho2).unwrap();
            prop_assert!(rel(e * e * rho2 * a / C.eta0, BOLTZMANN * t) < 1e-12);
            prop_assert!(rel((sefd(t, a, rho2).unwrap() * C.eta0).sqrt(), e) < 1e-12);
        }

        #[test]
        fn gain_form_matches_aperture_form(t in 1.0f64..1e5, g in 1e-2f64..1e7, f in 1e8f64..5e12, rho2 in 0.01f64..1.0) {
            let via_gain = nef_from_gain(&C, t, g, f, rho2).unwrap();
            let via_aperture = nef_from_aperture(&C, t, aperture_from_gain(g, f).unwrap(), rho2).unwrap();
            prop_assert!(rel(via_gain, via_aperture) < 1e-12);
            let back = tsys_from_nef(&C, via_gain, g, f, rho2).unwrap();
            prop_assert!(rel(back, t) < 1e-12);
        }

        #[test]
        fn enhancement_symmetric_in_q(q1 in 1e2f64..1e6, q2 in 1e2f64..1e6, f in 1e9f64..1e11) {
            let a = CavityCoupling::from_external_internal(f, q1, q2, 0.7, 1e-6).unwrap();
            let b = CavityCoupling::from_external_internal(f, q2, q1, 0.7, 1e-6).unwrap();
            let ba = enhancement_factor_cavity(&C, &a, 100.0).unwrap();
            let bb = enhancement_factor_cavity(&C, &b, 100.0).unwrap();
            prop_assert!(rel(ba, bb) < 1e-12);
            let doubled = CavityCoupling { loaded_q: 2.0 * a.loaded_q, external_q: None, internal_q: None, ..a };
            let bd = enhancement_factor_cavity(&C, &doubled, 100.0).unwrap();
            prop_assert!(rel(bd, 2f64.sqrt() * ba) < 1e-12);
        }

        #[test]
        fn critical_coupling_halves_q(q in 1.0f64..1e7) {
            let c = CavityCoupling::from_external_internal(1e10, q, q, 1.0, 1e-6).unwrap();
            prop_assert!(rel(c.loaded_q, q / 2.0) < 1e-12);
        }
    }
}
