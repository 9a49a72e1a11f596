//! Intrinsic noise floors and field calibration primitives for Rydberg
//! sensors.

use serde::{Deserialize, Serialize};

use crate::error::{require_finite, require_non_negative, require_positive, Error, Result};
use crate::fieldmetrics::tsys_from_nef;
use crate::quantities::{Constants, E_A0, HBAR, PLANCK};

/// Two-level far-detuned AC-Stark coefficient, Δ = |Ω|²/(4Δ). This is a
/// convention for the proportionality constant, not a measured value.
pub const AC_STARK_TWO_LEVEL: f64 = 0.25;

/// Transition dipole moment in C·m.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct DipoleMoment(f64);

impl DipoleMoment {
    pub fn new(coulomb_metres: f64) -> Result<Self> {
        Ok(DipoleMoment(require_positive("dipole", coulomb_metres)?))
    }

    /// From a multiple of the atomic unit e·a0.
    pub fn from_atomic_units(multiple: f64) -> Result<Self> {
        Self::new(require_positive("dipole", multiple)? * E_A0)
    }

    pub fn coulomb_metres(self) -> f64 {
        self.0
    }

    pub fn atomic_units(self) -> f64 {
        self.0 / E_A0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RydbergSensorBudget {
    pub dipole: DipoleMoment,
    pub atom_count: f64,
    pub coherence_time: f64,
    /// Detected average probe power, W.
    pub probe_power: Option<f64>,
    /// Probe optical frequency, Hz.
    pub probe_frequency: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QpnEstimate {
    pub nef: f64,
    /// The integration time is shorter than τ_coh, outside the formula's
    /// assumption.
    pub integration_shorter_than_coherence: bool,
}

impl RydbergSensorBudget {
    pub fn qpn(&self, integration_time: Option<f64>) -> Result<QpnEstimate> {
        let nef = qpn_nef(self.dipole, self.atom_count, self.coherence_time)?;
        let short = match integration_time {
            Some(t) => require_positive("integration_time", t)? < self.coherence_time,
            None => false,
        };
        Ok(QpnEstimate {
            nef,
            integration_shorter_than_coherence: short,
        })
    }

    pub fn shot_noise(&self) -> Result<Option<f64>> {
        match (self.probe_power, self.probe_frequency) {
            (Some(p), Some(nu)) => photon_shot_noise_nep(p, nu).map(Some),
            _ => Ok(None),
        }
    }
}

/// NEF_qpn = (h/|d|)·1/sqrt(N·τ_coh), in V·m⁻¹·Hz^(−1/2).
pub fn qpn_nef(dipole: DipoleMoment, atom_count: f64, coherence_time: f64) -> Result<f64> {
    require_positive("atom_count", atom_count)?;
    require_positive("coherence_time", coherence_time)?;
    Ok(PLANCK / dipole.coulomb_metres() / (atom_count * coherence_time).sqrt())
}

/// P_SN = sqrt(P·h·ν), in W·Hz^(−1/2).
pub fn photon_shot_noise_nep(probe_power: f64, probe_frequency: f64) -> Result<f64> {
    require_non_negative("probe_power", probe_power)?;
    require_positive("probe_frequency", probe_frequency)?;
    Ok((probe_power * PLANCK * probe_frequency).sqrt())
}

/// Ω = d·E/ħ for a field co-aligned with the dipole, in rad/s.
pub fn rabi_from_field(field_v_per_m: f64, dipole: DipoleMoment) -> Result<f64> {
    rabi_from_field_aligned(field_v_per_m, dipole, 1.0)
}

/// Ω = |d|·|E|·cosθ/ħ.
pub fn rabi_from_field_aligned(field_v_per_m: f64, dipole: DipoleMoment, alignment: f64) -> Result<f64> {
    require_non_negative("field", field_v_per_m)?;
    let alignment = require_alignment(alignment)?;
    Ok(dipole.coulomb_metres() * alignment * field_v_per_m / HBAR)
}

/// E = ħ·Ω/d, the self-calibrated field from a measured splitting.
pub fn field_from_rabi(rabi_rad_per_s: f64, dipole: DipoleMoment) -> Result<f64> {
    field_from_rabi_aligned(rabi_rad_per_s, dipole, 1.0)
}

pub fn field_from_rabi_aligned(rabi_rad_per_s: f64, dipole: DipoleMoment, alignment: f64) -> Result<f64> {
    require_non_negative("rabi", rabi_rad_per_s)?;
    let alignment = require_alignment(alignment)?;
    if alignment == 0.0 {
        return Err(Error::domain("alignment", "field orthogonal to the dipole is not observable"));
    }
    Ok(HBAR * rabi_rad_per_s / (dipole.coulomb_metres() * alignment))
}

fn require_alignment(alignment: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&alignment) {
        Ok(alignment)
    } else {
        Err(Error::domain("alignment", format!("cosine must be in [0, 1], got {alignment}")))
    }
}

/// Δ_acS = k·|Ω|²/Δ, in rad/s.
pub fn ac_stark_shift(rabi_rad_per_s: f64, detuning_rad_per_s: f64, coefficient: f64) -> Result<f64> {
    require_finite("rabi", rabi_rad_per_s)?;
    require_finite("coefficient", coefficient)?;
    if !detuning_rad_per_s.is_finite() || detuning_rad_per_s == 0.0 {
        return Err(Error::domain("detuning", "must be finite and non-zero"));
    }
    Ok(coefficient * rabi_rad_per_s * rabi_rad_per_s / detuning_rad_per_s)
}

/// Noise temperature a classical receiver with gain `gain` would need to
/// match `sensor_nef`.
pub fn compare_to_classical(
    consts: &Constants,
    sensor_nef: f64,
    gain: f64,
    frequency_hz: f64,
    rho2: f64,
) -> Result<f64> {
    tsys_from_nef(consts, sensor_nef, gain, frequency_hz, rho2)
}
