//! Total-power radiometer sensitivity and hot/cold calibration.

use serde::{Deserialize, Serialize};

use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::quantities::BOLTZMANN;

/// Noise model of a total-power radiometer channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReceiverNoiseModel {
    antenna_temperature: f64,
    receiver_temperature: f64,
    bandwidth: f64,
    integration_time: f64,
    gain_stability: f64,
}

impl ReceiverNoiseModel {
    /// Temperatures in K, bandwidth in Hz, integration time in s and
    /// fractional gain fluctuation ΔG/G.
    pub fn new(
        antenna_temperature: f64,
        receiver_temperature: f64,
        bandwidth: f64,
        integration_time: f64,
        gain_stability: f64,
    ) -> Result<Self> {
        Ok(ReceiverNoiseModel {
            antenna_temperature: require_non_negative("antenna_temperature", antenna_temperature)?,
            receiver_temperature: require_non_negative("receiver_temperature", receiver_temperature)?,
            bandwidth: require_positive("bandwidth", bandwidth)?,
            integration_time: require_positive("integration_time", integration_time)?,
            gain_stability: require_non_negative("gain_stability", gain_stability)?,
        })
    }

    pub fn antenna_temperature(&self) -> f64 {
        self.antenna_temperature
    }

    pub fn receiver_temperature(&self) -> f64 {
        self.receiver_temperature
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn integration_time(&self) -> f64 {
        self.integration_time
    }

    pub fn gain_stability(&self) -> f64 {
        self.gain_stability
    }

    /// T_sys = T_A + T_Rx.
    pub fn system_temperature(&self) -> f64 {
        self.antenna_temperature + self.receiver_temperature
    }
}

/// NEDT = T_sys·sqrt(1/(B·τ) + (ΔG/G)²), in K.
pub fn nedt(model: &ReceiverNoiseModel) -> Result<f64> {
    let bt = model.bandwidth * model.integration_time;
    if !(bt > 0.0 && bt.is_finite()) {
        return Err(Error::domain("bandwidth", "bandwidth·integration_time must be > 0"));
    }
    let g = model.gain_stability;
    Ok(model.system_temperature() * (1.0 / bt + g * g).sqrt())
}

/// P_out = G·k_B·(T_A + T_Rx)·B, in W.
pub fn radiometer_output_power(
    gain: f64,
    antenna_temperature: f64,
    receiver_temperature: f64,
    bandwidth: f64,
) -> Result<f64> {
    require_positive("gain", gain)?;
    require_positive("bandwidth", bandwidth)?;
    require_non_negative("antenna_temperature", antenna_temperature)?;
    require_non_negative("receiver_temperature", receiver_temperature)?;
    Ok(gain * BOLTZMANN * (antenna_temperature + receiver_temperature) * bandwidth)
}

/// Inverts the ideal radiometer equation, NEDT = T_sys/sqrt(B·τ).
pub fn tsys_from_nedt(nedt: f64, bandwidth: f64, integration_time: f64) -> Result<f64> {
    tsys_from_nedt_with_gain_stability(nedt, bandwidth, integration_time, 0.0)
}

/// As [`tsys_from_nedt`] but keeping the ΔG/G term of the full expression.
pub fn tsys_from_nedt_with_gain_stability(
    nedt: f64,
    bandwidth: f64,
    integration_time: f64,
    gain_stability: f64,
) -> Result<f64> {
    require_positive("nedt", nedt)?;
    require_positive("bandwidth", bandwidth)?;
    require_positive("integration_time", integration_time)?;
    require_non_negative("gain_stability", gain_stability)?;
    let g = gain_stability;
    Ok(nedt / (1.0 / (bandwidth * integration_time) + g * g).sqrt())
}

/// One reference-load measurement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalibrationPoint {
    pub antenna_temperature: f64,
    pub output_power: f64,
}

impl CalibrationPoint {
    pub fn new(antenna_temperature: f64, output_power: f64) -> Result<Self> {
        Ok(CalibrationPoint {
            antenna_temperature: require_non_negative("antenna_temperature", antenna_temperature)?,
            output_power: require_non_negative("output_power", output_power)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitStatus {
    Ok,
    /// The intercept implies T_Rx < 0; reported as-is, never clamped.
    NegativeReceiverTemperature,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalibrationFit {
    pub gain: f64,
    pub receiver_temperature: f64,
    pub status: FitStatus,
}

/// Ordinary least-squares fit of P_out = G·k_B·B·(T_A + T_Rx).
///
/// The slope of P_out against T_A is G·k_B·B and the intercept divided by
/// the slope is T_Rx. With two points the fit interpolates exactly.
pub fn calibrate_hot_cold(points: &[CalibrationPoint], bandwidth: f64) -> Result<CalibrationFit> {
    require_positive("bandwidth", bandwidth)?;
    if points.len() < 2 {
        return Err(Error::domain("points", format!("need at least 2 points, got {}", points.len())));
    }
    let n = points.len() as f64;
    let mean_t = points.iter().map(|p| p.antenna_temperature).sum::<f64>() / n;
    let mean_p = points.iter().map(|p| p.output_power).sum::<f64>() / n;
    let (sxx, sxy) = points.iter().fold((0.0, 0.0), |(sxx, sxy), p| {
        let dt = p.antenna_temperature - mean_t;
        (sxx + dt * dt, sxy + dt * (p.output_power - mean_p))
    });
    if sxx <= f64::EPSILON * mean_t.abs().max(1.0).powi(2) {
        return Err(Error::SingularFit(
            "all calibration loads have the same antenna temperature".into(),
        ));
    }
    let slope = sxy / sxx;
    if slope.is_nan() || slope <= 0.0 {
        return Err(Error::domain("points", "output power does not increase with load temperature"));
    }
    let intercept = mean_p - slope * mean_t;
    let receiver_temperature = intercept / slope;
    Ok(CalibrationFit {
        gain: slope / (BOLTZMANN * bandwidth),
        receiver_temperature,
        status: if receiver_temperature < 0.0 {
            FitStatus::NegativeReceiverTemperature
        } else {
            FitStatus::Ok
        },
    })
}
