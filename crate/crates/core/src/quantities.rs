//! Physical constants plus unit-tagged scalars with decibel arithmetic.
//!
//! Inside the engine every value is a plain `f64` in strict SI units. The
//! [`Quantity`] and [`Decibel`] types exist for the I/O boundary, where
//! values arrive as text with a unit suffix (`1e9hz`, `20dbw`) and must be
//! checked before they reach a formula. All decibels are power decibels
//! (`10·log10`); field amplitudes never enter the engine in dB.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{require_finite, require_non_negative, require_positive, Error, Result};

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380649e-23;
/// Planck constant, J·s.
pub const PLANCK: f64 = 6.62607015e-34;
/// Reduced Planck constant, J·s.
pub const HBAR: f64 = PLANCK / (2.0 * std::f64::consts::PI);
/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Vacuum permittivity, F/m.
pub const EPSILON_0: f64 = 8.8541878128e-12;
/// Elementary charge, C.
pub const ELEMENTARY_CHARGE: f64 = 1.602176634e-19;
/// Bohr radius, m.
pub const BOHR_RADIUS: f64 = 5.29177210903e-11;
/// Atomic unit of electric dipole moment e·a0, C·m.
pub const E_A0: f64 = ELEMENTARY_CHARGE * BOHR_RADIUS;
/// Standard noise reference temperature, K.
pub const T0_REFERENCE: f64 = 290.0;
/// Free-space impedance from CODATA constants, Ω.
pub const ETA0_CODATA: f64 = 376.730313668;
/// Rounded free-space impedance common in hand calculations, Ω.
pub const ETA0_ROUNDED: f64 = 377.0;
/// 10·log10(1/k_B) as conventionally rounded in link budgets, dB.
pub const BOLTZMANN_DB: f64 = 228.6;

/// Configurable constants shared by every field-metric computation.
///
/// `eta0` is the single source of truth for the free-space impedance: every
/// function converting between power and field takes a `&Constants`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub eta0: f64,
    pub t0: f64,
}

impl Constants {
    pub const CODATA: Constants = Constants {
        eta0: ETA0_CODATA,
        t0: T0_REFERENCE,
    };

    /// η0 = 377 Ω, for reproducing figures computed with the rounded value.
    pub const ROUNDED: Constants = Constants {
        eta0: ETA0_ROUNDED,
        t0: T0_REFERENCE,
    };
}

impl Default for Constants {
    fn default() -> Self {
        Constants::CODATA
    }
}

pub fn db_to_linear(db: f64) -> Result<f64> {
    require_finite("db", db)?;
    Ok(10f64.powf(db / 10.0))
}

pub fn linear_to_db(ratio: f64) -> Result<f64> {
    require_positive("ratio", ratio)?;
    Ok(10.0 * ratio.log10())
}

pub fn frequency_to_wavelength(frequency_hz: f64) -> Result<f64> {
    require_positive("frequency", frequency_hz)?;
    Ok(SPEED_OF_LIGHT / frequency_hz)
}

pub fn wavelength_to_frequency(wavelength_m: f64) -> Result<f64> {
    require_positive("wavelength", wavelength_m)?;
    Ok(SPEED_OF_LIGHT / wavelength_m)
}

/// Plane-wave power collected through `area` from a field of peak amplitude
/// `field`: P = A·E²/(2·η0).
///
/// Treating a Rydberg interaction volume as `area` is not generally valid:
/// the atomic region is usually sub-wavelength so diffraction enlarges the
/// effective aperture, phase-matched architectures have non-dipole reception
/// patterns, and transit noise or Rydberg interactions make the field
/// sensitivity non-local. Use this for classical apertures.
pub fn power_from_field(consts: &Constants, field_v_per_m: f64, area_m2: f64) -> Result<f64> {
    require_positive("area", area_m2)?;
    require_non_negative("field", field_v_per_m)?;
    Ok(area_m2 * field_v_per_m * field_v_per_m / (2.0 * consts.eta0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Unit {
    Watt,
    Kelvin,
    Hertz,
    Second,
    Metre,
    SquareMetre,
    VoltPerMetre,
    /// V·m⁻¹·Hz^(−1/2), field spectral density.
    FieldDensity,
    /// W·m⁻²·Hz⁻¹, flux density.
    FluxDensity,
    Dimensionless,
}

impl Unit {
    fn symbol(self) -> &'static str {
        match self {
            Unit::Watt => "W",
            Unit::Kelvin => "K",
            Unit::Hertz => "Hz",
            Unit::Second => "s",
            Unit::Metre => "m",
            Unit::SquareMetre => "m2",
            Unit::VoltPerMetre => "V/m",
            Unit::FieldDensity => "V/m/rtHz",
            Unit::FluxDensity => "W/m2/Hz",
            Unit::Dimensionless => "1",
        }
    }

    /// Recognised lower-case suffixes and their scale to SI.
    fn suffixes(self) -> &'static [(&'static str, f64)] {
        match self {
            Unit::Watt => &[("w", 1.0), ("mw", 1e-3), ("uw", 1e-6), ("nw", 1e-9), ("kw", 1e3)],
            Unit::Kelvin => &[("k", 1.0)],
            Unit::Hertz => &[
                ("hz", 1.0),
                ("khz", 1e3),
                ("mhz", 1e6),
                ("ghz", 1e9),
                ("thz", 1e12),
                ("bps", 1.0),
                ("kbps", 1e3),
                ("mbps", 1e6),
                ("gbps", 1e9),
            ],
            Unit::Second => &[("s", 1.0), ("ms", 1e-3), ("us", 1e-6), ("ns", 1e-9)],
            Unit::Metre => &[("m", 1.0), ("km", 1e3), ("cm", 1e-2), ("mm", 1e-3), ("nm", 1e-9)],
            Unit::SquareMetre => &[("m2", 1.0)],
            Unit::VoltPerMetre => &[("v/m", 1.0), ("mv/m", 1e-3), ("uv/m", 1e-6)],
            Unit::FieldDensity => &[
                ("v/m/rthz", 1.0),
                ("uv/m/rthz", 1e-6),
                ("nv/cm/rthz", 1e-7),
            ],
            Unit::FluxDensity => &[("w/m2/hz", 1.0)],
            Unit::Dimensionless => &[("", 1.0)],
        }
    }

    fn non_negative(self) -> bool {
        !matches!(self, Unit::Dimensionless)
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A linear-scale value tagged with its SI unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: f64,
    pub unit: Unit,
}

impl Quantity {
    /// Dimensional quantities must be finite and non-negative; strict
    /// positivity is checked by the operation that needs it.
    pub fn new(value: f64, unit: Unit) -> Result<Self> {
        require_finite("value", value)?;
        if unit.non_negative() && value < 0.0 {
            return Err(Error::domain("value", format!("{unit} quantity must be >= 0, got {value}")));
        }
        Ok(Quantity { value, unit })
    }

    /// Parse text such as `1e9hz`, `15ms`, `250k` into the expected unit.
    pub fn parse(text: &str, unit: Unit) -> Result<Self> {
        let (number, suffix) = split_number(text)?;
        let suffix = suffix.trim().to_ascii_lowercase();
        let scale = unit
            .suffixes()
            .iter()
            .find(|(s, _)| *s == suffix)
            .map(|(_, k)| *k)
            .ok_or_else(|| Error::UnitMismatch {
                expected: unit.to_string(),
                found: if suffix.is_empty() { "a bare number".into() } else { suffix.clone() },
            })?;
        Ok(Quantity {
            value: number * scale,
            unit,
        })
    }

    pub fn to_decibel(self, reference: DbRef) -> Result<Decibel> {
        let expected = reference.linear_unit();
        if expected != self.unit {
            return Err(Error::UnitMismatch {
                expected: expected.to_string(),
                found: self.unit.to_string(),
            });
        }
        Ok(Decibel {
            value: linear_to_db(self.value / reference.scale())?,
            reference,
        })
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.unit)
    }
}

fn split_number(text: &str) -> Result<(f64, &str)> {
    let text = text.trim();
    let end = text
        .char_indices()
        .find(|(_, c)| !(c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-')))
        .map(|(i, _)| i)
        .unwrap_or(text.len());
    // Shrink until the prefix parses, so "2e" in a hypothetical "2em" is not eaten.
    for cut in (1..=end).rev() {
        if let Ok(v) = text[..cut].parse::<f64>() {
            if v.is_finite() {
                return Ok((v, &text[cut..]));
            }
        }
    }
    Err(Error::QuantityParse(text.to_string()))
}

/// Reference of a decibel value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DbRef {
    /// Plain power ratio (gains, losses, Eb/N0).
    Db,
    /// Antenna gain relative to an isotropic radiator.
    Dbi,
    Dbw,
    Dbm,
    Dbhz,
    DbPerK,
}

impl DbRef {
    /// Relative references scale another value; absolute ones denote a level.
    pub fn is_relative(self) -> bool {
        matches!(self, DbRef::Db | DbRef::Dbi)
    }

    fn suffix(self) -> &'static str {
        match self {
            DbRef::Db => "db",
            DbRef::Dbi => "dbi",
            DbRef::Dbw => "dbw",
            DbRef::Dbm => "dbm",
            DbRef::Dbhz => "dbhz",
            DbRef::DbPerK => "db/k",
        }
    }

    fn linear_unit(self) -> Unit {
        match self {
            DbRef::Dbw | DbRef::Dbm => Unit::Watt,
            DbRef::Dbhz => Unit::Hertz,
            DbRef::Db | DbRef::Dbi | DbRef::DbPerK => Unit::Dimensionless,
        }
    }

    fn scale(self) -> f64 {
        match self {
            DbRef::Dbm => 1e-3,
            _ => 1.0,
        }
    }
}

impl fmt::Display for DbRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DbRef::Db => "dB",
            DbRef::Dbi => "dBi",
            DbRef::Dbw => "dBW",
            DbRef::Dbm => "dBm",
            DbRef::Dbhz => "dBHz",
            DbRef::DbPerK => "dB/K",
        };
        f.write_str(s)
    }
}

impl FromStr for DbRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        [DbRef::Db, DbRef::Dbi, DbRef::Dbw, DbRef::Dbm, DbRef::Dbhz, DbRef::DbPerK]
            .into_iter()
            .find(|r| r.suffix() == s)
            .ok_or(Error::QuantityParse(s))
    }
}

/// A power-decibel value with an explicit reference.
///
/// Adding two absolute levels (dBW + dBW) or mixing absolute references in
/// a subtraction is rejected; a relative term (dB, dBi) can be applied to
/// anything.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Decibel {
    pub value: f64,
    pub reference: DbRef,
}

impl Decibel {
    pub fn new(value: f64, reference: DbRef) -> Result<Self> {
        require_finite("value", value)?;
        Ok(Decibel { value, reference })
    }

    pub fn db(value: f64) -> Result<Self> {
        Decibel::new(value, DbRef::Db)
    }

    /// Parse `20dbw`, `45dbi`, `2db`; the suffix is mandatory.
    pub fn parse(text: &str, expected: DbRef) -> Result<Self> {
        let (number, suffix) = split_number(text)?;
        let reference: DbRef = suffix.parse().map_err(|_| Error::UnitMismatch {
            expected: expected.to_string(),
            found: if suffix.is_empty() { "a bare number".into() } else { suffix.to_string() },
        })?;
        if reference != expected {
            return Err(Error::UnitMismatch {
                expected: expected.to_string(),
                found: reference.to_string(),
            });
        }
        Decibel::new(number, reference)
    }

    pub fn checked_add(self, rhs: Decibel) -> Result<Decibel> {
        let reference = match (self.reference.is_relative(), rhs.reference.is_relative()) {
            (true, true) if self.reference == rhs.reference => self.reference,
            (true, true) => DbRef::Db,
            (false, true) => self.reference,
            (true, false) => rhs.reference,
            (false, false) => {
                return Err(Error::DbReferenceMismatch {
                    lhs: self.reference,
                    rhs: rhs.reference,
                })
            }
        };
        Decibel::new(self.value + rhs.value, reference)
    }

    pub fn checked_sub(self, rhs: Decibel) -> Result<Decibel> {
        let reference = match (self.reference.is_relative(), rhs.reference.is_relative()) {
            (_, true) if self.reference == rhs.reference => self.reference,
            (true, true) => DbRef::Db,
            (false, true) => self.reference,
            // Level minus level of the same kind is a ratio.
            (false, false) if self.reference == rhs.reference => DbRef::Db,
            _ => {
                return Err(Error::DbReferenceMismatch {
                    lhs: self.reference,
                    rhs: rhs.reference,
                })
            }
        };
        Decibel::new(self.value - rhs.value, reference)
    }

    /// Linear value in the reference's SI unit (dBm converts to W).
    pub fn to_linear(self) -> Result<Quantity> {
        Quantity::new(db_to_linear(self.value)? * self.reference.scale(), self.reference.linear_unit())
    }
}

impl fmt::Display for Decibel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.reference)
    }
}
