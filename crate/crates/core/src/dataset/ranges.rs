use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fieldmetrics::nef_from_aperture;
use crate::quantities::Constants;

use super::record::InstrumentRecord;

/// Lower and upper uncertainty factors applied to every extremum except f0.
pub const MARGIN_LOW: f64 = 0.8;
pub const MARGIN_HIGH: f64 = 1.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rounding {
    /// Two significant figures, ties rounded up.
    TwoSignificant,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryRange {
    pub category: String,
    pub members: usize,
    pub f0_ghz: Bounds,
    pub a_e_m2: Bounds,
    pub t_sys_k: Bounds,
    pub bandwidth_hz: Bounds,
    pub e_free: Bounds,
}

/// Round a positive value to `digits` significant figures, ties away from
/// zero. Zero and non-finite values pass through.
pub fn round_significant(x: f64, digits: u32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let sign = x.signum();
    let a = x.abs();
    let e = a.log10().floor() as i32 - (digits as i32 - 1);
    // Scaling by an exact power of ten keeps a single rounding step.
    let p = 10f64.powi(e.abs());
    let rounded = if e >= 0 {
        (a / p + 0.5).floor() * p
    } else {
        (a * p + 0.5).floor() / p
    };
    sign * rounded
}

fn extrema(values: impl Iterator<Item = f64>) -> Bounds {
    values.fold(
        Bounds {
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
        },
        |b, v| Bounds {
            min: b.min.min(v),
            max: b.max.max(v),
        },
    )
}

fn derived(r: &InstrumentRecord) -> Result<(f64, f64)> {
    match (r.a_e_m2, r.t_sys_k) {
        (Some(a), Some(t)) => Ok((a, t)),
        _ => Err(Error::Record {
            record: r.instrument.clone(),
            source: Box::new(Error::domain("record", "not derived")),
        }),
    }
}

/// Category envelope with ±20% margins on the extrema; the Ẽ_free bounds
/// are recomputed from the widened extremes. f0 keeps its raw
/// extrema and is never rounded.
pub fn synthesize_ranges(
    consts: &Constants,
    records: &[InstrumentRecord],
    category: &str,
    rounding: Rounding,
) -> Result<CategoryRange> {
    let members: Vec<&InstrumentRecord> =
        records.iter().filter(|r| r.category == category).collect();
    let first = members
        .first()
        .ok_or_else(|| Error::EmptyCategory(category.to_string()))?;
    let rho2 = first.rho2;
    if members.iter().any(|r| r.rho2 != rho2) {
        let offenders: Vec<String> = members
            .iter()
            .map(|r| format!("{} (rho2={})", r.instrument, r.rho2))
            .collect();
        return Err(Error::MixedRho2 {
            category: category.to_string(),
            offenders: offenders.join(", "),
        });
    }
    let at: Vec<(f64, f64)> = members.iter().map(|r| derived(r)).collect::<Result<_>>()?;

    let f0 = extrema(members.iter().map(|r| r.f0_ghz));
    let a = extrema(at.iter().map(|p| p.0));
    let t = extrema(at.iter().map(|p| p.1));
    let bw = extrema(members.iter().map(|r| r.bandwidth_hz));

    let widen = |b: Bounds| Bounds {
        min: MARGIN_LOW * b.min,
        max: MARGIN_HIGH * b.max,
    };
    let (a, t, bw) = (widen(a), widen(t), widen(bw));
    let e_free = Bounds {
        min: nef_from_aperture(consts, t.min, a.max, rho2)?,
        max: nef_from_aperture(consts, t.max, a.min, rho2)?,
    };

    let round = |b: Bounds| match rounding {
        Rounding::TwoSignificant => Bounds {
            min: round_significant(b.min, 2),
            max: round_significant(b.max, 2),
        },
        Rounding::None => b,
    };
    Ok(CategoryRange {
        category: category.to_string(),
        members: members.len(),
        f0_ghz: f0,
        a_e_m2: round(a),
        t_sys_k: round(t),
        bandwidth_hz: round(bw),
        e_free: round(e_free),
    })
}

/// Ranges for every category, in order of first appearance.
pub fn synthesize_all(
    consts: &Constants,
    records: &[InstrumentRecord],
    rounding: Rounding,
) -> Result<Vec<CategoryRange>> {
    let mut categories: Vec<&str> = Vec::new();
    for r in records {
        if !categories.contains(&r.category.as_str()) {
            categories.push(&r.category);
        }
    }
    categories
        .into_iter()
        .map(|c| synthesize_ranges(consts, records, c, rounding))
        .collect()
}

#[derive(Debug, Deserialize)]
struct RangeRow {
    category: String,
    members: usize,
    f0_min_ghz: f64,
    f0_max_ghz: f64,
    a_e_min_m2: f64,
    a_e_max_m2: f64,
    t_sys_min_k: f64,
    t_sys_max_k: f64,
    bandwidth_min_hz: f64,
    bandwidth_max_hz: f64,
    e_free_min: f64,
    e_free_max: f64,
}

/// Read category ranges from CSV (the layout of the bundled published
/// ranges and of `dataset-ranges` CSV output).
pub fn parse_ranges(document: &str) -> Result<Vec<CategoryRange>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(document.as_bytes());
    reader
        .deserialize::<RangeRow>()
        .map(|row| {
            let r = row?;
            Ok(CategoryRange {
                category: r.category,
                members: r.members,
                f0_ghz: Bounds { min: r.f0_min_ghz, max: r.f0_max_ghz },
                a_e_m2: Bounds { min: r.a_e_min_m2, max: r.a_e_max_m2 },
                t_sys_k: Bounds { min: r.t_sys_min_k, max: r.t_sys_max_k },
                bandwidth_hz: Bounds { min: r.bandwidth_min_hz, max: r.bandwidth_max_hz },
                e_free: Bounds { min: r.e_free_min, max: r.e_free_max },
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeMismatch {
    pub category: String,
    pub field: String,
    pub published: f64,
    pub synthesized: f64,
}

/// Compare synthesised ranges to reference ranges bound by bound. A bound
/// matches when it differs by at most `units` in the second significant
/// digit of the reference value; `units = 0` demands equality to 1e-9
/// relative. Categories absent from either side are skipped.
pub fn compare_ranges(
    synthesized: &[CategoryRange],
    published: &[CategoryRange],
    units: f64,
) -> Vec<RangeMismatch> {
    let mut out = Vec::new();
    for s in synthesized {
        let Some(p) = published.iter().find(|p| p.category == s.category) else {
            continue;
        };
        let pairs = [
            ("a_e_min_m2", s.a_e_m2.min, p.a_e_m2.min),
            ("a_e_max_m2", s.a_e_m2.max, p.a_e_m2.max),
            ("t_sys_min_k", s.t_sys_k.min, p.t_sys_k.min),
            ("t_sys_max_k", s.t_sys_k.max, p.t_sys_k.max),
            ("bandwidth_min_hz", s.bandwidth_hz.min, p.bandwidth_hz.min),
            ("bandwidth_max_hz", s.bandwidth_hz.max, p.bandwidth_hz.max),
            ("e_free_min", s.e_free.min, p.e_free.min),
            ("e_free_max", s.e_free.max, p.e_free.max),
        ];
        for (field, got, want) in pairs {
            let unit = 10f64.powf(want.abs().log10().floor() - 1.0);
            let tol = (units * unit).max(1e-9 * want.abs());
            if (got - want).abs() > tol * (1.0 + 1e-9) {
                out.push(RangeMismatch {
                    category: s.category.clone(),
                    field: field.to_string(),
                    published: want,
                    synthesized: got,
                });
            }
        }
    }
    out
}
