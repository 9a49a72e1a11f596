use std::f64::consts::PI;
use std::path::Path;

use rxsens::dataset::{
    compare_ranges, derive_all, emit_plot_data, instrument_markers, parse_instruments,
    parse_ranges, published_mismatches, synthesize_all, synthesize_ranges, write_instruments,
    CategoryRange, InstrumentRecord, PlotOptions, ReferenceLine, Rounding, BUNDLED_DATASET,
    BUNDLED_RANGES,
};
use rxsens::fieldmetrics::{
    aperture_from_gain, aperture_from_physical, enhancement_factor_cavity,
    local_field_requirement, meets_classical_reference, nef_from_aperture, nef_from_gain, sefd,
    trx_from_noise_figure, tsys_from_nef, Aperture, CavityCoupling, ReceiverReference,
};
use rxsens::linkbudget::{evaluate_link, LinkBudget, LossEntry, LossKind, PathGeometry};
use rxsens::quantities::{
    db_to_linear, frequency_to_wavelength, linear_to_db, power_from_field,
    wavelength_to_frequency, Constants,
};
use rxsens::radar::{
    max_range_ratio, nesz, nesz_db, noise_power, processed_received_power,
    processing_gain_from_pulse, range_resolution, received_power, snr, RadarScenario, Target,
};
use rxsens::radiometry::{
    calibrate_hot_cold, nedt, radiometer_output_power, tsys_from_nedt, CalibrationPoint,
    ReceiverNoiseModel,
};
use rxsens::rydberg_noise::{
    ac_stark_shift, compare_to_classical, field_from_rabi, photon_shot_noise_nep, rabi_from_field,
    DipoleMoment, RydbergSensorBudget,
};
use serde_json::{json, Map, Value};

use crate::args::*;
use crate::output;

/// Fraction by which a recomputed Ẽ_free may differ from the published one.
const FIELD_MISMATCH_TOLERANCE: f64 = 0.10;

#[derive(Debug)]
pub enum CliError {
    Core(rxsens::Error),
    Usage(String),
    Io(String),
}

impl From<rxsens::Error> for CliError {
    fn from(e: rxsens::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Core(e.into())
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// A rendered report: JSON-like value plus an optional dedicated CSV table.
pub struct Report {
    pub value: Value,
    pub csv: Option<String>,
}

impl Report {
    fn value(value: Value) -> Self {
        Report { value, csv: None }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => output::to_json(&self.value),
            Format::Text => output::to_text(&self.value),
            Format::Csv => match &self.csv {
                Some(table) => table.clone(),
                None => output::object_to_csv(&self.value)?,
            },
        })
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn run(consts: &Constants, command: &Command) -> Result<Report> {
    match command {
        Command::Nedt(a) => run_nedt(a),
        Command::Calibrate(a) => run_calibrate(a),
        Command::Radar(a) => run_radar(a),
        Command::Budget(a) => run_budget(a),
        Command::Nef(a) => run_nef(consts, a),
        Command::Convert(c) => run_convert(consts, c),
        Command::Enhance(a) => run_enhance(consts, a),
        Command::Rydberg(a) => run_rydberg(consts, a),
        Command::DatasetDerive(a) => run_derive(consts, a),
        Command::DatasetRanges(a) => run_ranges(consts, a),
        Command::DatasetPlotdata(a) => run_plot(consts, a),
    }
}

fn run_nedt(a: &NedtArgs) -> Result<Report> {
    let model = ReceiverNoiseModel::new(
        a.antenna_temperature,
        a.receiver_temperature,
        a.bandwidth,
        a.integration_time,
        a.gain_stability,
    )?;
    Ok(Report::value(json!({
        "antenna_temperature_k": model.antenna_temperature(),
        "receiver_temperature_k": model.receiver_temperature(),
        "system_temperature_k": model.system_temperature(),
        "bandwidth_hz": model.bandwidth(),
        "integration_time_s": model.integration_time(),
        "gain_stability": model.gain_stability(),
        "nedt_k": nedt(&model)?,
    })))
}

fn parse_point(text: &str) -> Result<CalibrationPoint> {
    let (t, p) = text
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("--point expects K:W, got '{text}'")))?;
    let t = kelvin(t).map_err(CliError::Usage)?;
    let p = watts(p).map_err(CliError::Usage)?;
    Ok(CalibrationPoint::new(t, p)?)
}

fn run_calibrate(a: &CalibrateArgs) -> Result<Report> {
    let mut points = a.points.iter().map(|p| parse_point(p)).collect::<Result<Vec<_>>>()?;
    if let Some(path) = &a.input {
        let text = read(path)?;
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        for row in reader.deserialize::<(f64, f64)>() {
            let (t, p) = row?;
            points.push(CalibrationPoint::new(t, p)?);
        }
    }
    let fit = calibrate_hot_cold(&points, a.bandwidth)?;
    Ok(Report::value(json!({
        "points": points.len(),
        "gain": fit.gain,
        "gain_db": linear_to_db(fit.gain)?,
        "receiver_temperature_k": fit.receiver_temperature,
        "status": fit.status,
    })))
}

fn run_radar(a: &RadarArgs) -> Result<Report> {
    let target = match (a.rcs, a.sigma0, a.cell_area) {
        (Some(rcs), None, _) => Target::Point { rcs },
        (None, Some(s0), Some(cell_area)) => Target::Distributed {
            sigma0: db_to_linear(s0)?,
            cell_area,
        },
        _ => return Err(CliError::Usage("give --rcs, or --sigma0 with --cell-area".into())),
    };
    let processing_gain = match (a.pulse_width, a.processing_gain) {
        (Some(tp), _) => processing_gain_from_pulse(a.bandwidth, tp)?,
        (None, Some(g)) => db_to_linear(g)?,
        (None, None) => 1.0,
    };
    let s = RadarScenario {
        transmit_power: a.transmit_power,
        tx_gain: db_to_linear(a.tx_gain)?,
        rx_gain: db_to_linear(a.rx_gain)?,
        wavelength: a.wavelength,
        target,
        range: a.range,
        system_loss: db_to_linear(a.system_loss)?,
        propagation_loss: db_to_linear(a.propagation_loss)?,
        processing_gain,
        system_temperature: a.system_temperature,
        bandwidth: a.bandwidth,
    };
    let signal = match target {
        Target::Point { .. } => received_power(&s)?,
        Target::Distributed { .. } => processed_received_power(&s)?,
    };
    let noise = noise_power(a.system_temperature, a.bandwidth)?;
    let ratio = snr(signal, noise)?;

    let mut out = Map::new();
    out.insert("target".into(), serde_json::to_value(target).unwrap_or_default());
    out.insert("processing_gain".into(), json!(processing_gain));
    out.insert("received_power_w".into(), json!(signal));
    out.insert("noise_power_w".into(), json!(noise));
    out.insert("snr".into(), json!(ratio));
    if ratio > 0.0 {
        out.insert("snr_db".into(), json!(linear_to_db(ratio)?));
    }
    if let Target::Distributed { sigma0, .. } = target {
        if ratio > 0.0 {
            let n = nesz(sigma0, ratio)?;
            out.insert("nesz".into(), json!(n));
            out.insert("nesz_db".into(), json!(nesz_db(n)?));
        }
    }
    out.insert("range_resolution_m".into(), json!(range_resolution(a.bandwidth)?));
    if let Some(t2) = a.reference_temperature {
        out.insert(
            "max_range_ratio".into(),
            json!(max_range_ratio(a.system_temperature, t2)?),
        );
    }
    Ok(Report::value(Value::Object(out)))
}

fn budget_from_flags(a: &BudgetArgs) -> LinkBudget {
    let losses = [
        (LossKind::FreeSpace, a.free_space_loss),
        (LossKind::Atmospheric, a.atmospheric_loss),
        (LossKind::Rain, a.rain_loss),
        (LossKind::Scintillation, a.scintillation_loss),
        (LossKind::Polarization, a.polarization_loss),
        (LossKind::Ionospheric, a.ionospheric_loss),
        (LossKind::Other, a.other_loss),
    ]
    .into_iter()
    .filter_map(|(kind, db)| db.map(|db| LossEntry::new(kind, db)))
    .collect();
    LinkBudget {
        tx_power_dbw: a.tx_power.unwrap_or_default(),
        tx_gain_dbi: a.tx_gain,
        tx_feeder_loss_db: a.tx_feeder_loss,
        losses,
        rx_gain_dbi: a.rx_gain,
        antenna_temperature_k: a.antenna_temperature,
        receiver_temperature_k: a.receiver_temperature,
        feeder_loss: a.feeder_loss,
        data_rate_bps: a.data_rate.unwrap_or_default(),
        thresholds: rxsens::linkbudget::default_thresholds(),
        geometry: a.distance.zip(a.frequency).map(|(distance_m, frequency_hz)| PathGeometry {
            distance_m,
            frequency_hz,
        }),
    }
}

fn run_budget(a: &BudgetArgs) -> Result<Report> {
    let budget = match &a.input {
        Some(path) => serde_json::from_str::<LinkBudget>(&read(path)?)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?,
        None => budget_from_flags(a),
    };
    let r = evaluate_link(&budget)?;
    let losses: Map<String, Value> = budget
        .losses
        .iter()
        .map(|l| (l.kind.key().to_string(), json!(l.db)))
        .collect();
    let margins: Vec<Value> = r
        .margins
        .iter()
        .map(|m| {
            json!({
                "scheme": m.name,
                "required_eb_n0_db": m.required_eb_n0_db,
                "margin_db": m.margin_db,
                "closes": m.closes,
            })
        })
        .collect();
    let mut out = json!({
        "eirp_dbw": r.eirp_dbw,
        "losses_db": losses,
        "total_loss_db": r.total_loss_db,
        "system_temperature_k": r.system_temperature_k,
        "g_over_t_db_k": r.figure_of_merit_db_k,
        "c_n0_dbhz": r.c_over_n0_dbhz,
        "eb_n0_db": r.eb_over_n0_db,
        "margins": margins,
    });
    if let Some(f) = r.fsl_check {
        out["fsl_check"] = json!({
            "ledger_db": f.ledger_db,
            "computed_db": f.computed_db,
            "discrepancy_db": f.discrepancy_db,
            "flagged": f.flagged,
        });
    }
    Ok(Report::value(out))
}

fn run_nef(consts: &Constants, a: &NefArgs) -> Result<Report> {
    if let Some(nef) = a.nef {
        let (Some(gain), Some(f)) = (a.gain, a.frequency) else {
            return Err(CliError::Usage("--nef needs --gain and --frequency".into()));
        };
        return Ok(Report::value(json!({
            "nef_v_m_rthz": nef,
            "gain": gain,
            "frequency_hz": f,
            "rho2": a.rho2,
            "system_temperature_k": tsys_from_nef(consts, nef, gain, f, a.rho2)?,
        })));
    }
    let t = a.system_temperature.unwrap_or_default();
    let (area, nef) = match (a.effective_area, a.gain, a.frequency) {
        (Some(area), _, _) => (area, nef_from_aperture(consts, t, area, a.rho2)?),
        (None, Some(g), Some(f)) => (aperture_from_gain(g, f)?, nef_from_gain(consts, t, g, f, a.rho2)?),
        _ => {
            return Err(CliError::Usage(
                "give --effective-area, or --gain with --frequency".into(),
            ))
        }
    };
    Ok(Report::value(json!({
        "system_temperature_k": t,
        "effective_area_m2": area,
        "rho2": a.rho2,
        "sefd_w_m2_hz": sefd(t, area, a.rho2)?,
        "nef_v_m_rthz": nef,
    })))
}

fn run_convert(consts: &Constants, c: &ConvertCommand) -> Result<Report> {
    let v = match c {
        ConvertCommand::DbToLinear(a) => json!({"db": a.value, "linear": db_to_linear(a.value)?}),
        ConvertCommand::LinearToDb(a) => json!({"linear": a.value, "db": linear_to_db(a.value)?}),
        ConvertCommand::Wavelength(a) => match (a.frequency, a.wavelength) {
            (Some(f), _) => json!({"frequency_hz": f, "wavelength_m": frequency_to_wavelength(f)?}),
            (None, Some(l)) => json!({"wavelength_m": l, "frequency_hz": wavelength_to_frequency(l)?}),
            (None, None) => return Err(CliError::Usage("give --frequency or --wavelength".into())),
        },
        ConvertCommand::PowerFromField(a) => json!({
            "field_v_m": a.field,
            "area_m2": a.area,
            "power_w": power_from_field(consts, a.field, a.area)?,
        }),
        ConvertCommand::ApertureFromGain(a) => json!({
            "gain_dbi": a.gain,
            "frequency_hz": a.frequency,
            "effective_area_m2": aperture_from_gain(db_to_linear(a.gain)?, a.frequency)?,
        }),
        ConvertCommand::TrxFromNf(a) => json!({
            "noise_figure_db": a.noise_figure,
            "reference_temperature_k": a.reference_temperature,
            "receiver_temperature_k": trx_from_noise_figure(a.noise_figure, a.reference_temperature)?,
        }),
        ConvertCommand::TsysFromNedt(a) => json!({
            "nedt_k": a.nedt,
            "bandwidth_hz": a.bandwidth,
            "integration_time_s": a.integration_time,
            "system_temperature_k": tsys_from_nedt(a.nedt, a.bandwidth, a.integration_time)?,
        }),
        ConvertCommand::RadiometerPower(a) => json!({
            "output_power_w": radiometer_output_power(
                a.gain,
                a.antenna_temperature,
                a.receiver_temperature,
                a.bandwidth,
            )?,
        }),
    };
    Ok(Report::value(v))
}

fn run_enhance(consts: &Constants, a: &EnhanceArgs) -> Result<Report> {
    let area = match (a.effective_area, a.diameter) {
        (Some(area), _) => area,
        (None, Some(d)) => aperture_from_physical(PI * d * d / 4.0, a.aperture_efficiency)?,
        (None, None) => return Err(CliError::Usage("give --effective-area or --diameter".into())),
    };
    let cavity = match (a.signal_bandwidth, a.loaded_q) {
        (Some(b), _) => CavityCoupling::from_signal_bandwidth(
            a.center_frequency,
            b,
            a.coupling_efficiency,
            a.mode_volume,
        )?,
        (None, Some(q)) => {
            CavityCoupling::from_loaded_q(a.center_frequency, q, a.coupling_efficiency, a.mode_volume)?
        }
        (None, None) => {
            return Err(CliError::Usage("give --signal-bandwidth or --loaded-q".into()))
        }
    };
    let beta = enhancement_factor_cavity(consts, &cavity, area)?;
    let reference =
        ReceiverReference::new(a.system_temperature, Aperture::Effective { area_m2: area }, a.rho2)?;
    let req = local_field_requirement(consts, &reference, beta)?;
    let mut out = json!({
        "effective_area_m2": area,
        "system_temperature_k": a.system_temperature,
        "rho2": a.rho2,
        "center_frequency_hz": cavity.center_frequency,
        "loaded_q": cavity.loaded_q,
        "linewidth_hz": cavity.linewidth(),
        "coupling_efficiency": cavity.coupling_efficiency,
        "mode_volume_m3": cavity.mode_volume,
        "e_free_v_m_rthz": req.free_space,
        "enhancement": req.enhancement,
        "e_local_v_m_rthz": req.local,
        "below_unity_enhancement": req.below_unity_enhancement,
    });
    if let Some(n) = a.sensor_nef {
        out["sensor_nef_v_m_rthz"] = json!(n);
        out["meets_reference"] = json!(meets_classical_reference(n, req.local));
    }
    Ok(Report::value(out))
}

fn run_rydberg(consts: &Constants, a: &RydbergArgs) -> Result<Report> {
    let dipole = DipoleMoment::from_atomic_units(a.dipole)?;
    let mut out = Map::new();
    out.insert("dipole_c_m".into(), json!(dipole.coulomb_metres()));
    if let (Some(n), Some(tc)) = (a.atom_count, a.coherence_time) {
        let budget = RydbergSensorBudget {
            dipole,
            atom_count: n,
            coherence_time: tc,
            probe_power: None,
            probe_frequency: None,
        };
        let q = budget.qpn(a.integration_time)?;
        out.insert("qpn_nef_v_m_rthz".into(), json!(q.nef));
        out.insert(
            "integration_shorter_than_coherence".into(),
            json!(q.integration_shorter_than_coherence),
        );
    }
    if let (Some(p), Some(l)) = (a.probe_power, a.probe_wavelength) {
        let nep = photon_shot_noise_nep(p, wavelength_to_frequency(l)?)?;
        out.insert("shot_noise_nep_w_rthz".into(), json!(nep));
    }
    if let Some(e) = a.field {
        let omega = rabi_from_field(e, dipole)?;
        out.insert("rabi_rad_s".into(), json!(omega));
        out.insert("rabi_hz".into(), json!(omega / (2.0 * PI)));
        if let Some(det) = a.detuning {
            let shift = ac_stark_shift(omega, 2.0 * PI * det, a.stark_coefficient)?;
            out.insert("stark_shift_rad_s".into(), json!(shift));
            out.insert("stark_shift_hz".into(), json!(shift / (2.0 * PI)));
        }
    }
    if let Some(f) = a.rabi_frequency {
        let field = field_from_rabi(2.0 * PI * f, dipole)?;
        out.insert("field_from_rabi_v_m".into(), json!(field));
    }
    if let (Some(nef), Some(g), Some(f)) = (a.sensor_nef, a.gain, a.frequency) {
        out.insert(
            "equivalent_system_temperature_k".into(),
            json!(compare_to_classical(consts, nef, g, f, a.rho2)?),
        );
    }
    Ok(Report::value(Value::Object(out)))
}

fn load_records(consts: &Constants, input: Option<&Path>) -> Result<(Vec<InstrumentRecord>, Value)> {
    let text = match input {
        Some(p) => read(p)?,
        None => BUNDLED_DATASET.to_string(),
    };
    let parsed = parse_instruments(&text)?;
    for d in &parsed.diagnostics {
        eprintln!("warning: row {} ({}): {}", d.row, d.instrument, d.message);
    }
    let diagnostics = serde_json::to_value(&parsed.diagnostics).unwrap_or_default();
    Ok((derive_all(consts, &parsed.records)?, diagnostics))
}

fn run_derive(consts: &Constants, a: &DatasetArgs) -> Result<Report> {
    let (records, diagnostics) = load_records(consts, a.input.as_deref())?;
    let mismatches = published_mismatches(&records, FIELD_MISMATCH_TOLERANCE);
    Ok(Report {
        csv: Some(write_instruments(&records)?),
        value: json!({
            "records": records,
            "diagnostics": diagnostics,
            "field_mismatches": mismatches,
        }),
    })
}

const RANGE_HEADER: [&str; 12] = [
    "category",
    "members",
    "f0_min_ghz",
    "f0_max_ghz",
    "a_e_min_m2",
    "a_e_max_m2",
    "t_sys_min_k",
    "t_sys_max_k",
    "bandwidth_min_hz",
    "bandwidth_max_hz",
    "e_free_min",
    "e_free_max",
];

fn ranges_csv(ranges: &[CategoryRange]) -> Result<String> {
    let rows: Vec<Vec<String>> = ranges
        .iter()
        .map(|r| {
            let mut row = vec![r.category.clone(), r.members.to_string()];
            for b in [r.f0_ghz, r.a_e_m2, r.t_sys_k, r.bandwidth_hz, r.e_free] {
                row.push(output::format_number(b.min));
                row.push(output::format_number(b.max));
            }
            row
        })
        .collect();
    Ok(output::to_csv(&RANGE_HEADER, &rows)?)
}

fn synthesize(
    consts: &Constants,
    records: &[InstrumentRecord],
    category: Option<&str>,
    no_rounding: bool,
) -> Result<Vec<CategoryRange>> {
    let rounding = if no_rounding { Rounding::None } else { Rounding::TwoSignificant };
    Ok(match category {
        Some(c) => vec![synthesize_ranges(consts, records, c, rounding)?],
        None => synthesize_all(consts, records, rounding)?,
    })
}

fn run_ranges(consts: &Constants, a: &RangesArgs) -> Result<Report> {
    let (records, _) = load_records(consts, a.input.as_deref())?;
    let ranges = synthesize(consts, &records, a.category.as_deref(), a.no_rounding)?;
    let mut value = json!({ "ranges": ranges });
    if let Some(reference) = &a.compare {
        let text = match reference.as_str() {
            "bundled" => BUNDLED_RANGES.to_string(),
            path => read(Path::new(path))?,
        };
        let published = parse_ranges(&text)?;
        value["mismatches"] = json!(compare_ranges(&ranges, &published, 1.0));
    }
    Ok(Report {
        csv: Some(ranges_csv(&ranges)?),
        value,
    })
}

fn run_plot(consts: &Constants, a: &PlotArgs) -> Result<Report> {
    let (records, _) = load_records(consts, a.input.as_deref())?;
    let ranges = synthesize(consts, &records, None, a.no_rounding)?;
    let options = PlotOptions {
        converter_bandwidth: a.converter_bandwidth,
        reference_lines: a
            .thermal_reference
            .map(|e| ReferenceLine {
                name: "thermal reference".into(),
                e_field: e,
            })
            .into_iter()
            .collect(),
    };
    let doc = emit_plot_data(&ranges, &instrument_markers(&records), &options);
    let mut rows: Vec<Vec<String>> = doc
        .rectangles
        .iter()
        .map(|r| {
            let mut row = vec!["rectangle".to_string(), r.category.clone()];
            row.extend([r.bw_min, r.bw_max, r.e_min, r.e_max].map(output::format_number));
            row
        })
        .collect();
    rows.extend(doc.markers.iter().map(|m| {
        let bw = output::format_number(m.bandwidth);
        let e = output::format_number(m.e_field);
        vec!["marker".into(), m.name.clone(), bw.clone(), bw, e.clone(), e]
    }));
    rows.extend(doc.reference_lines.iter().map(|l| {
        let e = output::format_number(l.e_field);
        vec!["line".into(), l.name.clone(), String::new(), String::new(), e.clone(), e]
    }));
    let header = ["kind", "name", "bw_min", "bw_max", "e_min", "e_max"];
    Ok(Report {
        csv: Some(output::to_csv(&header, &rows)?),
        value: serde_json::to_value(&doc).unwrap_or_default(),
    })
}
