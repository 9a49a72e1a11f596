use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rxsens::quantities::{DbRef, Decibel, Quantity, Unit};

fn quantity(text: &str, unit: Unit) -> Result<f64, String> {
    Quantity::parse(text, unit)
        .map(|q| q.value)
        .map_err(|e| e.to_string())
}

fn decibel(text: &str, reference: DbRef) -> Result<f64, String> {
    Decibel::parse(text, reference)
        .map(|d| d.value)
        .map_err(|e| e.to_string())
}

pub fn kelvin(s: &str) -> Result<f64, String> {
    quantity(s, Unit::Kelvin)
}
pub fn hertz(s: &str) -> Result<f64, String> {
    quantity(s, Unit::Hertz)
}
pub fn seconds(s: &str) -> Result<f64, String> {
    quantity(s, Unit::Second)
}
pub fn watts(s: &str) -> Result<f64, String> {
    quantity(s, Unit::Watt)
}
pub fn metres(s: &str) -> Result<f64, String> {
    quantity(s, Unit::Metre)
}
pub fn square_metres(s: &str) -> Result<f64, String> {
    quantity(s, Unit::SquareMetre)
}
pub fn field(s: &str) -> Result<f64, String> {
    quantity(s, Unit::VoltPerMetre)
}
pub fn field_density(s: &str) -> Result<f64, String> {
    quantity(s, Unit::FieldDensity)
}
pub fn ratio(s: &str) -> Result<f64, String> {
    quantity(s, Unit::Dimensionless)
}
pub fn db(s: &str) -> Result<f64, String> {
    decibel(s, DbRef::Db)
}
pub fn dbi(s: &str) -> Result<f64, String> {
    decibel(s, DbRef::Dbi)
}
pub fn dbw(s: &str) -> Result<f64, String> {
    decibel(s, DbRef::Dbw)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "rxsens",
    version,
    about = "Sensitivity figures of merit for RF receivers and Rydberg-atom sensors",
    after_help = "Numeric flags carry unit suffixes (250k, 1e9hz, 15ms, 20dbw, 45dbi).\n\
                  Set RXSENS_ROUNDED_ETA0=1 to use the rounded impedance of free space (377 ohm)."
)]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report to this file instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Radiometer NEDT from the total-power model with gain fluctuations
    Nedt(NedtArgs),
    /// Fit gain and receiver temperature from hot/cold load measurements
    Calibrate(CalibrateArgs),
    /// Radar equation, noise floor, SNR, NESZ and range resolution
    Radar(RadarArgs),
    /// Satellite link budget chain with modulation margins
    Budget(BudgetArgs),
    /// Noise-equivalent field of a classical receiver, or its inverse
    Nef(NefArgs),
    /// Unit and figure-of-merit conversions
    #[command(subcommand)]
    Convert(ConvertCommand),
    /// Cavity field enhancement and local field requirement
    Enhance(EnhanceArgs),
    /// Rydberg sensor noise floors and field calibration
    Rydberg(RydbergArgs),
    /// Parse and derive the instrument dataset
    DatasetDerive(DatasetArgs),
    /// Synthesise per-category ranges from the instrument dataset
    DatasetRanges(RangesArgs),
    /// Plot data: category rectangles and instrument markers
    DatasetPlotdata(PlotArgs),
}

#[derive(Debug, Args)]
#[command(allow_hyphen_values = true)]
pub struct NedtArgs {
    /// Antenna temperature T_A [K]
    #[arg(long, value_parser = kelvin, value_name = "K")]
    pub antenna_temperature: f64,
    /// Receiver noise temperature T_Rx [K]
    #[arg(long, value_parser = kelvin, value_name = "K")]
    pub receiver_temperature: f64,
    /// Predetection bandwidth B [Hz]
    #[arg(long, value_parser = hertz, value_name = "HZ")]
    pub bandwidth: f64,
    /// Integration time τ [s]
    #[arg(long, value_parser = seconds, value_name = "S")]
    pub integration_time: f64,
    /// Fractional gain fluctuation ΔG/G [dimensionless]
    #[arg(long, value_parser = ratio, value_name = "RATIO", default_value = "0")]
    pub gain_stability: f64,
}

#[derive(Debug, Args)]
#[command(allow_hyphen_values = true)]
pub struct CalibrateArgs {
    /// Calibration load as TEMPERATURE:POWER, e.g. 300k:1.2e-9w (repeatable)
    #[arg(long = "point", value_name = "K:W")]
    pub points: Vec<String>,
    /// CSV with columns antenna_temperature_k,output_power_w
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Predetection bandwidth B [Hz]
    #[arg(long, value_parser = hertz, value_name = "HZ")]
    pub bandwidth: f64,
}

#[derive(Debug, Args)]
#[command(allow_hyphen_values = true)]
pub struct RadarArgs {
    /// Transmit power P_t [W]
    #[arg(long, value_parser = watts, value_name = "W")]
    pub transmit_power: f64,
    /// Transmit antenna gain [dBi]
    #[arg(long, value_parser = dbi, value_name = "DBI")]
    pub tx_gain: f64,
    /// Receive antenna gain [dBi]
    #[arg(long, value_parser = dbi, value_name = "DBI")]
    pub rx_gain: f64,
    /// Carrier wavelength λ [m]
    #[arg(long, value_parser = metres, value_name = "M")]
    pub wavelength: f64,
    /// Slant range R [m]
    #[arg(long, value_parser = metres, value_name = "M")]
    pub range: f64,
    /// Point-target radar cross section σ [m2]
    #[arg(long, value_parser = square_metres, value_name = "M2", conflicts_with = "sigma0")]
    pub rcs: Option<f64>,
    /// Normalised backscatter σ0 of a distributed target [dB]
    #[arg(long, value_parser = db, value_name = "DB", requires = "cell_area")]
    pub sigma0: Option<f64>,
    /// Resolution cell area for a distributed target [m2]
    #[arg(long, value_parser = square_metres, value_name = "M2")]
    pub cell_area: Option<f64>,
    /// System loss L_s [dB]
    #[arg(long, value_parser = db, value_name = "DB", default_value = "0db")]
    pub system_loss: f64,
    /// Propagation loss L_p [dB]
    #[arg(long, value_parser = db, value_name = "DB", default_value = "0db")]
    pub propagation_loss: f64,
    /// Processing gain G_proc [dB]
    #[arg(long, value_parser = db, value_name = "DB", conflicts_with = "pulse_width")]
    pub processing_gain: Option<f64>,
    /// Pulse width τ_p; sets G_proc = B·τ_p [s]
    #[arg(long, value_parser = seconds, value_name = "S")]
    pub pulse_width: Option<f64>,
    /// System noise temperature T_sys [K]
    #[arg(long, value_parser = kelvin, value_name = "K")]
    pub system_temperature: f64,
    /// Receiver bandwidth B [Hz]
    #[arg(long, value_parser = hertz, value_name = "HZ")]
    pub bandwidth: f64,
    /// Second system temperature for the maximum-range ratio R2/R1 [K]
    #[arg(long, value_parser = kelvin, value_name = "K")]
    pub reference_temperature: Option<f64>,
}

#[derive(Debug, Args)]
#[command(allow_hyphen_values = true)]
pub struct BudgetArgs {
    /// JSON link budget file instead of flags
    #[arg(long, value_name = "PATH", conflicts_with_all = ["tx_power", "data_rate"])]
    pub input: Option<PathBuf>,
    /// Transmit power P_T [dBW]
    #[arg(long, value_parser = dbw, value_name = "DBW", required_unless_present = "input")]
    pub tx_power: Option<f64>,
    /// Transmit antenna gain G_T [dBi]
    #[arg(long, value_parser = dbi, value_name = "DBI", default_value = "0dbi")]
    pub tx_gain: f64,
    /// Transmit feeder loss [dB]
    #[arg(long, value_parser = db, value_name = "DB", default_value = "0db")]
    pub tx_feeder_loss: f64,
    /// Free-space path loss entry [dB]
    #[arg(long, value_parser = db, value_name = "DB")]
    pub free_space_loss: Option<f64>,
    /// Atmospheric absorption [dB]
    #[arg(long, value_parser = db, value_name = "DB")]
    pub atmospheric_loss: Option<f64>,
    /// Rain attenuation [dB]
    #[arg(long, value_parser = db, value_name = "DB")]
    pub rain_loss: Option<f64>,
    /// Scintillation loss [dB]
    #[arg(long, value_parser = db, value_name = "DB")]
    pub scintillation_loss: Option<f64>,
    /// Polarisation mismatch loss [dB]
    #[arg(long, value_parser = db, value_name = "DB")]
    pub polarization_loss: Option<f64>,
    /// Ionospheric loss [dB]
    #[arg(long, value_parser = db, value_name = "DB")]
    pub ionospheric_loss: Option<f64>,
    /// Other losses [dB]
    #[arg(long, value_parser = db, value_name = "DB")]
    pub other_loss: Option<f64>,
    /// Receive antenna gain G_R [dBi]
    #[arg(long, value_parser = dbi, value_name = "DBI", default_value = "0dbi")]
    pub rx_gain: f64,
    /// Antenna noise temperature T_a [K]
    #[arg(long, value_parser = kelvin, value_name = "K", default_value = "0k")]
    pub antenna_temperature: f64,
    /// Receiver noise temperature T_R [K]
    #[arg(long, value_parser = kelvin, value_name = "K", default_value = "0k")]
    pub receiver_temperature: f64,
    /// Receive feeder loss L_F as a linear ratio >= 1 [dimensionless]
    #[arg(long, value_parser = ratio, value_name = "RATIO", default_value = "1")]
    pub feeder_loss: f64,
    /// Data rate R [bps]
    #[arg(long, value_parser = hertz, value_name = "BPS", required_unless_present = "input")]
    pub data_rate: Option<f64>,
    /// Path length for the free-space loss cross-check [m]
    #[arg(long, value_parser = metres, value_name = "M", requires = "frequency")]
    pub distance: Option<f64>,
    /// Carrier frequency for the free-space loss cross-check [Hz]
    #[arg(long, value_parser = hertz, value_name = "HZ", requires = "distance")]
    pub frequency: Option<f64>,
}

#[derive(Debug, Args)]
#[command(allow_hyphen_values = true)]
pub struct NefArgs {
    /// System noise temperature T_sys [K]; omit to solve for it from --nef
    #[arg(long, value_parser = kelvin, value_name = "K", required_unless_present = "nef")]
    pub system_temperature: Option<f64>,
    /// Effective aperture A_e [m2]
    #[arg(long, value_parser = square_metres, value_name = "M2", conflicts_with = "gain")]
    pub effective_area: Option<f64>,
    /// Linear antenna gain G [dimensionless]
    #[arg(long, value_parser = ratio, value_name = "RATIO", requires = "frequency")]
    pub gain: Option<f64>,
    /// Carrier frequency [Hz]
    #[arg(long, value_parser = hertz, value_name = "HZ")]
    pub frequency: Option<f64>,
    /// Polarisation factor ρ² in (0, 1] [dimensionless]
    #[arg(long, value_parser = ratio, value_name = "RATIO", default_value = "1")]
    pub rho2: f64,
    /// Noise-equivalent field to convert back to T_sys [V/m/rtHz]
    #[arg(long, value_parser = field_density, value_name = "V/M/RTHZ", conflicts_with = "system_temperature")]
    pub nef: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum ConvertCommand {
    /// dB to linear ratio
    DbToLinear(DbToLinearArgs),
    /// Linear ratio to dB
    LinearToDb(LinearToDbArgs),
    /// Frequency to wavelength, or wavelength to frequency
    Wavelength(WavelengthArgs),
    /// Power collected from a plane wave of RMS field E through an aperture
    PowerFromField(PowerFromFieldArgs),
    /// Effective aperture A_e = Gλ²/4π from gain
    ApertureFromGain(ApertureFromGainArgs),
    /// Receiver temperature from noise figure
    TrxFromNf(TrxFromNfArgs),
    /// System temperature from NEDT and integration time
    TsysFromNedt(TsysFromNedtArgs),
    /// Radiometer output power G·k_B·B·(T_A + T_Rx)
    RadiometerPower(RadiometerPowerArgs),
}

#[derive(Debug, Args)]
#[command(allow_hyphen_values = true)]
pub struct DbToLinearArgs {
    /// Power ratio [dB]
    #[arg(long, value_parser = db, value_name = "DB")]
    pub value: f64,
}

#[derive(Debug, Args)]
#[command(allow_hyphen_values = true)]
pub struct LinearToDbArgs {
    /// Power ratio [dimensionless]
    #[arg(long, value_parser = ratio, value_name = "RATIO")]
    pub value: f64,
}

#[derive(Debug, Args)]
#[command(allow_hyphen_values = true)]
pub struct WavelengthArgs {
    /// Frequency [Hz]
    #[arg(long, value_parser = hertz, value_name = "HZ", required_unless_present = "wavelength", conflicts_with = "wavelength")]
    pub frequency: Option<f64>,
    /// Wavelength [m]
    #[arg(long, value_parser = metres, value_name = "M")]
    pub wavelength: Option<f64>,
}

#[derive(Debug, Args)]
#[command(allow_hyphen_values = true)]
pub struct PowerFromFieldArgs {
    /// RMS electric field [V/m]
    #[arg(long, value_parser = field, value_name = "V/M")]
    pub field: f64,
    /// Collecting area [m2]
    #[arg(long, value_parser = square_metres, value_name = "M2")]
    pub area: f64,
}

#[derive(Debug, Args)]
#[command(allow_hyphen_values = true)]
pub struct ApertureFromGainArgs {
    /// Antenna gain [dBi]
    #[arg(long, value_parser = dbi, value_name = "DBI")]
    pub gain: f64,
    /// Carrier frequency [Hz]
    #[arg(long, value_parser = hertz, value_name = "HZ")]
    pub frequency: f64,
}

#[derive(Debug, Args)]
#[command(allow_hyphen_values = true)]
pub struct TrxFromNfArgs {
    /// Noise figure [dB]
    #[arg(long, value_parser = db, value_name = "DB")]
    pub noise_figure: f64,
    /// Reference temperature T_0 [K]
    #[arg(long, value_parser = kelvin, value_name = "K", default_value = "290k")]
    pub reference_temperature: f64,
}

#[derive(Debug, Args)]
#[command(allow_hyphen_values = true)]
pub struct TsysFromNedtArgs {
    /// Noise-equivalent temperature difference [K]
    #[arg(long, value_parser = kelvin, value_name = "K")]
    pub nedt: f64,
    /// Predetection bandwidth [Hz]
    #[arg(long, value_parser = hertz, value_name = "HZ")]
    pub bandwidth: f64,
    /// Integration time [s]
    #[arg(long, value_parser = seconds, value_name = "S")]
    pub integration_time: f64,
}

#[derive(Debug, Args)]
#[command(allow_hyphen_values = true)]
pub struct RadiometerPowerArgs {
    /// Linear receiver power gain G [dimensionless]
    #[arg(long, value_parser = ratio, value_name = "RATIO")]
    pub gain: f64,
    /// Antenna temperature [K]
    #[arg(long, value_parser = kelvin, value_name = "K")]
    pub antenna_temperature: f64,
    /// Receiver noise temperature [K]
    #[arg(long, value_parser = kelvin, value_name = "K")]
    pub receiver_temperature: f64,
    /// Predetection bandwidth [Hz]
    #[arg(long, value_parser = hertz, value_name = "HZ")]
    pub bandwidth: f64,
}

#[derive(Debug, Args)]
#[command(allow_hyphen_values = true)]
pub struct EnhanceArgs {
    /// Classical reference system temperature T_sys [K]
    #[arg(long, value_parser = kelvin, value_name = "K")]
    pub system_temperature: f64,
    /// Effective aperture A_e [m2]
    #[arg(long, value_parser = square_metres, value_name = "M2", required_unless_present = "diameter", conflicts_with = "diameter")]
    pub effective_area: Option<f64>,
    /// Dish diameter; A_e = η_ap·π·D²/4 [m]
    #[arg(long, value_parser = metres, value_name = "M")]
    pub diameter: Option<f64>,
    /// Aperture efficiency η_ap used with --diameter [dimensionless]
    #[arg(long, value_parser = ratio, value_name = "RATIO", default_value = "0.65")]
    pub aperture_efficiency: f64,
    /// Polarisation factor ρ² [dimensionless]
    #[arg(long, value_parser = ratio, value_name = "RATIO", default_value = "1")]
    pub rho2: f64,
    /// Cavity centre frequency f_0 [Hz]
    #[arg(long, value_parser = hertz, value_name = "HZ")]
    pub center_frequency: f64,
    /// Signal bandwidth; sets Q_L = f_0/B_sig [Hz]
    #[arg(long, value_parser = hertz, value_name = "HZ", required_unless_present = "loaded_q", conflicts_with = "loaded_q")]
    pub signal_bandwidth: Option<f64>,
    /// Loaded quality factor Q_L [dimensionless]
    #[arg(long, value_parser = ratio, value_name = "RATIO")]
    pub loaded_q: Option<f64>,
    /// Antenna-to-cavity transfer efficiency η_c in (0, 1] [dimensionless]
    #[arg(long, value_parser = ratio, value_name = "RATIO")]
    pub coupling_efficiency: f64,
    /// Mode volume V_eff [m3, bare number]
    #[arg(long, value_parser = ratio, value_name = "M3")]
    pub mode_volume: f64,
    /// Sensor NEF at the atoms, compared against the local requirement [V/m/rtHz]
    #[arg(long, value_parser = field_density, value_name = "V/M/RTHZ")]
    pub sensor_nef: Option<f64>,
}

#[derive(Debug, Args)]
#[command(allow_hyphen_values = true)]
pub struct RydbergArgs {
    /// Transition dipole moment in units of e·a0 [dimensionless]
    #[arg(long, value_parser = ratio, value_name = "EA0")]
    pub dipole: f64,
    /// Number of participating atoms N [dimensionless]
    #[arg(long, value_parser = ratio, value_name = "COUNT", requires = "coherence_time")]
    pub atom_count: Option<f64>,
    /// Coherence time τ_coh [s]
    #[arg(long, value_parser = seconds, value_name = "S")]
    pub coherence_time: Option<f64>,
    /// Integration time, checked against τ_coh [s]
    #[arg(long, value_parser = seconds, value_name = "S")]
    pub integration_time: Option<f64>,
    /// Detected probe power [W]
    #[arg(long, value_parser = watts, value_name = "W", requires = "probe_wavelength")]
    pub probe_power: Option<f64>,
    /// Probe laser wavelength [m]
    #[arg(long, value_parser = metres, value_name = "M")]
    pub probe_wavelength: Option<f64>,
    /// RF field amplitude for the Rabi frequency [V/m]
    #[arg(long, value_parser = field, value_name = "V/M")]
    pub field: Option<f64>,
    /// Measured Rabi frequency Ω/2π, converted to a field [Hz]
    #[arg(long, value_parser = hertz, value_name = "HZ")]
    pub rabi_frequency: Option<f64>,
    /// Detuning Δ/2π for the AC-Stark shift of the --field Rabi frequency [Hz]
    #[arg(long, value_parser = hertz, value_name = "HZ", requires = "field")]
    pub detuning: Option<f64>,
    /// AC-Stark proportionality coefficient [dimensionless]
    #[arg(long, value_parser = ratio, value_name = "RATIO", default_value = "0.25")]
    pub stark_coefficient: f64,
    /// Sensor NEF to express as a classical T_sys [V/m/rtHz]
    #[arg(long, value_parser = field_density, value_name = "V/M/RTHZ", requires_all = ["gain", "frequency"])]
    pub sensor_nef: Option<f64>,
    /// Linear antenna gain for the classical comparison [dimensionless]
    #[arg(long, value_parser = ratio, value_name = "RATIO")]
    pub gain: Option<f64>,
    /// Carrier frequency for the classical comparison [Hz]
    #[arg(long, value_parser = hertz, value_name = "HZ")]
    pub frequency: Option<f64>,
    /// Polarisation factor for the classical comparison [dimensionless]
    #[arg(long, value_parser = ratio, value_name = "RATIO", default_value = "1")]
    pub rho2: f64,
}

#[derive(Debug, Args)]
pub struct DatasetArgs {
    /// Instrument CSV; the bundled dataset when omitted
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RangesArgs {
    /// Instrument CSV; the bundled dataset when omitted
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Category to synthesise; all categories when omitted
    #[arg(long)]
    pub category: Option<String>,
    /// Keep unrounded bounds
    #[arg(long)]
    pub no_rounding: bool,
    /// Compare against published ranges in this CSV (use "bundled" for the shipped table)
    #[arg(long, value_name = "PATH")]
    pub compare: Option<String>,
}

#[derive(Debug, Args)]
#[command(allow_hyphen_values = true)]
pub struct PlotArgs {
    /// Instrument CSV; the bundled dataset when omitted
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Use unrounded range bounds for the rectangles
    #[arg(long)]
    pub no_rounding: bool,
    /// Bandwidth coordinate of the Rydberg converter marker [Hz]
    #[arg(long, value_parser = hertz, value_name = "HZ")]
    pub converter_bandwidth: Option<f64>,
    /// Field of a horizontal thermal reference line [V/m/rtHz]
    #[arg(long, value_parser = field_density, value_name = "V/M/RTHZ")]
    pub thermal_reference: Option<f64>,
}
