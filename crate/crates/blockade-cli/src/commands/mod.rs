//! Subcommand implementations.

pub mod circuit;
pub mod compare;
pub mod g2tau;
pub mod sweep;
pub mod thermal;

use blockade::models::{JcParams, TpbParams};
use blockade::Tolerances;

use crate::config::Config;
use crate::CliError;

/// Solver tolerances echoed into every CSV header.
pub fn tolerance_header() -> Vec<(String, String)> {
    let t = Tolerances::default();
    vec![
        ("tolerance.evolve_trace".into(), format!("{}", t.evolve_trace)),
        ("tolerance.hermiticity".into(), format!("{}", t.hermiticity)),
        ("tolerance.positivity".into(), format!("{}", t.positivity)),
        ("tolerance.steady_residual".into(), format!("{}", t.steady_residual)),
        ("tolerance.trace".into(), format!("{}", t.trace)),
    ]
}

/// Effective three-body parameters, for the self-describing CSV header.
pub fn echo_tpb(prefix: &str, p: &TpbParams) -> Vec<(String, String)> {
    vec![
        (format!("{prefix}.detuning"), format!("{}", p.detuning)),
        (format!("{prefix}.coupling"), format!("{}", p.coupling)),
        (format!("{prefix}.drive"), format!("{}", p.drive)),
        (format!("{prefix}.kappa"), format!("{}", p.kappa)),
        (format!("{prefix}.gamma"), format!("{}", p.gamma)),
        (format!("{prefix}.n_thermal"), format!("{}", p.n_thermal)),
        (format!("{prefix}.n_max"), format!("{}", p.n_max)),
    ]
}

/// Effective Jaynes-Cummings parameters, for the CSV header.
pub fn echo_jc(prefix: &str, p: &JcParams) -> Vec<(String, String)> {
    vec![
        (format!("{prefix}.detuning"), format!("{}", p.detuning)),
        (format!("{prefix}.coupling"), format!("{}", p.coupling)),
        (format!("{prefix}.cavity_drive"), format!("{}", p.cavity_drive)),
        (format!("{prefix}.qubit_drive"), format!("{}", p.qubit_drive)),
        (format!("{prefix}.kappa"), format!("{}", p.kappa)),
        (format!("{prefix}.gamma"), format!("{}", p.gamma)),
        (format!("{prefix}.n_thermal"), format!("{}", p.n_thermal)),
        (format!("{prefix}.n_max"), format!("{}", p.n_max)),
    ]
}

/// Effective axis definition, for the CSV header.
pub fn echo_axis(prefix: &str, axis: &crate::grid::Axis) -> Vec<(String, String)> {
    vec![
        (format!("{prefix}.param"), axis.param.clone()),
        (format!("{prefix}.min"), format!("{}", axis.min)),
        (format!("{prefix}.max"), format!("{}", axis.max)),
        (format!("{prefix}.count"), format!("{}", axis.count)),
        (
            format!("{prefix}.scale"),
            if axis.log { "log" } else { "linear" }.to_string(),
        ),
    ]
}

/// Three-body parameters from `tpb.*` keys, defaults from the library.
pub fn tpb_params(cfg: &Config, defaults: TpbParams) -> Result<TpbParams, CliError> {
    Ok(TpbParams {
        detuning: cfg.get_f64_or("tpb.detuning", defaults.detuning)?,
        coupling: cfg.get_f64_or("tpb.coupling", defaults.coupling)?,
        drive: cfg.get_f64_or("tpb.drive", defaults.drive)?,
        kappa: cfg.get_f64_or("tpb.kappa", defaults.kappa)?,
        gamma: cfg.get_f64_or("tpb.gamma", defaults.gamma)?,
        n_thermal: cfg.get_f64_or("tpb.n_thermal", defaults.n_thermal)?,
        n_max: cfg.get_usize_or("tpb.n_max", defaults.n_max)?,
    })
}

/// Jaynes-Cummings parameters from `jc.*` keys; `jc.drive_ratio` sets the
/// qubit drive as a multiple of the cavity drive.
pub fn jc_params(cfg: &Config, defaults: JcParams) -> Result<JcParams, CliError> {
    let cavity_drive = cfg.get_f64_or("jc.cavity_drive", defaults.cavity_drive)?;
    let qubit_drive = match cfg.get_f64("jc.drive_ratio")? {
        Some(ratio) => ratio * cavity_drive,
        None => cfg.get_f64_or("jc.qubit_drive", defaults.qubit_drive)?,
    };
    Ok(JcParams {
        detuning: cfg.get_f64_or("jc.detuning", defaults.detuning)?,
        coupling: cfg.get_f64_or("jc.coupling", defaults.coupling)?,
        cavity_drive,
        qubit_drive,
        kappa: cfg.get_f64_or("jc.kappa", defaults.kappa)?,
        gamma: cfg.get_f64_or("jc.gamma", defaults.gamma)?,
        n_thermal: cfg.get_f64_or("jc.n_thermal", defaults.n_thermal)?,
        n_max: cfg.get_usize_or("jc.n_max", defaults.n_max)?,
    })
}
