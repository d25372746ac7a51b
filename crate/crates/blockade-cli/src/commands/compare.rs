//! Brightness/purity comparison of the three blockade mechanisms on a
//! shared log₁₀(κ/J) grid, with the coupling J = G as the unit.
//!
//! Keys: `grid.min`, `grid.max` (log₁₀(κ/J)), `grid.count`, and per
//! mechanism `tpb.gamma_over_kappa`, `tpb.drive_over_kappa`, `tpb.n_max`,
//! `cpb.gamma_over_kappa`, `cpb.drive_over_coupling`, `cpb.n_max`,
//! `upb.gamma_over_kappa`, `upb.drive_over_coupling`, `upb.drive_ratio`,
//! `upb.n_max`. The conventional-blockade detuning sits on the dressed
//! resonance Δ₀ = G; the unconventional detuning follows the interference
//! condition at the configured drive ratio.

use blockade::analytics::upb_detuning_for_ratio;
use blockade::models::{jc_steady_observables, tpb_steady_observables, JcParams, TpbParams};

use crate::config::Config;
use crate::csvout::CsvDoc;
use crate::grid::{run_rows, Axis};
use crate::CliError;

pub struct Settings {
    pub grid: Axis,
    pub tpb_gamma_over_kappa: f64,
    pub tpb_drive_over_kappa: f64,
    pub tpb_n_max: usize,
    pub cpb_gamma_over_kappa: f64,
    pub cpb_drive_over_coupling: f64,
    pub cpb_n_max: usize,
    pub upb_gamma_over_kappa: f64,
    pub upb_drive_over_coupling: f64,
    pub upb_drive_ratio: f64,
    pub upb_n_max: usize,
}

pub fn settings(cfg: &Config) -> Result<Settings, CliError> {
    let grid = Axis {
        param: "log10_kappa_over_j".into(),
        min: cfg.get_f64_or("grid.min", -2.0)?,
        max: cfg.get_f64_or("grid.max", 2.0)?,
        count: cfg.get_usize_or("grid.count", 17)?,
        log: false,
    };
    grid.validate("grid")?;
    Ok(Settings {
        grid,
        tpb_gamma_over_kappa: cfg.get_f64_or("tpb.gamma_over_kappa", 0.01)?,
        tpb_drive_over_kappa: cfg.get_f64_or("tpb.drive_over_kappa", 0.02)?,
        tpb_n_max: cfg.get_usize_or("tpb.n_max", 5)?,
        cpb_gamma_over_kappa: cfg.get_f64_or("cpb.gamma_over_kappa", 0.01)?,
        cpb_drive_over_coupling: cfg.get_f64_or("cpb.drive_over_coupling", 0.01)?,
        cpb_n_max: cfg.get_usize_or("cpb.n_max", 5)?,
        upb_gamma_over_kappa: cfg.get_f64_or("upb.gamma_over_kappa", 0.01)?,
        upb_drive_over_coupling: cfg.get_f64_or("upb.drive_over_coupling", 0.01)?,
        upb_drive_ratio: cfg.get_f64_or("upb.drive_ratio", 5.0)?,
        upb_n_max: cfg.get_usize_or("upb.n_max", 5)?,
    })
}

/// One comparison row at κ/J = `kappa` (J = 1): scaled emission rates and
/// g²(0) of the three mechanisms.
pub fn evaluate_point(s: &Settings, kappa: f64) -> Result<[f64; 7], String> {
    let coupling = 1.0;

    let tpb = TpbParams {
        detuning: 0.0,
        coupling,
        drive: s.tpb_drive_over_kappa * kappa,
        kappa,
        gamma: s.tpb_gamma_over_kappa * kappa,
        n_thermal: 0.0,
        n_max: s.tpb_n_max,
    };
    let tpb_obs = tpb_steady_observables(&tpb).map_err(|e| format!("tpb: {e}"))?;

    let cpb = JcParams {
        detuning: coupling,
        coupling,
        cavity_drive: s.cpb_drive_over_coupling * coupling,
        qubit_drive: 0.0,
        kappa,
        gamma: s.cpb_gamma_over_kappa * kappa,
        n_thermal: 0.0,
        n_max: s.cpb_n_max,
    };
    let cpb_obs = jc_steady_observables(&cpb).map_err(|e| format!("cpb: {e}"))?;

    let upb_gamma = s.upb_gamma_over_kappa * kappa;
    let upb = JcParams {
        detuning: upb_detuning_for_ratio(coupling, kappa, upb_gamma, s.upb_drive_ratio),
        coupling,
        cavity_drive: s.upb_drive_over_coupling * coupling,
        qubit_drive: s.upb_drive_over_coupling * coupling * s.upb_drive_ratio,
        kappa,
        gamma: upb_gamma,
        n_thermal: 0.0,
        n_max: s.upb_n_max,
    };
    let upb_obs = jc_steady_observables(&upb).map_err(|e| format!("upb: {e}"))?;

    Ok([
        kappa,
        tpb_obs.emission_rate,
        cpb_obs.emission_rate,
        upb_obs.emission_rate,
        tpb_obs.g2_zero.unwrap_or(f64::NAN),
        cpb_obs.g2_zero.unwrap_or(f64::NAN),
        upb_obs.g2_zero.unwrap_or(f64::NAN),
    ])
}

pub fn header(s: &Settings) -> Vec<(String, String)> {
    let mut h = super::tolerance_header();
    h.extend([
        ("grid.min".to_string(), format!("{}", s.grid.min)),
        ("grid.max".to_string(), format!("{}", s.grid.max)),
        ("grid.count".to_string(), format!("{}", s.grid.count)),
        ("tpb.detuning".to_string(), "0".to_string()),
        ("tpb.gamma_over_kappa".to_string(), format!("{}", s.tpb_gamma_over_kappa)),
        ("tpb.drive_over_kappa".to_string(), format!("{}", s.tpb_drive_over_kappa)),
        ("tpb.n_max".to_string(), format!("{}", s.tpb_n_max)),
        ("cpb.detuning".to_string(), "coupling".to_string()),
        ("cpb.gamma_over_kappa".to_string(), format!("{}", s.cpb_gamma_over_kappa)),
        ("cpb.drive_over_coupling".to_string(), format!("{}", s.cpb_drive_over_coupling)),
        ("cpb.n_max".to_string(), format!("{}", s.cpb_n_max)),
        ("upb.detuning".to_string(), "interference".to_string()),
        ("upb.gamma_over_kappa".to_string(), format!("{}", s.upb_gamma_over_kappa)),
        ("upb.drive_over_coupling".to_string(), format!("{}", s.upb_drive_over_coupling)),
        ("upb.drive_ratio".to_string(), format!("{}", s.upb_drive_ratio)),
        ("upb.n_max".to_string(), format!("{}", s.upb_n_max)),
    ]);
    h.sort();
    h
}

pub fn run(cfg: &Config, workers: usize) -> Result<CsvDoc, CliError> {
    let s = settings(cfg)?;
    cfg.ensure_fully_consumed()?;
    let exponents = s.grid.values();
    let rows = run_rows(exponents.len(), workers, |i| {
        let kappa = 10f64.powf(exponents[i]);
        evaluate_point(&s, kappa).map(|vals| vals.to_vec())
    });
    Ok(CsvDoc {
        header: header(&s),
        columns: vec![
            "kappa_over_j".into(),
            "s_tpb_over_j".into(),
            "s_cpb_over_j".into(),
            "s_upb_over_j".into(),
            "g2_tpb".into(),
            "g2_cpb".into(),
            "g2_upb".into(),
        ],
        rows,
        footer: Vec::new(),
    })
}
