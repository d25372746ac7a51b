//! Time-delayed g²(t) traces for the three mechanisms on a shared time
//! grid (units of 1/κ).
//!
//! Keys: `time.max`, `time.count`, and mechanism parameters
//! `tpb.{detuning,coupling,drive,gamma,n_max}`,
//! `cpb.{coupling,gamma,drive_over_coupling,n_max}` (Δ₀ = G),
//! `upb.{coupling,gamma,drive_over_coupling,drive_ratio,n_max}` (Δ₀ from
//! the interference condition). The cavity decay rate is the unit.

use blockade::analytics::upb_detuning_for_ratio;
use blockade::dynamics::Liouvillian;
use blockade::models::{build_jc, build_tpb, JcParams, TpbParams};
use blockade::hilbert::photon_lowering;

use crate::config::Config;
use crate::csvout::CsvDoc;
use crate::CliError;

pub struct Settings {
    pub t_max: f64,
    pub count: usize,
    pub tpb: TpbParams,
    pub cpb: JcParams,
    pub upb: JcParams,
}

pub fn settings(cfg: &Config) -> Result<Settings, CliError> {
    let t_max = cfg.get_f64_or("time.max", 500.0)?;
    let count = cfg.get_usize_or("time.count", 251)?;
    if !(t_max > 0.0) || count < 2 {
        return Err(CliError::Config(
            "time.max must be positive and time.count at least 2".into(),
        ));
    }

    let tpb = TpbParams {
        detuning: cfg.get_f64_or("tpb.detuning", 0.0)?,
        coupling: cfg.get_f64_or("tpb.coupling", 0.1)?,
        drive: cfg.get_f64_or("tpb.drive", 0.01)?,
        kappa: 1.0,
        gamma: cfg.get_f64_or("tpb.gamma", 0.1)?,
        n_thermal: 0.0,
        n_max: cfg.get_usize_or("tpb.n_max", 5)?,
    };

    let cpb_coupling = cfg.get_f64_or("cpb.coupling", 20.0)?;
    let cpb = JcParams {
        detuning: cpb_coupling,
        coupling: cpb_coupling,
        cavity_drive: cfg.get_f64_or("cpb.drive_over_coupling", 0.01)? * cpb_coupling,
        qubit_drive: 0.0,
        kappa: 1.0,
        gamma: cfg.get_f64_or("cpb.gamma", 0.01)?,
        n_thermal: 0.0,
        n_max: cfg.get_usize_or("cpb.n_max", 5)?,
    };

    let upb_coupling = cfg.get_f64_or("upb.coupling", 0.1)?;
    let upb_gamma = cfg.get_f64_or("upb.gamma", 0.01)?;
    let upb_ratio = cfg.get_f64_or("upb.drive_ratio", 5.0)?;
    let upb_drive = cfg.get_f64_or("upb.drive_over_coupling", 0.01)? * upb_coupling;
    let upb = JcParams {
        detuning: upb_detuning_for_ratio(upb_coupling, 1.0, upb_gamma, upb_ratio),
        coupling: upb_coupling,
        cavity_drive: upb_drive,
        qubit_drive: upb_drive * upb_ratio,
        kappa: 1.0,
        gamma: upb_gamma,
        n_thermal: 0.0,
        n_max: cfg.get_usize_or("upb.n_max", 5)?,
    };

    Ok(Settings {
        t_max,
        count,
        tpb,
        cpb,
        upb,
    })
}

fn trace_tpb(p: &TpbParams, grid: &[f64]) -> Result<Vec<f64>, String> {
    let (h, channels) = build_tpb(p).map_err(|e| e.to_string())?;
    let a = photon_lowering(h.space()).map_err(|e| e.to_string())?;
    let l = Liouvillian::new(&h, &channels).map_err(|e| e.to_string())?;
    let rho = l.steady_state().map_err(|e| e.to_string())?;
    let series = l.g2_tau(&rho, &a, grid).map_err(|e| e.to_string())?;
    Ok(series.into_iter().map(|(_, v)| v).collect())
}

fn trace_jc(p: &JcParams, grid: &[f64]) -> Result<Vec<f64>, String> {
    let (h, channels) = build_jc(p).map_err(|e| e.to_string())?;
    let a = photon_lowering(h.space()).map_err(|e| e.to_string())?;
    let l = Liouvillian::new(&h, &channels).map_err(|e| e.to_string())?;
    let rho = l.steady_state().map_err(|e| e.to_string())?;
    let series = l.g2_tau(&rho, &a, grid).map_err(|e| e.to_string())?;
    Ok(series.into_iter().map(|(_, v)| v).collect())
}

/// Compute the three traces; a failed mechanism yields NaNs in its column
/// plus a per-row status note.
pub fn traces(s: &Settings) -> (Vec<f64>, [Result<Vec<f64>, String>; 3]) {
    let grid: Vec<f64> = (0..s.count)
        .map(|i| s.t_max * i as f64 / (s.count - 1) as f64)
        .collect();
    let tpb = trace_tpb(&s.tpb, &grid);
    let cpb = trace_jc(&s.cpb, &grid);
    let upb = trace_jc(&s.upb, &grid);
    (grid, [tpb, cpb, upb])
}

pub fn run(cfg: &Config, _workers: usize) -> Result<CsvDoc, CliError> {
    let s = settings(cfg)?;
    cfg.ensure_fully_consumed()?;
    let (grid, [tpb, cpb, upb]) = traces(&s);

    let failures: Vec<String> = [("tpb", &tpb), ("cpb", &cpb), ("upb", &upb)]
        .iter()
        .filter_map(|(tag, r)| r.as_ref().err().map(|e| format!("{tag}: {e}")))
        .collect();

    let rows: Vec<Result<Vec<f64>, String>> = grid
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            if failures.is_empty() {
                Ok(vec![
                    t,
                    tpb.as_ref().unwrap()[i],
                    cpb.as_ref().unwrap()[i],
                    upb.as_ref().unwrap()[i],
                ])
            } else {
                Err(failures.join("; "))
            }
        })
        .collect();

    let mut header = super::tolerance_header();
    header.extend([
        ("time.max".to_string(), format!("{}", s.t_max)),
        ("time.count".to_string(), format!("{}", s.count)),
        ("cpb.detuning".to_string(), format!("{}", s.cpb.detuning)),
        ("upb.detuning".to_string(), format!("{}", s.upb.detuning)),
    ]);
    header.extend(super::echo_tpb("tpb", &s.tpb));
    header.extend(super::echo_jc("cpb", &s.cpb));
    header.extend(super::echo_jc("upb", &s.upb));
    header.sort();
    header.dedup_by(|a, b| a.0 == b.0);

    Ok(CsvDoc {
        header,
        columns: vec!["t".into(), "g2_tpb".into(), "g2_cpb".into(), "g2_upb".into()],
        rows,
        footer: Vec::new(),
    })
}
