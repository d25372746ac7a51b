//! g²(0) of the three mechanisms versus thermal bath occupation, with the
//! smallest occupation crossing a blockade threshold reported per
//! mechanism in the CSV footer.
//!
//! Keys: `grid.min`, `grid.max`, `grid.count` (log-spaced n_th),
//! `threshold` (default 0.01), and mechanism parameters as in `g2tau`
//! (`tpb.*`, `cpb.*`, `upb.*`). Thermal occupation enters every decay
//! channel (cavity and qubits) with the same n_th.

use blockade::analytics::upb_detuning_for_ratio;
use blockade::models::{jc_steady_observables, tpb_steady_observables, JcParams, TpbParams};

use crate::config::Config;
use crate::csvout::CsvDoc;
use crate::grid::{run_rows, Axis};
use crate::CliError;

pub struct Settings {
    pub grid: Axis,
    pub threshold: f64,
    pub tpb: TpbParams,
    pub cpb: JcParams,
    pub upb: JcParams,
}

pub fn settings(cfg: &Config) -> Result<Settings, CliError> {
    let grid = Axis {
        param: "n_th".into(),
        min: cfg.get_f64_or("grid.min", 1e-12)?,
        max: cfg.get_f64_or("grid.max", 1e-2)?,
        count: cfg.get_usize_or("grid.count", 41)?,
        log: true,
    };
    grid.validate("grid")?;
    let threshold = cfg.get_f64_or("threshold", 1e-2)?;
    if !(threshold > 0.0) {
        return Err(CliError::Config("threshold must be positive".into()));
    }

    let tpb = TpbParams {
        detuning: cfg.get_f64_or("tpb.detuning", 0.0)?,
        coupling: cfg.get_f64_or("tpb.coupling", 0.1)?,
        drive: cfg.get_f64_or("tpb.drive", 0.01)?,
        kappa: 1.0,
        gamma: cfg.get_f64_or("tpb.gamma", 0.01)?,
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

    // The interference mechanism sits at its deep working point: a coupling
    // where the configured drive ratio is near the exact optimum.
    let upb_coupling = cfg.get_f64_or("upb.coupling", 0.01)?;
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
        grid,
        threshold,
        tpb,
        cpb,
        upb,
    })
}

pub fn evaluate_point(s: &Settings, n_th: f64) -> Result<[f64; 4], String> {
    let tpb = tpb_steady_observables(&TpbParams {
        n_thermal: n_th,
        ..s.tpb
    })
    .map_err(|e| format!("tpb: {e}"))?;
    let cpb = jc_steady_observables(&JcParams {
        n_thermal: n_th,
        ..s.cpb
    })
    .map_err(|e| format!("cpb: {e}"))?;
    let upb = jc_steady_observables(&JcParams {
        n_thermal: n_th,
        ..s.upb
    })
    .map_err(|e| format!("upb: {e}"))?;
    Ok([
        n_th,
        tpb.g2_zero.unwrap_or(f64::NAN),
        cpb.g2_zero.unwrap_or(f64::NAN),
        upb.g2_zero.unwrap_or(f64::NAN),
    ])
}

/// Smallest grid occupation whose g² reaches the threshold.
pub fn crossing(grid: &[f64], g2: &[f64], threshold: f64) -> Option<f64> {
    grid.iter()
        .zip(g2)
        .find(|(_, &g)| g >= threshold)
        .map(|(&n, _)| n)
}

pub fn run(cfg: &Config, workers: usize) -> Result<CsvDoc, CliError> {
    let s = settings(cfg)?;
    cfg.ensure_fully_consumed()?;
    let values = s.grid.values();
    let rows = run_rows(values.len(), workers, |i| {
        evaluate_point(&s, values[i]).map(|v| v.to_vec())
    });

    // Threshold crossings from the completed rows.
    let mut footer = Vec::new();
    for (col, tag) in [(1usize, "tpb"), (2, "cpb"), (3, "upb")] {
        let series: Vec<f64> = rows
            .iter()
            .map(|r| r.as_ref().map(|v| v[col]).unwrap_or(f64::NAN))
            .collect();
        let cross = crossing(&values, &series, s.threshold);
        footer.push((
            format!("crossing.g2_{tag}"),
            cross.map_or("none".to_string(), |v| format!("{v:.6e}")),
        ));
    }

    let mut header = super::tolerance_header();
    header.extend([
        ("grid.min".to_string(), format!("{}", s.grid.min)),
        ("grid.max".to_string(), format!("{}", s.grid.max)),
        ("grid.count".to_string(), format!("{}", s.grid.count)),
        ("grid.scale".to_string(), "log".to_string()),
        ("threshold".to_string(), format!("{}", s.threshold)),
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
        columns: vec![
            "n_th".into(),
            "g2_tpb".into(),
            "g2_cpb".into(),
            "g2_upb".into(),
        ],
        rows,
        footer,
    })
}
