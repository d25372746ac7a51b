//! One- or two-axis parameter sweep of a single model.
//!
//! Keys: `model` (tpb|jc), `solver` (numeric|analytic|both),
//! `analytic.method` (truncated|asymptotic, three-body model only),
//! `analytic.regime` (auto|weak|strong, asymptotic branch),
//! `outputs` (subset of n, npair, g2_0, s), model parameters under
//! `tpb.*` / `jc.*`, and axes under `axis1.*` / `axis2.*` where
//! `param` names a model parameter.

use blockade::analytics::{
    jc_amplitudes, tpb_g2_approx, tpb_mean_photons_approx, tpb_truncated_steady,
    tpb_two_photon_approx, CouplingRegime,
};
use blockade::models::{jc_steady_observables, tpb_steady_observables, JcParams, TpbParams};

use crate::config::Config;
use crate::csvout::CsvDoc;
use crate::grid::{run_rows, Axis};
use crate::CliError;

#[derive(Clone, Copy, PartialEq)]
enum Solver {
    Numeric,
    Analytic,
    Both,
}

#[derive(Clone, Copy, PartialEq)]
enum Method {
    Truncated,
    Asymptotic,
}

struct SweepPlan {
    model_is_tpb: bool,
    solver: Solver,
    method: Method,
    regime: CouplingRegime,
    outputs: Vec<String>,
    axes: Vec<Axis>,
    tpb: TpbParams,
    jc: JcParams,
}

fn apply_tpb(p: &TpbParams, param: &str, value: f64) -> Result<TpbParams, String> {
    let mut p = *p;
    match param {
        "detuning" => p.detuning = value,
        "coupling" => p.coupling = value,
        "drive" => p.drive = value,
        "kappa" => p.kappa = value,
        "gamma" => p.gamma = value,
        "n_thermal" => p.n_thermal = value,
        other => return Err(format!("unknown tpb sweep parameter `{other}`")),
    }
    Ok(p)
}

fn apply_jc(p: &JcParams, param: &str, value: f64) -> Result<JcParams, String> {
    let mut p = *p;
    match param {
        "detuning" => p.detuning = value,
        "coupling" => p.coupling = value,
        "cavity_drive" => p.cavity_drive = value,
        "qubit_drive" => p.qubit_drive = value,
        "drive_ratio" => p.qubit_drive = value * p.cavity_drive,
        "kappa" => p.kappa = value,
        "gamma" => p.gamma = value,
        "n_thermal" => p.n_thermal = value,
        other => return Err(format!("unknown jc sweep parameter `{other}`")),
    }
    Ok(p)
}

/// (N, two-photon population, g2 or NaN, S) for one parameter point.
type Quad = [f64; 4];

fn numeric_quad_tpb(p: &TpbParams) -> Result<Quad, String> {
    let obs = tpb_steady_observables(p).map_err(|e| e.to_string())?;
    Ok([
        obs.mean_photons,
        obs.two_photon,
        obs.g2_zero.unwrap_or(f64::NAN),
        obs.emission_rate,
    ])
}

fn numeric_quad_jc(p: &JcParams) -> Result<Quad, String> {
    let obs = jc_steady_observables(p).map_err(|e| e.to_string())?;
    Ok([
        obs.mean_photons,
        obs.two_photon,
        obs.g2_zero.unwrap_or(f64::NAN),
        obs.emission_rate,
    ])
}

fn analytic_quad_tpb(p: &TpbParams, method: Method, regime: CouplingRegime) -> Result<Quad, String> {
    match method {
        Method::Truncated => {
            let rho = tpb_truncated_steady(p).map_err(|e| e.to_string())?;
            let n = rho.mean_photons();
            let npair = rho.two_photon();
            let g2 = rho.g2_zero().unwrap_or(f64::NAN);
            Ok([n, npair, g2, p.kappa * n])
        }
        Method::Asymptotic => {
            let n = tpb_mean_photons_approx(p);
            let npair = tpb_two_photon_approx(p, regime);
            let g2 = tpb_g2_approx(p, regime).unwrap_or(f64::NAN);
            Ok([n, npair, g2, p.kappa * n])
        }
    }
}

fn analytic_quad_jc(p: &JcParams) -> Result<Quad, String> {
    let amps = jc_amplitudes(p).map_err(|e| e.to_string())?;
    let n = amps.mean_photons();
    let npair = amps.amp_2g.norm_sqr();
    let g2 = amps.g2_zero().unwrap_or(f64::NAN);
    Ok([n, npair, g2, p.kappa * n])
}

fn output_index(name: &str) -> Result<usize, CliError> {
    match name {
        "n" => Ok(0),
        "npair" => Ok(1),
        "g2_0" | "g2" => Ok(2),
        "s" => Ok(3),
        other => Err(CliError::Config(format!(
            "unknown output `{other}` (expected n, npair, g2_0, s)"
        ))),
    }
}

fn parse_plan(cfg: &Config) -> Result<SweepPlan, CliError> {
    let model = cfg.get_str_or("model", "tpb");
    let model_is_tpb = match model.as_str() {
        "tpb" => true,
        "jc" => false,
        other => {
            return Err(CliError::Config(format!(
                "model must be `tpb` or `jc`, got `{other}`"
            )))
        }
    };
    let solver = match cfg.get_str_or("solver", "numeric").as_str() {
        "numeric" => Solver::Numeric,
        "analytic" => Solver::Analytic,
        "both" => Solver::Both,
        other => {
            return Err(CliError::Config(format!(
                "solver must be numeric, analytic, or both, got `{other}`"
            )))
        }
    };
    let method = match cfg.get_str_or("analytic.method", "truncated").as_str() {
        "truncated" => Method::Truncated,
        "asymptotic" => Method::Asymptotic,
        other => {
            return Err(CliError::Config(format!(
                "analytic.method must be truncated or asymptotic, got `{other}`"
            )))
        }
    };
    let regime = match cfg.get_str_or("analytic.regime", "auto").as_str() {
        "auto" => CouplingRegime::Auto,
        "weak" => CouplingRegime::Weak,
        "strong" => CouplingRegime::Strong,
        other => {
            return Err(CliError::Config(format!(
                "analytic.regime must be auto, weak, or strong, got `{other}`"
            )))
        }
    };
    let outputs = cfg.get_str_list_or("outputs", &["n", "npair", "g2_0"]);
    for o in &outputs {
        output_index(o)?;
    }

    let axis1 = Axis::from_config(cfg, "axis1")?
        .ok_or_else(|| CliError::Config("axis1.param is required".into()))?;
    let mut axes = vec![axis1];
    if let Some(axis2) = Axis::from_config(cfg, "axis2")? {
        axes.push(axis2);
    }

    let tpb = super::tpb_params(cfg, TpbParams::default())?;
    let jc = super::jc_params(cfg, JcParams::default())?;
    Ok(SweepPlan {
        model_is_tpb,
        solver,
        method,
        regime,
        outputs,
        axes,
        tpb,
        jc,
    })
}

pub fn run(cfg: &Config, workers: usize) -> Result<CsvDoc, CliError> {
    let plan = parse_plan(cfg)?;
    cfg.ensure_fully_consumed()?;

    let values: Vec<Vec<f64>> = plan.axes.iter().map(|a| a.values()).collect();
    let total: usize = values.iter().map(|v| v.len()).product();

    let mut columns: Vec<String> = plan.axes.iter().map(|a| a.param.clone()).collect();
    let solvers: Vec<(&str, bool)> = match plan.solver {
        Solver::Numeric => vec![("numeric", false)],
        Solver::Analytic => vec![("analytic", true)],
        Solver::Both => vec![("numeric", false), ("analytic", true)],
    };
    for (tag, _) in &solvers {
        for out in &plan.outputs {
            if solvers.len() == 1 {
                columns.push(out.clone());
            } else {
                columns.push(format!("{out}_{tag}"));
            }
        }
    }

    let rows = run_rows(total, workers, |idx| {
        // Row-major order: axis1 outer, axis2 inner.
        let coords: Vec<f64> = if values.len() == 1 {
            vec![values[0][idx]]
        } else {
            let inner = values[1].len();
            vec![values[0][idx / inner], values[1][idx % inner]]
        };
        let mut row: Vec<f64> = coords.clone();
        for (_, analytic) in &solvers {
            let quad = if plan.model_is_tpb {
                let mut p = plan.tpb;
                for (axis, &v) in plan.axes.iter().zip(&coords) {
                    p = apply_tpb(&p, &axis.param, v)?;
                }
                if *analytic {
                    analytic_quad_tpb(&p, plan.method, plan.regime)?
                } else {
                    numeric_quad_tpb(&p)?
                }
            } else {
                let mut p = plan.jc;
                for (axis, &v) in plan.axes.iter().zip(&coords) {
                    p = apply_jc(&p, &axis.param, v)?;
                }
                if *analytic {
                    analytic_quad_jc(&p)?
                } else {
                    numeric_quad_jc(&p)?
                }
            };
            for out in &plan.outputs {
                row.push(quad[output_index(out).map_err(|e| e.to_string())?]);
            }
        }
        Ok(row)
    });

    let mut header = super::tolerance_header();
    header.push(("model".into(), if plan.model_is_tpb { "tpb" } else { "jc" }.into()));
    header.push((
        "solver".into(),
        match plan.solver {
            Solver::Numeric => "numeric",
            Solver::Analytic => "analytic",
            Solver::Both => "both",
        }
        .into(),
    ));
    if plan.solver != Solver::Numeric && plan.model_is_tpb {
        header.push((
            "analytic.method".into(),
            match plan.method {
                Method::Truncated => "truncated",
                Method::Asymptotic => "asymptotic",
            }
            .into(),
        ));
        if plan.method == Method::Asymptotic {
            header.push((
                "analytic.regime".into(),
                match plan.regime {
                    CouplingRegime::Auto => "auto",
                    CouplingRegime::Weak => "weak",
                    CouplingRegime::Strong => "strong",
                }
                .into(),
            ));
        }
    }
    header.push(("outputs".into(), plan.outputs.join(",")));
    if plan.model_is_tpb {
        header.extend(super::echo_tpb("tpb", &plan.tpb));
    } else {
        header.extend(super::echo_jc("jc", &plan.jc));
    }
    for (i, axis) in plan.axes.iter().enumerate() {
        header.extend(super::echo_axis(&format!("axis{}", i + 1), axis));
    }
    header.sort();

    Ok(CsvDoc {
        header,
        columns,
        rows,
        footer: Vec::new(),
    })
}
