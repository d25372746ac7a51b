//! Coupler strengths J, g₁, g₂ versus external flux for one or more
//! coupler junction energies.
//!
//! Keys: `circuit.e_j` (comma list, GHz), `circuit.eta`, `circuit.d`,
//! `circuit.l` (metres), the resonator line given either as
//! `circuit.impedance` (Ω) + `circuit.frequency_ghz` or as raw
//! `circuit.c0` / `circuit.l0`, transmon energies
//! `circuit.ej1/ec1/ej2/ec2` (GHz), `circuit.alpha`, and the flux grid
//! `flux.min/max/count` in units of Φ₀. Couplings are reported in GHz.

use blockade::circuit::{cancellation, CircuitParams};

use crate::config::Config;
use crate::csvout::CsvDoc;
use crate::grid::{run_rows, Axis};
use crate::CliError;

pub struct Settings {
    pub flux: Axis,
    pub junction_energies: Vec<f64>,
    pub base: CircuitParams,
}

fn column_suffix(value: f64) -> String {
    format!("ej{}", value).replace('.', "p").replace('-', "m")
}

pub fn settings(cfg: &Config) -> Result<Settings, CliError> {
    let flux = Axis {
        param: "flux".into(),
        min: cfg.get_f64_or("flux.min", 0.0)?,
        max: cfg.get_f64_or("flux.max", 1.0)?,
        count: cfg.get_usize_or("flux.count", 201)?,
        log: false,
    };
    flux.validate("flux")?;

    let junction_energies = cfg.get_f64_list_or("circuit.e_j", &[5.0, 10.0, 20.0])?;
    if junction_energies.is_empty() {
        return Err(CliError::Config("circuit.e_j must list at least one energy".into()));
    }

    let defaults = CircuitParams::default();
    let length = cfg.get_f64_or("circuit.l", defaults.length)?;
    let (cap_per_len, ind_per_len) = match (cfg.get_f64("circuit.c0")?, cfg.get_f64("circuit.l0")?) {
        (Some(c0), Some(l0)) => (c0, l0),
        (None, None) => {
            let impedance = cfg.get_f64_or("circuit.impedance", 50.0)?;
            let freq = cfg.get_f64_or("circuit.frequency_ghz", 6.0)? * 1e9;
            if !(impedance > 0.0) || !(freq > 0.0) || !(length > 0.0) {
                return Err(CliError::Config(
                    "impedance, frequency, and length must be positive".into(),
                ));
            }
            // Half-wave mode: v = 2·f·l; c₀ = 1/(v·Z); l₀ = Z/v.
            let velocity = 2.0 * freq * length;
            (1.0 / (velocity * impedance), impedance / velocity)
        }
        _ => {
            return Err(CliError::Config(
                "give both circuit.c0 and circuit.l0, or neither".into(),
            ))
        }
    };

    let alpha = cfg.get_f64_or("circuit.alpha", defaults.asymmetry)?;
    let bias = cancellation(alpha).map_err(|e| CliError::Config(e.to_string()))?;

    let base = CircuitParams {
        coupler_josephson: junction_energies[0],
        asymmetry: alpha,
        asymmetry_beta: bias.beta,
        constriction: cfg.get_f64_or("circuit.eta", defaults.constriction)?,
        segment: cfg.get_f64_or("circuit.d", defaults.segment)?,
        length,
        cap_per_len,
        ind_per_len,
        transmon1_josephson: cfg.get_f64_or("circuit.ej1", defaults.transmon1_josephson)?,
        transmon1_charging: cfg.get_f64_or("circuit.ec1", defaults.transmon1_charging)?,
        transmon2_josephson: cfg.get_f64_or("circuit.ej2", defaults.transmon2_josephson)?,
        transmon2_charging: cfg.get_f64_or("circuit.ec2", defaults.transmon2_charging)?,
        flux_bias: 0.5,
        flux_bias2: bias.flux_phase,
    };
    base.validate().map_err(|e| CliError::Config(e.to_string()))?;

    Ok(Settings {
        flux,
        junction_energies,
        base,
    })
}

pub fn run(cfg: &Config, workers: usize) -> Result<CsvDoc, CliError> {
    let s = settings(cfg)?;
    cfg.ensure_fully_consumed()?;

    let flux_values = s.flux.values();
    let mut columns = vec!["flux".to_string()];
    for &ej in &s.junction_energies {
        let suffix = column_suffix(ej);
        columns.push(format!("j_{suffix}"));
        columns.push(format!("g1_{suffix}"));
        columns.push(format!("g2_{suffix}"));
    }

    let rows = run_rows(flux_values.len(), workers, |i| {
        let flux = flux_values[i];
        let mut row = vec![flux];
        for &ej in &s.junction_energies {
            let params = CircuitParams {
                coupler_josephson: ej,
                ..s.base
            };
            let c = params.couplings_at(flux).map_err(|e| e.to_string())?;
            row.push(c.three_body);
            row.push(c.qubit1);
            row.push(c.qubit2);
        }
        Ok(row)
    });

    let report = s.base.report().map_err(|e| CliError::Config(e.to_string()))?;
    let mut header = vec![
        ("flux.min".to_string(), format!("{}", s.flux.min)),
        ("flux.max".to_string(), format!("{}", s.flux.max)),
        ("flux.count".to_string(), format!("{}", s.flux.count)),
        (
            "circuit.e_j".to_string(),
            s.junction_energies
                .iter()
                .map(|v| format!("{v}"))
                .collect::<Vec<_>>()
                .join(","),
        ),
        ("circuit.eta".to_string(), format!("{}", s.base.constriction)),
        ("circuit.d".to_string(), format!("{}", s.base.segment)),
        ("circuit.l".to_string(), format!("{}", s.base.length)),
        ("circuit.c0".to_string(), format!("{}", s.base.cap_per_len)),
        ("circuit.l0".to_string(), format!("{}", s.base.ind_per_len)),
        ("circuit.ej1".to_string(), format!("{}", s.base.transmon1_josephson)),
        ("circuit.ec1".to_string(), format!("{}", s.base.transmon1_charging)),
        ("circuit.ej2".to_string(), format!("{}", s.base.transmon2_josephson)),
        ("circuit.ec2".to_string(), format!("{}", s.base.transmon2_charging)),
        ("circuit.alpha".to_string(), format!("{}", s.base.asymmetry)),
        ("circuit.beta".to_string(), format!("{}", s.base.asymmetry_beta)),
        ("circuit.flux_phase2_rad".to_string(), format!("{}", s.base.flux_bias2)),
        ("derived.qubit1_ghz".to_string(), format!("{}", report.qubit_frequencies[0])),
        ("derived.qubit2_ghz".to_string(), format!("{}", report.qubit_frequencies[1])),
        ("derived.resonator_ghz".to_string(), format!("{}", report.resonator_frequency)),
        ("derived.impedance_ohm".to_string(), format!("{}", report.resonator_impedance)),
        ("derived.segment_zpf".to_string(), format!("{}", report.segment_zpf)),
        ("units".to_string(), "couplings in GHz (J/2pi), flux in flux quanta".to_string()),
    ];
    for (i, w) in report.warnings.iter().enumerate() {
        header.push((format!("warning.{i}"), w.clone()));
    }
    header.sort();

    Ok(CsvDoc {
        header,
        columns,
        rows,
        footer: Vec::new(),
    })
}
