//! Sweep axes and deterministic grid evaluation.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::config::Config;
use crate::CliError;

#[derive(Debug, Clone)]
pub struct Axis {
    pub param: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub log: bool,
}

impl Axis {
    /// Read `prefix.param/min/max/count/scale` from the config; `None` when
    /// the `param` key is absent.
    pub fn from_config(cfg: &Config, prefix: &str) -> Result<Option<Axis>, CliError> {
        let param = cfg.get_str_or(&format!("{prefix}.param"), "");
        if param.is_empty() {
            return Ok(None);
        }
        let min = cfg
            .get_f64(&format!("{prefix}.min"))?
            .ok_or_else(|| CliError::Config(format!("{prefix}.min is required")))?;
        let max = cfg
            .get_f64(&format!("{prefix}.max"))?
            .ok_or_else(|| CliError::Config(format!("{prefix}.max is required")))?;
        let count = cfg.get_usize_or(&format!("{prefix}.count"), 0)?;
        let scale = cfg.get_str_or(&format!("{prefix}.scale"), "linear");
        let log = match scale.as_str() {
            "linear" => false,
            "log" => true,
            other => {
                return Err(CliError::Config(format!(
                    "{prefix}.scale must be `linear` or `log`, got `{other}`"
                )))
            }
        };
        let axis = Axis {
            param,
            min,
            max,
            count,
            log,
        };
        axis.validate(prefix)?;
        Ok(Some(axis))
    }

    pub fn validate(&self, name: &str) -> Result<(), CliError> {
        if self.count < 2 {
            return Err(CliError::Config(format!(
                "{name}: count = {} must be at least 2",
                self.count
            )));
        }
        if !(self.min < self.max) {
            return Err(CliError::Config(format!(
                "{name}: degenerate range [{}, {}]",
                self.min, self.max
            )));
        }
        if self.log && !(self.min > 0.0) {
            return Err(CliError::Config(format!(
                "{name}: log scale requires positive bounds, got min = {}",
                self.min
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                let frac = i as f64 / (n - 1) as f64;
                if self.log {
                    let lo = self.min.log10();
                    let hi = self.max.log10();
                    10f64.powf(lo + frac * (hi - lo))
                } else {
                    self.min + frac * (self.max - self.min)
                }
            })
            .collect()
    }
}

/// Evaluate `count` rows with up to `workers` threads; results come back in
/// grid order regardless of completion order.
pub fn run_rows<F>(count: usize, workers: usize, row: F) -> Vec<Result<Vec<f64>, String>>
where
    F: Fn(usize) -> Result<Vec<f64>, String> + Sync,
{
    let workers = workers.max(1).min(count.max(1));
    let mut results: Vec<Result<Vec<f64>, String>> = Vec::with_capacity(count);
    results.resize_with(count, || Err("not evaluated".into()));
    if workers <= 1 {
        for (i, slot) in results.iter_mut().enumerate() {
            *slot = row(i);
        }
        return results;
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<std::sync::Mutex<Result<Vec<f64>, String>>> = results
        .into_iter()
        .map(std::sync::Mutex::new)
        .collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= count {
                    break;
                }
                let out = row(i);
                *slots[i].lock().unwrap() = out;
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_and_log_values() {
        let ax = Axis {
            param: "x".into(),
            min: 0.0,
            max: 1.0,
            count: 5,
            log: false,
        };
        assert_eq!(ax.values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let lg = Axis {
            param: "x".into(),
            min: 1e-2,
            max: 1e2,
            count: 5,
            log: true,
        };
        let vals = lg.values();
        for (v, expect) in vals.iter().zip([1e-2, 1e-1, 1.0, 1e1, 1e2]) {
            assert!((v - expect).abs() < 1e-12 * expect);
        }
    }

    #[test]
    fn degenerate_axis_rejected() {
        let ax = Axis {
            param: "x".into(),
            min: 1.0,
            max: 1.0,
            count: 2,
            log: false,
        };
        assert!(ax.validate("axis1").is_err());
        let ax = Axis {
            param: "x".into(),
            min: -1.0,
            max: 1.0,
            count: 3,
            log: true,
        };
        assert!(ax.validate("axis1").is_err());
    }

    #[test]
    fn parallel_rows_keep_grid_order() {
        let rows = run_rows(100, 8, |i| {
            if i == 17 {
                Err("boom".into())
            } else {
                Ok(vec![i as f64])
            }
        });
        assert_eq!(rows.len(), 100);
        for (i, r) in rows.iter().enumerate() {
            if i == 17 {
                assert!(r.is_err());
            } else {
                assert_eq!(r.as_ref().unwrap()[0], i as f64);
            }
        }
    }
}
