//! Flat key-value run configuration with dotted section keys.
//!
//! Grammar, one entry per line:
//!
//! ```text
//! # comment (blank lines ignored)
//! key.with.dots = value
//! list.key = a, b, c
//! ```
//!
//! Keys are case-sensitive. `--set key=value` overrides file entries.
//! Every key must be consumed by the command that runs; leftovers are
//! reported as configuration errors to catch typos.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use crate::CliError;

#[derive(Debug, Default)]
pub struct Config {
    entries: BTreeMap<String, String>,
    consumed: RefCell<BTreeSet<String>>,
}

impl Config {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Self::empty();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Config(format!(
                    "{}:{}: expected `key = value`, got `{raw}`",
                    path.display(),
                    lineno + 1
                )));
            };
            let key = key.trim();
            let value = value.trim();
            if key.is_empty() {
                return Err(CliError::Config(format!(
                    "{}:{}: empty key",
                    path.display(),
                    lineno + 1
                )));
            }
            if cfg.entries.insert(key.to_string(), value.to_string()).is_some() {
                return Err(CliError::Config(format!(
                    "{}:{}: duplicate key `{key}`",
                    path.display(),
                    lineno + 1
                )));
            }
        }
        Ok(cfg)
    }

    /// Apply a `--set key=value` override.
    pub fn apply_set(&mut self, spec: &str) -> Result<(), CliError> {
        let Some((key, value)) = spec.split_once('=') else {
            return Err(CliError::Config(format!(
                "--set `{spec}`: expected KEY=VALUE"
            )));
        };
        self.entries
            .insert(key.trim().to_string(), value.trim().to_string());
        Ok(())
    }

    fn take(&self, key: &str) -> Option<&str> {
        let hit = self.entries.get(key).map(|s| s.as_str());
        if hit.is_some() {
            self.consumed.borrow_mut().insert(key.to_string());
        }
        hit
    }

    pub fn get_str_or(&self, key: &str, default: &str) -> String {
        self.take(key).unwrap_or(default).to_string()
    }

    pub fn get_f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        match self.take(key) {
            None => Ok(None),
            Some(v) => v.parse::<f64>().map(Some).map_err(|_| {
                CliError::Config(format!("key `{key}`: `{v}` is not a number"))
            }),
        }
    }

    pub fn get_f64_or(&self, key: &str, default: f64) -> Result<f64, CliError> {
        Ok(self.get_f64(key)?.unwrap_or(default))
    }

    pub fn get_usize_or(&self, key: &str, default: usize) -> Result<usize, CliError> {
        match self.take(key) {
            None => Ok(default),
            Some(v) => v.parse::<usize>().map_err(|_| {
                CliError::Config(format!("key `{key}`: `{v}` is not a non-negative integer"))
            }),
        }
    }

    /// Comma-separated list of numbers.
    pub fn get_f64_list_or(&self, key: &str, default: &[f64]) -> Result<Vec<f64>, CliError> {
        match self.take(key) {
            None => Ok(default.to_vec()),
            Some(v) => v
                .split(',')
                .map(|t| {
                    let t = t.trim();
                    t.parse::<f64>().map_err(|_| {
                        CliError::Config(format!("key `{key}`: `{t}` is not a number"))
                    })
                })
                .collect(),
        }
    }

    /// Comma-separated list of identifiers.
    pub fn get_str_list_or(&self, key: &str, default: &[&str]) -> Vec<String> {
        match self.take(key) {
            None => default.iter().map(|s| s.to_string()).collect(),
            Some(v) => v.split(',').map(|t| t.trim().to_string()).collect(),
        }
    }

    /// Error out on configured keys no command setting consumed.
    pub fn ensure_fully_consumed(&self) -> Result<(), CliError> {
        let consumed = self.consumed.borrow();
        let unknown: Vec<&String> = self
            .entries
            .keys()
            .filter(|k| !consumed.contains(*k))
            .collect();
        if unknown.is_empty() {
            return Ok(());
        }
        let mut msg = String::from("unrecognized config keys:");
        for k in unknown {
            let _ = write!(msg, " `{k}`");
        }
        Err(CliError::Config(msg))
    }

}
