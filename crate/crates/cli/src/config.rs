use crate::error::HarnessError;
use std::path::{Path, PathBuf};

pub const DEFAULT_SEED: u64 = 42;

/// Resolved experiment configuration: preset name, output location, the
/// resolution multiplier and seed, and a flat key-value parameter block that
/// overrides per-preset defaults.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub out_dir: PathBuf,
    pub resolution: u32,
    pub seed: u64,
    pub assert_only: bool,
    pub params: toml::value::Table,
}

impl ExperimentConfig {
    pub fn new(experiment: &str) -> Self {
        Self {
            experiment: experiment.to_string(),
            out_dir: PathBuf::from("runs").join(experiment),
            resolution: 1,
            seed: DEFAULT_SEED,
            assert_only: false,
            params: toml::value::Table::new(),
        }
    }

    /// Merges a sectioned TOML file: optional top-level `experiment`,
    /// `resolution` and `seed`, plus a `[params]` table.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Usage(format!("cannot read config {path:?}: {e}")))?;
        let value: toml::Value = text
            .parse()
            .map_err(|e| HarnessError::Usage(format!("malformed config {path:?}: {e}")))?;
        let table = value
            .as_table()
            .ok_or_else(|| HarnessError::Usage("config root must be a table".into()))?;

        if let Some(v) = table.get("experiment") {
            let name = v
                .as_str()
                .ok_or_else(|| HarnessError::Usage("`experiment` must be a string".into()))?;
            if self.experiment.is_empty() {
                self.experiment = name.to_string();
            } else if name != self.experiment {
                return Err(HarnessError::Usage(format!(
                    "config is for experiment `{name}`, not `{}`",
                    self.experiment
                )));
            }
        }
        if let Some(v) = table.get("resolution") {
            self.resolution = v.as_integer().filter(|&n| n >= 1).ok_or_else(|| {
                HarnessError::Usage("`resolution` must be a positive integer".into())
            })? as u32;
        }
        if let Some(v) = table.get("seed") {
            self.seed = v
                .as_integer()
                .ok_or_else(|| HarnessError::Usage("`seed` must be an integer".into()))?
                as u64;
        }
        if let Some(v) = table.get("params") {
            let params = v
                .as_table()
                .ok_or_else(|| HarnessError::Usage("`params` must be a table".into()))?;
            for (k, val) in params {
                self.params.insert(k.clone(), val.clone());
            }
        }
        Ok(())
    }

    pub fn f64(&self, key: &str, default: f64) -> Result<f64, HarnessError> {
        match self.params.get(key) {
            None => Ok(default),
            Some(toml::Value::Float(v)) => Ok(*v),
            Some(toml::Value::Integer(v)) => Ok(*v as f64),
            Some(other) => Err(HarnessError::Usage(format!(
                "parameter `{key}` must be a number, got {other}"
            ))),
        }
    }

    pub fn usize(&self, key: &str, default: usize) -> Result<usize, HarnessError> {
        match self.params.get(key) {
            None => Ok(default),
            Some(toml::Value::Integer(v)) if *v >= 0 => Ok(*v as usize),
            Some(other) => Err(HarnessError::Usage(format!(
                "parameter `{key}` must be a nonnegative integer, got {other}"
            ))),
        }
    }

    pub fn string(&self, key: &str) -> Result<Option<String>, HarnessError> {
        match self.params.get(key) {
            None => Ok(None),
            Some(toml::Value::String(s)) => Ok(Some(s.clone())),
            Some(other) => Err(HarnessError::Usage(format!(
                "parameter `{key}` must be a string, got {other}"
            ))),
        }
    }

    /// Grid sizes scale with the resolution multiplier.
    pub fn scaled(&self, base: usize) -> usize {
        base * self.resolution as usize
    }
}
