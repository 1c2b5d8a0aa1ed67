use crate::config::ExperimentConfig;
use crate::error::HarnessError;
use serde::Serialize;
use singflow_core::DiagnosticSeries;
use std::path::{Path, PathBuf};

/// One emitted file with its column schema.
#[derive(Debug, Clone, Serialize)]
pub struct Artifact {
    pub file: String,
    pub columns: Vec<String>,
    pub description: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AssertionOutcome {
    pub name: String,
    /// Human-readable threshold, e.g. `<= 0.1 deg`.
    pub threshold: String,
    pub observed: f64,
    pub passed: bool,
}

/// Provenance and outcome of one experiment run; serialized as JSON lines so
/// downstream tooling can stream it.
#[derive(Debug, Serialize)]
pub struct RunRecord {
    pub experiment: String,
    pub version: String,
    pub seed: u64,
    pub resolution: u32,
    pub wall_seconds: f64,
    pub config: toml::value::Table,
    pub artifacts: Vec<Artifact>,
    pub assertions: Vec<AssertionOutcome>,
}

impl RunRecord {
    pub fn all_passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn write_manifest(&self, dir: &Path) -> Result<PathBuf, HarnessError> {
        let path = dir.join("manifest.jsonl");
        let mut lines = String::new();
        lines.push_str(&serde_json::to_string(&serde_json::json!({
            "type": "run",
            "experiment": self.experiment,
            "version": self.version,
            "seed": self.seed,
            "resolution": self.resolution,
            "wall_seconds": self.wall_seconds,
        }))?);
        lines.push('\n');
        lines.push_str(&serde_json::to_string(&serde_json::json!({
            "type": "config",
            "params": self.config,
        }))?);
        lines.push('\n');
        for artifact in &self.artifacts {
            lines.push_str(&serde_json::to_string(&serde_json::json!({
                "type": "artifact",
                "file": artifact.file,
                "columns": artifact.columns,
                "description": artifact.description,
            }))?);
            lines.push('\n');
        }
        for assertion in &self.assertions {
            lines.push_str(&serde_json::to_string(&serde_json::json!({
                "type": "assertion",
                "name": assertion.name,
                "threshold": assertion.threshold,
                "observed": assertion.observed,
                "passed": assertion.passed,
            }))?);
            lines.push('\n');
        }
        std::fs::write(&path, lines)?;
        Ok(path)
    }
}

impl From<serde_json::Error> for HarnessError {
    fn from(e: serde_json::Error) -> Self {
        HarnessError::Usage(format!("serialization failed: {e}"))
    }
}

/// Collects artifacts under the run directory; with `assert_only` set the
/// writes are skipped and only assertions are evaluated.
pub struct RunWriter {
    out_dir: PathBuf,
    assert_only: bool,
    artifacts: Vec<Artifact>,
}

impl RunWriter {
    pub fn new(cfg: &ExperimentConfig) -> Result<Self, HarnessError> {
        if !cfg.assert_only {
            std::fs::create_dir_all(&cfg.out_dir)?;
        }
        Ok(Self {
            out_dir: cfg.out_dir.clone(),
            assert_only: cfg.assert_only,
            artifacts: Vec::new(),
        })
    }

    pub fn write_series(
        &mut self,
        series: &DiagnosticSeries,
        file: &str,
        description: &str,
    ) -> Result<(), HarnessError> {
        if !self.assert_only {
            series.write_csv(&self.out_dir.join(file))?;
            self.artifacts.push(Artifact {
                file: file.to_string(),
                columns: series.columns.clone(),
                description: description.to_string(),
            });
        }
        Ok(())
    }

    pub fn finish(
        self,
        cfg: &ExperimentConfig,
        assertions: Vec<AssertionOutcome>,
        wall_seconds: f64,
    ) -> Result<RunRecord, HarnessError> {
        let record = RunRecord {
            experiment: cfg.experiment.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: cfg.seed,
            resolution: cfg.resolution,
            wall_seconds,
            config: cfg.params.clone(),
            artifacts: self.artifacts,
            assertions,
        };
        if !cfg.assert_only {
            record.write_manifest(&self.out_dir)?;
        }
        Ok(record)
    }
}

/// Assertion collector used by every preset.
#[derive(Default)]
pub struct Assertions(Vec<AssertionOutcome>);

impl Assertions {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn le(&mut self, name: &str, observed: f64, bound: f64) {
        self.push(name, format!("<= {bound:e}"), observed, observed <= bound);
    }

    pub fn ge(&mut self, name: &str, observed: f64, bound: f64) {
        self.push(name, format!(">= {bound:e}"), observed, observed >= bound);
    }

    pub fn is_true(&mut self, name: &str, condition: bool, threshold: &str, observed: f64) {
        self.push(name, threshold.to_string(), observed, condition);
    }

    fn push(&mut self, name: &str, threshold: String, observed: f64, passed: bool) {
        self.0.push(AssertionOutcome {
            name: name.to_string(),
            threshold,
            observed,
            passed,
        });
    }

    pub fn into_vec(self) -> Vec<AssertionOutcome> {
        self.0
    }
}
