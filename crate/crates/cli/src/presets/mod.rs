//! Registered experiment presets. Each runs a solver pipeline, writes its
//! diagnostic series, and evaluates at least one named assertion; the exit
//! status of the binary reflects the assertion outcomes.

mod conical;
mod prandtl;
mod rings;
mod sheets;

use crate::config::ExperimentConfig;
use crate::error::HarnessError;
use crate::record::RunRecord;

pub const PRESETS: &[&str] = &[
    "conical-selfsimilar",
    "conical-perturbed",
    "prandtl-favorable",
    "prandtl-adverse",
    "prandtl-blasius-steady",
    "sheet-one-sign",
    "sheet-mirror",
    "ring-single",
    "ring-leapfrog",
];

pub fn is_registered(name: &str) -> bool {
    PRESETS.contains(&name)
}

pub fn run_preset(cfg: &ExperimentConfig) -> Result<RunRecord, HarnessError> {
    let start = std::time::Instant::now();
    let mut record = match cfg.experiment.as_str() {
        "conical-selfsimilar" => conical::self_similar(cfg),
        "conical-perturbed" => conical::perturbed(cfg),
        "prandtl-favorable" => prandtl::favorable(cfg),
        "prandtl-adverse" => prandtl::adverse(cfg),
        "prandtl-blasius-steady" => prandtl::blasius_steady(cfg),
        "sheet-one-sign" => sheets::one_sign(cfg),
        "sheet-mirror" => sheets::mirror(cfg),
        "ring-single" => rings::single(cfg),
        "ring-leapfrog" => rings::leapfrog(cfg),
        other => Err(HarnessError::Usage(format!("unknown preset `{other}`"))),
    }?;
    record.wall_seconds = start.elapsed().as_secs_f64();
    if !cfg.assert_only {
        record.write_manifest(&cfg.out_dir)?;
    }
    Ok(record)
}
