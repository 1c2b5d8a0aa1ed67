use clap::Parser;
use singflow_cli::config::ExperimentConfig;
use singflow_cli::error::HarnessError;
use singflow_cli::{compare, presets};
use std::path::PathBuf;
use std::process::ExitCode;

/// Singular-flow experiment runner: conical shock marches, boundary-layer
/// splitting runs, and vortex dynamics, with per-preset assertions.
#[derive(Parser)]
#[command(name = "singflow", version, about)]
struct Cli {
    /// A registered preset name, `run` (experiment named in --config), or
    /// `compare` (two run directories via --a/--b).
    command: String,
    /// TOML overrides: optional `experiment`, `resolution`, `seed`, and a
    /// `[params]` table.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (default `runs/<experiment>`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Grid-resolution multiplier.
    #[arg(long)]
    resolution: Option<u32>,
    /// Seed for any randomized atom placement.
    #[arg(long)]
    seed: Option<u64>,
    /// Evaluate assertions without writing diagnostic files.
    #[arg(long)]
    assert_only: bool,
    /// First run directory for `compare`.
    #[arg(long)]
    a: Option<PathBuf>,
    /// Second run directory for `compare`.
    #[arg(long)]
    b: Option<PathBuf>,
    /// Relative tolerance for `compare`.
    #[arg(long, default_value_t = 0.2)]
    tol: f64,
}

fn run(cli: Cli) -> Result<bool, HarnessError> {
    if cli.command == "compare" {
        let a = cli
            .a
            .ok_or_else(|| HarnessError::Usage("compare needs --a <dir>".into()))?;
        let b = cli
            .b
            .ok_or_else(|| HarnessError::Usage("compare needs --b <dir>".into()))?;
        let report = compare::compare_runs(&a, &b, cli.tol)?;
        print!("{report}");
        return Ok(report.all_within());
    }

    let mut cfg = if cli.command == "run" {
        let path = cli
            .config
            .clone()
            .ok_or_else(|| HarnessError::Usage("`run` needs --config <path>".into()))?;
        let mut cfg = ExperimentConfig::new("");
        cfg.apply_file(&path)?;
        if cfg.experiment.is_empty() {
            return Err(HarnessError::Usage(
                "config for `run` must name an `experiment`".into(),
            ));
        }
        cfg.out_dir = PathBuf::from("runs").join(&cfg.experiment);
        cfg
    } else {
        if !presets::is_registered(&cli.command) {
            return Err(HarnessError::Usage(format!(
                "unknown preset `{}` (registered: {})",
                cli.command,
                presets::PRESETS.join(", ")
            )));
        }
        let mut cfg = ExperimentConfig::new(&cli.command);
        if let Some(path) = &cli.config {
            cfg.apply_file(path)?;
        }
        cfg
    };

    if let Some(out) = cli.out {
        cfg.out_dir = out;
    }
    if let Some(r) = cli.resolution {
        if r == 0 {
            return Err(HarnessError::Usage("--resolution must be >= 1".into()));
        }
        cfg.resolution = r;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    cfg.assert_only = cli.assert_only;

    let record = presets::run_preset(&cfg)?;
    println!(
        "{} (resolution x{}, seed {}) finished in {:.2} s",
        record.experiment, record.resolution, record.seed, record.wall_seconds
    );
    for a in &record.assertions {
        println!(
            "  [{}] {}: observed {:.6e} ({})",
            if a.passed { "pass" } else { "FAIL" },
            a.name,
            a.observed,
            a.threshold
        );
    }
    if !cfg.assert_only {
        println!("artifacts in {}", cfg.out_dir.display());
    }
    Ok(record.all_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
