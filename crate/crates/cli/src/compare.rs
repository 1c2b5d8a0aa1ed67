use crate::error::HarnessError;
use singflow_core::DiagnosticSeries;
use std::fmt;
use std::path::Path;

#[derive(Debug)]
pub struct SeriesComparison {
    pub file: String,
    /// Max relative difference per column (beyond the key column).
    pub column_diffs: Vec<(String, f64)>,
    pub within: bool,
}

#[derive(Debug)]
pub struct CompareReport {
    pub experiment: String,
    pub tolerance: f64,
    pub series: Vec<SeriesComparison>,
}

impl CompareReport {
    pub fn all_within(&self) -> bool {
        self.series.iter().all(|s| s.within)
    }
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "comparison of `{}` runs (tolerance {:.3}):",
            self.experiment, self.tolerance
        )?;
        for s in &self.series {
            writeln!(
                f,
                "  {} [{}]",
                s.file,
                if s.within { "converged" } else { "DIVERGED" }
            )?;
            for (col, d) in &s.column_diffs {
                writeln!(f, "    {col}: max rel diff {d:.3e}")?;
            }
        }
        Ok(())
    }
}

fn manifest_info(dir: &Path) -> Result<(String, Vec<String>), HarnessError> {
    let path = dir.join("manifest.jsonl");
    let text = std::fs::read_to_string(&path)
        .map_err(|e| HarnessError::Usage(format!("cannot read {path:?}: {e}")))?;
    let mut experiment = None;
    let mut files = Vec::new();
    for line in text.lines() {
        let value: serde_json::Value = serde_json::from_str(line)
            .map_err(|e| HarnessError::Usage(format!("malformed manifest line: {e}")))?;
        match value.get("type").and_then(|t| t.as_str()) {
            Some("run") => {
                experiment = value
                    .get("experiment")
                    .and_then(|e| e.as_str())
                    .map(|s| s.to_string());
            }
            Some("artifact") => {
                if let Some(file) = value.get("file").and_then(|f| f.as_str()) {
                    files.push(file.to_string());
                }
            }
            _ => {}
        }
    }
    let experiment =
        experiment.ok_or_else(|| HarnessError::Usage("manifest has no run line".into()))?;
    Ok((experiment, files))
}

fn interp(keys: &[f64], vals: &[f64], x: f64) -> f64 {
    let n = keys.len();
    if x <= keys[0] {
        return vals[0];
    }
    if x >= keys[n - 1] {
        return vals[n - 1];
    }
    let mut lo = 0;
    let mut hi = n - 1;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if keys[mid] <= x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = (x - keys[lo]) / (keys[hi] - keys[lo]);
    vals[lo] + t * (vals[hi] - vals[lo])
}

/// Compares two run directories of the same experiment (typically different
/// resolutions): shared CSVs are aligned on their first column over the
/// overlapping key range and differenced per column.
pub fn compare_runs(a: &Path, b: &Path, tolerance: f64) -> Result<CompareReport, HarnessError> {
    let (exp_a, files_a) = manifest_info(a)?;
    let (exp_b, files_b) = manifest_info(b)?;
    if exp_a != exp_b {
        return Err(HarnessError::Usage(format!(
            "cannot compare different experiments: `{exp_a}` vs `{exp_b}`"
        )));
    }

    let mut series = Vec::new();
    for file in files_a.iter().filter(|f| files_b.contains(f)) {
        let sa = DiagnosticSeries::read_csv(&a.join(file))
            .map_err(|e| HarnessError::Usage(format!("{file}: {e}")))?;
        let sb = DiagnosticSeries::read_csv(&b.join(file))
            .map_err(|e| HarnessError::Usage(format!("{file}: {e}")))?;
        if sa.columns != sb.columns || sa.rows.is_empty() || sb.rows.is_empty() {
            series.push(SeriesComparison {
                file: file.clone(),
                column_diffs: vec![("schema".into(), f64::INFINITY)],
                within: false,
            });
            continue;
        }
        let key_a: Vec<f64> = sa.rows.iter().map(|r| r[0]).collect();
        let key_b: Vec<f64> = sb.rows.iter().map(|r| r[0]).collect();
        let monotone =
            key_a.windows(2).all(|w| w[1] > w[0]) && key_b.windows(2).all(|w| w[1] > w[0]);

        let mut column_diffs = Vec::new();
        let mut within = true;
        if monotone {
            // Align on the key column over the overlapping range.
            let lo = key_a[0].max(key_b[0]);
            let hi = key_a[key_a.len() - 1].min(key_b[key_b.len() - 1]);
            for (c, col) in sa.columns.iter().enumerate().skip(1) {
                let vals_b: Vec<f64> = sb.rows.iter().map(|r| r[c]).collect();
                let mut worst = 0.0f64;
                for row in sa.rows.iter().filter(|r| r[0] >= lo && r[0] <= hi) {
                    let vb = interp(&key_b, &vals_b, row[0]);
                    let denom = row[c].abs().max(vb.abs()).max(1e-12);
                    worst = worst.max((row[c] - vb).abs() / denom);
                }
                within &= worst <= tolerance;
                column_diffs.push((col.clone(), worst));
            }
        } else if sa.rows.len() == sb.rows.len() {
            // Long-format table (repeated keys): compare row by row.
            for (c, col) in sa.columns.iter().enumerate() {
                let mut worst = 0.0f64;
                for (ra, rb) in sa.rows.iter().zip(&sb.rows) {
                    let denom = ra[c].abs().max(rb[c].abs()).max(1e-12);
                    worst = worst.max((ra[c] - rb[c]).abs() / denom);
                }
                within &= worst <= tolerance;
                column_diffs.push((col.clone(), worst));
            }
        } else {
            within = false;
            column_diffs.push(("alignment".into(), f64::INFINITY));
        }
        series.push(SeriesComparison {
            file: file.clone(),
            column_diffs,
            within,
        });
    }

    Ok(CompareReport {
        experiment: exp_a,
        tolerance,
        series,
    })
}
