use super::NumericsError;

/// Least-squares slope of `log d` against `log z` for samples `(z, d)`.
///
/// Exact (to round-off) for pure power laws `d = C z^p`; used to estimate
/// decay rates from logarithmically sampled deviation series.
pub fn fit_loglog_slope(samples: &[(f64, f64)]) -> Result<f64, NumericsError> {
    if samples.len() < 2 {
        return Err(NumericsError::DomainError(
            "slope fit needs at least 2 samples".into(),
        ));
    }
    if samples.iter().any(|&(z, d)| z <= 0.0 || d <= 0.0) {
        return Err(NumericsError::DomainError(
            "slope fit requires positive abscissae and values".into(),
        ));
    }

    let n = samples.len() as f64;
    let (mut sx, mut sy) = (0.0, 0.0);
    for &(z, d) in samples {
        sx += z.ln();
        sy += d.ln();
    }
    let (xbar, ybar) = (sx / n, sy / n);

    let (mut sxx, mut sxy) = (0.0, 0.0);
    for &(z, d) in samples {
        let dx = z.ln() - xbar;
        sxx += dx * dx;
        sxy += dx * (d.ln() - ybar);
    }
    if sxx == 0.0 {
        return Err(NumericsError::DomainError(
            "slope fit requires at least two distinct abscissae".into(),
        ));
    }
    Ok(sxy / sxx)
}
