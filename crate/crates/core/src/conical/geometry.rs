use super::ConicalError;

/// Curved symmetric cone `r = b(z)` stored as a tangent slope `b0` plus a
/// sampled perturbation `p(z) = b(z) - b0 z` (zero outside the sampled
/// range, so `b(0) = 0` by construction). Evaluation uses a `C^1`
/// Catmull-Rom interpolant on the samples.
#[derive(Debug, Clone)]
pub struct ConeGeometry {
    pub body_slope: f64,
    samples_z: Vec<f64>,
    samples_p: Vec<f64>,
    /// Smallness bound for the scaled perturbation derivatives.
    pub eps0: f64,
    /// Tip flatness order: derivative orders `2..=k1` vanish at the tip.
    pub k1: usize,
    /// Highest scaled derivative order checked by the admissibility report.
    pub k2: usize,
}

impl ConeGeometry {
    /// Perturbed cone from samples of `(z, b(z) - b0 z)`.
    pub fn from_samples(
        body_slope: f64,
        samples: &[(f64, f64)],
        eps0: f64,
        k1: usize,
        k2: usize,
    ) -> Result<Self, ConicalError> {
        assert!(body_slope > 0.0, "body slope must be positive");
        if samples.len() < 2 {
            return Err(ConicalError::ResolutionError(
                "need at least 2 perturbation samples".into(),
            ));
        }
        if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(ConicalError::ResolutionError(
                "sample stations must be strictly increasing".into(),
            ));
        }
        if samples[0].0 <= 0.0 {
            return Err(ConicalError::ResolutionError(
                "perturbation samples must start at z > 0 (the tip is exact)".into(),
            ));
        }
        Ok(Self {
            body_slope,
            samples_z: samples.iter().map(|s| s.0).collect(),
            samples_p: samples.iter().map(|s| s.1).collect(),
            eps0,
            k1,
            k2,
        })
    }

    /// Unperturbed circular cone `r = b0 z`.
    pub fn exact_cone(body_slope: f64) -> Self {
        assert!(body_slope > 0.0);
        Self {
            body_slope,
            samples_z: vec![1.0, 2.0],
            samples_p: vec![0.0, 0.0],
            eps0: 0.0,
            k1: 2,
            k2: 2,
        }
    }

    pub fn is_exact_cone(&self) -> bool {
        self.samples_p.iter().all(|&p| p == 0.0)
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.samples_z
            .iter()
            .copied()
            .zip(self.samples_p.iter().copied())
    }

    pub fn b(&self, z: f64) -> f64 {
        self.body_slope * z + self.perturbation(z)
    }

    pub fn b_prime(&self, z: f64) -> f64 {
        self.body_slope + self.perturbation_deriv(z)
    }

    pub fn perturbation(&self, z: f64) -> f64 {
        match self.locate(z) {
            Some((i, t)) => {
                let (p0, p1) = (self.samples_p[i], self.samples_p[i + 1]);
                let h = self.samples_z[i + 1] - self.samples_z[i];
                let (m0, m1) = (self.tangent(i) * h, self.tangent(i + 1) * h);
                let t2 = t * t;
                let t3 = t2 * t;
                (2.0 * t3 - 3.0 * t2 + 1.0) * p0
                    + (t3 - 2.0 * t2 + t) * m0
                    + (-2.0 * t3 + 3.0 * t2) * p1
                    + (t3 - t2) * m1
            }
            None => 0.0,
        }
    }

    pub fn perturbation_deriv(&self, z: f64) -> f64 {
        match self.locate(z) {
            Some((i, t)) => {
                let (p0, p1) = (self.samples_p[i], self.samples_p[i + 1]);
                let h = self.samples_z[i + 1] - self.samples_z[i];
                let (m0, m1) = (self.tangent(i) * h, self.tangent(i + 1) * h);
                let t2 = t * t;
                ((6.0 * t2 - 6.0 * t) * p0
                    + (3.0 * t2 - 4.0 * t + 1.0) * m0
                    + (-6.0 * t2 + 6.0 * t) * p1
                    + (3.0 * t2 - 2.0 * t) * m1)
                    / h
            }
            None => 0.0,
        }
    }

    fn locate(&self, z: f64) -> Option<(usize, f64)> {
        let n = self.samples_z.len();
        if z < self.samples_z[0] || z > self.samples_z[n - 1] {
            return None;
        }
        let mut lo = 0;
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.samples_z[mid] <= z {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let t = (z - self.samples_z[lo]) / (self.samples_z[hi] - self.samples_z[lo]);
        Some((lo, t))
    }

    /// One-sided at the ends, centered inside.
    fn tangent(&self, i: usize) -> f64 {
        let n = self.samples_z.len();
        if i == 0 {
            (self.samples_p[1] - self.samples_p[0]) / (self.samples_z[1] - self.samples_z[0])
        } else if i == n - 1 {
            (self.samples_p[n - 1] - self.samples_p[n - 2])
                / (self.samples_z[n - 1] - self.samples_z[n - 2])
        } else {
            (self.samples_p[i + 1] - self.samples_p[i - 1])
                / (self.samples_z[i + 1] - self.samples_z[i - 1])
        }
    }
}

#[derive(Debug, Clone)]
pub struct OrderBound {
    pub order: usize,
    /// Max of `|z^k d^k/dz^k (b - b0 z)|` over the sampled range.
    pub max_value: f64,
    pub at_z: f64,
}

#[derive(Debug, Clone)]
pub struct AdmissibilityReport {
    pub per_order: Vec<OrderBound>,
    pub eps0: f64,
    pub passed: bool,
}

/// Evaluates the scaled-derivative smallness bounds of the perturbation for
/// orders `0..=k2` by repeated central differencing of the samples.
pub fn check_cone_admissibility(geom: &ConeGeometry) -> Result<AdmissibilityReport, ConicalError> {
    let n = geom.samples_z.len();
    if n < 2 * geom.k2 + 3 {
        return Err(ConicalError::ResolutionError(format!(
            "need at least {} samples for {} derivative orders, got {}",
            2 * geom.k2 + 3,
            geom.k2,
            n
        )));
    }
    let h = geom.samples_z[1] - geom.samples_z[0];
    for w in geom.samples_z.windows(2) {
        if ((w[1] - w[0]) - h).abs() > 1e-9 * h {
            return Err(ConicalError::ResolutionError(
                "derivative estimation requires uniform sampling".into(),
            ));
        }
    }

    let mut per_order = Vec::with_capacity(geom.k2 + 1);
    let mut deriv: Vec<f64> = geom.samples_p.clone();
    let mut z: Vec<f64> = geom.samples_z.clone();
    for order in 0..=geom.k2 {
        let mut max_value = 0.0f64;
        let mut at_z = z[0];
        for (zi, di) in z.iter().zip(&deriv) {
            let scaled = (zi.powi(order as i32) * di).abs();
            if scaled > max_value {
                max_value = scaled;
                at_z = *zi;
            }
        }
        per_order.push(OrderBound {
            order,
            max_value,
            at_z,
        });
        if order < geom.k2 {
            // Central difference, dropping one node at each end.
            let m = deriv.len();
            let next: Vec<f64> = (1..m - 1)
                .map(|i| (deriv[i + 1] - deriv[i - 1]) / (2.0 * h))
                .collect();
            z = z[1..m - 1].to_vec();
            deriv = next;
        }
    }

    let passed = per_order
        .iter()
        .all(|b| b.max_value <= geom.eps0 * (1.0 + 1e-12));
    Ok(AdmissibilityReport {
        per_order,
        eps0: geom.eps0,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sampled(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
        (0..n)
            .map(|i| {
                let z = lo + (hi - lo) * i as f64 / (n - 1) as f64;
                (z, f(z))
            })
            .collect()
    }

    #[test]
    fn exact_cone_passes_any_positive_bound() {
        let geom = ConeGeometry::exact_cone(0.2);
        let report = check_cone_admissibility(&geom);
        // The exact-cone helper has only 2 samples; build a denser zero set.
        assert!(report.is_err());
        let geom =
            ConeGeometry::from_samples(0.2, &sampled(|_| 0.0, 0.5, 2.0, 64), 1e-9, 2, 2).unwrap();
        let report = check_cone_admissibility(&geom).unwrap();
        assert!(report.passed);
        assert!(report.per_order.iter().all(|b| b.max_value == 0.0));
    }

    #[test]
    fn rational_bump_order_zero_bound() {
        // p(z) = eps * z / (1 + z^2) attains eps/2 at z = 1.
        let eps = 1e-3;
        let geom = ConeGeometry::from_samples(
            0.2,
            &sampled(|z| eps * z / (1.0 + z * z), 0.2, 5.0, 801),
            1.0,
            2,
            2,
        )
        .unwrap();
        let report = check_cone_admissibility(&geom).unwrap();
        let order0 = &report.per_order[0];
        assert!(
            (order0.max_value - eps / 2.0).abs() < 1e-3 * eps,
            "order-0 bound {} vs {}",
            order0.max_value,
            eps / 2.0
        );
        assert!((order0.at_z - 1.0).abs() < 0.05);
    }

    #[test]
    fn zero_eps0_fails_for_nonzero_perturbation() {
        let geom = ConeGeometry::from_samples(
            0.2,
            &sampled(|z| 1e-4 * (z - 1.0) * (2.0 - z), 1.0, 2.0, 64),
            0.0,
            2,
            2,
        )
        .unwrap();
        assert!(!check_cone_admissibility(&geom).unwrap().passed);
    }

    #[test]
    fn interpolant_matches_samples_and_vanishes_outside() {
        let geom = ConeGeometry::from_samples(
            0.3,
            &sampled(|z| (z - 1.0) * (2.0 - z), 1.0, 2.0, 33),
            1.0,
            2,
            2,
        )
        .unwrap();
        assert_eq!(geom.perturbation(0.5), 0.0);
        assert_eq!(geom.perturbation(3.0), 0.0);
        assert!((geom.perturbation(1.5) - 0.25).abs() < 1e-3);
        assert!((geom.b(1.5) - (0.45 + 0.25)).abs() < 1e-3);
        // Derivative of the interpolant tracks the analytic derivative.
        let analytic = 3.0 - 2.0 * 1.25;
        assert!((geom.perturbation_deriv(1.25) - analytic).abs() < 1e-2);
    }
}
