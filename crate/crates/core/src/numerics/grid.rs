use super::NumericsError;

/// Ordered one-dimensional grid of nondimensional coordinates.
#[derive(Debug, Clone)]
pub struct Grid1D {
    nodes: Vec<f64>,
}

impl Grid1D {
    /// Builds a grid from strictly increasing nodes (at least two).
    pub fn new(nodes: Vec<f64>) -> Result<Self, NumericsError> {
        if nodes.len() < 2 {
            return Err(NumericsError::DomainError(
                "grid needs at least 2 nodes".into(),
            ));
        }
        if nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(NumericsError::DomainError(
                "grid nodes must be strictly increasing".into(),
            ));
        }
        Ok(Self { nodes })
    }

    /// Uniform grid of `n` nodes spanning `[a, b]`.
    pub fn uniform(a: f64, b: f64, n: usize) -> Result<Self, NumericsError> {
        if n < 2 || !(b > a) {
            return Err(NumericsError::DomainError(
                "uniform grid needs n >= 2 and b > a".into(),
            ));
        }
        let h = (b - a) / (n - 1) as f64;
        let mut nodes: Vec<f64> = (0..n).map(|i| a + h * i as f64).collect();
        nodes[n - 1] = b;
        Self::new(nodes)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Width of interval `i` (between nodes `i` and `i + 1`).
    pub fn spacing(&self, i: usize) -> f64 {
        self.nodes[i + 1] - self.nodes[i]
    }
}

/// Composite trapezoid rule for samples aligned with `grid`.
pub fn trapezoid(values: &[f64], grid: &Grid1D) -> Result<f64, NumericsError> {
    if values.len() != grid.len() {
        return Err(NumericsError::ShapeError {
            expected: grid.len(),
            got: values.len(),
        });
    }
    let mut total = 0.0;
    for i in 0..values.len() - 1 {
        total += 0.5 * (values[i] + values[i + 1]) * grid.spacing(i);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_grids() {
        assert!(Grid1D::new(vec![1.0]).is_err());
        assert!(Grid1D::new(vec![0.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn constant_integrates_to_width() {
        let g = Grid1D::uniform(0.0, 1.0, 11).unwrap();
        let v = vec![1.0; 11];
        assert!((trapezoid(&v, &g).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn trapezoid_exact_for_linear() {
        let g = Grid1D::uniform(0.0, 1.0, 17).unwrap();
        let v: Vec<f64> = g.nodes().to_vec();
        assert!((trapezoid(&v, &g).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn quadratic_converges() {
        let g = Grid1D::uniform(0.0, 1.0, 1000).unwrap();
        let v: Vec<f64> = g.nodes().iter().map(|y| y * y).collect();
        assert!((trapezoid(&v, &g).unwrap() - 1.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn length_mismatch_is_shape_error() {
        let g = Grid1D::uniform(0.0, 1.0, 5).unwrap();
        let res = trapezoid(&[1.0, 2.0], &g);
        assert_eq!(
            res.unwrap_err(),
            NumericsError::ShapeError {
                expected: 5,
                got: 2
            }
        );
    }
}
