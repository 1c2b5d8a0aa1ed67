use super::NumericsError;

/// Banded system `A x = rhs` with `A` tridiagonal.
///
/// The solver runs Thomas elimination without pivoting; callers are expected
/// to supply diagonally dominant systems (true for the implicit diffusion
/// operators in this workspace).
#[derive(Debug, Clone)]
pub struct TridiagonalSystem {
    pub lower: Vec<f64>,
    pub diagonal: Vec<f64>,
    pub upper: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn new(
        lower: Vec<f64>,
        diagonal: Vec<f64>,
        upper: Vec<f64>,
        rhs: Vec<f64>,
    ) -> Result<Self, NumericsError> {
        let n = diagonal.len();
        if n == 0 {
            return Err(NumericsError::DomainError("empty system".into()));
        }
        for (band, len) in [(&lower, n - 1), (&upper, n - 1), (&rhs, n)] {
            if band.len() != len {
                return Err(NumericsError::ShapeError {
                    expected: len,
                    got: band.len(),
                });
            }
        }
        Ok(Self {
            lower,
            diagonal,
            upper,
            rhs,
        })
    }

    pub fn len(&self) -> usize {
        self.diagonal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonal.is_empty()
    }
}

/// Thomas elimination. Errors on a vanishing pivot.
pub fn solve_tridiagonal(sys: &TridiagonalSystem) -> Result<Vec<f64>, NumericsError> {
    let n = sys.len();
    let mut c_star = vec![0.0; n];
    let mut d_star = vec![0.0; n];

    let mut pivot = sys.diagonal[0];
    if pivot_vanishes(pivot, sys.diagonal[0], 0.0) {
        return Err(NumericsError::SingularSystem { row: 0 });
    }
    if n > 1 {
        c_star[0] = sys.upper[0] / pivot;
    }
    d_star[0] = sys.rhs[0] / pivot;

    for i in 1..n {
        let a = sys.lower[i - 1];
        pivot = sys.diagonal[i] - a * c_star[i - 1];
        if pivot_vanishes(pivot, sys.diagonal[i], a * c_star[i - 1]) {
            return Err(NumericsError::SingularSystem { row: i });
        }
        if i < n - 1 {
            c_star[i] = sys.upper[i] / pivot;
        }
        d_star[i] = (sys.rhs[i] - a * d_star[i - 1]) / pivot;
    }

    let mut x = d_star;
    for i in (0..n - 1).rev() {
        x[i] -= c_star[i] * x[i + 1];
    }
    Ok(x)
}

fn pivot_vanishes(pivot: f64, term_a: f64, term_b: f64) -> bool {
    let scale = term_a.abs().max(term_b.abs()).max(f64::MIN_POSITIVE);
    !pivot.is_finite() || pivot.abs() <= 8.0 * f64::EPSILON * scale
}
