use super::NumericsError;

const MAX_ITER: usize = 200;

/// Bisection on `[a, b]`; requires a sign change and returns the root to
/// within `tol`.
pub fn bisect_root<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    assert!(tol > 0.0, "bisect_root requires tol > 0");
    assert!(a < b, "bisect_root requires a < b");

    let fa = f(a);
    if fa == 0.0 {
        return Ok(a);
    }
    let fb = f(b);
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return Err(NumericsError::NoBracket);
    }

    let (mut lo, mut hi, mut flo) = (a, b, fa);
    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if 0.5 * (hi - lo) <= tol {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
