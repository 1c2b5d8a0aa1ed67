use std::f64::consts::PI;

/// Smoothed planar induction kernel
/// `K(x) = (1/2pi) (-x2, x1) / (|x|^2 + delta^2)`; `K(0) = 0` for any
/// smoothing width, including `delta = 0`.
#[inline]
pub fn kernel2d(x: [f64; 2], delta: f64) -> [f64; 2] {
    let d2 = x[0] * x[0] + x[1] * x[1] + delta * delta;
    if d2 == 0.0 {
        return [0.0, 0.0];
    }
    let scale = 1.0 / (2.0 * PI * d2);
    [-x[1] * scale, x[0] * scale]
}
