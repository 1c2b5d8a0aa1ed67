/// Complete elliptic integrals `(K(m), E(m))` with parameter `m = k^2` in
/// `[0, 1)`, by the arithmetic-geometric mean.
pub fn complete_elliptic_pair(m: f64) -> (f64, f64) {
    assert!((0.0..1.0).contains(&m), "elliptic parameter out of range");
    let mut a = 1.0f64;
    let mut b = (1.0 - m).sqrt();
    let mut c = m.sqrt();
    let mut sum = 0.5 * c * c;
    let mut pow2 = 1.0;
    for _ in 0..64 {
        if c.abs() <= f64::EPSILON * a {
            break;
        }
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        c = 0.5 * (a - b);
        a = an;
        b = bn;
        sum += pow2 * c * c;
        pow2 *= 2.0;
    }
    let k = std::f64::consts::FRAC_PI_2 / a;
    let e = k * (1.0 - sum);
    (k, e)
}
