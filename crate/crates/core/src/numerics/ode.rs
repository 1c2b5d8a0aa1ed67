use super::NumericsError;

/// One classical fourth-order Runge-Kutta step for `dy/dt = deriv(t, y)`.
///
/// Fixed step size; callers own any step-size control. Errors with
/// [`NumericsError::NonFiniteState`] as soon as the derivative produces a
/// non-finite value.
pub fn rk4_step<F>(deriv: F, state: &[f64], t: f64, dt: f64) -> Result<Vec<f64>, NumericsError>
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
{
    assert!(dt > 0.0, "rk4_step requires dt > 0");
    let n = state.len();

    let k1 = checked(deriv(t, state))?;
    let mut stage = vec![0.0; n];

    for i in 0..n {
        stage[i] = state[i] + 0.5 * dt * k1[i];
    }
    let k2 = checked(deriv(t + 0.5 * dt, &stage))?;

    for i in 0..n {
        stage[i] = state[i] + 0.5 * dt * k2[i];
    }
    let k3 = checked(deriv(t + 0.5 * dt, &stage))?;

    for i in 0..n {
        stage[i] = state[i] + dt * k3[i];
    }
    let k4 = checked(deriv(t + dt, &stage))?;

    let mut next = vec![0.0; n];
    for i in 0..n {
        next[i] = state[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    Ok(next)
}

fn checked(v: Vec<f64>) -> Result<Vec<f64>, NumericsError> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(v)
    } else {
        Err(NumericsError::NonFiniteState)
    }
}
