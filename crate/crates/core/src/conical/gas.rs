use super::ConicalError;

/// Polytropic gas `p = A rho^gamma` with `A > 0` and `1 < gamma < 3`.
#[derive(Debug, Clone, Copy)]
pub struct GasModel {
    pub gamma: f64,
    /// Pressure scale `A` in `p = A rho^gamma`.
    pub pressure_coeff: f64,
}

impl GasModel {
    pub fn new(gamma: f64, pressure_coeff: f64) -> Self {
        assert!(
            gamma > 1.0 && gamma < 3.0,
            "adiabatic exponent must lie in (1, 3)"
        );
        assert!(pressure_coeff > 0.0, "gas constant must be positive");
        Self {
            gamma,
            pressure_coeff,
        }
    }

    pub fn pressure(&self, rho: f64) -> f64 {
        self.pressure_coeff * rho.powf(self.gamma)
    }

    /// Sound speed `c = sqrt(p'(rho)) = sqrt(A gamma rho^(gamma-1))`.
    pub fn sound_speed(&self, rho: f64) -> Result<f64, ConicalError> {
        if rho <= 0.0 {
            return Err(ConicalError::NonPhysicalDensity);
        }
        Ok((self.pressure_coeff * self.gamma * rho.powf(self.gamma - 1.0)).sqrt())
    }

    /// Specific enthalpy with `h'(rho) = p'(rho)/rho` and `h(0) = 0`, i.e.
    /// `h = A gamma rho^(gamma-1) / (gamma-1)`.
    pub fn enthalpy(&self, rho: f64) -> Result<f64, ConicalError> {
        if rho <= 0.0 {
            return Err(ConicalError::NonPhysicalDensity);
        }
        Ok(self.pressure_coeff * self.gamma / (self.gamma - 1.0) * rho.powf(self.gamma - 1.0))
    }

    /// Inverse of the enthalpy; defined for `h > 0`.
    pub fn enthalpy_inverse(&self, h: f64) -> f64 {
        debug_assert!(h > 0.0);
        ((self.gamma - 1.0) * h / (self.pressure_coeff * self.gamma)).powf(1.0 / (self.gamma - 1.0))
    }
}

/// Uniform upstream state: axial speed `q0`, density `rho0`.
#[derive(Debug, Clone, Copy)]
pub struct Freestream {
    pub q0: f64,
    pub rho0: f64,
}

impl Freestream {
    pub fn new(q0: f64, rho0: f64) -> Self {
        assert!(q0 > 0.0 && rho0 > 0.0, "freestream state must be positive");
        Self { q0, rho0 }
    }

    /// Convenience constructor fixing the upstream sound speed to 1 by
    /// choosing the gas constant, so `q0` doubles as the Mach number.
    pub fn with_unit_sound_speed(gamma: f64, mach: f64) -> (Self, GasModel) {
        let rho0 = 1.0;
        // c0^2 = A gamma rho0^(gamma-1) = 1.
        let gas = GasModel::new(gamma, 1.0 / gamma);
        (Self::new(mach, rho0), gas)
    }

    pub fn sound_speed(&self, gas: &GasModel) -> f64 {
        gas.sound_speed(self.rho0).expect("rho0 > 0")
    }

    pub fn mach(&self, gas: &GasModel) -> f64 {
        self.q0 / self.sound_speed(gas)
    }

    /// Bernoulli constant `q0^2/2 + h(rho0)` shared by the whole flow.
    pub fn bernoulli_constant(&self, gas: &GasModel) -> f64 {
        0.5 * self.q0 * self.q0 + gas.enthalpy(self.rho0).expect("rho0 > 0")
    }
}

/// Density from the Bernoulli law: `rho = h^{-1}(q0^2/2 + h(rho0) - |v|^2/2)`.
///
/// Errors once the speed exhausts the available enthalpy (cavitation bound).
pub fn bernoulli_density(
    speed_sq: f64,
    fs: &Freestream,
    gas: &GasModel,
) -> Result<f64, ConicalError> {
    let head = fs.bernoulli_constant(gas) - 0.5 * speed_sq;
    if head <= 0.0 {
        return Err(ConicalError::VacuumReached);
    }
    Ok(gas.enthalpy_inverse(head))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sound_speed_simple_cases() {
        let gas = GasModel::new(2.0, 0.5);
        assert!((gas.sound_speed(1.0).unwrap() - 1.0).abs() < 1e-15);

        let air = GasModel::new(1.4, 1.0);
        assert!((air.sound_speed(1.0).unwrap() - 1.4f64.sqrt()).abs() < 1e-12);
        assert!(matches!(
            air.sound_speed(0.0),
            Err(ConicalError::NonPhysicalDensity)
        ));
    }

    #[test]
    fn enthalpy_simple_cases() {
        let gas = GasModel::new(2.0, 0.5);
        assert!((gas.enthalpy(1.0).unwrap() - 1.0).abs() < 1e-15);

        let air = GasModel::new(1.4, 1.0);
        assert!((air.enthalpy(1.0).unwrap() - 3.5).abs() < 1e-12);
    }

    #[test]
    fn enthalpy_derivative_matches_definition() {
        // h'(rho) = p'(rho)/rho, checked by central differences at rho = 2.
        let gas = GasModel::new(1.4, 1.0);
        let rho = 2.0;
        let eps = 1e-6;
        let dh =
            (gas.enthalpy(rho + eps).unwrap() - gas.enthalpy(rho - eps).unwrap()) / (2.0 * eps);
        let p_prime_over_rho = gas.sound_speed(rho).unwrap().powi(2) / rho;
        assert!((dh - p_prime_over_rho).abs() < 1e-8);
    }

    #[test]
    fn enthalpy_inverse_round_trips() {
        let gas = GasModel::new(1.4, 1.0);
        for rho in [0.3, 1.0, 2.7] {
            let h = gas.enthalpy(rho).unwrap();
            assert!((gas.enthalpy_inverse(h) - rho).abs() < 1e-12);
        }
    }

    #[test]
    fn bernoulli_identity_point() {
        let gas = GasModel::new(1.4, 1.0);
        let fs = Freestream::new(3.0, 1.0);
        let rho = bernoulli_density(fs.q0 * fs.q0, &fs, &gas).unwrap();
        assert!((rho - fs.rho0).abs() < 1e-12);
    }

    #[test]
    fn bernoulli_stagnation_closed_form() {
        let gas = GasModel::new(1.4, 1.0);
        let fs = Freestream::new(3.0, 1.0);
        let rho = bernoulli_density(0.0, &fs, &gas).unwrap();
        // h(rho0) = gamma/(gamma-1) = 3.5, head = 4.5 + 3.5 = 8,
        // rho = ((gamma-1) head / gamma)^(1/(gamma-1)) = (1 + 4.5*0.4/1.4)^2.5.
        let expected = (1.0f64 + 4.5 * 0.4 / 1.4).powf(2.5);
        assert!((rho - expected).abs() < 1e-10 * expected);
    }

    #[test]
    fn bernoulli_cavitation_is_an_error() {
        let gas = GasModel::new(1.4, 1.0);
        let fs = Freestream::new(3.0, 1.0);
        let too_fast = 2.0 * fs.bernoulli_constant(&gas) + 1.0;
        assert!(matches!(
            bernoulli_density(too_fast, &fs, &gas),
            Err(ConicalError::VacuumReached)
        ));
    }
}
