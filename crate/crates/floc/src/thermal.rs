//! Diurnal solar heating, node failure probability, and relative thermal
//! entropy.

use std::collections::BTreeMap;

use crate::error::{FlocError, Result};

/// Offset between the Celsius scale and the absolute scale.
const KELVIN_OFFSET: f64 = 273.15;

/// Radiative constant at which full exposure balances heating right at the
/// default failure temperature (80 C) for a peak radiation near 880 W/m^2.
pub const DEFAULT_RADIATIVE_CONSTANT: f64 = 5.67e-8;

/// Thermal constants.
#[derive(Clone, Copy, Debug)]
pub struct ThermalParams {
    /// Peak solar radiation over the day (W/m^2).
    pub s_max: f64,
    /// Time of the solar peak (s).
    pub rho: f64,
    /// Spread of the radiation curve (s).
    pub sigma: f64,
    /// Exposed absorbing area (m^2).
    pub area_sen: f64,
    /// Radiative constant (W/m^2/K^4); the fourth-power term is evaluated
    /// on the absolute temperature scale.
    pub eta: f64,
    /// Specific heat (J/(g K)).
    pub c_p: f64,
    /// Node mass (g).
    pub mass: f64,
    /// Temperature at which a node fails (C).
    pub t_high: f64,
    /// Thermal step duration (s); one simulation round.
    pub delta_t: f64,
}

impl ThermalParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            self.s_max,
            self.rho,
            self.sigma,
            self.area_sen,
            self.eta,
            self.c_p,
            self.mass,
            self.t_high,
            self.delta_t,
        ];
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(FlocError::config("thermal parameters must be finite"));
        }
        if self.s_max < 0.0 {
            return Err(FlocError::config("peak radiation must be nonnegative"));
        }
        if self.rho <= 0.0 || self.sigma <= 0.0 {
            return Err(FlocError::config(
                "solar peak time and spread must be positive",
            ));
        }
        if self.area_sen <= 0.0 || self.c_p <= 0.0 || self.mass <= 0.0 || self.delta_t <= 0.0 {
            return Err(FlocError::config("thermal constants must be positive"));
        }
        if self.eta < 0.0 {
            return Err(FlocError::config("radiative constant must be nonnegative"));
        }
        if self.t_high <= 0.0 {
            return Err(FlocError::config("failure temperature must be positive"));
        }
        Ok(())
    }
}

impl Default for ThermalParams {
    fn default() -> Self {
        ThermalParams {
            s_max: 1.0,
            rho: 15_000.0,
            sigma: 5_000.0,
            area_sen: 20e-4,
            eta: DEFAULT_RADIATIVE_CONSTANT,
            c_p: 0.5,
            mass: 50.0,
            t_high: 80.0,
            delta_t: 60.0,
        }
    }
}

/// Per-node temporal sun-exposure factor in `[0, 1]` (shade vs. direct sun).
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct SunExposure(f64);

impl SunExposure {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(FlocError::domain(format!(
                "exposure factor {alpha} outside [0, 1]"
            )));
        }
        Ok(SunExposure(alpha))
    }

    pub fn factor(self) -> f64 {
        self.0
    }
}

/// Gaussian daily radiation curve, peaking at `rho` with spread `sigma`.
/// Times outside `[0, 2 rho]` are night and clamp to zero.
pub fn solar_radiation(t: f64, p: &ThermalParams) -> f64 {
    if !(0.0..=2.0 * p.rho).contains(&t) {
        return 0.0;
    }
    let z = (t - p.rho) / p.sigma;
    p.s_max * (-0.5 * z * z).exp()
}

/// One heating step: absorbed radiation minus the fourth-power radiative
/// loss, clamped so temperature never decreases.
pub fn temperature_step(temperature: f64, t: f64, exposure: SunExposure, p: &ThermalParams) -> f64 {
    let absolute = temperature + KELVIN_OFFSET;
    let absorbed = solar_radiation(t, p) * exposure.factor();
    let radiated = p.eta * absolute.powi(4);
    let delta = (absorbed - radiated) * p.area_sen * p.delta_t / (p.c_p * p.mass);
    (temperature + delta).max(temperature)
}

/// Failure probability of a node at `temperature`, the fraction of the
/// failure temperature reached, clamped to `[0, 1]`.
pub fn failure_probability(temperature: f64, t_high: f64) -> Result<f64> {
    if t_high <= 0.0 {
        return Err(FlocError::domain(format!(
            "failure temperature {t_high} not positive"
        )));
    }
    Ok((temperature / t_high).clamp(0.0, 1.0))
}

/// Shannon entropy of a single failure probability, `-p log2 p`, with the
/// `p = 0` case defined as 0.
pub fn shannon_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(FlocError::domain(format!("probability {p} outside [0, 1]")));
    }
    if p == 0.0 {
        Ok(0.0)
    } else {
        Ok(-p * p.log2())
    }
}

/// A node's entropy relative to its closed neighborhood (the node itself
/// plus `neighbors`). An all-zero neighborhood is defined as 0.
pub fn relative_thermal_entropy(
    node: usize,
    entropies: &BTreeMap<usize, f64>,
    neighbors: &[usize],
) -> f64 {
    let own = entropies.get(&node).copied().unwrap_or(0.0);
    let mut total = own;
    for j in neighbors {
        if *j != node {
            total += entropies.get(j).copied().unwrap_or(0.0);
        }
    }
    if total > 0.0 {
        own / total
    } else {
        0.0
    }
}
