//! Thermal (Gibbs) states of finite classical systems and their heat capacity.
//!
//! Units have Boltzmann's constant equal to one, so energies and temperatures
//! share a unit and the heat capacity is dimensionless.

use crate::entropy::surprisal_variance;
use crate::error::{Error, Result};
use crate::prob::ProbVector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Temperature {
    Finite(f64),
    Infinite,
}

impl Temperature {
    pub fn new(t: f64) -> Result<Self> {
        if t == f64::INFINITY {
            Ok(Temperature::Infinite)
        } else if t.is_finite() && t > 0.0 {
            Ok(Temperature::Finite(t))
        } else {
            Err(Error::InvalidParameter(format!(
                "temperature must be in (0, +inf], got {t}"
            )))
        }
    }
}

/// Energy levels of a diagonal Hamiltonian together with a bath temperature.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalSystem {
    levels: Vec<f64>,
    temperature: Temperature,
}

impl ThermalSystem {
    pub fn new(levels: Vec<f64>, temperature: Temperature) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(bad) = levels.iter().find(|e| !e.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "energy level {bad} is not finite"
            )));
        }
        Ok(ThermalSystem {
            levels,
            temperature,
        })
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn temperature(&self) -> Temperature {
        self.temperature
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    pub fn with_temperature(&self, temperature: Temperature) -> Self {
        ThermalSystem {
            levels: self.levels.clone(),
            temperature,
        }
    }

    /// Mean energy `tr{Hρ}` of a state.
    pub fn mean_energy(&self, rho: &ProbVector) -> Result<f64> {
        if rho.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: rho.dim(),
                right: self.dim(),
            });
        }
        Ok(self.levels.iter().zip(rho.iter()).map(|(e, p)| e * p).sum())
    }
}

/// `p ∝ exp(-E/T)`, uniform at infinite temperature.
pub fn thermal_state(sys: &ThermalSystem) -> ProbVector {
    let d = sys.dim();
    let weights = match sys.temperature {
        Temperature::Infinite => vec![1.0; d],
        Temperature::Finite(t) => {
            let ground = sys.levels.iter().cloned().fold(f64::INFINITY, f64::min);
            sys.levels.iter().map(|e| (-(e - ground) / t).exp()).collect()
        }
    };
    // The ground level has weight one, so the mass is at least one.
    ProbVector::from_weights(weights).expect("Gibbs weights have positive mass")
}

/// Heat capacity `C(T) = var(-log ρ_T)`.
pub fn heat_capacity(sys: &ThermalSystem) -> f64 {
    if sys.dim() == 1 {
        return 0.0;
    }
    surprisal_variance(&thermal_state(sys))
}
