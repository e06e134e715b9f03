//! Oscillator constants and the induced dimensionless scaling.
//!
//! Every formula in this library is a function of the dimensionless radius
//! r² = p²/(ℏmω) + mωq²/ℏ, so internal computations run in scaled
//! coordinates x = q/q_scale, y = p/p_scale and constants only enter at the
//! API boundary.

use serde::{Deserialize, Serialize};

use crate::error::{PhaseError, Result};

/// Physical constants ℏ, m, ω of a harmonic oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorParams {
    hbar: f64,
    mass: f64,
    omega: f64,
}

impl OscillatorParams {
    pub fn new(hbar: f64, mass: f64, omega: f64) -> Result<Self> {
        for (name, v) in [("hbar", hbar), ("mass", mass), ("omega", omega)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(PhaseError::InvalidParams(format!(
                    "{name} must be finite and > 0, got {v}"
                )));
            }
        }
        let p = Self { hbar, mass, omega };
        if !(p.q_scale().is_finite() && p.p_scale().is_finite()) {
            return Err(PhaseError::InvalidParams(
                "derived scales overflow".into(),
            ));
        }
        Ok(p)
    }

    /// ℏ = m = ω = 1.
    pub fn standard() -> Self {
        Self {
            hbar: 1.0,
            mass: 1.0,
            omega: 1.0,
        }
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Planck constant h = 2πℏ.
    pub fn h(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.hbar
    }

    /// Position scale √(ℏ/(mω)).
    pub fn q_scale(&self) -> f64 {
        (self.hbar / (self.mass * self.omega)).sqrt()
    }

    /// Momentum scale √(ℏmω).  Note q_scale · p_scale = ℏ.
    pub fn p_scale(&self) -> f64 {
        (self.hbar * self.mass * self.omega).sqrt()
    }

    /// Energy quantum ℏω.
    pub fn energy_scale(&self) -> f64 {
        self.hbar * self.omega
    }

    /// Oscillator period 2π/ω.
    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.omega
    }
}

impl Default for OscillatorParams {
    fn default() -> Self {
        Self::standard()
    }
}
