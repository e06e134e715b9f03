//! The three oscillator models as interchangeable energy spectral measures.
//!
//! Position and momentum have identical spectral measures in every model;
//! the energy observable is where classical, quantum, and sawtooth theories
//! differ. Each variant implements [`EnergyMeasure`] and is registered by
//! name, so callers (library users, the CLI `--model` flag) select one at
//! runtime without caring which is behind the trait object.
//!
//! All weight functions are functions of u = r² alone, which is what makes
//! energy pairings invariant under time evolution.

use crate::error::{PhaseError, Result};
use crate::params::OscillatorParams;
use crate::wigner;

/// Triangular hat T_n: x−(n−1) on [n−1, n], −x+n+1 on [n, n+1], 0 elsewhere.
/// T_0 is the half-hat 1−x on [0, 1].
pub fn triangle(n: usize, x: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    let nf = n as f64;
    if x >= nf - 1.0 && x <= nf {
        x - (nf - 1.0)
    } else if x > nf && x <= nf + 1.0 {
        -x + nf + 1.0
    } else {
        0.0
    }
}

/// An energy observable's phase-space spectral measure.
///
/// Discrete models expose an energy ladder E_n with weight functions
/// w_n(r²); the classical model has a continuous spectrum and only supports
/// interval queries.
pub trait EnergyMeasure: Send + Sync {
    /// Registry name ("classical", "quantum", "sawtooth").
    fn name(&self) -> &'static str;

    /// Whether the spectrum is a discrete ladder.
    fn is_discrete(&self) -> bool;

    /// Energy of the n-th level (discrete models only).
    fn level_energy(&self, n: usize, params: &OscillatorParams) -> Result<f64>;

    /// Weight function of the n-th level at u = r².
    fn level_weight(&self, n: usize, u: f64) -> Result<f64>;

    /// Support of the n-th level's weight in u, or None when unbounded.
    fn level_support(&self, n: usize) -> Result<Option<(f64, f64)>>;

    /// Interior kinks (in u) of the n-th level's weight function; quadrature
    /// panels are split there.
    fn level_kinks(&self, n: usize) -> Result<Vec<f64>>;

    /// Pointwise weight g((lo, hi]; u) of an energy interval.
    ///
    /// Finite for the classical indicator and for the sawtooth ladder (at
    /// most two levels touch any u). The quantum ladder has no pointwise
    /// convergent interval weight, so the quantum model refuses; pair level
    /// by level instead.
    fn interval_weight(
        &self,
        lo: f64,
        hi: f64,
        params: &OscillatorParams,
        u: f64,
    ) -> Result<f64>;
}

/// Continuous classical measure: g((lo,hi]; q,p) = 1 iff H_c(q,p) ∈ (lo, hi].
pub struct ClassicalMeasure;

/// Quantum ladder E_n = ℏω(n+½) with weights h·ρ_n^W(r²).
pub struct QuantumMeasure;

/// Sawtooth ladder E_n = nℏω/2 with triangular weights T_n(r²).
pub struct SawtoothMeasure;

impl EnergyMeasure for ClassicalMeasure {
    fn name(&self) -> &'static str {
        "classical"
    }

    fn is_discrete(&self) -> bool {
        false
    }

    fn level_energy(&self, _n: usize, _params: &OscillatorParams) -> Result<f64> {
        Err(self.continuous_error())
    }

    fn level_weight(&self, _n: usize, _u: f64) -> Result<f64> {
        Err(self.continuous_error())
    }

    fn level_support(&self, _n: usize) -> Result<Option<(f64, f64)>> {
        Err(self.continuous_error())
    }

    fn level_kinks(&self, _n: usize) -> Result<Vec<f64>> {
        Err(self.continuous_error())
    }

    fn interval_weight(
        &self,
        lo: f64,
        hi: f64,
        params: &OscillatorParams,
        u: f64,
    ) -> Result<f64> {
        let energy = 0.5 * params.energy_scale() * u;
        Ok(if energy > lo && energy <= hi { 1.0 } else { 0.0 })
    }
}

impl ClassicalMeasure {
    fn continuous_error(&self) -> PhaseError {
        PhaseError::UnsupportedModel {
            model: "classical",
            reason: "the classical energy spectrum is continuous; use interval queries".into(),
        }
    }
}

impl EnergyMeasure for QuantumMeasure {
    fn name(&self) -> &'static str {
        "quantum"
    }

    fn is_discrete(&self) -> bool {
        true
    }

    fn level_energy(&self, n: usize, params: &OscillatorParams) -> Result<f64> {
        Ok(params.energy_scale() * (n as f64 + 0.5))
    }

    fn level_weight(&self, n: usize, u: f64) -> Result<f64> {
        wigner::quantum_weight(n, u)
    }

    fn level_support(&self, _n: usize) -> Result<Option<(f64, f64)>> {
        Ok(None)
    }

    fn level_kinks(&self, _n: usize) -> Result<Vec<f64>> {
        Ok(Vec::new())
    }

    fn interval_weight(
        &self,
        _lo: f64,
        _hi: f64,
        _params: &OscillatorParams,
        _u: f64,
    ) -> Result<f64> {
        Err(PhaseError::UnsupportedModel {
            model: "quantum",
            reason: "pointwise interval weights of the quantum ladder do not converge; \
                     pair energy levels individually"
                .into(),
        })
    }
}

impl EnergyMeasure for SawtoothMeasure {
    fn name(&self) -> &'static str {
        "sawtooth"
    }

    fn is_discrete(&self) -> bool {
        true
    }

    fn level_energy(&self, n: usize, params: &OscillatorParams) -> Result<f64> {
        Ok(0.5 * params.energy_scale() * n as f64)
    }

    fn level_weight(&self, n: usize, u: f64) -> Result<f64> {
        Ok(triangle(n, u))
    }

    fn level_support(&self, n: usize) -> Result<Option<(f64, f64)>> {
        let nf = n as f64;
        Ok(Some(((nf - 1.0).max(0.0), nf + 1.0)))
    }

    fn level_kinks(&self, n: usize) -> Result<Vec<f64>> {
        Ok(vec![n as f64])
    }

    fn interval_weight(
        &self,
        lo: f64,
        hi: f64,
        params: &OscillatorParams,
        u: f64,
    ) -> Result<f64> {
        // Only levels floor(u) and ceil(u) can be nonzero at u.
        let mut total = 0.0;
        let base = u.floor().max(0.0) as usize;
        for n in base..=base + 1 {
            let e = self.level_energy(n, params)?;
            if e > lo && e <= hi {
                total += triangle(n, u);
            }
        }
        Ok(total)
    }
}

pub static CLASSICAL: ClassicalMeasure = ClassicalMeasure;
pub static QUANTUM: QuantumMeasure = QuantumMeasure;
pub static SAWTOOTH: SawtoothMeasure = SawtoothMeasure;

/// Every registered energy measure.
pub fn all_measures() -> [&'static dyn EnergyMeasure; 3] {
    [&CLASSICAL, &QUANTUM, &SAWTOOTH]
}

/// Look a measure up by its registry name (case-insensitive).
pub fn measure_by_name(name: &str) -> Option<&'static dyn EnergyMeasure> {
    let lower = name.to_ascii_lowercase();
    all_measures()
        .into_iter()
        .find(|m| m.name() == lower)
}
