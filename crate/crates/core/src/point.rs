//! Phase-space points and the squared-radius / energy coordinate.

use serde::{Deserialize, Serialize};

use crate::params::OscillatorParams;

/// A point (q, p) of 1D phase space, in physical units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub q: f64,
    pub p: f64,
}

impl PhasePoint {
    pub fn new(q: f64, p: f64) -> Self {
        Self { q, p }
    }

    pub fn origin() -> Self {
        Self { q: 0.0, p: 0.0 }
    }

    /// Dimensionless coordinates (q/q_scale, p/p_scale).
    pub fn dimensionless(&self, params: &OscillatorParams) -> (f64, f64) {
        (self.q / params.q_scale(), self.p / params.p_scale())
    }

    pub fn from_dimensionless(x: f64, y: f64, params: &OscillatorParams) -> Self {
        Self {
            q: x * params.q_scale(),
            p: y * params.p_scale(),
        }
    }
}

/// Squared dimensionless radius r² = p²/(ℏmω) + mωq²/ℏ.
pub fn r2(point: PhasePoint, params: &OscillatorParams) -> f64 {
    let (x, y) = point.dimensionless(params);
    x * x + y * y
}

/// Classical Hamiltonian H_c = p²/2m + mω²q²/2 = (ℏω/2)·r².
pub fn classical_energy(point: PhasePoint, params: &OscillatorParams) -> f64 {
    0.5 * params.energy_scale() * r2(point, params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r2_reference_points() {
        let p = OscillatorParams::standard();
        assert_eq!(r2(PhasePoint::origin(), &p), 0.0);
        // r²(±√(ℏ/mω), 0) = 1
        let a = PhasePoint::new(p.q_scale(), 0.0);
        assert!((r2(a, &p) - 1.0).abs() < 1e-15);
        // r²(√(ℏ/mω), √(ℏωm)) = 2
        let b = PhasePoint::new(p.q_scale(), p.p_scale());
        assert!((r2(b, &p) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn r2_reference_points_nontrivial_units() {
        let p = OscillatorParams::new(0.37, 4.2, 0.9).unwrap();
        let a = PhasePoint::new(p.q_scale(), 0.0);
        assert!((r2(a, &p) - 1.0).abs() < 1e-12);
        let b = PhasePoint::new(p.q_scale(), p.p_scale());
        assert!((r2(b, &p) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn energy_is_half_hbar_omega_r2() {
        let p = OscillatorParams::new(2.0, 0.5, 3.0).unwrap();
        let pt = PhasePoint::new(0.3, -1.7);
        let e = classical_energy(pt, &p);
        assert_eq!(e, 0.5 * p.energy_scale() * r2(pt, &p));
        // direct form p²/2m + mω²q²/2 agrees
        let direct = pt.p * pt.p / (2.0 * p.mass()) + 0.5 * p.mass() * p.omega() * p.omega() * pt.q * pt.q;
        assert!((e - direct).abs() <= 1e-14 * direct.abs().max(1.0));
    }

    #[test]
    fn r2_symmetries() {
        let p = OscillatorParams::standard();
        let pt = PhasePoint::new(0.83, -0.41);
        let neg = PhasePoint::new(-pt.q, -pt.p);
        assert_eq!(r2(pt, &p), r2(neg, &p));
        // exchange x ↔ y
        let swapped = PhasePoint::from_dimensionless(-0.41, 0.83, &p);
        assert!((r2(pt, &p) - r2(swapped, &p)).abs() < 1e-15);
    }
}
