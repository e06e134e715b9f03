//! Constructors for the concrete reference states, so tests and the CLI can
//! refer to them by name.
//!
//! * `rho0` — point mass at the phase-space origin; the sharp zero-energy
//!   eigenstate of the sawtooth oscillator.
//! * `rho_tn` — uniform disk of radius 1 and height 1/(πℏ); the state whose
//!   energy splits ½/½ between the two lowest sawtooth levels and which
//!   exhibits tunneling for small thresholds.
//! * `rho_nn` — cubic radial pseudo-density on r ∈ [1, √2]; a normalized
//!   eigenstate of the sawtooth level ℏω that takes negative values.
//! * `rho_bn` — three signed point masses whose marginals are positive at
//!   t = 0 but not after an eighth period.
//! * `quantum_ground_grid` — the ground-state Wigner function sampled on a
//!   481×481 grid over [−6, 6]² (dimensionless).

use std::f64::consts::SQRT_2;

use crate::params::OscillatorParams;
use crate::point::PhasePoint;
use crate::state::{PhaseState, StateComponent};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedState {
    Rho0,
    RhoNn,
    RhoTn,
    RhoBn,
    QuantumGroundGrid,
}

impl NamedState {
    pub const ALL: [NamedState; 5] = [
        NamedState::Rho0,
        NamedState::RhoNn,
        NamedState::RhoTn,
        NamedState::RhoBn,
        NamedState::QuantumGroundGrid,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            NamedState::Rho0 => "rho0",
            NamedState::RhoNn => "rho_nn",
            NamedState::RhoTn => "rho_tn",
            NamedState::RhoBn => "rho_bn",
            NamedState::QuantumGroundGrid => "quantum_ground_grid",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        let lower = name.to_ascii_lowercase();
        Self::ALL.into_iter().find(|s| s.name() == lower)
    }
}

/// Coefficients (ascending powers of r) of the rho_nn cubic, as the physical
/// density value: 30(1−r)(a + b·r + c·r²) / ((2827√2 − 3998)·πℏ).
///
/// Kept as the literal √2-laden expressions rather than pre-evaluated
/// decimals so the source stays auditable.
pub fn rho_nn_coeffs(params: &OscillatorParams) -> [f64; 4] {
    let a = 8.0 * (147.0 * SQRT_2 - 208.0);
    let b = 2.0 * (738.0 * SQRT_2 - 1043.0);
    let c = 7.0 * (65.0 * SQRT_2 - 92.0);
    let scale = 30.0 / ((2827.0 * SQRT_2 - 3998.0) * std::f64::consts::PI * params.hbar());
    // (1 − r)(a + b r + c r²) = a + (b−a) r + (c−b) r² − c r³
    [scale * a, scale * (b - a), scale * (c - b), scale * (-c)]
}

/// Half-width (dimensionless) and node count of the ground-state grid. A box
/// of half-width 6 keeps the truncated Gaussian mass error below 1e-14.
pub const GROUND_GRID_HALF_WIDTH: f64 = 6.0;
pub const GROUND_GRID_NODES: usize = 481;

pub fn build(name: NamedState, params: &OscillatorParams) -> PhaseState {
    let components = match name {
        NamedState::Rho0 => vec![StateComponent::PointMass {
            at: PhasePoint::origin(),
            weight: 1.0,
        }],
        NamedState::RhoTn => vec![StateComponent::UniformDisk {
            r_max: 1.0,
            height: 1.0 / (std::f64::consts::PI * params.hbar()),
        }],
        NamedState::RhoNn => vec![StateComponent::RadialPolynomial {
            coeffs: rho_nn_coeffs(params).to_vec(),
            r_min: 1.0,
            r_max: SQRT_2,
        }],
        NamedState::RhoBn => {
            let qs = params.q_scale();
            let ps = params.p_scale();
            vec![
                StateComponent::PointMass {
                    at: PhasePoint::new(-qs, 0.0),
                    weight: 1.0,
                },
                StateComponent::PointMass {
                    at: PhasePoint::new(qs, 0.0),
                    weight: -1.0,
                },
                StateComponent::PointMass {
                    at: PhasePoint::new(qs, ps),
                    weight: 1.0,
                },
            ]
        }
        NamedState::QuantumGroundGrid => {
            let n = GROUND_GRID_NODES;
            let hw = GROUND_GRID_HALF_WIDTH;
            let qs = params.q_scale();
            let ps = params.p_scale();
            let h = params.h();
            let axis: Vec<f64> = (0..n)
                .map(|i| -hw + 2.0 * hw * i as f64 / (n - 1) as f64)
                .collect();
            let values: Vec<Vec<f64>> = axis
                .iter()
                .map(|&x| {
                    axis.iter()
                        .map(|&y| 2.0 * (-(x * x + y * y)).exp() / h)
                        .collect()
                })
                .collect();
            vec![StateComponent::GridDensity {
                q_grid: axis.iter().map(|x| x * qs).collect(),
                p_grid: axis.iter().map(|y| y * ps).collect(),
                values,
            }]
        }
    };
    PhaseState::new(*params, components).expect("catalog states are well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{pair_level, SAWTOOTH};

    fn params() -> OscillatorParams {
        OscillatorParams::standard()
    }

    #[test]
    fn names_round_trip() {
        for s in NamedState::ALL {
            assert_eq!(NamedState::parse(s.name()), Some(s));
        }
        assert_eq!(NamedState::parse("RHO_TN"), Some(NamedState::RhoTn));
        assert!(NamedState::parse("rho_xx").is_none());
    }

    #[test]
    fn masses() {
        let p = params();
        assert!((build(NamedState::Rho0, &p).total_mass() - 1.0).abs() < 1e-15);
        assert!((build(NamedState::RhoTn, &p).total_mass() - 1.0).abs() < 1e-15);
        assert!((build(NamedState::RhoBn, &p).total_mass() - 1.0).abs() < 1e-15);
        // the cubic's normalization holds exactly in ℚ[√2]; double precision
        // evaluation of the coefficients leaves ~1e-11
        assert!((build(NamedState::RhoNn, &p).total_mass() - 1.0).abs() < 1e-9);
        assert!((build(NamedState::QuantumGroundGrid, &p).total_mass() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rho_nn_is_an_eigenstate_of_level_two() {
        let p = params();
        let s = build(NamedState::RhoNn, &p);
        let p1 = pair_level(&SAWTOOTH, 1, &s).unwrap();
        let p2 = pair_level(&SAWTOOTH, 2, &s).unwrap();
        assert!(p1.abs() < 1e-9, "P(hw/2)={p1}");
        assert!((p2 - 1.0).abs() < 1e-9, "P(hw)={p2}");
        // support in r is exactly [1, √2]: levels 0 and ≥3 vanish
        assert!(pair_level(&SAWTOOTH, 0, &s).unwrap().abs() < 1e-12);
        for n in 3..=10 {
            assert!(pair_level(&SAWTOOTH, n, &s).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn rho_nn_dips_negative() {
        let p = params();
        let coeffs = rho_nn_coeffs(&p);
        let eval = |r: f64| {
            coeffs
                .iter()
                .rev()
                .fold(0.0, |acc, c| acc * r + c)
        };
        let mut min = f64::INFINITY;
        let mut argmin = 0.0;
        for i in 0..=4000 {
            let r = 1.0 + (SQRT_2 - 1.0) * i as f64 / 4000.0;
            let v = eval(r);
            if v < min {
                min = v;
                argmin = r;
            }
        }
        // minimum ≈ −0.7039 at r ≈ 1.0761 (density units 1/ℏ)
        assert!(min < -1e-3 / std::f64::consts::PI);
        assert!((min + 0.703870976266962).abs() < 1e-6, "min={min}");
        assert!((argmin - 1.076).abs() < 5e-3, "argmin={argmin}");
    }

    #[test]
    fn rho_bn_instantaneous_marginals_are_single_deltas() {
        let p = params();
        let s = build(NamedState::RhoBn, &p);
        let mq = crate::measures::marginal(&s, crate::measures::Axis::Position).unwrap();
        assert_eq!(mq.reduced_atoms(1e-12), vec![(-1.0, 1.0)]);
        let mp = crate::measures::marginal(&s, crate::measures::Axis::Momentum).unwrap();
        assert_eq!(mp.reduced_atoms(1e-12), vec![(1.0, 1.0)]);
    }

    #[test]
    fn dimensionless_outputs_do_not_depend_on_units() {
        let p1 = params();
        let p2 = OscillatorParams::new(0.31, 2.7, 1.9).unwrap();
        for name in [NamedState::RhoTn, NamedState::RhoNn, NamedState::RhoBn] {
            // rho_nn's coefficients divide by a ~1e-2 denominator, so unit
            // rescaling reshuffles their rounding at the ~1e-11 level
            let tol = if name == NamedState::RhoNn { 1e-10 } else { 1e-12 };
            let a = build(name, &p1);
            let b = build(name, &p2);
            assert!(
                (a.total_mass() - b.total_mass()).abs() < tol,
                "{name:?} mass"
            );
            for n in 0..=3 {
                let pa = pair_level(&SAWTOOTH, n, &a).unwrap();
                let pb = pair_level(&SAWTOOTH, n, &b).unwrap();
                assert!((pa - pb).abs() < tol, "{name:?} level {n}");
            }
        }
    }
}
