//! The operational-theory layer: no-restriction state membership and the
//! tunneling detector.
//!
//! A pseudo-probability density is a valid state of the sawtooth (or
//! classical) oscillator when it is normalized and the position/momentum
//! marginals and energy pairings stay nonnegative at all times. "All times"
//! has no finite certificate, so the oracle sweeps rotation angles θ = ωt
//! uniformly over [0, π) (θ and θ+π give mirror-image marginals) and tests
//! marginal positivity on overlapping interval windows at two widths plus
//! exact signed-atom bookkeeping. Energy pairings depend on r² only and are
//! therefore flow-invariant; they are checked once.

use rayon::prelude::*;

use crate::dynamics::evolve_state_by_angle;
use crate::error::{PhaseError, Result};
use crate::measures::marginal::{marginal, Axis, Marginal1d};
use crate::measures::model::EnergyMeasure;
use crate::measures::Pairing;
use crate::state::PhaseState;

/// Atoms closer than this (dimensionless) are merged before sign checks.
pub const ATOM_MERGE_TOL: f64 = 1e-12;

/// Margin used by the tunneling comparison.
pub const TUNNEL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
pub struct ValidationConfig {
    /// Rotation angles sampled uniformly on [0, π).
    pub time_samples: usize,
    /// Number of base interval windows per marginal.
    pub marginal_grid: usize,
    /// Energy levels checked (discrete models) or ladder bins (classical).
    pub energy_levels: usize,
    /// Allowed negativity on probabilities.
    pub tol_negative: f64,
    /// Allowed deviation of total mass from 1.
    pub tol_norm: f64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self {
            time_samples: 180,
            marginal_grid: 64,
            energy_levels: 64,
            tol_negative: 1e-9,
            tol_norm: 1e-9,
        }
    }
}

impl ValidationConfig {
    fn check(&self) -> Result<()> {
        if self.time_samples < 1 || self.marginal_grid < 1 || self.energy_levels < 1 {
            return Err(PhaseError::DomainError(
                "validation counts must be >= 1".into(),
            ));
        }
        if self.tol_negative < 0.0 {
            return Err(PhaseError::DomainError(
                "tol_negative must be >= 0".into(),
            ));
        }
        Ok(())
    }
}

/// A located marginal-positivity violation.
#[derive(Debug, Clone, serde::Serialize)]
pub struct MarginalViolation {
    /// Rotation angle ωt at which the violation occurs.
    pub omega_t: f64,
    pub axis: Axis,
    /// Physical interval [lo, hi] whose measure is negative (degenerate for
    /// a bare atom).
    pub interval: (f64, f64),
    pub value: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct EnergyViolation {
    pub level: usize,
    pub value: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ValidationReport {
    pub normalized: bool,
    pub total_mass: f64,
    pub marginal_violations: Vec<MarginalViolation>,
    pub energy_violations: Vec<EnergyViolation>,
    pub verdict: bool,
}

/// Membership oracle for the no-restriction state set.
///
/// Defined for the sawtooth and classical models (the paper-level membership
/// question); the quantum model's state set is not characterized by these
/// marginal conditions and is refused.
pub fn validate(
    state: &PhaseState,
    measure: &dyn EnergyMeasure,
    cfg: &ValidationConfig,
) -> Result<ValidationReport> {
    cfg.check()?;
    if measure.name() == "quantum" {
        return Err(PhaseError::UnsupportedModel {
            model: "quantum",
            reason: "membership validation applies to the sawtooth and classical models".into(),
        });
    }

    let total_mass = state.total_mass();
    let normalized = (total_mass - 1.0).abs() <= cfg.tol_norm;

    // (b) marginal positivity swept over the flow
    let angles: Vec<f64> = if state.rotation_invariant() {
        vec![0.0]
    } else {
        (0..cfg.time_samples)
            .map(|k| std::f64::consts::PI * k as f64 / cfg.time_samples as f64)
            .collect()
    };
    let mut marginal_violations: Vec<MarginalViolation> = angles
        .par_iter()
        .map(|&theta| -> Result<Vec<MarginalViolation>> {
            let evolved = evolve_state_by_angle(state, theta);
            let mut found = Vec::new();
            for axis in [Axis::Position, Axis::Momentum] {
                let m = marginal(&evolved, axis)?;
                check_marginal(&m, theta, axis, cfg, &mut found)?;
            }
            Ok(found)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    marginal_violations.sort_by(|a, b| {
        a.omega_t
            .total_cmp(&b.omega_t)
            .then_with(|| a.interval.0.total_cmp(&b.interval.0))
    });

    // (c) energy positivity: weights depend on r² only, so one pass suffices
    let pairing = Pairing::new(state);
    let mut energy_violations = Vec::new();
    let params = state.params();
    let state_u = state.support_radius().powi(2);
    for n in 0..=cfg.energy_levels {
        let value = if measure.is_discrete() {
            match measure.level_support(n)? {
                Some((lo, _)) if lo > state_u => 0.0,
                _ => pairing.level(measure, n)?,
            }
        } else {
            // classical: positivity of ladder-width energy bins
            let half = 0.5 * params.energy_scale();
            pairing.energy_interval(measure, half * n as f64, half * (n + 1) as f64, 0)?
        };
        if value < -cfg.tol_negative {
            energy_violations.push(EnergyViolation { level: n, value });
        }
    }

    let verdict = normalized && marginal_violations.is_empty() && energy_violations.is_empty();
    Ok(ValidationReport {
        normalized,
        total_mass,
        marginal_violations,
        energy_violations,
        verdict,
    })
}

fn check_marginal(
    m: &Marginal1d,
    omega_t: f64,
    axis: Axis,
    cfg: &ValidationConfig,
    found: &mut Vec<MarginalViolation>,
) -> Result<()> {
    let scale = axis.scale(m.params());
    // exact signed-atom bookkeeping after cancelling co-located atoms
    for (x, w) in m.reduced_atoms(ATOM_MERGE_TOL) {
        if w < -cfg.tol_negative {
            found.push(MarginalViolation {
                omega_t,
                axis,
                interval: (x * scale, x * scale),
                value: w,
            });
        }
    }
    // interval windows at two widths, overlapping by half a width
    let (lo, hi) = m.support();
    if hi <= lo {
        return Ok(());
    }
    let pad = 1e-6 * (hi - lo).max(1.0);
    let (lo, hi) = (lo - pad, hi + pad);
    let base = (hi - lo) / cfg.marginal_grid as f64;
    for width in [base, 2.0 * base] {
        let mut start = lo;
        while start < hi {
            let end = (start + width).min(hi);
            let v = m.interval(start, end)?;
            if v < -cfg.tol_negative {
                found.push(MarginalViolation {
                    omega_t,
                    axis,
                    interval: (start * scale, end * scale),
                    value: v,
                });
            }
            start += 0.5 * width;
        }
    }
    Ok(())
}

/// Tunneling verdict for a state under a model.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TunnelingReport {
    pub alpha: f64,
    /// P(V(q̃) > α) from the position marginal.
    pub p_potential: f64,
    /// P(H̃ > α) from the energy distribution (levels above α).
    pub p_energy: f64,
    /// Truncation residual of the energy distribution (discrete models).
    pub residual: f64,
    pub tunneling: bool,
}

/// Lin–Dahlsten tunneling test: the state tunnels at threshold α when
/// P(V(q̃) > α) > P(H̃ > α).
///
/// α must be strictly positive: at α = 0 the left side degenerates to
/// P(V > 0) = 1 − P(q̃ = 0), which is an exact marginal query, not a
/// threshold comparison.
pub fn tunneling_test(
    state: &PhaseState,
    measure: &dyn EnergyMeasure,
    alpha: f64,
) -> Result<TunnelingReport> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(PhaseError::DomainError(format!(
            "tunneling threshold must be finite and > 0, got {alpha}"
        )));
    }
    let params = state.params();
    // V(q) > α  ⇔  |x| > √(2α/ℏω)
    let cut = (2.0 * alpha / params.energy_scale()).sqrt();
    let m = marginal(state, Axis::Position)?;
    let p_potential = m.two_sided_tail(cut)?;

    let (p_energy, residual) = if measure.is_discrete() {
        let cap = crate::measures::natural_level_cap(measure, state);
        let dist = crate::measures::energy_distribution(measure, state, cap)?;
        (dist.mass_above(alpha), dist.residual)
    } else {
        let p = crate::measures::pair_energy_interval(measure, alpha, f64::INFINITY, state, 0)?;
        (p, 0.0)
    };

    Ok(TunnelingReport {
        alpha,
        p_potential,
        p_energy,
        residual,
        tunneling: p_potential > p_energy + TUNNEL_TOL,
    })
}

/// Closed-form P(V(q̃) > α) for the uniform-disk state, valid on
/// 0 < α < ℏω/2:
/// 1 − (2/π)(arcsin√(2α/ℏω) + √(2α/ℏω)·√(1 − 2α/ℏω)).
///
/// Serves as the analytic oracle for `tunneling_test`'s quadrature route.
pub fn potential_exceedance_closed_form(alpha: f64, params: &crate::params::OscillatorParams) -> Result<f64> {
    let ratio = 2.0 * alpha / params.energy_scale();
    if !(alpha > 0.0 && ratio < 1.0) {
        return Err(PhaseError::DomainError(format!(
            "closed form requires 0 < alpha < hbar*omega/2, got alpha={alpha}"
        )));
    }
    let s = ratio.sqrt();
    Ok(1.0 - 2.0 / std::f64::consts::PI * (s.asin() + s * (1.0 - ratio).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{CLASSICAL, SAWTOOTH};
    use crate::params::OscillatorParams;
    use crate::point::PhasePoint;
    use crate::state::{PhaseState, StateComponent};
    use std::f64::consts::{FRAC_PI_4, PI};

    fn params() -> OscillatorParams {
        OscillatorParams::standard()
    }

    fn disk_state() -> PhaseState {
        PhaseState::new(
            params(),
            vec![StateComponent::UniformDisk {
                r_max: 1.0,
                height: 1.0 / PI,
            }],
        )
        .unwrap()
    }

    fn origin_state() -> PhaseState {
        PhaseState::new(
            params(),
            vec![StateComponent::PointMass {
                at: PhasePoint::origin(),
                weight: 1.0,
            }],
        )
        .unwrap()
    }

    fn broken_state() -> PhaseState {
        let p = params();
        PhaseState::new(
            p,
            vec![
                StateComponent::PointMass {
                    at: PhasePoint::new(-p.q_scale(), 0.0),
                    weight: 1.0,
                },
                StateComponent::PointMass {
                    at: PhasePoint::new(p.q_scale(), 0.0),
                    weight: -1.0,
                },
                StateComponent::PointMass {
                    at: PhasePoint::new(p.q_scale(), p.p_scale()),
                    weight: 1.0,
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn disk_state_is_valid() {
        let r = validate(&disk_state(), &SAWTOOTH, &ValidationConfig::default()).unwrap();
        assert!(r.verdict, "{r:?}");
    }

    #[test]
    fn origin_state_is_valid() {
        let r = validate(&origin_state(), &SAWTOOTH, &ValidationConfig::default()).unwrap();
        assert!(r.verdict);
    }

    #[test]
    fn broken_state_fails_only_after_evolution() {
        let r = validate(&broken_state(), &SAWTOOTH, &ValidationConfig::default()).unwrap();
        assert!(!r.verdict);
        assert!(r.normalized);
        assert!(r.energy_violations.is_empty());
        assert!(!r.marginal_violations.is_empty());
        // instantaneous (t = 0) checks pass
        assert!(r.marginal_violations.iter().all(|v| v.omega_t > 0.0));
        // a violation of value −1 shows up at ωt = π/4
        let at_eighth = r
            .marginal_violations
            .iter()
            .find(|v| (v.omega_t - FRAC_PI_4).abs() < 1e-12)
            .expect("violation at pi/4");
        assert!((at_eighth.value + 1.0).abs() < 1e-12);
    }

    #[test]
    fn classical_model_validates_too() {
        let r = validate(&disk_state(), &CLASSICAL, &ValidationConfig::default()).unwrap();
        assert!(r.verdict);
    }

    #[test]
    fn quantum_model_is_refused() {
        let r = validate(
            &disk_state(),
            &crate::measures::QUANTUM,
            &ValidationConfig::default(),
        );
        assert!(matches!(r, Err(PhaseError::UnsupportedModel { .. })));
    }

    #[test]
    fn origin_state_never_tunnels() {
        for alpha in [0.1, 0.4, 2.0] {
            let r = tunneling_test(&origin_state(), &SAWTOOTH, alpha).unwrap();
            assert_eq!(r.p_potential, 0.0);
            assert_eq!(r.p_energy, 0.0);
            assert!(!r.tunneling);
        }
    }

    #[test]
    fn disk_state_tunnels_at_small_alpha() {
        let r = tunneling_test(&disk_state(), &SAWTOOTH, 0.05).unwrap();
        assert!((r.p_energy - 0.5).abs() < 1e-10);
        // closed form: 0.6041813035905921
        assert!((r.p_potential - 0.6041813035905921).abs() < 1e-6);
        assert!(r.tunneling);
    }

    #[test]
    fn closed_form_domain_and_endpoints() {
        let p = params();
        assert!(potential_exceedance_closed_form(0.0, &p).is_err());
        assert!(potential_exceedance_closed_form(0.5, &p).is_err());
        assert!(potential_exceedance_closed_form(-0.1, &p).is_err());
        // α = ℏω/4 → ½ − 1/π
        let v = potential_exceedance_closed_form(0.25, &p).unwrap();
        assert!((v - (0.5 - 1.0 / PI)).abs() < 1e-14);
        // α → ℏω/2⁻ gives 0, α → 0⁺ gives 1
        assert!(potential_exceedance_closed_form(0.4999999, &p).unwrap() < 1e-3);
        assert!(potential_exceedance_closed_form(1e-12, &p).unwrap() > 1.0 - 1e-5);
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let p = params();
        for frac in [0.05, 0.1, 0.2, 0.24] {
            let alpha = frac * p.energy_scale();
            let r = tunneling_test(&disk_state(), &SAWTOOTH, alpha).unwrap();
            let exact = potential_exceedance_closed_form(alpha, &p).unwrap();
            assert!(
                (r.p_potential - exact).abs() < 1e-6,
                "alpha={alpha} quad={} exact={exact}",
                r.p_potential
            );
        }
    }

    #[test]
    fn small_alpha_expansion() {
        // P(V > α) ≈ 1 − (4/π)√(2α/ℏω) for α ≪ ℏω/2
        let p = params();
        for alpha in [1e-3, 5e-4, 1e-5] {
            let r = tunneling_test(&disk_state(), &SAWTOOTH, alpha).unwrap();
            let approx = 1.0 - 4.0 / PI * (2.0 * alpha).sqrt();
            assert!(
                (r.p_potential - approx).abs() <= 0.01,
                "alpha={alpha}: {} vs {approx}",
                r.p_potential
            );
        }
    }

    #[test]
    fn rejects_degenerate_alpha() {
        assert!(tunneling_test(&disk_state(), &SAWTOOTH, 0.0).is_err());
        assert!(tunneling_test(&disk_state(), &SAWTOOTH, -1.0).is_err());
        assert!(tunneling_test(&disk_state(), &SAWTOOTH, f64::NAN).is_err());
    }

    #[test]
    fn energy_checks_are_flow_invariant() {
        // pairings of the evolved broken state equal the unevolved ones
        let s = broken_state();
        let evolved = crate::dynamics::evolve_state(&s, 0.9);
        for n in 0..=4 {
            let a = crate::measures::pair_level(&SAWTOOTH, n, &s).unwrap();
            let b = crate::measures::pair_level(&SAWTOOTH, n, &evolved).unwrap();
            assert!((a - b).abs() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn mixtures_of_valid_states_stay_valid() {
        let a = disk_state();
        let b = origin_state();
        for lambda in [0.25, 0.5, 0.75] {
            let m = crate::state::mix(&[(lambda, &a), (1.0 - lambda, &b)]).unwrap();
            let r = validate(&m, &SAWTOOTH, &ValidationConfig::default()).unwrap();
            assert!(r.verdict, "lambda={lambda}");
        }
    }
}
