//! Pairing engine: ⟨g(I), ρ⟩ for spectral measures against states, outcome
//! distributions, and marginals.
//!
//! Point masses pair exactly; disk and polynomial components reduce to 1D
//! radial quadrature (in u = r² or r, split at weight-function kinks); grid
//! components integrate on a fixed polar rule whose angular nodes are
//! equally spaced, so pairings are stable under grid rotation.

pub mod marginal;
pub mod model;

pub use marginal::{marginal, Axis, Marginal1d};
pub use model::{
    all_measures, measure_by_name, triangle, EnergyMeasure, ClassicalMeasure, QuantumMeasure,
    SawtoothMeasure, CLASSICAL, QUANTUM, SAWTOOTH,
};

use std::f64::consts::PI;

use crate::error::{PhaseError, Result};
use crate::quad::{self, QuadConfig};
use crate::state::{Comp, GridData, PhaseState};

/// One atom of a discrete energy distribution.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct EnergyEntry {
    pub n: usize,
    pub energy: f64,
    pub probability: f64,
}

/// Discrete outcome distribution of an energy measurement.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EnergyDistribution {
    pub model: &'static str,
    pub entries: Vec<EnergyEntry>,
    /// total_mass(state) − Σ entries: probability beyond the truncation.
    pub residual: f64,
}

impl EnergyDistribution {
    /// Probability of outcomes with energy strictly above `threshold`,
    /// within the truncated ladder.
    pub fn mass_above(&self, threshold: f64) -> f64 {
        self.entries
            .iter()
            .filter(|e| e.energy > threshold)
            .map(|e| e.probability)
            .sum()
    }

    pub fn mean(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.energy * e.probability)
            .sum()
    }
}

/// Fixed polar quadrature rule for a grid component: radial Gauss–Kronrod
/// nodes (panels split at integer u and capped in width) with a 512-point
/// angular average per ring.
struct PolarRule {
    /// (r, combined weight w·2π·r) per radial node.
    nodes: Vec<(f64, f64)>,
    /// Angular mean of the grid density on each ring.
    ring_mean: Vec<f64>,
}

const POLAR_ANGLES: usize = 512;

fn polar_panels(radius: f64, min_cell: f64, extra: &[f64]) -> Vec<f64> {
    let mut edges = vec![0.0];
    let mut k = 1.0;
    while k < radius {
        edges.push(k);
        k += if radius > 24.0 { (radius / 24.0).ceil() } else { 1.0 };
    }
    edges.push(radius);
    for &e in extra {
        if e > 0.0 && e < radius {
            edges.push(e);
        }
    }
    edges.sort_by(f64::total_cmp);
    edges.dedup();
    // cap panel width so bilinear cells are resolved
    let target = (2.0 * min_cell).max(radius / 512.0);
    let mut out = Vec::new();
    for w in edges.windows(2) {
        let len = w[1] - w[0];
        let parts = (len / target).ceil().max(1.0) as usize;
        for i in 0..parts {
            out.push(w[0] + len * i as f64 / parts as f64);
        }
    }
    out.push(radius);
    out
}

// 15-point Kronrod nodes/weights on [-1, 1] (positive half), reused for the
// fixed radial rule.
const RK_X: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const RK_W: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

impl PolarRule {
    fn build(grid: &GridData, extra_breaks_u: &[f64]) -> Self {
        let radius = grid.corner_radius();
        let min_cell = grid
            .xs
            .windows(2)
            .chain(grid.ys.windows(2))
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min);
        let extra_r: Vec<f64> = extra_breaks_u
            .iter()
            .filter(|u| **u > 0.0)
            .map(|u| u.sqrt())
            .collect();
        let edges = polar_panels(radius, min_cell, &extra_r);

        let mut nodes = Vec::new();
        for w in edges.windows(2) {
            let c = 0.5 * (w[0] + w[1]);
            let h = 0.5 * (w[1] - w[0]);
            for j in 0..8 {
                if j == 7 {
                    nodes.push((c, RK_W[7] * h));
                } else {
                    nodes.push((c - h * RK_X[j], RK_W[j] * h));
                    nodes.push((c + h * RK_X[j], RK_W[j] * h));
                }
            }
        }

        let step = 2.0 * PI / POLAR_ANGLES as f64;
        let ring_mean = nodes
            .iter()
            .map(|&(r, _)| {
                let mut sum = 0.0;
                for j in 0..POLAR_ANGLES {
                    let phi = step * j as f64;
                    sum += grid.eval(r * phi.cos(), r * phi.sin());
                }
                sum / POLAR_ANGLES as f64
            })
            .collect();

        let nodes = nodes
            .into_iter()
            .map(|(r, w)| (r, w * 2.0 * PI * r))
            .collect();
        Self { nodes, ring_mean }
    }

    /// ∫∫ w(x²+y²)·B dx dy for a radial weight function.
    fn pair(&self, weight: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.ring_mean)
            .map(|(&(r, w), &ring)| w * weight(r * r) * ring)
            .sum()
    }
}

/// Reusable pairing context for one state; builds the polar rules of grid
/// components once so a whole distribution costs little more than one level.
pub struct Pairing<'a> {
    state: &'a PhaseState,
    rules: Vec<Option<PolarRule>>,
}

impl<'a> Pairing<'a> {
    pub fn new(state: &'a PhaseState) -> Self {
        let rules = state
            .comps
            .iter()
            .map(|c| match c {
                Comp::Grid(g) => Some(PolarRule::build(g, &[])),
                _ => None,
            })
            .collect();
        Self { state, rules }
    }

    /// ⟨g({E_n}), ρ⟩ for level n of a discrete measure.
    pub fn level(&self, measure: &dyn EnergyMeasure, n: usize) -> Result<f64> {
        // surfaces DegreeTooLarge / continuous-spectrum errors before the
        // closures below unwrap
        measure.level_weight(n, 0.0)?;
        let support = measure.level_support(n)?;
        let kinks = measure.level_kinks(n)?;
        let weight = |u: f64| measure.level_weight(n, u).expect("level validated");
        self.pair_radial(&weight, support, &kinks)
    }

    /// ⟨g((lo, hi]), ρ⟩ for the classical (continuous) measure.
    fn classical_interval(&self, lo: f64, hi: f64) -> Result<f64> {
        let params = self.state.params();
        let escale = 0.5 * params.energy_scale();
        // indicator in u with jumps at lo/escale and hi/escale
        let u_lo = lo / escale;
        let u_hi = hi / escale;
        let weight = |u: f64| if u > u_lo && u <= u_hi { 1.0 } else { 0.0 };
        let support = Some((u_lo.max(0.0), u_hi));
        let kinks = vec![u_lo, u_hi];

        let mut total = 0.0;
        for comp in &self.state.comps {
            total += match comp {
                // grid rules need the indicator jumps as radial breakpoints
                Comp::Grid(g) => PolarRule::build(g, &kinks).pair(weight),
                _ => pair_comp_radial(comp, &weight, support, &kinks, None)?,
            };
        }
        Ok(total)
    }

    /// ⟨g(I), ρ⟩ over an energy interval I = (lo, hi] for any model; discrete
    /// ladders enumerate their levels up to `level_cap`.
    pub fn energy_interval(
        &self,
        measure: &dyn EnergyMeasure,
        lo: f64,
        hi: f64,
        level_cap: usize,
    ) -> Result<f64> {
        if !measure.is_discrete() {
            return self.classical_interval(lo, hi);
        }
        let params = self.state.params();
        let mut total = 0.0;
        for n in 0..=level_cap {
            let e = measure.level_energy(n, params)?;
            if e > hi {
                break;
            }
            if e > lo {
                total += self.level(measure, n)?;
            }
        }
        Ok(total)
    }

    fn pair_radial(
        &self,
        weight: &impl Fn(f64) -> f64,
        support: Option<(f64, f64)>,
        kinks: &[f64],
    ) -> Result<f64> {
        let mut total = 0.0;
        for (comp, rule) in self.state.comps.iter().zip(&self.rules) {
            total += pair_comp_radial(comp, weight, support, kinks, rule.as_ref())?;
        }
        Ok(total)
    }
}

/// Pair one component against a radial weight w(u).
fn pair_comp_radial(
    comp: &Comp,
    weight: &impl Fn(f64) -> f64,
    support_u: Option<(f64, f64)>,
    kinks_u: &[f64],
    rule: Option<&PolarRule>,
) -> Result<f64> {
    match comp {
        Comp::Atom { x, y, w } => Ok(w * weight(x * x + y * y)),
        Comp::Disk { r_max, level } => {
            // level·∫∫_{r≤rmax} w = level·π·∫₀^{rmax²} w(u) du
            let mut lo = 0.0f64;
            let mut hi = r_max * r_max;
            if let Some((s_lo, s_hi)) = support_u {
                lo = lo.max(s_lo);
                hi = hi.min(s_hi);
            }
            if hi <= lo {
                return Ok(0.0);
            }
            let q = quad::integrate(weight, lo, hi, kinks_u, &QuadConfig::default())?;
            Ok(level * PI * q.value)
        }
        Comp::Poly {
            coeffs,
            r_min,
            r_max,
        } => {
            let mut lo = *r_min;
            let mut hi = *r_max;
            if let Some((s_lo, s_hi)) = support_u {
                lo = lo.max(s_lo.max(0.0).sqrt());
                hi = hi.min(s_hi.sqrt());
            }
            if hi <= lo {
                return Ok(0.0);
            }
            let poly = |r: f64| {
                let mut acc = 0.0;
                for c in coeffs.iter().rev() {
                    acc = acc * r + c;
                }
                acc
            };
            let breaks: Vec<f64> = kinks_u
                .iter()
                .filter(|u| **u > 0.0)
                .map(|u| u.sqrt())
                .collect();
            let q = quad::integrate(
                |r| weight(r * r) * poly(r) * r,
                lo,
                hi,
                &breaks,
                &QuadConfig::default(),
            )?;
            Ok(2.0 * PI * q.value)
        }
        Comp::Grid(g) => {
            let owned;
            let rule = match rule {
                Some(r) => r,
                None => {
                    owned = PolarRule::build(g, kinks_u);
                    &owned
                }
            };
            Ok(rule.pair(weight))
        }
    }
}

/// ⟨g({E_n}), ρ⟩ — probability of the n-th energy outcome.
pub fn pair_level(measure: &dyn EnergyMeasure, n: usize, state: &PhaseState) -> Result<f64> {
    Pairing::new(state).level(measure, n)
}

/// ⟨g((lo, hi]), ρ⟩ for an energy interval.
pub fn pair_energy_interval(
    measure: &dyn EnergyMeasure,
    lo: f64,
    hi: f64,
    state: &PhaseState,
    level_cap: usize,
) -> Result<f64> {
    Pairing::new(state).energy_interval(measure, lo, hi, level_cap)
}

/// Outcome distribution for a discrete energy measure, levels 0..=n_max.
pub fn energy_distribution(
    measure: &dyn EnergyMeasure,
    state: &PhaseState,
    n_max: usize,
) -> Result<EnergyDistribution> {
    if !measure.is_discrete() {
        return Err(PhaseError::UnsupportedModel {
            model: "classical",
            reason: "continuous spectrum has no level distribution; query intervals instead"
                .into(),
        });
    }
    if n_max < 1 {
        return Err(PhaseError::DomainError("n_max must be >= 1".into()));
    }
    let params = state.params();
    let pairing = Pairing::new(state);
    // levels whose support lies beyond the state contribute exactly zero
    let state_u = {
        let r = state.support_radius();
        r * r
    };
    let mut entries = Vec::with_capacity(n_max + 1);
    let mut sum = 0.0;
    for n in 0..=n_max {
        let energy = measure.level_energy(n, params)?;
        let skip = match measure.level_support(n)? {
            Some((lo, _)) => lo > state_u,
            None => false,
        };
        let probability = if skip { 0.0 } else { pairing.level(measure, n)? };
        sum += probability;
        entries.push(EnergyEntry {
            n,
            energy,
            probability,
        });
    }
    Ok(EnergyDistribution {
        model: measure.name(),
        entries,
        residual: state.total_mass() - sum,
    })
}

/// Number of ladder levels that can intersect the state's support (exact for
/// the sawtooth ladder; a documented truncation for the quantum one).
pub fn natural_level_cap(measure: &dyn EnergyMeasure, state: &PhaseState) -> usize {
    let r = state.support_radius();
    let u = r * r;
    match measure.name() {
        "sawtooth" => (u.ceil() as usize + 1).max(2),
        _ => 64,
    }
}

/// Mean measured energy Σ E_n·P_n (spectral route). For the classical
/// measure the spectral integral collapses to ∫ H_c ρ dΓ, which
/// [`PhaseState::classical_energy_integral`] computes in closed form; that
/// closed form is also the cross-check route for the discrete models.
///
/// The quantum spectral sum converges only for states with smooth radial
/// profiles; for sharp-edged states the truncation residual is reported via
/// `energy_distribution` instead of being silently dropped here.
pub fn mean_energy(measure: &dyn EnergyMeasure, state: &PhaseState) -> Result<f64> {
    if !measure.is_discrete() {
        return Ok(state.classical_energy_integral());
    }
    let cap = natural_level_cap(measure, state);
    let dist = energy_distribution(measure, state, cap)?;
    Ok(dist.mean())
}

/// P(A_c ∈ (lo, hi]) for a user-supplied classical phase-space function
/// A_c(q, p) in physical coordinates, via a 2D indicator integral.
///
/// Point masses are exact. Continuous components use fixed dense sampling
/// (the indicator's discontinuity defeats adaptive refinement), so expect
/// roughly three to four digits unless A_c is radially aligned.
pub fn classical_function_probability(
    state: &PhaseState,
    a_c: &dyn Fn(f64, f64) -> f64,
    lo: f64,
    hi: f64,
) -> Result<f64> {
    let params = state.params();
    let qs = params.q_scale();
    let ps = params.p_scale();
    let inside = |x: f64, y: f64| {
        let v = a_c(x * qs, y * ps);
        v > lo && v <= hi
    };
    let mut total = 0.0;
    for comp in &state.comps {
        total += match comp {
            Comp::Atom { x, y, w } => {
                if inside(*x, *y) {
                    *w
                } else {
                    0.0
                }
            }
            Comp::Disk { .. } | Comp::Poly { .. } => {
                let (r_lo, r_hi, g): (f64, f64, Box<dyn Fn(f64) -> f64>) = match comp {
                    Comp::Disk { r_max, level } => {
                        let l = *level;
                        (0.0, *r_max, Box::new(move |_| l))
                    }
                    Comp::Poly {
                        coeffs,
                        r_min,
                        r_max,
                    } => {
                        let cs = coeffs.clone();
                        (
                            *r_min,
                            *r_max,
                            Box::new(move |r: f64| {
                                let mut acc = 0.0;
                                for c in cs.iter().rev() {
                                    acc = acc * r + c;
                                }
                                acc
                            }),
                        )
                    }
                    _ => unreachable!(),
                };
                let n_r = 600usize;
                let n_phi = 1024usize;
                let dr = (r_hi - r_lo) / n_r as f64;
                let dphi = 2.0 * PI / n_phi as f64;
                let mut acc = 0.0;
                for i in 0..n_r {
                    let r = r_lo + dr * (i as f64 + 0.5);
                    let mut frac = 0usize;
                    for j in 0..n_phi {
                        let phi = dphi * j as f64;
                        if inside(r * phi.cos(), r * phi.sin()) {
                            frac += 1;
                        }
                    }
                    acc += g(r) * r * dr * dphi * frac as f64;
                }
                acc
            }
            Comp::Grid(g) => g.weighted_integral(|x, y| if inside(x, y) { 1.0 } else { 0.0 }),
        };
    }
    Ok(total)
}
