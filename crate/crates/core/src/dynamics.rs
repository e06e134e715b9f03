//! Exact Liouville time evolution of the harmonic oscillator.
//!
//! Solving the Hamilton equations gives
//!   q(t) = (p₀/mω)·sin(ωt) + q₀·cos(ωt)
//!   p(t) = p₀·cos(ωt) − q₀·mω·sin(ωt)
//! which in dimensionless coordinates is a rigid clockwise rotation by
//! θ = ωt. Evolution is applied component-wise: point masses are carried
//! along trajectories, rotation-invariant components are untouched, and
//! grids are resampled by pulling back through the inverse rotation.

use rayon::prelude::*;

use crate::params::OscillatorParams;
use crate::point::PhasePoint;
use crate::state::{Comp, GridData, PhaseState};

/// The time-t flow of the oscillator: a rotation by θ = ωt.
#[derive(Debug, Clone, Copy)]
pub struct FlowMap {
    cos: f64,
    sin: f64,
    theta: f64,
}

impl FlowMap {
    pub fn new(t: f64, params: &OscillatorParams) -> Self {
        Self::from_angle(params.omega() * t)
    }

    pub fn from_angle(theta: f64) -> Self {
        Self {
            cos: theta.cos(),
            sin: theta.sin(),
            theta,
        }
    }

    pub fn angle(&self) -> f64 {
        self.theta
    }

    /// Forward image of a dimensionless point.
    pub fn forward(&self, x: f64, y: f64) -> (f64, f64) {
        (x * self.cos + y * self.sin, y * self.cos - x * self.sin)
    }

    /// Preimage under the flow (rotation the other way).
    pub fn backward(&self, x: f64, y: f64) -> (f64, f64) {
        (x * self.cos - y * self.sin, y * self.cos + x * self.sin)
    }
}

/// Forward-evolve a single phase-space point by time t.
pub fn evolve_point(point: PhasePoint, t: f64, params: &OscillatorParams) -> PhasePoint {
    let wt = params.omega() * t;
    let (c, s) = (wt.cos(), wt.sin());
    PhasePoint {
        q: point.p / (params.mass() * params.omega()) * s + point.q * c,
        p: point.p * c - point.q * params.mass() * params.omega() * s,
    }
}

/// Diagnostics of one evolution step.
#[derive(Debug, Clone, Copy, Default)]
pub struct EvolveReport {
    /// |mass after − mass before| of resampled grid components; zero when no
    /// grid is present.
    pub grid_mass_drift: f64,
}

/// Forward-evolve a state by time t.
pub fn evolve_state(state: &PhaseState, t: f64) -> PhaseState {
    evolve_state_report(state, t).0
}

/// Forward-evolve by a rotation angle θ = ωt directly.
pub fn evolve_state_by_angle(state: &PhaseState, theta: f64) -> PhaseState {
    evolve_by_flow(state, FlowMap::from_angle(theta)).0
}

pub fn evolve_state_report(state: &PhaseState, t: f64) -> (PhaseState, EvolveReport) {
    evolve_by_flow(state, FlowMap::new(t, state.params()))
}

fn evolve_by_flow(state: &PhaseState, flow: FlowMap) -> (PhaseState, EvolveReport) {
    let mut drift = 0.0;
    let comps = state
        .comps
        .iter()
        .map(|c| match c {
            Comp::Atom { x, y, w } => {
                let (nx, ny) = flow.forward(*x, *y);
                Comp::Atom { x: nx, y: ny, w: *w }
            }
            Comp::Disk { .. } | Comp::Poly { .. } => c.clone(),
            Comp::Grid(g) => {
                let before = g.integral();
                let resampled = resample_grid(g, flow);
                drift += (resampled.integral() - before).abs();
                Comp::Grid(resampled)
            }
        })
        .collect();
    (
        PhaseState::from_comps(*state.params(), comps),
        EvolveReport {
            grid_mass_drift: drift,
        },
    )
}

/// Pull the grid density back through the inverse rotation onto a bounding
/// box of the rotated support, keeping the original node spacing. No mass
/// can leave the represented region; interpolation drift is reported by the
/// caller via mass comparison.
fn resample_grid(g: &GridData, flow: FlowMap) -> GridData {
    let corners = [
        (g.xs[0], g.ys[0]),
        (g.xs[0], g.ys[g.ys.len() - 1]),
        (g.xs[g.xs.len() - 1], g.ys[0]),
        (g.xs[g.xs.len() - 1], g.ys[g.ys.len() - 1]),
    ];
    let mut x_lo = f64::INFINITY;
    let mut x_hi = f64::NEG_INFINITY;
    let mut y_lo = f64::INFINITY;
    let mut y_hi = f64::NEG_INFINITY;
    for (cx, cy) in corners {
        let (fx, fy) = flow.forward(cx, cy);
        x_lo = x_lo.min(fx);
        x_hi = x_hi.max(fx);
        y_lo = y_lo.min(fy);
        y_hi = y_hi.max(fy);
    }
    let hx = (g.xs[g.xs.len() - 1] - g.xs[0]) / (g.xs.len() - 1) as f64;
    let hy = (g.ys[g.ys.len() - 1] - g.ys[0]) / (g.ys.len() - 1) as f64;
    let nx = ((x_hi - x_lo) / hx).round() as usize + 1;
    let ny = ((y_hi - y_lo) / hy).round() as usize + 1;
    let xs: Vec<f64> = (0..nx)
        .map(|i| x_lo + (x_hi - x_lo) * i as f64 / (nx - 1) as f64)
        .collect();
    let ys: Vec<f64> = (0..ny)
        .map(|j| y_lo + (y_hi - y_lo) * j as f64 / (ny - 1) as f64)
        .collect();

    let vals: Vec<f64> = xs
        .par_iter()
        .flat_map_iter(|&x| {
            let ys = &ys;
            let g = &g;
            ys.iter().map(move |&y| {
                let (px, py) = flow.backward(x, y);
                g.eval(px, py)
            })
        })
        .collect();

    GridData { xs, ys, vals }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::OscillatorParams;
    use crate::point::{r2, PhasePoint};
    use crate::state::{PhaseState, StateComponent};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

    fn params() -> OscillatorParams {
        OscillatorParams::standard()
    }

    #[test]
    fn zero_time_is_identity() {
        let p = params();
        let pt = PhasePoint::new(0.37, -1.2);
        let moved = evolve_point(pt, 0.0, &p);
        assert_eq!(moved, pt);
    }

    #[test]
    fn quarter_period_from_q_axis() {
        // (√(ℏ/mω), 0) at t = π/2ω lands on (0, −√(ℏmω))
        let p = params();
        let pt = PhasePoint::new(p.q_scale(), 0.0);
        let moved = evolve_point(pt, FRAC_PI_2 / p.omega(), &p);
        assert!(moved.q.abs() < 1e-15);
        assert!((moved.p + p.p_scale()).abs() < 1e-15);
    }

    #[test]
    fn eighth_period_diagonal() {
        // (√(ℏ/mω), √(ℏωm)) at t = π/4ω lands on (√(2ℏ/mω), 0)
        let p = params();
        let pt = PhasePoint::new(p.q_scale(), p.p_scale());
        let moved = evolve_point(pt, FRAC_PI_4 / p.omega(), &p);
        assert!((moved.q - SQRT_2 * p.q_scale()).abs() < 1e-14);
        assert!(moved.p.abs() < 1e-14);
    }

    #[test]
    fn r2_is_preserved() {
        let p = OscillatorParams::new(0.5, 2.0, 3.0).unwrap();
        let pt = PhasePoint::new(0.7, -0.4);
        let before = r2(pt, &p);
        for t in [0.1, 1.0, 7.3, 100.0] {
            let after = r2(evolve_point(pt, t, &p), &p);
            assert!((after - before).abs() <= 1e-14 * before.max(1.0));
        }
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
    fn broken_state_atoms_at_eighth_period() {
        let s = broken_state();
        let evolved = evolve_state(&s, FRAC_PI_4);
        let atoms: Vec<_> = evolved.atoms().collect();
        let inv = 1.0 / SQRT_2;
        let expect = [(-inv, inv, 1.0), (inv, -inv, -1.0), (SQRT_2, 0.0, 1.0)];
        for ((x, y, w), (ex, ey, ew)) in atoms.iter().zip(expect) {
            assert!((x - ex).abs() < 1e-12, "x={x} expected {ex}");
            assert!((y - ey).abs() < 1e-12, "y={y} expected {ey}");
            assert_eq!(*w, ew);
        }
    }

    #[test]
    fn group_law_on_atoms() {
        let s = broken_state();
        let a = evolve_state(&evolve_state(&s, 0.31), 0.47);
        let b = evolve_state(&s, 0.78);
        for ((x1, y1, _), (x2, y2, _)) in a.atoms().zip(b.atoms()) {
            assert!((x1 - x2).abs() < 1e-12);
            assert!((y1 - y2).abs() < 1e-12);
        }
    }

    #[test]
    fn full_period_returns_atoms() {
        let s = broken_state();
        let evolved = evolve_state(&s, 2.0 * PI);
        for ((x1, y1, _), (x2, y2, _)) in evolved.atoms().zip(s.atoms()) {
            assert!((x1 - x2).abs() < 1e-10);
            assert!((y1 - y2).abs() < 1e-10);
        }
    }

    #[test]
    fn rotation_invariant_components_pass_through() {
        let p = params();
        let s = PhaseState::new(
            p,
            vec![StateComponent::UniformDisk {
                r_max: 1.0,
                height: 1.0 / PI,
            }],
        )
        .unwrap();
        let evolved = evolve_state(&s, 1.234);
        assert_eq!(evolved, s);
    }

    #[test]
    fn grid_quarter_rotation_is_exact_permutation() {
        let p = params();
        let n = 41;
        let axis: Vec<f64> = (0..n).map(|i| -2.0 + 4.0 * i as f64 / (n - 1) as f64).collect();
        let values: Vec<Vec<f64>> = axis
            .iter()
            .map(|&q| axis.iter().map(|&pp| (q + 0.3 * pp).sin().powi(2)).collect())
            .collect();
        let s = PhaseState::new(
            p,
            vec![StateComponent::GridDensity {
                q_grid: axis.clone(),
                p_grid: axis.clone(),
                values: values.clone(),
            }],
        )
        .unwrap();
        let (evolved, report) = evolve_state_report(&s, FRAC_PI_2);
        assert!(report.grid_mass_drift < 1e-12);
        // value at (x, y) after a quarter turn equals original at (−y, x)
        match &evolved.components()[0] {
            StateComponent::GridDensity { values: new_vals, .. } => {
                let orig = |i: usize, j: usize| values[i][j];
                // new(i,j) = old at backward(x_i, y_j) = (−y_j, x_i) → old[n-1-j][i]
                for i in 0..n {
                    for j in 0..n {
                        let expect = orig(n - 1 - j, i);
                        let got = new_vals[i][j];
                        assert!(
                            (got - expect).abs() < 1e-12,
                            "i={i} j={j} got={got} expect={expect}"
                        );
                    }
                }
            }
            _ => panic!("expected grid"),
        }
    }

    #[test]
    fn grid_mass_drift_is_small_at_generic_angle() {
        let p = params();
        let n = 161;
        let axis: Vec<f64> = (0..n).map(|i| -5.0 + 10.0 * i as f64 / (n - 1) as f64).collect();
        let values: Vec<Vec<f64>> = axis
            .iter()
            .map(|&q| axis.iter().map(|&pp| (-(q * q + pp * pp)).exp() / PI).collect())
            .collect();
        let s = PhaseState::new(
            p,
            vec![StateComponent::GridDensity {
                q_grid: axis.clone(),
                p_grid: axis,
                values,
            }],
        )
        .unwrap();
        let (evolved, report) = evolve_state_report(&s, 0.7);
        assert!(report.grid_mass_drift < 1e-5, "drift {}", report.grid_mass_drift);
        assert!((evolved.total_mass() - s.total_mass()).abs() < 1e-5);
    }
}
