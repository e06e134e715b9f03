//! 1D marginals of phase-space states.
//!
//! A marginal is a signed 1D measure: projected point masses plus piecewise
//! density contributions. Everything is kept in the dimensionless coordinate
//! (x for position, y for momentum); conversion helpers translate to
//! physical units.

use crate::error::Result;
use crate::params::OscillatorParams;
use crate::quad::{self, QuadConfig};
use crate::state::{Comp, GridData, PhaseState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Position,
    Momentum,
}

impl Axis {
    pub fn name(&self) -> &'static str {
        match self {
            Axis::Position => "position",
            Axis::Momentum => "momentum",
        }
    }

    /// Scale converting the dimensionless marginal coordinate to physical.
    pub fn scale(&self, params: &OscillatorParams) -> f64 {
        match self {
            Axis::Position => params.q_scale(),
            Axis::Momentum => params.p_scale(),
        }
    }
}

/// Density piece of a marginal, in the dimensionless coordinate.
#[derive(Debug, Clone)]
enum Piece {
    /// μ(s) = coef·√(r²−s²) on |s| < r (projection of a uniform disk).
    Semicircle { r: f64, coef: f64 },
    /// μ(s) = 2·∫ g(√(s²+t²)) dt over the transverse chord of an annulus
    /// carrying the radial polynomial g.
    RadialSlice {
        coeffs: Vec<f64>,
        r_min: f64,
        r_max: f64,
    },
    /// Piecewise-linear samples (grid row/column sums).
    Sampled { xs: Vec<f64>, vals: Vec<f64> },
}

impl Piece {
    fn support(&self) -> (f64, f64) {
        match self {
            Piece::Semicircle { r, .. } => (-r, *r),
            Piece::RadialSlice { r_max, .. } => (-r_max, *r_max),
            Piece::Sampled { xs, .. } => (xs[0], xs[xs.len() - 1]),
        }
    }

    fn density(&self, s: f64) -> Result<f64> {
        match self {
            Piece::Semicircle { r, coef } => {
                let d = r * r - s * s;
                Ok(if d > 0.0 { coef * d.sqrt() } else { 0.0 })
            }
            Piece::RadialSlice {
                coeffs,
                r_min,
                r_max,
            } => {
                if s.abs() >= *r_max {
                    return Ok(0.0);
                }
                let t_hi = (r_max * r_max - s * s).sqrt();
                let t_lo = (r_min * r_min - s * s).max(0.0).sqrt();
                if t_hi <= t_lo {
                    return Ok(0.0);
                }
                let poly = |r: f64| {
                    let mut acc = 0.0;
                    for c in coeffs.iter().rev() {
                        acc = acc * r + c;
                    }
                    acc
                };
                let q = quad::integrate(
                    |t| poly((s * s + t * t).sqrt()),
                    t_lo,
                    t_hi,
                    &[],
                    &QuadConfig::default(),
                )?;
                Ok(2.0 * q.value)
            }
            Piece::Sampled { xs, vals } => {
                if s < xs[0] || s > xs[xs.len() - 1] {
                    return Ok(0.0);
                }
                let i = crate::state::cell_index(xs, s);
                let t = (s - xs[i]) / (xs[i + 1] - xs[i]);
                Ok(vals[i] * (1.0 - t) + vals[i + 1] * t)
            }
        }
    }

    fn integral(&self, lo: f64, hi: f64) -> Result<f64> {
        let (s_lo, s_hi) = self.support();
        let a = lo.max(s_lo);
        let b = hi.min(s_hi);
        if b <= a {
            return Ok(0.0);
        }
        match self {
            Piece::Semicircle { r, coef } => {
                // quadrature on the bounded chord; the √ endpoints are the
                // only non-smooth spots
                let c = *coef;
                let rr = *r;
                let q = quad::integrate(
                    |s| {
                        let d = rr * rr - s * s;
                        if d > 0.0 {
                            c * d.sqrt()
                        } else {
                            0.0
                        }
                    },
                    a,
                    b,
                    &[0.0],
                    &QuadConfig::default(),
                )?;
                Ok(q.value)
            }
            Piece::RadialSlice { r_min, .. } => {
                let kinks = [-r_min, *r_min, 0.0];
                let q = quad::integrate(
                    |s| self.density(s).unwrap_or(f64::NAN),
                    a,
                    b,
                    &kinks,
                    &QuadConfig {
                        abs_tol: 1e-11,
                        max_panels: 2048,
                    },
                )?;
                Ok(q.value)
            }
            Piece::Sampled { xs, vals } => {
                // exact integral of the piecewise-linear interpolant on [a,b]
                let mut total = 0.0;
                for i in 0..xs.len() - 1 {
                    let (x0, x1) = (xs[i], xs[i + 1]);
                    let (c0, c1) = (x0.max(a), x1.min(b));
                    if c1 <= c0 {
                        continue;
                    }
                    let h = x1 - x0;
                    let v = |x: f64| {
                        let t = (x - x0) / h;
                        vals[i] * (1.0 - t) + vals[i + 1] * t
                    };
                    total += 0.5 * (v(c0) + v(c1)) * (c1 - c0);
                }
                Ok(total)
            }
        }
    }
}

/// A 1D signed measure: atoms plus density pieces, dimensionless coordinate.
#[derive(Debug, Clone)]
pub struct Marginal1d {
    axis: Axis,
    params: OscillatorParams,
    atoms: Vec<(f64, f64)>,
    pieces: Vec<Piece>,
}

impl Marginal1d {
    /// Projected point masses (location, weight), unreduced.
    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn params(&self) -> &OscillatorParams {
        &self.params
    }

    /// Atoms after merging locations closer than `tol` and dropping exact
    /// cancellations, sorted by location.
    pub fn reduced_atoms(&self, tol: f64) -> Vec<(f64, f64)> {
        let mut sorted = self.atoms.clone();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out: Vec<(f64, f64)> = Vec::new();
        for (x, w) in sorted {
            match out.last_mut() {
                Some((x0, w0)) if (x - *x0).abs() <= tol => *w0 += w,
                _ => out.push((x, w)),
            }
        }
        out.retain(|(_, w)| *w != 0.0);
        out
    }

    /// Density value at dimensionless coordinate s (atoms excluded).
    pub fn density(&self, s: f64) -> Result<f64> {
        let mut total = 0.0;
        for p in &self.pieces {
            total += p.density(s)?;
        }
        Ok(total)
    }

    /// Signed measure of [lo, hi] (dimensionless): atoms inside (boundaries
    /// included) plus density integrals.
    pub fn interval(&self, lo: f64, hi: f64) -> Result<f64> {
        let mut total = 0.0;
        for (x, w) in &self.atoms {
            if *x >= lo && *x <= hi {
                total += w;
            }
        }
        for p in &self.pieces {
            total += p.integral(lo, hi)?;
        }
        Ok(total)
    }

    /// Measure of {s : |s| > cut} (strict), e.g. for potential exceedance.
    pub fn two_sided_tail(&self, cut: f64) -> Result<f64> {
        let mut total = 0.0;
        for (x, w) in &self.atoms {
            if x.abs() > cut {
                total += w;
            }
        }
        let (lo, hi) = self.support();
        for p in &self.pieces {
            if hi > cut {
                total += p.integral(cut, hi)?;
            }
            if lo < -cut {
                total += p.integral(lo, -cut)?;
            }
        }
        Ok(total)
    }

    /// Total signed mass of the marginal.
    pub fn total(&self) -> Result<f64> {
        let (lo, hi) = self.support();
        let mut total: f64 = self.atoms.iter().map(|(_, w)| w).sum();
        for p in &self.pieces {
            let _ = (lo, hi);
            let (a, b) = p.support();
            total += p.integral(a, b)?;
        }
        Ok(total)
    }

    /// Dimensionless support hull including atoms.
    pub fn support(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (x, _) in &self.atoms {
            lo = lo.min(*x);
            hi = hi.max(*x);
        }
        for p in &self.pieces {
            let (a, b) = p.support();
            lo = lo.min(a);
            hi = hi.max(b);
        }
        if lo > hi {
            (0.0, 0.0)
        } else {
            (lo, hi)
        }
    }

    /// Density as a physical distribution over q (or p): value per unit
    /// coordinate at physical location `coord`.
    pub fn density_physical(&self, coord: f64) -> Result<f64> {
        let scale = self.axis.scale(&self.params);
        Ok(self.density(coord / scale)? / scale)
    }

    /// Measure of a physical interval [lo, hi].
    pub fn interval_physical(&self, lo: f64, hi: f64) -> Result<f64> {
        let scale = self.axis.scale(&self.params);
        self.interval(lo / scale, hi / scale)
    }
}

/// Project a state onto one axis.
pub fn marginal(state: &PhaseState, axis: Axis) -> Result<Marginal1d> {
    let mut atoms = Vec::new();
    let mut pieces = Vec::new();
    for comp in &state.comps {
        match comp {
            Comp::Atom { x, y, w } => {
                let s = match axis {
                    Axis::Position => *x,
                    Axis::Momentum => *y,
                };
                atoms.push((s, *w));
            }
            Comp::Disk { r_max, level } => pieces.push(Piece::Semicircle {
                r: *r_max,
                coef: 2.0 * level,
            }),
            Comp::Poly {
                coeffs,
                r_min,
                r_max,
            } => pieces.push(Piece::RadialSlice {
                coeffs: coeffs.clone(),
                r_min: *r_min,
                r_max: *r_max,
            }),
            Comp::Grid(g) => pieces.push(grid_marginal(g, axis)),
        }
    }
    Ok(Marginal1d {
        axis,
        params: *state.params(),
        atoms,
        pieces,
    })
}

fn grid_marginal(g: &GridData, axis: Axis) -> Piece {
    match axis {
        Axis::Position => {
            let wy = crate::state::trapezoid_weights(&g.ys);
            let vals = (0..g.xs.len())
                .map(|i| {
                    (0..g.ys.len())
                        .map(|j| wy[j] * g.value_at(i, j))
                        .sum::<f64>()
                })
                .collect();
            Piece::Sampled {
                xs: g.xs.clone(),
                vals,
            }
        }
        Axis::Momentum => {
            let wx = crate::state::trapezoid_weights(&g.xs);
            let vals = (0..g.ys.len())
                .map(|j| {
                    (0..g.xs.len())
                        .map(|i| wx[i] * g.value_at(i, j))
                        .sum::<f64>()
                })
                .collect();
            Piece::Sampled {
                xs: g.ys.clone(),
                vals,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::OscillatorParams;
    use crate::point::PhasePoint;
    use crate::state::StateComponent;
    use std::f64::consts::PI;

    fn disk_state() -> PhaseState {
        PhaseState::new(
            OscillatorParams::standard(),
            vec![StateComponent::UniformDisk {
                r_max: 1.0,
                height: 1.0 / PI,
            }],
        )
        .unwrap()
    }

    #[test]
    fn disk_marginal_is_semicircle() {
        let m = marginal(&disk_state(), Axis::Position).unwrap();
        // μ(0) = 2/π, and physically (2mω/πℏ)√(ℏ/mω) with ℏ=m=ω=1
        assert!((m.density(0.0).unwrap() - 2.0 / PI).abs() < 1e-14);
        assert!((m.density_physical(0.0).unwrap() - 2.0 / PI).abs() < 1e-14);
        assert!((m.total().unwrap() - 1.0).abs() < 1e-10);
        assert_eq!(m.density(1.5).unwrap(), 0.0);
    }

    #[test]
    fn atom_projection_and_cancellation() {
        let p = OscillatorParams::standard();
        let s = PhaseState::new(
            p,
            vec![
                StateComponent::PointMass {
                    at: PhasePoint::new(-1.0, 0.0),
                    weight: 1.0,
                },
                StateComponent::PointMass {
                    at: PhasePoint::new(1.0, 0.0),
                    weight: -1.0,
                },
                StateComponent::PointMass {
                    at: PhasePoint::new(1.0, 1.0),
                    weight: 1.0,
                },
            ],
        )
        .unwrap();
        let mq = marginal(&s, Axis::Position).unwrap();
        let reduced = mq.reduced_atoms(1e-12);
        // the ± pair at q = +1 cancels: net atom only at q = −1
        assert_eq!(reduced, vec![(-1.0, 1.0)]);

        let mp = marginal(&s, Axis::Momentum).unwrap();
        let reduced_p = mp.reduced_atoms(1e-12);
        assert_eq!(reduced_p, vec![(1.0, 1.0)]);
    }

    #[test]
    fn origin_delta_projects_to_delta() {
        let p = OscillatorParams::standard();
        let s = PhaseState::new(
            p,
            vec![StateComponent::PointMass {
                at: PhasePoint::origin(),
                weight: 1.0,
            }],
        )
        .unwrap();
        let m = marginal(&s, Axis::Momentum).unwrap();
        assert_eq!(m.reduced_atoms(1e-12), vec![(0.0, 1.0)]);
        assert_eq!(m.two_sided_tail(0.0).unwrap(), 0.0); // strict tail
    }

    #[test]
    fn marginal_mass_matches_state_mass() {
        let p = OscillatorParams::standard();
        let s2 = std::f64::consts::SQRT_2;
        let s = PhaseState::new(
            p,
            vec![StateComponent::RadialPolynomial {
                coeffs: vec![0.3, -0.1],
                r_min: 1.0,
                r_max: s2,
            }],
        )
        .unwrap();
        let m = marginal(&s, Axis::Position).unwrap();
        assert!((m.total().unwrap() - s.total_mass()).abs() < 1e-9);
    }

    #[test]
    fn interval_additivity() {
        let m = marginal(&disk_state(), Axis::Position).unwrap();
        let whole = m.interval(-1.0, 1.0).unwrap();
        let split =
            m.interval(-1.0, 0.3).unwrap() + m.interval(0.3, 1.0).unwrap();
        assert!((whole - split).abs() < 1e-10);
    }
}
