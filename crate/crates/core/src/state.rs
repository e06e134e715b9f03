//! Phase-space states: signed mixtures of point masses and continuous
//! density components.
//!
//! Components are stored in dimensionless coordinates (x = q/q_scale,
//! y = p/p_scale) with densities expressed per unit dx dy, so that
//! total mass = ∫∫ g dx dy and dΓ = ℏ dx dy never leaks a stray ℏ into the
//! radial formulas. Conversion to/from physical units happens exactly once,
//! at construction and export.
//!
//! Weights and densities may be negative: pseudo-probability densities are
//! first-class citizens here, and physicality is the oracle module's job.

use crate::error::{PhaseError, Result};
use crate::params::OscillatorParams;
use crate::point::PhasePoint;

/// Public description of one state component, in physical units.
///
/// This mirrors the JSON state-file schema:
/// * `PointMass` — Dirac mass at a phase-space point (weight may be negative).
/// * `RadialPolynomial` — density f(r) = Σ coeffs[k]·r^k on r ∈ [r_min, r_max]
///   (r dimensionless), zero elsewhere; radially symmetric by construction.
/// * `UniformDisk` — constant density `height` on r ≤ r_max.
/// * `GridDensity` — piecewise-bilinear density sampled on a rectangular
///   (q, p) grid; `values[i][j]` is the density at (q_grid[i], p_grid[j]).
#[derive(Debug, Clone, PartialEq)]
pub enum StateComponent {
    PointMass {
        at: PhasePoint,
        weight: f64,
    },
    RadialPolynomial {
        coeffs: Vec<f64>,
        r_min: f64,
        r_max: f64,
    },
    UniformDisk {
        r_max: f64,
        height: f64,
    },
    GridDensity {
        q_grid: Vec<f64>,
        p_grid: Vec<f64>,
        values: Vec<Vec<f64>>,
    },
}

/// Bilinear grid in dimensionless coordinates, row-major over x.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct GridData {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// vals[i * ys.len() + j] = density at (xs[i], ys[j]), per unit dx dy.
    pub vals: Vec<f64>,
}

impl GridData {
    pub fn value_at(&self, i: usize, j: usize) -> f64 {
        self.vals[i * self.ys.len() + j]
    }

    /// Bilinear interpolation; zero outside the grid rectangle.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let (nx, ny) = (self.xs.len(), self.ys.len());
        if x < self.xs[0] || x > self.xs[nx - 1] || y < self.ys[0] || y > self.ys[ny - 1] {
            return 0.0;
        }
        let i = cell_index(&self.xs, x);
        let j = cell_index(&self.ys, y);
        let tx = (x - self.xs[i]) / (self.xs[i + 1] - self.xs[i]);
        let ty = (y - self.ys[j]) / (self.ys[j + 1] - self.ys[j]);
        let v00 = self.value_at(i, j);
        let v10 = self.value_at(i + 1, j);
        let v01 = self.value_at(i, j + 1);
        let v11 = self.value_at(i + 1, j + 1);
        v00 * (1.0 - tx) * (1.0 - ty) + v10 * tx * (1.0 - ty) + v01 * (1.0 - tx) * ty + v11 * tx * ty
    }

    /// Exact integral of the bilinear interpolant (tensor trapezoid rule).
    pub fn integral(&self) -> f64 {
        self.weighted_integral(|_, _| 1.0)
    }

    /// Trapezoid integral of g(x,y)·w(x,y) with w sampled at the nodes.
    pub fn weighted_integral(&self, w: impl Fn(f64, f64) -> f64) -> f64 {
        let wx = trapezoid_weights(&self.xs);
        let wy = trapezoid_weights(&self.ys);
        let mut total = 0.0;
        for (i, &xi) in self.xs.iter().enumerate() {
            let mut row = 0.0;
            for (j, &yj) in self.ys.iter().enumerate() {
                row += wy[j] * self.value_at(i, j) * w(xi, yj);
            }
            total += wx[i] * row;
        }
        total
    }

    /// Largest radius reached by a grid corner.
    pub fn corner_radius(&self) -> f64 {
        let xm = self.xs[0].abs().max(self.xs[self.xs.len() - 1].abs());
        let ym = self.ys[0].abs().max(self.ys[self.ys.len() - 1].abs());
        (xm * xm + ym * ym).sqrt()
    }
}

pub(crate) fn trapezoid_weights(grid: &[f64]) -> Vec<f64> {
    let n = grid.len();
    let mut w = vec![0.0; n];
    for i in 0..n - 1 {
        let h = 0.5 * (grid[i + 1] - grid[i]);
        w[i] += h;
        w[i + 1] += h;
    }
    w
}

/// Index of the cell [grid[i], grid[i+1]] containing x (x within bounds).
pub(crate) fn cell_index(grid: &[f64], x: f64) -> usize {
    match grid.binary_search_by(|g| g.total_cmp(&x)) {
        Ok(i) => i.min(grid.len() - 2),
        Err(i) => i.saturating_sub(1).min(grid.len() - 2),
    }
}

/// Internal component representation, dimensionless throughout.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Comp {
    Atom { x: f64, y: f64, w: f64 },
    /// Constant density `level` on r ≤ r_max.
    Disk { r_max: f64, level: f64 },
    /// Density g(r) = Σ coeffs[k] r^k on [r_min, r_max].
    Poly {
        coeffs: Vec<f64>,
        r_min: f64,
        r_max: f64,
    },
    Grid(GridData),
}

impl Comp {
    pub fn mass(&self) -> f64 {
        match self {
            Comp::Atom { w, .. } => *w,
            Comp::Disk { r_max, level } => level * std::f64::consts::PI * r_max * r_max,
            Comp::Poly {
                coeffs,
                r_min,
                r_max,
            } => {
                // 2π ∫ g(r) r dr, term-wise exact
                let mut s = 0.0;
                for (k, c) in coeffs.iter().enumerate() {
                    let e = (k + 2) as f64;
                    s += c * (r_max.powf(e) - r_min.powf(e)) / e;
                }
                2.0 * std::f64::consts::PI * s
            }
            Comp::Grid(g) => g.integral(),
        }
    }

    /// (ℏω/2)-free second moment ∫ r² g dx dy; multiply by ℏω/2 for energy.
    pub fn radial_second_moment(&self) -> f64 {
        match self {
            Comp::Atom { x, y, w } => w * (x * x + y * y),
            Comp::Disk { r_max, level } => {
                level * 0.5 * std::f64::consts::PI * r_max.powi(4)
            }
            Comp::Poly {
                coeffs,
                r_min,
                r_max,
            } => {
                let mut s = 0.0;
                for (k, c) in coeffs.iter().enumerate() {
                    let e = (k + 4) as f64;
                    s += c * (r_max.powf(e) - r_min.powf(e)) / e;
                }
                2.0 * std::f64::consts::PI * s
            }
            Comp::Grid(g) => g.weighted_integral(|x, y| x * x + y * y),
        }
    }

    /// Outer radius of the component's support.
    pub fn support_radius(&self) -> f64 {
        match self {
            Comp::Atom { x, y, .. } => (x * x + y * y).sqrt(),
            Comp::Disk { r_max, .. } => *r_max,
            Comp::Poly { r_max, .. } => *r_max,
            Comp::Grid(g) => g.corner_radius(),
        }
    }

    /// True when rotation about the origin leaves the component unchanged.
    pub fn rotation_invariant(&self) -> bool {
        match self {
            Comp::Atom { x, y, .. } => *x == 0.0 && *y == 0.0,
            Comp::Disk { .. } | Comp::Poly { .. } => true,
            Comp::Grid(_) => false,
        }
    }

    fn scaled(&self, factor: f64) -> Comp {
        match self {
            Comp::Atom { x, y, w } => Comp::Atom {
                x: *x,
                y: *y,
                w: w * factor,
            },
            Comp::Disk { r_max, level } => Comp::Disk {
                r_max: *r_max,
                level: level * factor,
            },
            Comp::Poly {
                coeffs,
                r_min,
                r_max,
            } => Comp::Poly {
                coeffs: coeffs.iter().map(|c| c * factor).collect(),
                r_min: *r_min,
                r_max: *r_max,
            },
            Comp::Grid(g) => Comp::Grid(GridData {
                xs: g.xs.clone(),
                ys: g.ys.clone(),
                vals: g.vals.iter().map(|v| v * factor).collect(),
            }),
        }
    }
}

fn check_grid_axis(name: &str, grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(PhaseError::InvalidComponent(format!(
            "{name} must have at least 2 entries"
        )));
    }
    for w in grid.windows(2) {
        if !(w[1] > w[0]) || !w[0].is_finite() || !w[1].is_finite() {
            return Err(PhaseError::InvalidComponent(format!(
                "{name} must be finite and strictly increasing"
            )));
        }
    }
    Ok(())
}

fn comp_from_public(c: &StateComponent, params: &OscillatorParams) -> Result<Comp> {
    let hbar = params.hbar();
    match c {
        StateComponent::PointMass { at, weight } => {
            if !at.q.is_finite() || !at.p.is_finite() || !weight.is_finite() {
                return Err(PhaseError::InvalidComponent(
                    "point mass fields must be finite".into(),
                ));
            }
            let (x, y) = at.dimensionless(params);
            Ok(Comp::Atom { x, y, w: *weight })
        }
        StateComponent::RadialPolynomial {
            coeffs,
            r_min,
            r_max,
        } => {
            if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
                return Err(PhaseError::InvalidComponent(
                    "radial polynomial needs finite, nonempty coefficients".into(),
                ));
            }
            if !(*r_min >= 0.0 && *r_max > *r_min && r_max.is_finite()) {
                return Err(PhaseError::InvalidComponent(format!(
                    "radial polynomial needs 0 <= r_min < r_max, got [{r_min}, {r_max}]"
                )));
            }
            Ok(Comp::Poly {
                coeffs: coeffs.iter().map(|c| c * hbar).collect(),
                r_min: *r_min,
                r_max: *r_max,
            })
        }
        StateComponent::UniformDisk { r_max, height } => {
            if !(*r_max > 0.0 && r_max.is_finite() && height.is_finite()) {
                return Err(PhaseError::InvalidComponent(format!(
                    "uniform disk needs finite r_max > 0 and finite height, got r_max={r_max}, height={height}"
                )));
            }
            Ok(Comp::Disk {
                r_max: *r_max,
                level: height * hbar,
            })
        }
        StateComponent::GridDensity {
            q_grid,
            p_grid,
            values,
        } => {
            check_grid_axis("q_grid", q_grid)?;
            check_grid_axis("p_grid", p_grid)?;
            if values.len() != q_grid.len() {
                return Err(PhaseError::InvalidComponent(format!(
                    "values has {} rows, expected {}",
                    values.len(),
                    q_grid.len()
                )));
            }
            let qs = params.q_scale();
            let ps = params.p_scale();
            let ny = p_grid.len();
            let mut vals = Vec::with_capacity(q_grid.len() * ny);
            for row in values {
                if row.len() != ny {
                    return Err(PhaseError::InvalidComponent(format!(
                        "grid row has {} entries, expected {ny}",
                        row.len()
                    )));
                }
                for v in row {
                    if !v.is_finite() {
                        return Err(PhaseError::NonIntegrable(
                            "grid values contain NaN or infinity".into(),
                        ));
                    }
                    vals.push(v * hbar);
                }
            }
            Ok(Comp::Grid(GridData {
                xs: q_grid.iter().map(|q| q / qs).collect(),
                ys: p_grid.iter().map(|p| p / ps).collect(),
                vals,
            }))
        }
    }
}

fn comp_to_public(c: &Comp, params: &OscillatorParams) -> StateComponent {
    let hbar = params.hbar();
    match c {
        Comp::Atom { x, y, w } => StateComponent::PointMass {
            at: PhasePoint::from_dimensionless(*x, *y, params),
            weight: *w,
        },
        Comp::Disk { r_max, level } => StateComponent::UniformDisk {
            r_max: *r_max,
            height: level / hbar,
        },
        Comp::Poly {
            coeffs,
            r_min,
            r_max,
        } => StateComponent::RadialPolynomial {
            coeffs: coeffs.iter().map(|c| c / hbar).collect(),
            r_min: *r_min,
            r_max: *r_max,
        },
        Comp::Grid(g) => {
            let qs = params.q_scale();
            let ps = params.p_scale();
            let ny = g.ys.len();
            StateComponent::GridDensity {
                q_grid: g.xs.iter().map(|x| x * qs).collect(),
                p_grid: g.ys.iter().map(|y| y * ps).collect(),
                values: (0..g.xs.len())
                    .map(|i| {
                        (0..ny)
                            .map(|j| g.vals[i * ny + j] / hbar)
                            .collect::<Vec<_>>()
                    })
                    .collect(),
            }
        }
    }
}

/// A signed measure on phase space: a nonempty list of components plus the
/// oscillator constants they are expressed in.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseState {
    params: OscillatorParams,
    pub(crate) comps: Vec<Comp>,
}

impl PhaseState {
    pub fn new(params: OscillatorParams, components: Vec<StateComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(PhaseError::InvalidComponent(
                "a state needs at least one component".into(),
            ));
        }
        let comps = components
            .iter()
            .map(|c| comp_from_public(c, &params))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { params, comps })
    }

    pub(crate) fn from_comps(params: OscillatorParams, comps: Vec<Comp>) -> Self {
        Self { params, comps }
    }

    pub fn params(&self) -> &OscillatorParams {
        &self.params
    }

    /// Components in physical units (reconstructed from internal storage).
    pub fn components(&self) -> Vec<StateComponent> {
        self.comps
            .iter()
            .map(|c| comp_to_public(c, &self.params))
            .collect()
    }

    /// ∫ ρ dΓ. Point masses contribute their weights exactly; disk and
    /// polynomial components integrate in closed form; grids by the
    /// trapezoid rule (exact for the bilinear interpolant).
    pub fn total_mass(&self) -> f64 {
        self.comps.iter().map(Comp::mass).sum()
    }

    /// ∫ H_c ρ dΓ = (ℏω/2) ∫ r² ρ dΓ, closed form except on grids.
    pub fn classical_energy_integral(&self) -> f64 {
        let m2: f64 = self.comps.iter().map(Comp::radial_second_moment).sum();
        0.5 * self.params.energy_scale() * m2
    }

    /// Outer radius (dimensionless) of the union of component supports.
    pub fn support_radius(&self) -> f64 {
        self.comps
            .iter()
            .map(|c| c.support_radius())
            .fold(0.0, f64::max)
    }

    /// True when every component is unchanged by phase-space rotation, so
    /// time evolution acts as the identity.
    pub fn rotation_invariant(&self) -> bool {
        self.comps.iter().all(Comp::rotation_invariant)
    }

    pub(crate) fn atoms(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.comps.iter().filter_map(|c| match c {
            Comp::Atom { x, y, w } => Some((*x, *y, *w)),
            _ => None,
        })
    }
}

/// Convex-style combination of states: component lists are concatenated with
/// weights folded into point-mass weights and densities.
///
/// Weights must be nonnegative and all states must share the same oscillator
/// constants; the weights are not forced to sum to one (total mass of the
/// result is the weighted sum of the inputs' masses).
pub fn mix(parts: &[(f64, &PhaseState)]) -> Result<PhaseState> {
    let (first_w, first) = parts
        .first()
        .ok_or_else(|| PhaseError::InvalidComponent("mix of zero states".into()))?;
    if parts.iter().any(|(w, _)| !(*w >= 0.0) || !w.is_finite()) {
        return Err(PhaseError::InvalidComponent(
            "mixture weights must be finite and >= 0".into(),
        ));
    }
    let params = *first.params();
    if parts.iter().any(|(_, s)| *s.params() != params) {
        return Err(PhaseError::ParamMismatch);
    }
    let mut comps = Vec::new();
    let _ = first_w;
    for (w, s) in parts {
        comps.extend(s.comps.iter().map(|c| c.scaled(*w)));
    }
    Ok(PhaseState::from_comps(params, comps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::PhasePoint;
    use std::f64::consts::PI;

    fn params() -> OscillatorParams {
        OscillatorParams::standard()
    }

    fn disk_state() -> PhaseState {
        // the uniform-disk state: height 1/(πℏ) on r ≤ 1
        PhaseState::new(
            params(),
            vec![StateComponent::UniformDisk {
                r_max: 1.0,
                height: 1.0 / PI,
            }],
        )
        .unwrap()
    }

    #[test]
    fn disk_mass_is_one() {
        assert!((disk_state().total_mass() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn empty_disk_has_zero_mass() {
        let s = PhaseState::new(
            params(),
            vec![StateComponent::UniformDisk {
                r_max: 1.0,
                height: 0.0,
            }],
        )
        .unwrap();
        assert_eq!(s.total_mass(), 0.0);
    }

    #[test]
    fn three_point_masses_sum_signed() {
        let p = params();
        let s = PhaseState::new(
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
        .unwrap();
        assert_eq!(s.total_mass(), 1.0);
    }

    #[test]
    fn grid_mass_matches_analytic() {
        // sample e^{-r²}/(πℏ) on [-6,6]²; mass = 1 up to box truncation
        let p = params();
        let n = 121;
        let axis: Vec<f64> = (0..n).map(|i| -6.0 + 12.0 * i as f64 / (n - 1) as f64).collect();
        let values: Vec<Vec<f64>> = axis
            .iter()
            .map(|&q| {
                axis.iter()
                    .map(|&pp| (-(q * q + pp * pp)).exp() / PI)
                    .collect()
            })
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
        assert!((s.total_mass() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn grid_rejects_nan() {
        let r = PhaseState::new(
            params(),
            vec![StateComponent::GridDensity {
                q_grid: vec![0.0, 1.0],
                p_grid: vec![0.0, 1.0],
                values: vec![vec![0.0, 1.0], vec![f64::NAN, 0.0]],
            }],
        );
        assert!(matches!(r, Err(PhaseError::NonIntegrable(_))));
    }

    #[test]
    fn grid_rejects_unsorted_axis() {
        let r = PhaseState::new(
            params(),
            vec![StateComponent::GridDensity {
                q_grid: vec![0.0, 0.0],
                p_grid: vec![0.0, 1.0],
                values: vec![vec![0.0, 0.0], vec![0.0, 0.0]],
            }],
        );
        assert!(r.is_err());
    }

    #[test]
    fn mix_identity_and_mass_linearity() {
        let s = disk_state();
        let same = mix(&[(1.0, &s)]).unwrap();
        assert!((same.total_mass() - s.total_mass()).abs() < 1e-15);

        let origin = PhaseState::new(
            params(),
            vec![StateComponent::PointMass {
                at: PhasePoint::origin(),
                weight: 1.0,
            }],
        )
        .unwrap();
        let half = mix(&[(0.5, &origin), (0.5, &s)]).unwrap();
        assert!((half.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mix_rejects_param_mismatch() {
        let a = disk_state();
        let other = OscillatorParams::new(2.0, 1.0, 1.0).unwrap();
        let b = PhaseState::new(
            other,
            vec![StateComponent::PointMass {
                at: PhasePoint::origin(),
                weight: 1.0,
            }],
        )
        .unwrap();
        assert!(matches!(
            mix(&[(0.5, &a), (0.5, &b)]),
            Err(PhaseError::ParamMismatch)
        ));
    }

    #[test]
    fn second_moment_closed_forms() {
        // disk of radius 1, level 1/π: ∫r² g = 2π(1/π)∫r³dr = 1/2
        let s = disk_state();
        let e = s.classical_energy_integral();
        assert!((e - 0.25).abs() < 1e-14); // (ℏω/2)·(1/2)
    }
}
