//! Adaptive 1D quadrature on a 7-point Gauss / 15-point Kronrod pair.
//!
//! Panels can be pre-split at caller-supplied breakpoints; weight functions
//! in this library are piecewise smooth with kinks at integer values of r²,
//! and splitting there restores the fast convergence of the rule.

use crate::error::{PhaseError, Result};

/// Kronrod abscissae of the 15-point rule on [-1, 1] (positive half).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_33,
    0.949_107_912_342_758_524_526_189_684_047_85,
    0.864_864_423_359_769_072_789_712_788_640_93,
    0.741_531_185_599_394_439_863_864_773_280_79,
    0.586_087_235_467_691_130_294_144_838_258_73,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_24,
    0.0,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_2,
    0.104_790_010_322_250_183_839_876_322_541_52,
    0.140_653_259_715_525_918_745_189_590_510_24,
    0.169_004_726_639_267_902_826_583_426_598_55,
    0.190_350_578_064_785_409_913_256_402_421_01,
    0.204_432_940_075_298_892_414_161_999_234_65,
    0.209_482_141_084_727_828_012_999_174_891_71,
];

/// Weights of the embedded 7-point Gauss rule (nodes XGK[1], XGK[3], XGK[5], center).
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_08,
    0.279_705_391_489_276_667_901_467_771_423_78,
    0.381_830_050_505_118_944_950_369_775_488_97,
    0.417_959_183_673_469_387_755_102_040_816_33,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    /// Absolute tolerance on the total integral.
    pub abs_tol: f64,
    /// Panel budget before giving up.
    pub max_panels: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            max_panels: 4096,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub abs_error: f64,
    pub panels: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error && self.a == other.a
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Largest error first; ties broken by left endpoint for determinism.
        self.error
            .total_cmp(&other.error)
            .then(other.a.total_cmp(&self.a))
    }
}

/// One G7-K15 evaluation on [a, b]; returns (kronrod, error estimate).
fn g7k15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut fv = [0.0f64; 15];
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    let mut res_abs = kronrod.abs();

    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[j] = f1;
        fv[14 - j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let value = kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();

    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, err)
}

/// Adaptively integrate `f` over [a, b].
///
/// `breakpoints` lists interior locations where the integrand is not smooth;
/// the initial panel set is split there. Points outside (a, b) are ignored.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    cfg: &QuadConfig,
) -> Result<Quadrature> {
    if a == b {
        return Ok(Quadrature {
            value: 0.0,
            abs_error: 0.0,
            panels: 0,
        });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };

    let mut edges: Vec<f64> = vec![lo];
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|x| *x > lo && *x < hi)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    edges.extend(cuts);
    edges.push(hi);

    let mut heap = std::collections::BinaryHeap::new();
    let mut total_err = 0.0;
    let mut panels = 0usize;
    for w in edges.windows(2) {
        let (v, e) = g7k15(&f, w[0], w[1]);
        total_err += e;
        panels += 1;
        heap.push(Panel {
            a: w[0],
            b: w[1],
            value: v,
            error: e,
        });
    }

    while total_err > cfg.abs_tol {
        if panels >= cfg.max_panels {
            return Err(PhaseError::QuadratureFailure {
                requested: cfg.abs_tol,
                achieved: total_err,
                panels,
            });
        }
        let worst = heap.pop().expect("heap non-empty while error positive");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel too narrow to split further; accept its error.
            let rest_err: f64 = heap.iter().map(|p| p.error).sum();
            total_err = rest_err + worst.error;
            if total_err > cfg.abs_tol {
                return Err(PhaseError::QuadratureFailure {
                    requested: cfg.abs_tol,
                    achieved: total_err,
                    panels,
                });
            }
            heap.push(worst);
            break;
        }
        let (v1, e1) = g7k15(&f, worst.a, mid);
        let (v2, e2) = g7k15(&f, mid, worst.b);
        total_err += e1 + e2 - worst.error;
        panels += 1;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
    }

    // Re-sum panel values in position order for a deterministic reduction.
    let mut parts: Vec<Panel> = heap.into_vec();
    parts.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value: f64 = parts.iter().map(|p| p.value).sum();
    let abs_error: f64 = parts.iter().map(|p| p.error).sum();

    Ok(Quadrature {
        value: sign * value,
        abs_error,
        panels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
        integrate(f, a, b, &[], &QuadConfig::default())
            .unwrap()
            .value
    }

    #[test]
    fn polynomial_is_exact() {
        let v = quad(|x| 3.0 * x * x, 0.0, 2.0);
        assert!((v - 8.0).abs() < 1e-13);
    }

    #[test]
    fn gaussian_moment() {
        // ∫₀^∞ e^{-u} du truncated at 60
        let v = quad(|u| (-u).exp(), 0.0, 60.0);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kink_splitting_helps() {
        // |x - 1/3| over [0,1]: exact 5/18
        let f = |x: f64| (x - 1.0 / 3.0).abs();
        let v = integrate(f, 0.0, 1.0, &[1.0 / 3.0], &QuadConfig::default())
            .unwrap()
            .value;
        assert!((v - 5.0 / 18.0).abs() < 1e-14);
    }

    #[test]
    fn sqrt_endpoint_singularity_converges() {
        // ∫₀¹ √(1-x²) dx = π/4
        let v = quad(|x| (1.0 - x * x).max(0.0).sqrt(), 0.0, 1.0);
        assert!((v - std::f64::consts::FRAC_PI_4).abs() < 1e-10);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let v = quad(|x| x, 1.0, 0.0);
        assert!((v + 0.5).abs() < 1e-14);
    }

    #[test]
    fn budget_exhaustion_reports_failure() {
        let cfg = QuadConfig {
            abs_tol: 1e-14,
            max_panels: 4,
        };
        let r = integrate(|x: f64| x.abs().sqrt().sin(), -1.0, 1.0, &[], &cfg);
        assert!(matches!(r, Err(PhaseError::QuadratureFailure { .. })));
    }
}
