//! Harmonic-oscillator Wigner eigenfunctions.
//!
//! The n-th eigenstate (energy ℏω(n+½)) has the closed-form Wigner function
//! ρ_n^W = (2/h)·(−1)ⁿ e^{−r²} L_n(2r²), with L_n the Laguerre polynomials.
//! The quantum energy measure pairs states against the dimensionless weights
//! h·ρ_n^W, which is what `quantum_weight` returns.

use crate::error::{PhaseError, Result};
use crate::params::OscillatorParams;
use crate::point::{r2, PhasePoint};
use crate::quad::{self, QuadConfig};

/// Largest Laguerre degree the double-precision recurrence is vouched for.
pub const MAX_LEVEL: usize = 200;

/// L_n(x) by the three-term recurrence
/// L_{k+1}(x) = ((2k+1−x)·L_k(x) − k·L_{k−1}(x)) / (k+1).
///
/// Stable in double precision up to n = `MAX_LEVEL`; higher-level entry
/// points refuse larger n rather than degrade silently.
pub fn laguerre(n: usize, x: f64) -> f64 {
    debug_assert!(n <= MAX_LEVEL, "laguerre degree {n} above vouched range");
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

fn check_level(n: usize) -> Result<()> {
    if n > MAX_LEVEL {
        Err(PhaseError::DegreeTooLarge(n))
    } else {
        Ok(())
    }
}

/// Dimensionless weight h·ρ_n^W as a function of u = r²:
/// 2·(−1)ⁿ·e^{−u}·L_n(2u).
pub fn quantum_weight(n: usize, u: f64) -> Result<f64> {
    check_level(n)?;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(2.0 * sign * (-u).exp() * laguerre(n, 2.0 * u))
}

/// ρ_n^W evaluated at a phase-space point.
pub fn wigner_eigenstate(n: usize, point: PhasePoint, params: &OscillatorParams) -> Result<f64> {
    Ok(quantum_weight(n, r2(point, params))? / params.h())
}

/// Truncation point for ∫₀^∞ e^{−u}·(polynomial of degree n in 2u) du:
/// beyond 3n + 60 the integrand tail is below 1e-15 of the result scale.
fn radial_cutoff(n: usize) -> f64 {
    3.0 * n as f64 + 60.0
}

/// ∫ ρ_n^W dΓ by radial quadrature; equals 1 for every n.
pub fn eigenstate_norm(n: usize) -> Result<f64> {
    check_level(n)?;
    // dΓ = ℏ r dr dφ and u = r²: ∫ρ_n^W dΓ = (−1)ⁿ ∫₀^∞ e^{−u} L_n(2u) du
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let cut = radial_cutoff(n);
    let q = quad::integrate(
        |u| (-u).exp() * laguerre(n, 2.0 * u),
        0.0,
        cut,
        &[cut.min(2.0 * n as f64 + 1.0)],
        &QuadConfig::default(),
    )?;
    Ok(sign * q.value)
}

/// h·∫ ρ_m^W ρ_n^W dΓ by radial quadrature; the eigenstates are orthonormal
/// under the phase-space pairing, so this is δ_mn.
pub fn quantum_purity_overlap(m: usize, n: usize) -> Result<f64> {
    check_level(m)?;
    check_level(n)?;
    // h ∫ ρ_m ρ_n dΓ = 2(−1)^{m+n} ∫₀^∞ e^{−2u} L_m(2u) L_n(2u) du
    let sign = if (m + n) % 2 == 0 { 1.0 } else { -1.0 };
    let cut = 0.5 * radial_cutoff(m + n);
    let q = quad::integrate(
        |u| (-2.0 * u).exp() * laguerre(m, 2.0 * u) * laguerre(n, 2.0 * u),
        0.0,
        cut,
        &[cut.min((m + n) as f64 + 1.0)],
        &QuadConfig::default(),
    )?;
    Ok(2.0 * sign * q.value)
}

/// Cesàro average of the partial sums Σ_{n≤N} h·ρ_n^W(u) up to `n_max`.
///
/// The raw partial sums of the quantum partition of unity oscillate; their
/// Cesàro means converge to 1, which is how the distributional identity
/// g_Ĥ(ℝ) ≡ 1 is checked pointwise.
pub fn partition_cesaro(u: f64, n_max: usize) -> Result<f64> {
    check_level(n_max)?;
    let mut partial = 0.0;
    let mut cesaro = 0.0;
    for n in 0..=n_max {
        partial += quantum_weight(n, u)?;
        cesaro += partial;
    }
    Ok(cesaro / (n_max + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    /// Direct series Σ_k C(n,k)(−1)^k x^k / k! in exact rational arithmetic;
    /// the f64 series loses ~7e-9 to cancellation near n=15, x≈25, so the
    /// oracle works over ℚ and converts at the end.
    fn laguerre_series_exact(n: usize, x: BigRational) -> f64 {
        let mut sum = BigRational::from(BigInt::from(0));
        let mut xk = BigRational::from(BigInt::from(1));
        for k in 0..=n {
            // C(n,k)
            let mut binom = BigInt::from(1);
            for i in 0..k {
                binom = binom * BigInt::from(n - i) / BigInt::from(i + 1);
            }
            let mut fact = BigInt::from(1);
            for i in 1..=k {
                fact *= BigInt::from(i);
            }
            let term = BigRational::from(binom) * &xk / BigRational::from(fact);
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
            xk *= &x;
        }
        ratio_to_f64(&sum)
    }

    fn ratio_to_f64(r: &BigRational) -> f64 {
        // numer/denom may exceed f64 range individually; scale down together
        let mut num = r.numer().clone();
        let mut den = r.denom().clone();
        let bits = |b: &BigInt| b.bits() as i64;
        let shift = (bits(&num).max(bits(&den)) - 900).max(0) as u64;
        num >>= shift;
        den >>= shift;
        let nf: f64 = num.to_string().parse().unwrap();
        let df: f64 = den.to_string().parse().unwrap();
        nf / df
    }

    #[test]
    fn laguerre_base_cases() {
        for x in [-3.0, 0.0, 1.5, 40.0] {
            assert_eq!(laguerre(0, x), 1.0);
        }
        assert_eq!(laguerre(1, 2.0), -1.0);
        assert_eq!(laguerre(5, 0.0), 1.0);
        assert_relative_eq!(laguerre(2, 3.0), -0.5, max_relative = 1e-14);
        assert_relative_eq!(laguerre(10, 5.5), 0.22352151779901414, max_relative = 1e-12);
        assert_relative_eq!(laguerre(15, 40.0), 37_729_297.834_891_54, max_relative = 1e-11);
    }

    #[test]
    fn recurrence_matches_exact_series() {
        // n ≤ 15, x ∈ [0, 40] on a half-integer grid
        for n in 0..=15usize {
            for i in 0..=80 {
                let x = BigRational::new(BigInt::from(i), BigInt::from(2));
                let exact = laguerre_series_exact(n, x);
                let rec = laguerre(n, i as f64 / 2.0);
                let scale = exact.abs().max(1.0);
                assert!(
                    (rec - exact).abs() / scale <= 1e-10,
                    "n={n} x={} rec={rec} exact={exact}",
                    i as f64 / 2.0
                );
            }
        }
    }

    #[test]
    fn weight_reference_values() {
        assert_eq!(quantum_weight(0, 0.0).unwrap(), 2.0);
        assert_eq!(quantum_weight(1, 0.0).unwrap(), -2.0);
        // sign at the origin is 2(−1)ⁿ
        for n in 0..8 {
            let w = quantum_weight(n, 0.0).unwrap();
            assert_eq!(w, if n % 2 == 0 { 2.0 } else { -2.0 });
        }
    }

    #[test]
    fn eigenstate_values_at_origin() {
        let p = OscillatorParams::standard();
        let w0 = wigner_eigenstate(0, PhasePoint::origin(), &p).unwrap();
        assert_relative_eq!(w0, 2.0 / p.h(), max_relative = 1e-15);
        let w1 = wigner_eigenstate(1, PhasePoint::origin(), &p).unwrap();
        assert_relative_eq!(w1, -2.0 / p.h(), max_relative = 1e-15);
    }

    #[test]
    fn normalization_up_to_ten() {
        for n in 0..=10 {
            let norm = eigenstate_norm(n).unwrap();
            assert!(
                (norm - 1.0).abs() <= 1e-8,
                "n={n} norm={norm}"
            );
        }
    }

    #[test]
    fn orthonormality_up_to_six() {
        for m in 0..=6 {
            for n in 0..=6 {
                let ov = quantum_purity_overlap(m, n).unwrap();
                let expect = if m == n { 1.0 } else { 0.0 };
                assert!(
                    (ov - expect).abs() <= 1e-7,
                    "m={m} n={n} overlap={ov}"
                );
            }
        }
    }

    #[test]
    fn partition_of_unity_cesaro() {
        // raw partial sums oscillate; Cesàro means settle near 1
        let c = partition_cesaro(1.0, 200).unwrap();
        assert!((c - 1.0).abs() <= 1e-3, "cesaro at u=1: {c}");
        let c2 = partition_cesaro(2.0, 200).unwrap();
        assert!((c2 - 1.0).abs() <= 5e-3, "cesaro at u=2: {c2}");
    }

    #[test]
    fn refuses_degrees_beyond_vouched_range() {
        assert!(matches!(
            quantum_weight(201, 1.0),
            Err(PhaseError::DegreeTooLarge(201))
        ));
        assert!(quantum_purity_overlap(0, 201).is_err());
    }
}
