//! Deterministic CSV emitters for the reference figures.
//!
//! Floats are printed with 9 significant digits; identical flags produce
//! byte-identical output.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};
use std::fmt::Write as _;

use phasesim::catalog::{self, NamedState};
use phasesim::dynamics;
use phasesim::measures::triangle;
use phasesim::OscillatorParams;

fn fmt(v: f64) -> String {
    format!("{v:.8e}")
}

/// Spectral weights T_n(r²) for n = 0..3 together with the two reference
/// densities (times ℏ, so the curves are dimensionless), on r ∈ [0, 2.2].
pub fn fig1(params: &OscillatorParams) -> String {
    let mut out = String::from("r,T0,T1,T2,T3,rho_tn,rho_nn\n");
    let n = 441;
    let coeffs = catalog::rho_nn_coeffs(params);
    let hbar = params.hbar();
    for i in 0..n {
        let r = 2.2 * i as f64 / (n - 1) as f64;
        let u = r * r;
        let tn = |k: usize| triangle(k, u);
        let rho_tn = if r <= 1.0 { hbar / (PI * hbar) } else { 0.0 };
        let rho_nn = if (1.0..=SQRT_2).contains(&r) {
            hbar * coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c)
        } else {
            0.0
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt(r),
            fmt(tn(0)),
            fmt(tn(1)),
            fmt(tn(2)),
            fmt(tn(3)),
            fmt(rho_tn),
            fmt(rho_nn)
        );
    }
    out
}

/// The triangular weight functions T_0..T_3 on x ∈ [0, 4].
pub fn fig2() -> String {
    let mut out = String::from("x,T0,T1,T2,T3\n");
    let n = 401;
    for i in 0..n {
        let x = 4.0 * i as f64 / (n - 1) as f64;
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt(x),
            fmt(triangle(0, x)),
            fmt(triangle(1, x)),
            fmt(triangle(2, x)),
            fmt(triangle(3, x))
        );
    }
    out
}

/// The three signed atoms of the time-evolution counterexample at t = 0 and
/// t = π/(4ω), plus the circular trajectories they travel on.
pub fn fig4(params: &OscillatorParams) -> String {
    let mut out = String::from("kind,label,omega_t,q,p,weight\n");
    let state = catalog::build(NamedState::RhoBn, params);
    for (label, omega_t) in [("t0", 0.0), ("t1", FRAC_PI_4)] {
        let evolved = dynamics::evolve_state(&state, omega_t / params.omega());
        for (i, c) in evolved.components().iter().enumerate() {
            if let phasesim::StateComponent::PointMass { at, weight } = c {
                let _ = writeln!(
                    out,
                    "atom,{label}_{i},{},{},{},{}",
                    fmt(omega_t),
                    fmt(at.q),
                    fmt(at.p),
                    fmt(*weight)
                );
            }
        }
    }
    // trajectories: circles of radius 1 and √2 in dimensionless units
    for (label, radius) in [("r1", 1.0), ("r2", SQRT_2)] {
        let n = 129;
        for i in 0..n {
            let phi = 2.0 * PI * i as f64 / (n - 1) as f64;
            let q = radius * phi.cos() * params.q_scale();
            let p = radius * phi.sin() * params.p_scale();
            let _ = writeln!(
                out,
                "trajectory,{label},{},{},{},{}",
                fmt(0.0),
                fmt(q),
                fmt(p),
                fmt(0.0)
            );
        }
    }
    out
}
