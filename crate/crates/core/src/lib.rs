//! Phase-space simulation of the harmonic oscillator in three interchangeable
//! models — classical, quantum (Wigner–Weyl), and the sawtooth toy theory —
//! under one operational interface: states paired with phase-space spectral
//! measures.
//!
//! The library provides
//! * signed phase-space states (point masses, radial densities, grids) with
//!   exact mass bookkeeping ([`state`]),
//! * the three energy spectral measures behind a common trait, registered by
//!   name and selected at runtime ([`measures::model`]),
//! * a pairing engine for outcome probabilities, distributions, and
//!   marginals ([`measures`]),
//! * exact rotational Liouville dynamics ([`dynamics`]),
//! * the no-restriction membership oracle and the tunneling detector
//!   ([`oracle`]),
//! * named reference states ([`catalog`]) and a self-test suite
//!   ([`selftest`]) that recomputes every headline number.
//!
//! All state math runs in dimensionless coordinates x = q/√(ℏ/mω),
//! y = p/√(ℏmω), where the flow is a rigid rotation and every spectral
//! weight is a function of r² = x² + y² alone.

pub mod catalog;
pub mod dynamics;
pub mod error;
pub mod io;
pub mod measures;
pub mod oracle;
pub mod params;
pub mod point;
pub mod quad;
pub mod selftest;
pub mod state;
pub mod wigner;

pub use error::{PhaseError, Result};
pub use params::OscillatorParams;
pub use point::{classical_energy, r2, PhasePoint};
pub use state::{mix, PhaseState, StateComponent};

/// Cap rayon's global thread pool from the `PSOSC_THREADS` environment
/// variable. Call once, before any parallel work; later calls are no-ops.
pub fn init_parallelism() {
    static ONCE: std::sync::Once = std::sync::Once::new();
    ONCE.call_once(|| {
        if let Ok(v) = std::env::var("PSOSC_THREADS") {
            if let Ok(n) = v.trim().parse::<usize>() {
                if n >= 1 {
                    let _ = rayon::ThreadPoolBuilder::new()
                        .num_threads(n)
                        .build_global();
                }
            }
        }
    });
}
