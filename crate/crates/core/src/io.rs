//! JSON state-file schema.
//!
//! ```json
//! { "params": {"hbar":1.0,"m":1.0,"omega":1.0},
//!   "components": [ {"type":"point","q":0,"p":0,"weight":1},
//!                   {"type":"radial_poly","coeffs":[0.1],"r_min":1,"r_max":1.41421356237},
//!                   {"type":"uniform_disk","r_max":1,"height":0.3183098861837907},
//!                   {"type":"grid","q_grid":[0,1],"p_grid":[0,1],"values":[[0,0],[0,0]]} ] }
//! ```
//!
//! Floats are emitted with 17 significant digits so files round-trip exactly.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{PhaseError, Result};
use crate::params::OscillatorParams;
use crate::point::PhasePoint;
use crate::state::{PhaseState, StateComponent};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamsJson {
    pub hbar: f64,
    pub m: f64,
    pub omega: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ComponentJson {
    Point { q: f64, p: f64, weight: f64 },
    RadialPoly {
        coeffs: Vec<f64>,
        r_min: f64,
        r_max: f64,
    },
    UniformDisk { r_max: f64, height: f64 },
    Grid {
        q_grid: Vec<f64>,
        p_grid: Vec<f64>,
        values: Vec<Vec<f64>>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub params: ParamsJson,
    pub components: Vec<ComponentJson>,
}

impl StateFile {
    pub fn from_state(state: &PhaseState) -> Self {
        let p = state.params();
        let components = state
            .components()
            .into_iter()
            .map(|c| match c {
                StateComponent::PointMass { at, weight } => ComponentJson::Point {
                    q: at.q,
                    p: at.p,
                    weight,
                },
                StateComponent::RadialPolynomial {
                    coeffs,
                    r_min,
                    r_max,
                } => ComponentJson::RadialPoly {
                    coeffs,
                    r_min,
                    r_max,
                },
                StateComponent::UniformDisk { r_max, height } => {
                    ComponentJson::UniformDisk { r_max, height }
                }
                StateComponent::GridDensity {
                    q_grid,
                    p_grid,
                    values,
                } => ComponentJson::Grid {
                    q_grid,
                    p_grid,
                    values,
                },
            })
            .collect();
        Self {
            params: ParamsJson {
                hbar: p.hbar(),
                m: p.mass(),
                omega: p.omega(),
            },
            components,
        }
    }

    pub fn into_state(self) -> Result<PhaseState> {
        let params = OscillatorParams::new(self.params.hbar, self.params.m, self.params.omega)?;
        let components = self
            .components
            .into_iter()
            .map(|c| match c {
                ComponentJson::Point { q, p, weight } => StateComponent::PointMass {
                    at: PhasePoint::new(q, p),
                    weight,
                },
                ComponentJson::RadialPoly {
                    coeffs,
                    r_min,
                    r_max,
                } => StateComponent::RadialPolynomial {
                    coeffs,
                    r_min,
                    r_max,
                },
                ComponentJson::UniformDisk { r_max, height } => {
                    StateComponent::UniformDisk { r_max, height }
                }
                ComponentJson::Grid {
                    q_grid,
                    p_grid,
                    values,
                } => StateComponent::GridDensity {
                    q_grid,
                    p_grid,
                    values,
                },
            })
            .collect();
        PhaseState::new(params, components)
    }
}

/// serde_json formatter printing every float with 17 significant digits.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serialize any value to JSON with 17-significant-digit floats.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value
        .serialize(&mut ser)
        .map_err(|e| PhaseError::InvalidComponent(format!("serialization failed: {e}")))?;
    Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
}

pub fn save_state(state: &PhaseState, path: &Path) -> Result<()> {
    let text = to_json_string(&StateFile::from_state(state))?;
    std::fs::write(path, text)
        .map_err(|e| PhaseError::InvalidComponent(format!("cannot write {}: {e}", path.display())))
}

pub fn state_to_json(state: &PhaseState) -> Result<String> {
    to_json_string(&StateFile::from_state(state))
}

pub fn state_from_json(text: &str) -> Result<PhaseState> {
    let file: StateFile = serde_json::from_str(text)
        .map_err(|e| PhaseError::InvalidComponent(format!("malformed state JSON: {e}")))?;
    file.into_state()
}

pub fn load_state(path: &Path) -> Result<PhaseState> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| PhaseError::InvalidComponent(format!("cannot read {}: {e}", path.display())))?;
    state_from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn round_trip_preserves_values() {
        let params = OscillatorParams::standard();
        let state = PhaseState::new(
            params,
            vec![
                StateComponent::PointMass {
                    at: PhasePoint::new(0.5, -0.25),
                    weight: -1.0,
                },
                StateComponent::UniformDisk {
                    r_max: 1.0,
                    height: 1.0 / PI,
                },
                StateComponent::RadialPolynomial {
                    coeffs: vec![0.125, -0.5, 0.0625],
                    r_min: 1.0,
                    r_max: std::f64::consts::SQRT_2,
                },
            ],
        )
        .unwrap();
        let text = state_to_json(&state).unwrap();
        let back = state_from_json(&text).unwrap();
        assert_eq!(back.components(), state.components());
        assert!((back.total_mass() - state.total_mass()).abs() < 1e-15);
    }

    #[test]
    fn emitted_json_is_deterministic() {
        let params = OscillatorParams::standard();
        let state = PhaseState::new(
            params,
            vec![StateComponent::UniformDisk {
                r_max: 1.0,
                height: 1.0 / PI,
            }],
        )
        .unwrap();
        assert_eq!(
            state_to_json(&state).unwrap(),
            state_to_json(&state).unwrap()
        );
        assert!(state_to_json(&state).unwrap().contains("uniform_disk"));
    }

    #[test]
    fn malformed_json_is_reported() {
        assert!(state_from_json("{\"params\": {").is_err());
        assert!(state_from_json("{}").is_err());
    }

    #[test]
    fn seventeen_digit_floats_round_trip() {
        let v = vec![1.0 / 3.0, PI, 2f64.sqrt() * 1e-7];
        let text = to_json_string(&v).unwrap();
        let back: Vec<f64> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
    }
}
