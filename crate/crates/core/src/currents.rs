//! Ocean current fields: maps from (position, time) to a current velocity.
//!
//! Four families are supported: still water, a uniform stream, a 2D wave
//! field whose direction follows the tangent of `x = A sin(k y) + b` with
//! speed `(y + y0) * s`, and a 3D helical field tangent to
//! `(r sin(k t), r cos(k t), t)` with speed `(z + z0) * s`. The wave and
//! helix families tile the whole map (the phase constants sweep every
//! position onto some curve), so both reduce to pure functions of position;
//! the time argument is accepted for forward compatibility but unused.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::Vector;

#[derive(Debug, Error, PartialEq)]
pub enum FieldError {
    #[error("field expects {expected}D positions, got {got}D")]
    DimMismatch { expected: u8, got: u8 },
}

fn default_wave_amplitude() -> f64 {
    5.0
}
fn default_wavenumber() -> f64 {
    0.1
}
fn default_wave_slope() -> f64 {
    0.05
}
fn default_offset() -> f64 {
    1.0
}
fn default_helix_radius() -> f64 {
    10.0
}
fn default_helix_slope() -> f64 {
    0.1
}

/// A current field variant with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum CurrentField {
    /// Still water; valid in any dimension.
    Zero,
    /// Constant 2D stream at `direction_deg` (counterclockwise from +x).
    Uniform {
        direction_deg: f64,
        speed: f64,
    },
    /// Constant 3D stream along `direction` (normalized when sampled).
    Uniform3d {
        direction: [f64; 3],
        speed: f64,
    },
    /// Wave-shaped 2D field, bottom to top.
    Wave2d {
        #[serde(default = "default_wave_amplitude")]
        amplitude: f64,
        #[serde(default = "default_wavenumber")]
        wavenumber: f64,
        #[serde(default = "default_wave_slope")]
        speed_slope: f64,
        #[serde(default = "default_offset")]
        speed_offset: f64,
    },
    /// Helical 3D field, bottom to top.
    Helix3d {
        #[serde(default = "default_helix_radius")]
        radius: f64,
        #[serde(default = "default_wavenumber")]
        wavenumber: f64,
        #[serde(default = "default_helix_slope")]
        speed_slope: f64,
        #[serde(default = "default_offset")]
        speed_offset: f64,
    },
}

impl CurrentField {
    pub fn wave2d() -> Self {
        CurrentField::Wave2d {
            amplitude: default_wave_amplitude(),
            wavenumber: default_wavenumber(),
            speed_slope: default_wave_slope(),
            speed_offset: default_offset(),
        }
    }

    pub fn helix3d() -> Self {
        CurrentField::Helix3d {
            radius: default_helix_radius(),
            wavenumber: default_wavenumber(),
            speed_slope: default_helix_slope(),
            speed_offset: default_offset(),
        }
    }

    /// Checks the speed-law parameters (all speeds and slopes must be
    /// non-negative).
    pub fn validate(&self) -> Result<(), String> {
        let non_negative = |name: &str, v: f64| {
            if v >= 0.0 {
                Ok(())
            } else {
                Err(format!("{name} must be >= 0, got {v}"))
            }
        };
        match self {
            CurrentField::Zero => Ok(()),
            CurrentField::Uniform { speed, .. } | CurrentField::Uniform3d { speed, .. } => {
                non_negative("speed", *speed)
            }
            CurrentField::Wave2d {
                speed_slope,
                speed_offset,
                ..
            }
            | CurrentField::Helix3d {
                speed_slope,
                speed_offset,
                ..
            } => {
                non_negative("speed_slope", *speed_slope)?;
                non_negative("speed_offset", *speed_offset)
            }
        }
    }

    /// Dimension the field applies to; `None` for dimension-agnostic fields.
    pub fn dims(&self) -> Option<u8> {
        match self {
            CurrentField::Zero => None,
            CurrentField::Uniform { .. } | CurrentField::Wave2d { .. } => Some(2),
            CurrentField::Uniform3d { .. } | CurrentField::Helix3d { .. } => Some(3),
        }
    }

    /// Current velocity at a position and time.
    pub fn sample(&self, pos: &Vector, _time: f64) -> Result<Vector, FieldError> {
        if let Some(expected) = self.dims() {
            if pos.dims() != expected {
                return Err(FieldError::DimMismatch {
                    expected,
                    got: pos.dims(),
                });
            }
        }
        Ok(match self {
            CurrentField::Zero => Vector::zero(pos.dims()),
            CurrentField::Uniform {
                direction_deg,
                speed,
            } => {
                let theta = direction_deg.to_radians();
                Vector::new2(theta.cos(), theta.sin()) * *speed
            }
            CurrentField::Uniform3d { direction, speed } => {
                let dir = Vector::new3(direction[0], direction[1], direction[2]);
                match dir.unit(1e-12) {
                    Some(u) => u * *speed,
                    None => Vector::zero(3),
                }
            }
            CurrentField::Wave2d {
                amplitude,
                wavenumber,
                speed_slope,
                speed_offset,
            } => {
                // Tangent of x = A sin(k y) + b at this y: (A k cos(k y), 1).
                let y = pos[1];
                let tangent = Vector::new2(amplitude * wavenumber * (wavenumber * y).cos(), 1.0);
                let unit = tangent.unit(0.0).expect("tangent has positive y component");
                unit * ((y + speed_offset) * speed_slope)
            }
            CurrentField::Helix3d {
                radius,
                wavenumber,
                speed_slope,
                speed_offset,
            } => {
                // Tangent of (r sin(k t), r cos(k t), t) at t = z:
                // (r k cos(k z), -r k sin(k z), 1).
                let z = pos[2];
                let rk = radius * wavenumber;
                let tangent = Vector::new3(
                    rk * (wavenumber * z).cos(),
                    -rk * (wavenumber * z).sin(),
                    1.0,
                );
                let unit = tangent.unit(0.0).expect("tangent has positive z component");
                unit * ((z + speed_offset) * speed_slope)
            }
        })
    }
}
