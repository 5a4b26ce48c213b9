//! Waypoint-following kinematic simulation under a current field.
//!
//! Vehicles are kinematic points: each fixed step the actual velocity is the
//! commanded velocity plus the ambient current. The baseline controller
//! (`Mode::Bnnp`) commands the desired velocity toward the active waypoint
//! and lets the current push it off track. The compensated controller
//! (`Mode::Cbnntap`) commands the adjustment velocity `v_d - v_cur` so the
//! current cancels out of the sum and the vehicle holds the planned line.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::binn::Path;
use crate::currents::{CurrentField, FieldError};
use crate::geom::{point_polyline_distance, Vector};
use crate::grid::GridMap;

#[derive(Debug, Error, PartialEq)]
pub enum SimError {
    #[error("invalid sim config: {0}")]
    InvalidConfig(String),
    #[error("path dimension {0} does not match map dimension {1}")]
    PathDimMismatch(u8, u8),
    #[error("degenerate heading: position coincides with the waypoint")]
    DegenerateHeading,
    #[error("vector dimension mismatch: {0} vs {1}")]
    DimMismatch(u8, u8),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Controller selection for a simulation run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Plan-following baseline that ignores currents during execution.
    Bnnp,
    /// Current-compensated follower.
    Cbnntap,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Bnnp => "bnnp",
            Mode::Cbnntap => "cbnntap",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bnnp" => Ok(Mode::Bnnp),
            "cbnntap" => Ok(Mode::Cbnntap),
            other => Err(format!("unknown mode '{other}' (expected bnnp or cbnntap)")),
        }
    }
}

/// Integration and controller settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Timestep in seconds.
    #[serde(default = "default_dt")]
    pub dt: f64,
    /// Commanded speed magnitude in m/s.
    #[serde(rename = "v_d", default = "default_speed")]
    pub cruise_speed: f64,
    /// Waypoint capture radius in metres.
    #[serde(default = "default_arrive_eps")]
    pub arrive_eps: f64,
    /// Failure budget: a run may take at most this multiple of the nominal
    /// duration `path length / v_d`.
    #[serde(default = "default_time_factor")]
    pub time_factor: f64,
    /// Optional cap on the adjustment velocity magnitude in m/s.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actuation_cap: Option<f64>,
}

fn default_dt() -> f64 {
    0.02
}
fn default_speed() -> f64 {
    1.0
}
fn default_arrive_eps() -> f64 {
    0.05
}
fn default_time_factor() -> f64 {
    5.0
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            dt: default_dt(),
            cruise_speed: default_speed(),
            arrive_eps: default_arrive_eps(),
            time_factor: default_time_factor(),
            actuation_cap: None,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        let check = |ok: bool, msg: &str| {
            if ok {
                Ok(())
            } else {
                Err(SimError::InvalidConfig(msg.to_string()))
            }
        };
        check(self.dt > 0.0, "dt must be positive")?;
        check(self.cruise_speed > 0.0, "v_d must be positive")?;
        check(self.arrive_eps > 0.0, "arrive_eps must be positive")?;
        check(self.time_factor >= 1.0, "time_factor must be >= 1")?;
        if let Some(cap) = self.actuation_cap {
            check(cap > 0.0, "actuation_cap must be positive when set")?;
        }
        Ok(())
    }
}

/// One integration step record.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub position: Vector,
    pub commanded: Vector,
    pub current: Vector,
    pub actual: Vector,
}

/// Time series of a run plus its arc length. The terminal sample carries
/// zero velocities: no step is taken from it.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryRecord {
    pub samples: Vec<Sample>,
    pub traveled: f64,
    pub saturated_steps: usize,
}

/// Why a run declared failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailReason {
    Timeout,
    MaxDeviation,
}

/// Terminal classification of a run.
#[derive(Clone, Debug, PartialEq)]
pub enum Status {
    Reached { distance: f64 },
    Collision { position: Vector, time: f64 },
    Failed { reason: FailReason },
}

impl Status {
    pub fn is_reached(&self) -> bool {
        matches!(self, Status::Reached { .. })
    }

    /// Short table code: the traveled distance when reached, else C or F.
    pub fn code(&self) -> String {
        match self {
            Status::Reached { distance } => format!("{distance:.4}"),
            Status::Collision { .. } => "C".to_string(),
            Status::Failed { .. } => "F".to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimOutcome {
    pub status: Status,
    pub max_cross_track: f64,
}

/// Adjustment velocity that cancels the current: `v_d - v_cur`, so that
/// adding the current back yields the desired velocity. With a cap set the
/// result is rescaled onto the cap and the saturation flag is raised.
pub fn compensation(
    desired: &Vector,
    current: &Vector,
    cap: Option<f64>,
) -> Result<(Vector, bool), SimError> {
    if desired.dims() != current.dims() {
        return Err(SimError::DimMismatch(desired.dims(), current.dims()));
    }
    let adj = *desired - *current;
    if let Some(cap) = cap {
        let norm = adj.norm();
        if norm > cap {
            return Ok((adj * (cap / norm), true));
        }
    }
    Ok((adj, false))
}

/// Velocity of magnitude `speed` pointing from `pos` toward `waypoint`.
pub fn desired_velocity(pos: &Vector, waypoint: &Vector, speed: f64) -> Result<Vector, SimError> {
    if pos.dims() != waypoint.dims() {
        return Err(SimError::DimMismatch(pos.dims(), waypoint.dims()));
    }
    match (*waypoint - *pos).unit(1e-12) {
        Some(u) => Ok(u * speed),
        None => Err(SimError::DegenerateHeading),
    }
}

/// Simulates a vehicle following `path` under `field` in the given mode.
///
/// Fixed-step integration `pos += v_act * dt` with
/// `v_act = v_cmd + current`, starting at the first waypoint center. The
/// active waypoint advances inside `arrive_eps`; the run terminates Reached
/// on capturing the last waypoint, Collision on entering an obstacle cell,
/// or Failed on exceeding the time budget or deviating more than half the
/// map extent from the planned polyline.
pub fn follow_path(
    path: &Path,
    mode: Mode,
    field: &CurrentField,
    map: &GridMap,
    cfg: &SimConfig,
) -> Result<(TrajectoryRecord, SimOutcome), SimError> {
    cfg.validate()?;
    if path.dims() != map.dims() {
        return Err(SimError::PathDimMismatch(path.dims(), map.dims()));
    }

    let waypoints: Vec<Vector> = path.waypoints().iter().map(|c| c.center()).collect();
    let time_budget = cfg.time_factor * path.length() / cfg.cruise_speed;
    let deviation_limit = 0.5 * map.extent().iter().copied().max().unwrap_or(0) as f64;

    let mut pos = waypoints[0];
    let mut wp_idx = 0usize;
    let mut t = 0.0;
    let mut traveled = 0.0;
    let mut max_cross_track = 0.0f64;
    let mut samples = Vec::new();
    let mut saturated_steps = 0usize;

    let status = loop {
        while wp_idx < waypoints.len() && pos.distance(&waypoints[wp_idx]) <= cfg.arrive_eps {
            wp_idx += 1;
        }
        if wp_idx == waypoints.len() {
            break Status::Reached { distance: traveled };
        }
        if t > time_budget {
            break Status::Failed {
                reason: FailReason::Timeout,
            };
        }

        let current = field.sample(&pos, t)?;
        let desired = desired_velocity(&pos, &waypoints[wp_idx], cfg.cruise_speed)?;
        let commanded = match mode {
            Mode::Bnnp => desired,
            Mode::Cbnntap => {
                let (adj, saturated) = compensation(&desired, &current, cfg.actuation_cap)?;
                if saturated {
                    saturated_steps += 1;
                }
                adj
            }
        };
        let actual = commanded + current;
        samples.push(Sample {
            t,
            position: pos,
            commanded,
            current,
            actual,
        });

        pos = pos + actual * cfg.dt;
        traveled += actual.norm() * cfg.dt;
        t += cfg.dt;

        let deviation = point_polyline_distance(&pos, &waypoints);
        max_cross_track = max_cross_track.max(deviation);

        if let Some(cell) = map.cell_of(&pos) {
            if map.is_obstacle(&cell) {
                break Status::Collision { position: pos, time: t };
            }
        }
        if deviation > deviation_limit {
            break Status::Failed {
                reason: FailReason::MaxDeviation,
            };
        }
    };

    samples.push(Sample {
        t,
        position: pos,
        commanded: Vector::zero(pos.dims()),
        current: Vector::zero(pos.dims()),
        actual: Vector::zero(pos.dims()),
    });

    Ok((
        TrajectoryRecord {
            samples,
            traveled,
            saturated_steps,
        },
        SimOutcome {
            status,
            max_cross_track,
        },
    ))
}

/// Maximum distance from any recorded sample to the planned polyline.
pub fn cross_track_error(record: &TrajectoryRecord, path: &Path) -> f64 {
    let polyline: Vec<Vector> = path.waypoints().iter().map(|c| c.center()).collect();
    record
        .samples
        .iter()
        .map(|s| point_polyline_distance(&s.position, &polyline))
        .fold(0.0, f64::max)
}
