//! Deterministic multi-UUV planning and simulation toolkit.
//!
//! The pipeline: a unit-cell occupancy [`grid`](crate::grid) models the
//! underwater world; the [`binn`](crate::binn) planner extracts
//! collision-free waypoint paths from a locally evaluated neural activity
//! field; [`assignment`](crate::assignment) pairs vehicles with targets by
//! greedy selection over normalized path distances;
//! [`currents`](crate::currents) defines the ambient flow; and
//! [`nav`](crate::nav) integrates waypoint-following vehicles through the
//! flow either uncompensated (baseline) or with exact feedforward current
//! cancellation. [`scenario`](crate::scenario),
//! [`experiment`](crate::experiment) and [`output`](crate::output) wrap the
//! pipeline in a file-driven harness.

pub mod assignment;
pub mod binn;
pub mod currents;
pub mod experiment;
pub mod geom;
pub mod grid;
pub mod nav;
pub mod output;
pub mod scenario;

pub use assignment::{build_matrix, greedy_assign, AssignmentMatrix, PriorityList};
pub use binn::{plan_path, BinnParams, Path};
pub use currents::CurrentField;
pub use experiment::{run_experiment, RunReport};
pub use geom::Vector;
pub use grid::{Cell, GridMap};
pub use nav::{follow_path, Mode, SimConfig, SimOutcome, Status};
pub use output::emit_outputs;
pub use scenario::{load_scenario, Scenario};
