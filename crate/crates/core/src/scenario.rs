//! Scenario files: the world, the fleet, the field and the knobs for one
//! experiment, stored as schema-versioned JSON.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::binn::BinnParams;
use crate::currents::CurrentField;
use crate::grid::{Cell, GridMap};
use crate::nav::SimConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read scenario file")]
    Io(#[from] std::io::Error),
    #[error("cannot parse scenario")]
    Parse(#[from] serde_json::Error),
    #[error("invalid scenario:\n{}", .0.join("\n"))]
    Validation(Vec<String>),
}

/// A named vehicle or target cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Endpoint {
    pub id: String,
    pub cell: Cell,
}

/// Planner section of the scenario file. `max_steps` defaults to four times
/// the map cell count when omitted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinnSection {
    #[serde(rename = "k_f", default = "default_slope")]
    pub transfer_slope: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_steps: Option<usize>,
    #[serde(default = "default_literal")]
    pub literal_exponent: bool,
}

fn default_slope() -> f64 {
    0.5
}
fn default_literal() -> bool {
    true
}

impl Default for BinnSection {
    fn default() -> Self {
        BinnSection {
            transfer_slope: default_slope(),
            max_steps: None,
            literal_exponent: default_literal(),
        }
    }
}

/// A validated experiment description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub schema_version: u32,
    pub map: GridMap,
    pub vehicles: Vec<Endpoint>,
    pub targets: Vec<Endpoint>,
    pub field: CurrentField,
    #[serde(default)]
    pub sim: SimConfig,
    #[serde(default)]
    pub binn: BinnSection,
}

impl Scenario {
    /// Parses and validates a scenario from JSON text.
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let scenario: Scenario = serde_json::from_str(text)?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("scenario serializes");
        out.push('\n');
        out
    }

    /// Planner parameters with the step budget resolved against the map.
    pub fn binn_params(&self) -> BinnParams {
        BinnParams {
            transfer_slope: self.binn.transfer_slope,
            max_steps: self
                .binn
                .max_steps
                .unwrap_or_else(|| 4 * self.map.cell_count()),
            literal_exponent: self.binn.literal_exponent,
        }
    }

    pub fn vehicle_cells(&self) -> Vec<Cell> {
        self.vehicles.iter().map(|e| e.cell).collect()
    }

    pub fn target_cells(&self) -> Vec<Cell> {
        self.targets.iter().map(|e| e.cell).collect()
    }

    /// Checks every field-level constraint, reporting all violations.
    pub fn validate(&self) -> Result<(), ScenarioError> {
        let mut issues = Vec::new();

        if self.schema_version != SCHEMA_VERSION {
            issues.push(format!(
                "schema_version: expected {SCHEMA_VERSION}, got {}",
                self.schema_version
            ));
        }

        // Rebuild the map so extent/obstacle constraints are enforced even
        // though deserialization bypassed the constructor.
        let obstacles: BTreeSet<Cell> = self.map.obstacles().iter().copied().collect();
        if self.map.extent().len() != self.map.dims() as usize {
            issues.push(format!(
                "map.extent: {} axes for dims {}",
                self.map.extent().len(),
                self.map.dims()
            ));
        } else if let Err(e) = GridMap::new(self.map.extent(), obstacles) {
            issues.push(format!("map: {e}"));
        }
        if self.map.extent().iter().any(|&e| e < 1) {
            issues.push("map.extent: every axis must be >= 1".to_string());
        }

        if self.vehicles.is_empty() {
            issues.push("vehicles: at least one vehicle required".to_string());
        }
        if self.targets.is_empty() {
            issues.push("targets: at least one target required".to_string());
        }
        if self.targets.len() > self.vehicles.len() {
            issues.push(format!(
                "targets: {} targets exceed {} vehicles",
                self.targets.len(),
                self.vehicles.len()
            ));
        }

        let mut check_endpoints = |what: &str, list: &[Endpoint]| {
            let mut seen = BTreeSet::new();
            for e in list {
                if !seen.insert(e.id.clone()) {
                    issues.push(format!("{what}.{}: duplicate id", e.id));
                }
                if e.cell.dims() != self.map.dims() {
                    issues.push(format!(
                        "{what}.{}: cell {:?} has wrong dimension",
                        e.id, e.cell
                    ));
                } else if !self.map.in_bounds(&e.cell) {
                    issues.push(format!(
                        "{what}.{}: cell {:?} out of bounds",
                        e.id, e.cell
                    ));
                } else if self.map.is_obstacle(&e.cell) {
                    issues.push(format!(
                        "{what}.{}: cell {:?} is occupied",
                        e.id, e.cell
                    ));
                }
            }
        };
        check_endpoints("vehicles", &self.vehicles);
        check_endpoints("targets", &self.targets);

        if let Some(dims) = self.field.dims() {
            if dims != self.map.dims() {
                issues.push(format!(
                    "field: {dims}D field on a {}D map",
                    self.map.dims()
                ));
            }
        }
        if let Err(e) = self.field.validate() {
            issues.push(format!("field: {e}"));
        }

        if let Err(e) = self.sim.validate() {
            issues.push(format!("sim: {e}"));
        }

        if let Err(e) = self.binn_params().validate() {
            issues.push(format!("binn: {e}"));
        }

        if issues.is_empty() {
            Ok(())
        } else {
            Err(ScenarioError::Validation(issues))
        }
    }
}

/// Loads and validates a scenario file.
pub fn load_scenario(path: &FsPath) -> Result<Scenario, ScenarioError> {
    Scenario::from_json(&fs::read_to_string(path)?)
}
