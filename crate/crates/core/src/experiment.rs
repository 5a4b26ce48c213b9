//! Experiment orchestration: assignment followed by navigation of every
//! assigned pair in every requested mode.

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::assignment::{
    build_matrix_with_paths, greedy_assign, AssignError, AssignmentMatrix, PriorityList,
};
use crate::binn::Path;
use crate::nav::{follow_path, Mode, SimError, SimOutcome, TrajectoryRecord};
use crate::scenario::Scenario;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Assign(#[from] AssignError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("assigned pair {vehicle}->{target} has no planned path")]
    MissingPath { vehicle: String, target: String },
}

/// One simulated (pair, mode) run.
#[derive(Clone, Debug)]
pub struct PairRun {
    pub target: usize,
    pub vehicle: usize,
    pub target_id: String,
    pub vehicle_id: String,
    pub normalized: f64,
    pub mode: Mode,
    pub path: Path,
    pub record: TrajectoryRecord,
    pub outcome: SimOutcome,
}

impl PairRun {
    /// Pair label in vehicle-target order, e.g. `I-A`.
    pub fn pair_label(&self) -> String {
        format!("{}-{}", self.vehicle_id, self.target_id)
    }
}

/// Everything one experiment produced.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub scenario: Scenario,
    pub scenario_hash: String,
    pub matrix: AssignmentMatrix,
    pub priority: PriorityList,
    pub unassigned_vehicles: Vec<usize>,
    pub runs: Vec<PairRun>,
}

/// Hex SHA-256 of the canonical scenario serialization; two experiments on
/// the same inputs share the hash.
pub fn scenario_hash(scenario: &Scenario) -> String {
    let bytes = serde_json::to_vec(scenario).expect("scenario serializes");
    let digest = Sha256::digest(&bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Builds the assignment matrix, selects pairings greedily and simulates
/// every assigned pair in every requested mode (canonical order: baseline
/// first). An empty mode list runs assignment only.
pub fn run_experiment(scenario: &Scenario, modes: &[Mode]) -> Result<RunReport, ExperimentError> {
    let params = scenario.binn_params();
    let vehicles = scenario.vehicle_cells();
    let targets = scenario.target_cells();

    let (matrix, mut paths) =
        build_matrix_with_paths(&scenario.map, &vehicles, &targets, &params)?;
    let priority = greedy_assign(&matrix)?;
    let unassigned_vehicles = priority.unassigned_vehicles(matrix.vehicle_count());

    let mode_order: Vec<Mode> = [Mode::Bnnp, Mode::Cbnntap]
        .into_iter()
        .filter(|m| modes.contains(m))
        .collect();

    let mut runs = Vec::new();
    for pair in &priority.pairs {
        let path = paths[pair.target][pair.vehicle]
            .take()
            .ok_or_else(|| ExperimentError::MissingPath {
                vehicle: scenario.vehicles[pair.vehicle].id.clone(),
                target: scenario.targets[pair.target].id.clone(),
            })?;
        for &mode in &mode_order {
            let (record, outcome) =
                follow_path(&path, mode, &scenario.field, &scenario.map, &scenario.sim)?;
            runs.push(PairRun {
                target: pair.target,
                vehicle: pair.vehicle,
                target_id: scenario.targets[pair.target].id.clone(),
                vehicle_id: scenario.vehicles[pair.vehicle].id.clone(),
                normalized: pair.value,
                mode,
                path: path.clone(),
                record,
                outcome,
            });
        }
    }

    Ok(RunReport {
        scenario: scenario.clone(),
        scenario_hash: scenario_hash(scenario),
        matrix,
        priority,
        unassigned_vehicles,
        runs,
    })
}
