//! Target assignment from normalized path distances.
//!
//! Every vehicle/target pair gets a pre-optimal path from the planner; the
//! resulting lengths are normalized by the longest finite one into an m x n
//! matrix (targets by rows, vehicles by columns). Pairings are then selected
//! greedily: pick the global minimum of the matrix, delete its row and
//! column, and repeat on the residue until every target is assigned.

use thiserror::Error;

use crate::binn::{plan_path, BinnParams, Path, PlanError};
use crate::grid::{Cell, GridMap};

#[derive(Debug, Error, PartialEq)]
pub enum AssignError {
    #[error("{targets} targets exceed {vehicles} vehicles")]
    TargetsExceedVehicles { targets: usize, vehicles: usize },
    #[error("no vehicle can reach target {0}")]
    AllPairsInfeasible(usize),
    #[error("residue step left target {0} without a feasible vehicle")]
    InfeasibleResidue(usize),
    #[error("matrix has no finite entries")]
    NoFiniteEntries,
    #[error(transparent)]
    Plan(#[from] PlanError),
}

/// Raw and normalized pairwise path distances, targets by rows and vehicles
/// by columns. Unreachable pairs hold infinity and are never selectable.
#[derive(Clone, Debug, PartialEq)]
pub struct AssignmentMatrix {
    raw: Vec<Vec<f64>>,
    normalized: Vec<Vec<f64>>,
    targets: usize,
    vehicles: usize,
}

impl AssignmentMatrix {
    /// Normalizes raw path lengths by the largest finite entry. Requires
    /// m <= n and at least one finite entry per target row.
    pub fn from_raw(raw: Vec<Vec<f64>>) -> Result<Self, AssignError> {
        let targets = raw.len();
        let vehicles = raw.first().map_or(0, Vec::len);
        if targets > vehicles {
            return Err(AssignError::TargetsExceedVehicles { targets, vehicles });
        }
        debug_assert!(raw.iter().all(|r| r.len() == vehicles));
        for (t, row) in raw.iter().enumerate() {
            if row.iter().all(|v| !v.is_finite()) {
                return Err(AssignError::AllPairsInfeasible(t));
            }
        }
        let max = raw
            .iter()
            .flatten()
            .copied()
            .filter(|v| v.is_finite())
            .fold(f64::NEG_INFINITY, f64::max);
        if !max.is_finite() {
            return Err(AssignError::NoFiniteEntries);
        }
        let normalized = raw
            .iter()
            .map(|row| row.iter().map(|v| v / max).collect())
            .collect();
        Ok(AssignmentMatrix {
            raw,
            normalized,
            targets,
            vehicles,
        })
    }

    pub fn raw(&self) -> &[Vec<f64>] {
        &self.raw
    }

    pub fn normalized(&self) -> &[Vec<f64>] {
        &self.normalized
    }

    pub fn target_count(&self) -> usize {
        self.targets
    }

    pub fn vehicle_count(&self) -> usize {
        self.vehicles
    }
}

/// One selected pairing: target row, vehicle column and the normalized
/// distance at the moment of selection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pair {
    pub target: usize,
    pub vehicle: usize,
    pub value: f64,
}

/// Ordered assignment result. `entries_inspected` counts matrix entries
/// examined across all residue scans (sum over k of (m-k)(n-k)).
#[derive(Clone, Debug, PartialEq)]
pub struct PriorityList {
    pub pairs: Vec<Pair>,
    pub entries_inspected: usize,
}

impl PriorityList {
    /// Vehicles that received no target (surplus when m < n).
    pub fn unassigned_vehicles(&self, vehicle_count: usize) -> Vec<usize> {
        (0..vehicle_count)
            .filter(|v| !self.pairs.iter().any(|p| p.vehicle == *v))
            .collect()
    }
}

/// Planned paths indexed `[target][vehicle]`; `None` marks unreachable pairs.
pub type PlannedPaths = Vec<Vec<Option<Path>>>;

/// Plans every vehicle-to-target pair and assembles the normalized distance
/// matrix. Pairs the planner cannot connect become infinite entries. Also
/// returns the planned paths, indexed `[target][vehicle]`, so callers can
/// reuse them without replanning.
pub fn build_matrix_with_paths(
    map: &GridMap,
    vehicles: &[Cell],
    targets: &[Cell],
    params: &BinnParams,
) -> Result<(AssignmentMatrix, PlannedPaths), AssignError> {
    if targets.len() > vehicles.len() {
        return Err(AssignError::TargetsExceedVehicles {
            targets: targets.len(),
            vehicles: vehicles.len(),
        });
    }
    let mut raw = Vec::with_capacity(targets.len());
    let mut paths = Vec::with_capacity(targets.len());
    for target in targets {
        let mut row = Vec::with_capacity(vehicles.len());
        let mut path_row = Vec::with_capacity(vehicles.len());
        for vehicle in vehicles {
            match plan_path(map, vehicle, target, params) {
                Ok(path) => {
                    row.push(path.length());
                    path_row.push(Some(path));
                }
                Err(PlanError::NoPath(_)) => {
                    row.push(f64::INFINITY);
                    path_row.push(None);
                }
                Err(e) => return Err(e.into()),
            }
        }
        raw.push(row);
        paths.push(path_row);
    }
    Ok((AssignmentMatrix::from_raw(raw)?, paths))
}

/// [`build_matrix_with_paths`] without keeping the paths.
pub fn build_matrix(
    map: &GridMap,
    vehicles: &[Cell],
    targets: &[Cell],
    params: &BinnParams,
) -> Result<AssignmentMatrix, AssignError> {
    build_matrix_with_paths(map, vehicles, targets, params).map(|(m, _)| m)
}

/// Greedy residue-matrix selection: repeatedly take the global minimum of
/// the remaining matrix (ties: smallest target row, then smallest vehicle
/// column) and delete its row and column.
pub fn greedy_assign(matrix: &AssignmentMatrix) -> Result<PriorityList, AssignError> {
    let m = matrix.target_count();
    let n = matrix.vehicle_count();
    let norm = matrix.normalized();
    let mut row_alive = vec![true; m];
    let mut col_alive = vec![true; n];
    let mut pairs = Vec::with_capacity(m);
    let mut entries_inspected = 0usize;

    for _ in 0..m {
        let mut best: Option<Pair> = None;
        for (t, row) in norm.iter().enumerate() {
            if !row_alive[t] {
                continue;
            }
            for (v, &value) in row.iter().enumerate() {
                if !col_alive[v] {
                    continue;
                }
                entries_inspected += 1;
                if value.is_finite() && best.is_none_or(|b| value < b.value) {
                    best = Some(Pair {
                        target: t,
                        vehicle: v,
                        value,
                    });
                }
            }
        }
        match best {
            Some(pair) => {
                row_alive[pair.target] = false;
                col_alive[pair.vehicle] = false;
                pairs.push(pair);
            }
            None => {
                let stuck = row_alive.iter().position(|&a| a).unwrap_or(0);
                return Err(AssignError::InfeasibleResidue(stuck));
            }
        }
    }

    Ok(PriorityList {
        pairs,
        entries_inspected,
    })
}
