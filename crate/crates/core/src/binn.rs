//! Bio-inspired neural network (BINN) path planner.
//!
//! One neuron per grid cell. At each move the planner marks the current cell
//! as searched, scores every neighboring neuron with a local activity rule,
//! and steps to the neighbor with the highest activity until the target cell
//! is reached. The activity of a candidate neuron `i` seen from the current
//! neuron `j` is
//!
//! ```text
//! a_i = f(a_j + exp(-|i - T| + |i - j|) + J_i)
//! ```
//!
//! where `|i - T|` is the Euclidean distance to the target, `J_i` is an
//! external input (-1 obstacle, 0 searched, +1 fresh) and `f` is a piecewise
//! transfer function clamping negative stimuli to -1. The `+|i - j|` term in
//! the exponent rewards longer (diagonal) moves regardless of target
//! progress; [`BinnParams::literal_exponent`] keeps it (default) or drops it
//! so the score depends on target distance alone, which yields
//! shortest-metric paths on open water.

use thiserror::Error;

use crate::grid::{Cell, GridError, GridMap};

#[derive(Debug, Error, PartialEq)]
pub enum PlanError {
    #[error("start or target cell is occupied or out of bounds: {0:?}")]
    EndpointBlocked(Cell),
    #[error("target not reached within {0} steps")]
    NoPath(usize),
    #[error("a path needs at least one waypoint")]
    EmptyPath,
    #[error("invalid planner parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// Planner knobs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BinnParams {
    /// Slope of the linear branch of the transfer function, in (0, 1].
    pub transfer_slope: f64,
    /// Move budget before the planner gives up.
    pub max_steps: usize,
    /// Keep the `+|i-j|` term of the activity exponent instead of scoring
    /// by target distance alone.
    pub literal_exponent: bool,
}

impl BinnParams {
    pub fn new(transfer_slope: f64, max_steps: usize) -> Self {
        BinnParams {
            transfer_slope,
            max_steps,
            literal_exponent: true,
        }
    }

    /// Default parameters for a given map: slope 0.5 and a step budget of
    /// four times the cell count.
    pub fn for_map(map: &GridMap) -> Self {
        BinnParams::new(0.5, 4 * map.cell_count())
    }

    pub fn validate(&self) -> Result<(), PlanError> {
        if !(self.transfer_slope > 0.0 && self.transfer_slope <= 1.0) {
            return Err(PlanError::InvalidParams(format!(
                "transfer_slope must be in (0, 1], got {}",
                self.transfer_slope
            )));
        }
        if self.max_steps < 1 {
            return Err(PlanError::InvalidParams("max_steps must be >= 1".into()));
        }
        Ok(())
    }
}

/// Per-neuron activity values and searched flags for one planning run.
#[derive(Clone, Debug)]
pub struct ActivityField {
    activity: Vec<f64>,
    searched: Vec<bool>,
    searched_count: usize,
}

impl ActivityField {
    /// All activities zero, all cells unsearched.
    pub fn new(map: &GridMap) -> Self {
        let n = map.cell_count();
        ActivityField {
            activity: vec![0.0; n],
            searched: vec![false; n],
            searched_count: 0,
        }
    }

    pub fn activity(&self, map: &GridMap, c: &Cell) -> f64 {
        self.activity[map.linear_index(c)]
    }

    pub fn is_searched(&self, map: &GridMap, c: &Cell) -> bool {
        self.searched[map.linear_index(c)]
    }

    pub fn searched_count(&self) -> usize {
        self.searched_count
    }

    fn set_activity(&mut self, map: &GridMap, c: &Cell, value: f64) {
        self.activity[map.linear_index(c)] = value;
    }

    fn mark_searched(&mut self, map: &GridMap, c: &Cell) {
        let idx = map.linear_index(c);
        if !self.searched[idx] {
            self.searched[idx] = true;
            self.searched_count += 1;
        }
    }
}

/// Transfer function: -1 for negative stimulus, `slope * x` otherwise.
pub fn transfer(x: f64, slope: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        slope * x
    }
}

/// External input to a neuron: -1 on obstacles, 0 once searched, +1 fresh.
pub fn external_input(map: &GridMap, field: &ActivityField, i: &Cell) -> Result<f64, GridError> {
    if !map.in_bounds(i) {
        return Err(GridError::OutOfBounds(*i, map.extent().to_vec()));
    }
    Ok(if map.is_obstacle(i) {
        -1.0
    } else if field.is_searched(map, i) {
        0.0
    } else {
        1.0
    })
}

/// Activity the neuron `i` would take when activated from the current neuron
/// `j`. Pure: the field is not mutated.
pub fn candidate_activity(
    field: &ActivityField,
    j: &Cell,
    i: &Cell,
    target: &Cell,
    params: &BinnParams,
    map: &GridMap,
) -> Result<f64, GridError> {
    let move_len = j.step_length(i)?; // also rejects non-adjacent pairs
    let to_target = i.euclid(target)?;
    let exponent = if params.literal_exponent {
        -to_target + move_len
    } else {
        -to_target
    };
    let stimulus = field.activity(map, j) + exponent.exp() + external_input(map, field, i)?;
    Ok(transfer(stimulus, params.transfer_slope))
}

/// A planned waypoint path over grid cells.
#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    waypoints: Vec<Cell>,
    length: f64,
}

impl Path {
    /// Builds a path from a non-empty waypoint list, validating adjacency of
    /// consecutive cells and computing the total length.
    pub fn from_waypoints(waypoints: Vec<Cell>) -> Result<Self, PlanError> {
        if waypoints.is_empty() {
            return Err(PlanError::EmptyPath);
        }
        let length = path_length_of(&waypoints)?;
        Ok(Path { waypoints, length })
    }

    pub fn waypoints(&self) -> &[Cell] {
        &self.waypoints
    }

    /// Total length in metres (sum of step lengths).
    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn dims(&self) -> u8 {
        self.waypoints[0].dims()
    }
}

fn path_length_of(waypoints: &[Cell]) -> Result<f64, GridError> {
    let mut total = 0.0;
    for w in waypoints.windows(2) {
        total += w[0].step_length(&w[1])?;
    }
    Ok(total)
}

/// Plans a collision-free waypoint path from `start` to `target`.
///
/// The current cell is marked searched, every free neighbor is scored with
/// [`candidate_activity`], and the planner moves to the highest-activity
/// neighbor (first in lexicographic neighbor order on ties). The chosen
/// activity is committed to the field and becomes `a_j` for the next step.
/// Obstacle cells are never stepped onto; in dead ends the searched-cell
/// penalty lets the argmax fall on visited cells so the planner can back out,
/// until the step budget runs out.
pub fn plan_path(
    map: &GridMap,
    start: &Cell,
    target: &Cell,
    params: &BinnParams,
) -> Result<Path, PlanError> {
    params.validate()?;
    if !map.is_free(start) {
        return Err(PlanError::EndpointBlocked(*start));
    }
    if !map.is_free(target) {
        return Err(PlanError::EndpointBlocked(*target));
    }
    if start.dims() != target.dims() {
        return Err(GridError::DimMismatch(start.dims(), target.dims()).into());
    }

    let mut field = ActivityField::new(map);
    let mut waypoints = vec![*start];
    let mut current = *start;

    if current == *target {
        return Ok(Path {
            waypoints,
            length: 0.0,
        });
    }

    for _ in 0..params.max_steps {
        field.mark_searched(map, &current);

        let mut best: Option<(Cell, f64)> = None;
        for cand in map.neighbors(&current)? {
            if map.is_obstacle(&cand) {
                continue;
            }
            let a = candidate_activity(&field, &current, &cand, target, params, map)?;
            match best {
                Some((_, best_a)) if a <= best_a => {}
                _ => best = Some((cand, a)),
            }
        }

        let (next, activity) = match best {
            Some(choice) => choice,
            // Walled in: no free neighbor to move to.
            None => return Err(PlanError::NoPath(params.max_steps)),
        };

        field.set_activity(map, &next, activity);
        waypoints.push(next);
        current = next;

        if current == *target {
            let length = path_length_of(&waypoints)?;
            return Ok(Path { waypoints, length });
        }
    }

    Err(PlanError::NoPath(params.max_steps))
}

/// Total length of a path: the sum of step lengths over consecutive pairs.
pub fn path_length(path: &Path) -> f64 {
    path.length()
}
