//! Independent oracles for the integration and acceptance suites. These
//! deliberately share no code with the library paths they check.
#![allow(dead_code)] // each test target uses its own subset

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use uuvsim_core::grid::{Cell, GridMap};

/// f64 ordered by total order; weights here are never NaN.
#[derive(PartialEq)]
struct OrdF64(f64);

impl Eq for OrdF64 {}

impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Shortest path length between two free cells on the 8/26-connected grid
/// graph (obstacle cells excluded), or `None` when disconnected.
pub fn dijkstra_shortest(map: &GridMap, start: &Cell, goal: &Cell) -> Option<f64> {
    if !map.is_free(start) || !map.is_free(goal) {
        return None;
    }
    let index = |c: &Cell| -> usize {
        let mut idx = 0usize;
        for (i, &e) in map.extent().iter().enumerate() {
            idx = idx * e as usize + c.coords()[i] as usize;
        }
        idx
    };
    let mut dist = vec![f64::INFINITY; map.cell_count()];
    let mut heap = BinaryHeap::new();
    dist[index(start)] = 0.0;
    heap.push(Reverse((OrdF64(0.0), *start)));
    while let Some(Reverse((OrdF64(d), cell))) = heap.pop() {
        if cell == *goal {
            return Some(d);
        }
        if d > dist[index(&cell)] {
            continue;
        }
        for next in map.neighbors(&cell).unwrap() {
            if map.is_obstacle(&next) {
                continue;
            }
            let nd = d + cell.step_length(&next).unwrap();
            let slot = &mut dist[index(&next)];
            if nd < *slot {
                *slot = nd;
                heap.push(Reverse((OrdF64(nd), next)));
            }
        }
    }
    None
}

/// Closed-form shortest length on an empty 8/26-connected grid: sorted
/// absolute offsets (p >= q >= r) give r*sqrt(3) + (q-r)*sqrt(2) + (p-q).
pub fn octile_distance(a: &Cell, b: &Cell) -> f64 {
    let mut d: Vec<f64> = a
        .coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| ((x - y).abs()) as f64)
        .collect();
    d.resize(3, 0.0);
    d.sort_by(|x, y| y.total_cmp(x));
    let (p, q, r) = (d[0], d[1], d[2]);
    r * 3f64.sqrt() + (q - r) * 2f64.sqrt() + (p - q)
}

/// Minimum-total-cost assignment of every row to a distinct column (m <= n)
/// via the Hungarian algorithm with potentials. Returns (row -> column,
/// total cost).
pub fn hungarian(cost: &[Vec<f64>]) -> (Vec<usize>, f64) {
    let m = cost.len();
    let n = cost[0].len();
    assert!(m <= n, "more rows than columns");
    // 1-based potentials; p[j] is the row matched to column j (0 = none).
    let mut u = vec![0.0f64; m + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=m {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut row_to_col = vec![usize::MAX; m];
    for j in 1..=n {
        if p[j] > 0 {
            row_to_col[p[j] - 1] = j - 1;
        }
    }
    let total = row_to_col
        .iter()
        .enumerate()
        .map(|(r, &c)| cost[r][c])
        .sum();
    (row_to_col, total)
}

/// Exhaustive minimum assignment for small matrices; validates `hungarian`.
pub fn brute_force_assignment(cost: &[Vec<f64>]) -> f64 {
    fn recurse(cost: &[Vec<f64>], row: usize, used: &mut Vec<bool>, acc: f64, best: &mut f64) {
        if row == cost.len() {
            *best = best.min(acc);
            return;
        }
        for col in 0..cost[row].len() {
            if !used[col] {
                used[col] = true;
                recurse(cost, row + 1, used, acc + cost[row][col], best);
                used[col] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    let mut used = vec![false; cost[0].len()];
    recurse(cost, 0, &mut used, 0.0, &mut best);
    best
}

/// Path to a bundled scenario file.
pub fn scenario_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

/// 2D reference assignment matrix fixture (targets A..C by rows,
/// vehicles I..IV by columns).
pub const MATRIX_2D: [[f64; 4]; 3] = [
    [0.1451, 0.1987, 0.3261, 0.3788],
    [0.5730, 0.6335, 0.8135, 1.0],
    [0.2547, 0.5994, 0.7453, 0.4611],
];

/// 3D reference assignment matrix fixture, same layout.
#[allow(clippy::approx_constant)] // table data, not rounded constants
pub const MATRIX_3D: [[f64; 4]; 3] = [
    [0.6982, 0.2507, 0.4476, 0.4810],
    [0.8234, 0.5639, 0.7562, 0.7094],
    [1.0, 0.4767, 0.7854, 0.5727],
];
