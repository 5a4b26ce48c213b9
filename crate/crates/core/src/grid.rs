//! Unit-cell occupancy grid in two or three dimensions.
//!
//! Cells are axis-aligned unit squares/cubes indexed by integer coordinates;
//! cell `(i, j)` covers `[i, i+1) x [j, j+1)` in metres, so a continuous
//! point belongs to the cell obtained by flooring each coordinate. Occupancy
//! is binary per cell.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::geom::Vector;

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("cell {0:?} is out of bounds for extent {1:?}")]
    OutOfBounds(Cell, Vec<i32>),
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(u8, u8),
    #[error("cells {0:?} and {1:?} are not grid neighbors")]
    NotAdjacent(Cell, Cell),
}

/// Integer cell coordinates. For 2D cells the third component is unused.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    dims: u8,
    coords: [i32; 3],
}

impl Cell {
    pub fn new2(x: i32, y: i32) -> Self {
        Cell {
            dims: 2,
            coords: [x, y, 0],
        }
    }

    pub fn new3(x: i32, y: i32, z: i32) -> Self {
        Cell {
            dims: 3,
            coords: [x, y, z],
        }
    }

    pub fn from_slice(coords: &[i32]) -> Option<Self> {
        match coords {
            [x, y] => Some(Cell::new2(*x, *y)),
            [x, y, z] => Some(Cell::new3(*x, *y, *z)),
            _ => None,
        }
    }

    pub fn dims(&self) -> u8 {
        self.dims
    }

    pub fn coords(&self) -> &[i32] {
        &self.coords[..self.dims as usize]
    }

    /// Euclidean distance between cell indices.
    pub fn euclid(&self, other: &Cell) -> Result<f64, GridError> {
        if self.dims != other.dims {
            return Err(GridError::DimMismatch(self.dims, other.dims));
        }
        let sum: f64 = self
            .coords()
            .iter()
            .zip(other.coords())
            .map(|(a, b)| {
                let d = (a - b) as f64;
                d * d
            })
            .sum();
        Ok(sum.sqrt())
    }

    /// Length in metres of the single grid move from `self` to `other`.
    /// The pair must be distinct cells with per-axis offsets in {-1, 0, +1}.
    pub fn step_length(&self, other: &Cell) -> Result<f64, GridError> {
        if self.dims != other.dims {
            return Err(GridError::DimMismatch(self.dims, other.dims));
        }
        let mut sum = 0i32;
        for (a, b) in self.coords().iter().zip(other.coords()) {
            let d = b - a;
            if d.abs() > 1 {
                return Err(GridError::NotAdjacent(*self, *other));
            }
            sum += d * d;
        }
        if sum == 0 {
            return Err(GridError::NotAdjacent(*self, *other));
        }
        Ok((sum as f64).sqrt())
    }

    /// Center of the cell in continuous coordinates.
    pub fn center(&self) -> Vector {
        let c = self.coords();
        if self.dims == 2 {
            Vector::new2(c[0] as f64 + 0.5, c[1] as f64 + 0.5)
        } else {
            Vector::new3(c[0] as f64 + 0.5, c[1] as f64 + 0.5, c[2] as f64 + 0.5)
        }
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.dims as usize))?;
        for c in self.coords() {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CellVisitor;
        impl<'de> Visitor<'de> for CellVisitor {
            type Value = Cell;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of 2 or 3 integer cell coordinates")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Cell, A::Error> {
                let mut coords = Vec::with_capacity(3);
                while let Some(v) = seq.next_element::<i32>()? {
                    coords.push(v);
                    if coords.len() > 3 {
                        return Err(de::Error::invalid_length(coords.len(), &self));
                    }
                }
                Cell::from_slice(&coords)
                    .ok_or_else(|| de::Error::invalid_length(coords.len(), &self))
            }
        }
        deserializer.deserialize_seq(CellVisitor)
    }
}

/// Occupancy world: per-axis extents plus the set of occupied cells.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridMap {
    dims: u8,
    extent: Vec<i32>,
    obstacles: BTreeSet<Cell>,
}

impl GridMap {
    /// Builds a map, checking that every obstacle lies within the extent.
    pub fn new(extent: &[i32], obstacles: BTreeSet<Cell>) -> Result<Self, GridError> {
        let dims = match extent.len() {
            2 => 2u8,
            3 => 3u8,
            n => return Err(GridError::DimMismatch(n as u8, 2)),
        };
        let map = GridMap {
            dims,
            extent: extent.to_vec(),
            obstacles: BTreeSet::new(),
        };
        for c in &obstacles {
            if c.dims() != dims {
                return Err(GridError::DimMismatch(c.dims(), dims));
            }
            if !map.in_bounds(c) {
                return Err(GridError::OutOfBounds(*c, map.extent.clone()));
            }
        }
        Ok(GridMap { obstacles, ..map })
    }

    pub fn empty(extent: &[i32]) -> Result<Self, GridError> {
        GridMap::new(extent, BTreeSet::new())
    }

    pub fn dims(&self) -> u8 {
        self.dims
    }

    pub fn extent(&self) -> &[i32] {
        &self.extent
    }

    pub fn obstacles(&self) -> &BTreeSet<Cell> {
        &self.obstacles
    }

    pub fn cell_count(&self) -> usize {
        self.extent.iter().map(|&e| e as usize).product()
    }

    pub fn in_bounds(&self, c: &Cell) -> bool {
        c.dims() == self.dims
            && c.coords()
                .iter()
                .zip(&self.extent)
                .all(|(&v, &e)| v >= 0 && v < e)
    }

    pub fn is_obstacle(&self, c: &Cell) -> bool {
        self.obstacles.contains(c)
    }

    pub fn is_free(&self, c: &Cell) -> bool {
        self.in_bounds(c) && !self.is_obstacle(c)
    }

    /// Cell containing a continuous point (floor of each coordinate).
    /// Returns `None` when the point lies outside the map volume.
    pub fn cell_of(&self, p: &Vector) -> Option<Cell> {
        if p.dims() != self.dims {
            return None;
        }
        let mut coords = [0i32; 3];
        for i in 0..self.dims as usize {
            coords[i] = p[i].floor() as i32;
        }
        let cell = Cell {
            dims: self.dims,
            coords,
        };
        self.in_bounds(&cell).then_some(cell)
    }

    /// All in-bounds cells whose per-axis offset from `c` is in {-1, 0, +1},
    /// excluding `c` itself: at most 8 in 2D, 26 in 3D. Enumeration order is
    /// lexicographic by offset vector so downstream tie-breaking is
    /// deterministic.
    pub fn neighbors(&self, c: &Cell) -> Result<Vec<Cell>, GridError> {
        if !self.in_bounds(c) {
            return Err(GridError::OutOfBounds(*c, self.extent.clone()));
        }
        let mut out = Vec::with_capacity(if self.dims == 2 { 8 } else { 26 });
        let zrange: &[i32] = if self.dims == 3 { &[-1, 0, 1] } else { &[0] };
        for dx in [-1, 0, 1] {
            for dy in [-1, 0, 1] {
                for &dz in zrange {
                    if dx == 0 && dy == 0 && dz == 0 {
                        continue;
                    }
                    let cand = Cell {
                        dims: self.dims,
                        coords: [c.coords[0] + dx, c.coords[1] + dy, c.coords[2] + dz],
                    };
                    if self.in_bounds(&cand) {
                        out.push(cand);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row-major linear index of an in-bounds cell.
    pub(crate) fn linear_index(&self, c: &Cell) -> usize {
        let mut idx = 0usize;
        for i in 0..self.dims as usize {
            idx = idx * self.extent[i] as usize + c.coords[i] as usize;
        }
        idx
    }
}
