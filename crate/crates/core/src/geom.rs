//! Small fixed-capacity vectors for 2D/3D positions and velocities.
//!
//! The toolkit runs the same code paths in two and three dimensions, so
//! vectors carry their dimension at runtime instead of in the type. All
//! components are metres or metres per second depending on context.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

/// A 2- or 3-component `f64` vector. Copyable, no allocation.
#[derive(Clone, Copy, PartialEq)]
pub struct Vector {
    dims: u8,
    data: [f64; 3],
}

impl Vector {
    pub fn new2(x: f64, y: f64) -> Self {
        Vector {
            dims: 2,
            data: [x, y, 0.0],
        }
    }

    pub fn new3(x: f64, y: f64, z: f64) -> Self {
        Vector {
            dims: 3,
            data: [x, y, z],
        }
    }

    /// Builds a vector from a slice of length 2 or 3.
    pub fn from_slice(components: &[f64]) -> Option<Self> {
        match components {
            [x, y] => Some(Vector::new2(*x, *y)),
            [x, y, z] => Some(Vector::new3(*x, *y, *z)),
            _ => None,
        }
    }

    pub fn zero(dims: u8) -> Self {
        debug_assert!(dims == 2 || dims == 3);
        Vector {
            dims,
            data: [0.0; 3],
        }
    }

    pub fn dims(&self) -> u8 {
        self.dims
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data[..self.dims as usize]
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dims, other.dims);
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Unit vector in the same direction. Returns `None` below `eps` norm.
    pub fn unit(&self, eps: f64) -> Option<Vector> {
        let n = self.norm();
        if n <= eps {
            None
        } else {
            Some(*self * (1.0 / n))
        }
    }

    pub fn distance(&self, other: &Vector) -> f64 {
        (*self - *other).norm()
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(self, rhs: Vector) -> Vector {
        debug_assert_eq!(self.dims, rhs.dims);
        let mut data = [0.0; 3];
        for (d, (a, b)) in data.iter_mut().zip(self.data.iter().zip(&rhs.data)) {
            *d = a + b;
        }
        Vector {
            dims: self.dims,
            data,
        }
    }
}

impl Sub for Vector {
    type Output = Vector;
    fn sub(self, rhs: Vector) -> Vector {
        debug_assert_eq!(self.dims, rhs.dims);
        let mut data = [0.0; 3];
        for (d, (a, b)) in data.iter_mut().zip(self.data.iter().zip(&rhs.data)) {
            *d = a - b;
        }
        Vector {
            dims: self.dims,
            data,
        }
    }
}

impl Mul<f64> for Vector {
    type Output = Vector;
    fn mul(self, s: f64) -> Vector {
        let mut data = [0.0; 3];
        for (d, a) in data.iter_mut().zip(&self.data) {
            *d = a * s;
        }
        Vector {
            dims: self.dims,
            data,
        }
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self * -1.0
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        debug_assert!(i < self.dims as usize);
        &self.data[i]
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_slice())
    }
}

/// Distance from point `p` to the segment `a`..`b`.
pub fn point_segment_distance(p: &Vector, a: &Vector, b: &Vector) -> f64 {
    let ab = *b - *a;
    let len2 = ab.dot(&ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((*p - *a).dot(&ab) / len2).clamp(0.0, 1.0);
    p.distance(&(*a + ab * t))
}

/// Distance from point `p` to the polyline through `pts` (min over segments).
pub fn point_polyline_distance(p: &Vector, pts: &[Vector]) -> f64 {
    match pts {
        [] => f64::NAN,
        [only] => p.distance(only),
        _ => pts
            .windows(2)
            .map(|w| point_segment_distance(p, &w[0], &w[1]))
            .fold(f64::INFINITY, f64::min),
    }
}
