//! Vectors in `R^{2k}` viewed as a product of `k` orthogonal planes, plus the
//! ball, line and hyperplane predicates the geometric reductions share.
//!
//! Coordinates are ordered `(x_1, y_1, ..., x_k, y_k)`; plane indices are
//! 1-based. All predicates take an explicit tolerance.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() || !coords.len().is_multiple_of(2) {
            return Err(Error::InvalidGeometry(format!(
                "dimension must be even and positive, got {}",
                coords.len()
            )));
        }
        Ok(Vector(coords))
    }

    /// The origin of `R^{2k}`.
    pub fn zeros(planes: usize) -> Self {
        assert!(planes > 0, "need at least one plane");
        Vector(vec![0.0; 2 * planes])
    }

    /// A vector supported on a single plane.
    pub fn on_plane(planes: usize, i: usize, x: f64, y: f64) -> Self {
        let mut v = Self::zeros(planes);
        v.set_plane(i, x, y);
        v
    }

    /// Reassembles a vector from its plane projections.
    pub fn from_planes(parts: &[(f64, f64)]) -> Result<Self> {
        Self::new(parts.iter().flat_map(|&(x, y)| [x, y]).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn planes(&self) -> usize {
        self.0.len() / 2
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dot(&self, other: &Vector) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(dot_slices(&self.0, &other.0))
    }

    pub fn norm_sq(&self) -> f64 {
        dot_slices(&self.0, &self.0)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// `(x_i(v), y_i(v))` for the 1-based plane index `i`.
    pub fn plane_project(&self, i: usize) -> Result<(f64, f64)> {
        if i == 0 || i > self.planes() {
            return Err(Error::PlaneOutOfRange {
                plane: i,
                planes: self.planes(),
            });
        }
        Ok((self.0[2 * i - 2], self.0[2 * i - 1]))
    }

    pub fn set_plane(&mut self, i: usize, x: f64, y: f64) {
        assert!(i >= 1 && i <= self.planes(), "plane {i} out of range");
        self.0[2 * i - 2] = x;
        self.0[2 * i - 1] = y;
    }

    /// Indices of planes with a nonzero coordinate.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.planes())
            .filter(|&i| self.0[2 * i - 2] != 0.0 || self.0[2 * i - 1] != 0.0)
            .collect()
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector(self.0.iter().map(|x| x * s).collect())
    }

    pub fn antipode(&self) -> Vector {
        -self
    }
}

pub(crate) fn dot_slices(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|x| -x).collect())
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        -&self
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<f64> for &Vector {
    type Output = Vector;
    fn mul(self, s: f64) -> Vector {
        self.scale(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    center: Vector,
    radius: f64,
}

impl Ball {
    pub fn new(center: Vector, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidGeometry(format!(
                "radius must be positive, got {radius}"
            )));
        }
        Ok(Ball { center, radius })
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn antipode(&self) -> Ball {
        Ball {
            center: -&self.center,
            radius: self.radius,
        }
    }
}

/// A line through the origin, given by a unit direction.
#[derive(Debug, Clone, PartialEq)]
pub struct OriginLine {
    direction: Vector,
}

impl OriginLine {
    pub const UNIT_TOL: f64 = 1e-9;

    /// Accepts a direction that is already unit length.
    pub fn new(direction: Vector) -> Result<Self> {
        let norm = direction.norm();
        if (norm - 1.0).abs() > Self::UNIT_TOL {
            return Err(Error::InvalidGeometry(format!(
                "direction has norm {norm}, expected 1"
            )));
        }
        Ok(OriginLine { direction })
    }

    /// Normalizes `v` first.
    pub fn through(v: &Vector) -> Result<Self> {
        let norm = v.norm();
        if norm.is_nan() || norm <= 0.0 {
            return Err(Error::InvalidGeometry("zero direction".into()));
        }
        Ok(OriginLine {
            direction: v.scale(1.0 / norm),
        })
    }

    pub fn direction(&self) -> &Vector {
        &self.direction
    }

    /// The same line with the opposite direction vector.
    pub fn reversed(&self) -> OriginLine {
        OriginLine {
            direction: -&self.direction,
        }
    }
}

/// Whether `l` meets the ball: `(c·l)² ≥ ‖c‖² − r² − tol`.
///
/// Panics if dimensions differ.
pub fn line_stabs_ball(l: &OriginLine, b: &Ball, tol: f64) -> bool {
    stab_slack(l, b) >= -tol
}

/// `(c·l)² − (‖c‖² − r²)`; nonnegative iff the line meets the ball.
pub fn stab_slack(l: &OriginLine, b: &Ball) -> f64 {
    let c = b.center();
    let d = dot_slices(c.coords(), l.direction().coords());
    d * d - (c.norm_sq() - b.radius() * b.radius())
}

/// `{x : normal·x = offset}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    normal: Vector,
    offset: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Negative,
    On,
    Positive,
}

impl Hyperplane {
    pub fn new(normal: Vector, offset: f64) -> Result<Self> {
        if normal.norm().is_nan() || normal.norm() <= 0.0 {
            return Err(Error::InvalidGeometry(
                "hyperplane normal must be nonzero".into(),
            ));
        }
        Ok(Hyperplane { normal, offset })
    }

    pub fn normal(&self) -> &Vector {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// `normal·p − offset`.
    pub fn eval(&self, p: &Vector) -> f64 {
        dot_slices(self.normal.coords(), p.coords()) - self.offset
    }

    pub fn flipped(&self) -> Hyperplane {
        Hyperplane {
            normal: -&self.normal,
            offset: -self.offset,
        }
    }

    /// The parallel hyperplane at a different offset.
    pub fn translated_to(&self, offset: f64) -> Hyperplane {
        Hyperplane {
            normal: self.normal.clone(),
            offset,
        }
    }
}

pub fn point_side(h: &Hyperplane, p: &Vector, tol: f64) -> Side {
    let s = h.eval(p);
    if s.abs() <= tol {
        Side::On
    } else if s < 0.0 {
        Side::Negative
    } else {
        Side::Positive
    }
}
