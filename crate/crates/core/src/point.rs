//! Planar points and the orientation predicate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::tol::Tol;

/// A point in the plane, also used as a displacement vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

pub fn pt(x: f64, y: f64) -> Point {
    Point { x, y }
}

impl Point {
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(&self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product, positive when `other` is
    /// counterclockwise of `self`.
    pub fn cross(&self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dist(&self, other: Point) -> f64 {
        (*self - other).norm()
    }

    pub fn dist_sq(&self, other: Point) -> f64 {
        (*self - other).norm_sq()
    }

    /// Unit vector in the same direction. Zero-length input is the caller's
    /// responsibility; validated polygons never produce one.
    pub fn normalized(&self) -> Point {
        let n = self.norm();
        pt(self.x / n, self.y / n)
    }

    /// Rotation by +90 degrees; for a ccw polygon edge this points inward.
    pub fn perp_ccw(&self) -> Point {
        pt(-self.y, self.x)
    }

    pub fn lerp(&self, other: Point, t: f64) -> Point {
        pt(self.x + (other.x - self.x) * t, self.y + (other.y - self.y) * t)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        pt(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        pt(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        pt(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        pt(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Orientation of the triple (a, b, c).
///
/// Collinear means the cross product (b - a) x (c - a) is within `tol.abs`
/// scaled by the arm lengths, so the verdict is scale invariant. Outside that
/// band the sign is decided in working precision, escalating to an exact
/// evaluation when the magnitude falls under the floating point error bound.
pub fn orientation(a: Point, b: Point, c: Point, tol: &Tol) -> Result<Orientation> {
    if !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(orient(a, b, c, tol))
}

/// Infallible orientation for inputs already known to be finite.
pub(crate) fn orient(a: Point, b: Point, c: Point, tol: &Tol) -> Orientation {
    let u = b - a;
    let v = c - a;
    let cross = u.cross(v);
    let scale = u.norm() * v.norm();
    if cross.abs() <= tol.abs * scale {
        return Orientation::Collinear;
    }
    // Error bound for the difference-of-products form; see Shewchuk's
    // adaptive predicates. Below it the working-precision sign may be wrong.
    let detsum = (u.x * v.y).abs() + (u.y * v.x).abs();
    let sign = if cross.abs() >= 3.3306690738754716e-16 * detsum {
        cross
    } else {
        robust::orient2d(
            robust::Coord { x: a.x, y: a.y },
            robust::Coord { x: b.x, y: b.y },
            robust::Coord { x: c.x, y: c.y },
        )
    };
    if sign > 0.0 {
        Orientation::Ccw
    } else if sign < 0.0 {
        Orientation::Cw
    } else {
        Orientation::Collinear
    }
}
