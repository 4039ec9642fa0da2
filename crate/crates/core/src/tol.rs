//! Comparison tolerances shared by every module.

/// Absolute tolerances used for all fuzzy comparisons.
///
/// `abs` applies to lengths and length-scaled quantities, `ang` to angles
/// in radians. Both default to 1e-9; callers that need a different working
/// tolerance construct one and thread it through polygon construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tol {
    pub abs: f64,
    pub ang: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol { abs: 1e-9, ang: 1e-9 }
    }
}

impl Tol {
    pub fn new(abs: f64, ang: f64) -> Self {
        Tol { abs, ang }
    }

    /// Both scalars equal within `abs`.
    pub fn eq_abs(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.abs
    }

    /// Scalar is zero within `abs`.
    pub fn zero_abs(&self, v: f64) -> bool {
        v.abs() <= self.abs
    }

    /// Angles equal within `ang`.
    pub fn eq_ang(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.ang
    }
}
