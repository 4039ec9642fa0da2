//! Positions on the polygon boundary.
//!
//! A `BoundaryPoint` is an (edge, parameter) pair with t in [0, 1). The
//! representation is canonical: a parameter that snaps to 1 rolls over to
//! (edge + 1, 0), so a vertex is always written as (incident outgoing edge, 0).

use std::fmt;

use crate::point::Point;
use crate::polygon::ConvexPolygon;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub edge: usize,
    pub t: f64,
}

impl BoundaryPoint {
    pub fn vertex(i: usize) -> Self {
        BoundaryPoint { edge: i, t: 0.0 }
    }

    pub fn is_vertex(&self) -> bool {
        self.t == 0.0
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "edge {} t {}", self.edge, self.t)
    }
}

impl ConvexPolygon {
    /// Canonical boundary point on edge i with parameter t.
    ///
    /// Parameters within the snap tolerance of 0 or 1 are pulled onto the
    /// vertex; t = 1 becomes (i + 1, 0). Out-of-range parameters are clamped,
    /// so callers should have range-checked t themselves when it matters.
    pub fn boundary_point(&self, edge: usize, t: f64) -> BoundaryPoint {
        let n = self.n();
        let edge = edge % n;
        let eps = self.param_eps(edge);
        let t = t.clamp(0.0, 1.0);
        if t <= eps {
            BoundaryPoint { edge, t: 0.0 }
        } else if t >= 1.0 - eps {
            BoundaryPoint { edge: (edge + 1) % n, t: 0.0 }
        } else {
            BoundaryPoint { edge, t }
        }
    }

    /// Parameter-space equivalent of the absolute tolerance on edge i.
    pub(crate) fn param_eps(&self, edge: usize) -> f64 {
        self.tol().abs / self.edge_len(edge)
    }

    /// Cartesian position of a boundary point.
    pub fn boundary_eval(&self, b: BoundaryPoint) -> Point {
        let (a, c) = self.edge(b.edge);
        a.lerp(c, b.t)
    }

    /// Arc-length position measured counterclockwise from vertex 0.
    pub fn perimeter_pos(&self, b: BoundaryPoint) -> f64 {
        self.cum_len(b.edge) + b.t * self.edge_len(b.edge)
    }

    /// Counterclockwise arc length from a to b; 0 when they coincide.
    pub fn ccw_distance(&self, a: BoundaryPoint, b: BoundaryPoint) -> f64 {
        let d = self.perimeter_pos(b) - self.perimeter_pos(a);
        d.rem_euclid(self.perimeter())
    }

    /// Inverse of perimeter_pos: the canonical boundary point at arc length s
    /// counterclockwise from vertex 0. Any finite s is wrapped into range.
    pub fn at_perimeter_pos(&self, s: f64) -> BoundaryPoint {
        let s = s.rem_euclid(self.perimeter());
        // cum is strictly increasing with cum[0] = 0, so the partition point
        // is in 1..=n and e lands on a valid edge.
        let e = self.cum_slice().partition_point(|&c| c <= s) - 1;
        let e = e.min(self.n() - 1);
        self.boundary_point(e, (s - self.cum_len(e)) / self.edge_len(e))
    }

    /// Boundary location of p, if p lies within the absolute tolerance of
    /// the boundary. Interior and exterior points yield None.
    pub fn boundary_locate(&self, p: Point) -> Option<BoundaryPoint> {
        if !p.is_finite() {
            return None;
        }
        let mut best: Option<(f64, usize, f64)> = None;
        for i in 0..self.n() {
            let (a, _) = self.edge(i);
            let e = self.edge_vec(i);
            let len2 = e.norm_sq();
            let t = ((p - a).dot(e) / len2).clamp(0.0, 1.0);
            let q = a + e * t;
            let d = p.dist(q);
            if best.map_or(true, |(bd, _, _)| d < bd) {
                best = Some((d, i, t));
            }
        }
        let (d, i, t) = best?;
        if d <= self.tol().abs {
            Some(self.boundary_point(i, t))
        } else {
            None
        }
    }

    /// Raw projection parameter of w onto the supporting line of edge i.
    pub(crate) fn foot_param(&self, w: Point, edge: usize) -> f64 {
        let (a, _) = self.edge(edge);
        let e = self.edge_vec(edge);
        (w - a).dot(e) / e.norm_sq()
    }

    /// Orthogonal projection of w onto edge i, if the projection parameter
    /// lies in [0, 1] within the snap tolerance. Pure projection arithmetic:
    /// w itself need not lie inside the polygon.
    pub fn perpendicular_foot(&self, w: Point, edge: usize) -> Option<BoundaryPoint> {
        let t = self.foot_param(w, edge);
        let eps = self.param_eps(edge);
        if t < -eps || t > 1.0 + eps {
            return None;
        }
        Some(self.boundary_point(edge, t))
    }

    /// True when two boundary points denote the same location within the
    /// absolute tolerance (wrap-aware).
    pub fn boundary_approx_eq(&self, a: BoundaryPoint, b: BoundaryPoint) -> bool {
        let d = self.ccw_distance(a, b);
        d <= self.tol().abs || self.perimeter() - d <= self.tol().abs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::pt;

    fn square() -> ConvexPolygon {
        ConvexPolygon::new(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)])
            .unwrap()
    }

    #[test]
    fn locate_midpoint_of_bottom_edge() {
        let p = square();
        let b = p.boundary_locate(pt(0.5, 0.0)).unwrap();
        assert_eq!(b.edge, 0);
        assert!((b.t - 0.5).abs() < 1e-12);
    }

    #[test]
    fn locate_interior_and_exterior_is_none() {
        let p = square();
        assert_eq!(p.boundary_locate(pt(0.5, 0.5)), None);
        assert_eq!(p.boundary_locate(pt(1.5, 0.5)), None);
    }

    #[test]
    fn locate_canonicalizes_vertices() {
        let p = square();
        let b = p.boundary_locate(pt(1.0, 0.0)).unwrap();
        assert_eq!(b, BoundaryPoint::vertex(1));
        let b = p.boundary_locate(pt(1.0 - 1e-12, 0.0)).unwrap();
        assert_eq!(b, BoundaryPoint::vertex(1));
    }

    #[test]
    fn eval_mid_edge() {
        let p = square();
        let q = p.boundary_eval(BoundaryPoint { edge: 1, t: 0.25 });
        assert!(q.dist(pt(1.0, 0.25)) < 1e-12);
    }

    #[test]
    fn ccw_distance_between_edge_midpoints() {
        let p = square();
        let a = BoundaryPoint { edge: 0, t: 0.5 };
        let b = BoundaryPoint { edge: 1, t: 0.5 };
        assert!((p.ccw_distance(a, b) - 1.0).abs() < 1e-12);
        assert!((p.ccw_distance(b, a) - 3.0).abs() < 1e-12);
        assert_eq!(p.ccw_distance(a, a), 0.0);
    }

    #[test]
    fn foot_inside_edge() {
        let p = square();
        let b = p.perpendicular_foot(pt(0.5, 0.5), 0).unwrap();
        assert_eq!(b.edge, 0);
        assert!((b.t - 0.5).abs() < 1e-12);
    }

    #[test]
    fn foot_at_far_vertex_is_canonical() {
        let p = square();
        // Projection of the origin onto the top edge lands at its end vertex.
        let b = p.perpendicular_foot(pt(0.0, 0.0), 2).unwrap();
        assert_eq!(b, BoundaryPoint::vertex(3));
    }

    #[test]
    fn foot_outside_parameter_range_is_none() {
        let p = square();
        // (2, 0.5) projects past the end of the bottom edge.
        assert_eq!(p.perpendicular_foot(pt(2.0, 0.5), 0), None);
        assert_eq!(p.perpendicular_foot(pt(2.0, 0.5), 2), None);
        // It does land mid-span on the far left edge.
        let f = p.perpendicular_foot(pt(2.0, 0.5), 3).unwrap();
        assert!((f.t - 0.5).abs() < 1e-12);
    }

    #[test]
    fn locate_then_eval_round_trip() {
        let p = square();
        for &q in &[pt(0.3, 0.0), pt(1.0, 0.7), pt(0.2, 1.0), pt(0.0, 0.0)] {
            let b = p.boundary_locate(q).unwrap();
            assert!(p.boundary_eval(b).dist(q) < 1e-9);
        }
    }
}
