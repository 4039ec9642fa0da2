//! Convex polygons in counterclockwise order.
//!
//! Construction validates the full contract: at least three finite,
//! pairwise distinct vertices, strictly convex, counterclockwise. Every
//! downstream operation relies on those invariants and on the tolerance
//! captured at construction time.

use crate::error::{Error, Result};
use crate::point::{orient, pt, Orientation, Point};
use crate::tol::Tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleClass {
    Acute,
    Right,
    NonAcute,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    verts: Vec<Point>,
    tol: Tol,
    /// cum[i] is the boundary length from vertex 0 to vertex i; cum[n] is the
    /// full perimeter.
    cum: Vec<f64>,
}

impl ConvexPolygon {
    pub fn new(verts: Vec<Point>) -> Result<Self> {
        Self::with_tol(verts, Tol::default())
    }

    pub fn with_tol(verts: Vec<Point>, tol: Tol) -> Result<Self> {
        validate(&verts, &tol)?;
        let mut cum = Vec::with_capacity(verts.len() + 1);
        let mut acc = 0.0;
        cum.push(0.0);
        for i in 0..verts.len() {
            acc += verts[i].dist(verts[(i + 1) % verts.len()]);
            cum.push(acc);
        }
        Ok(ConvexPolygon { verts, tol, cum })
    }

    pub fn n(&self) -> usize {
        self.verts.len()
    }

    pub fn tol(&self) -> &Tol {
        &self.tol
    }

    pub fn vertices(&self) -> &[Point] {
        &self.verts
    }

    /// Vertex by index, wrapping modulo n.
    pub fn vertex(&self, i: usize) -> Point {
        self.verts[i % self.verts.len()]
    }

    /// Edge i runs from vertex i to vertex i+1; wraps modulo n.
    pub fn edge(&self, i: usize) -> (Point, Point) {
        (self.vertex(i), self.vertex(i + 1))
    }

    pub fn edge_vec(&self, i: usize) -> Point {
        let (a, b) = self.edge(i);
        b - a
    }

    pub fn edge_len(&self, i: usize) -> f64 {
        let n = self.verts.len();
        let i = i % n;
        self.cum[i + 1] - self.cum[i]
    }

    /// Unit direction of edge i (counterclockwise sense).
    pub fn edge_dir(&self, i: usize) -> Point {
        self.edge_vec(i).normalized()
    }

    pub fn perimeter(&self) -> f64 {
        *self.cum.last().unwrap()
    }

    pub(crate) fn cum_slice(&self) -> &[f64] {
        &self.cum
    }

    pub(crate) fn cum_len(&self, i: usize) -> f64 {
        self.cum[i]
    }

    pub fn check_edge(&self, i: usize) -> Result<()> {
        if i >= self.verts.len() {
            return Err(Error::EdgeOutOfRange(i, self.verts.len()));
        }
        Ok(())
    }

    /// Interior angle at vertex i, in (0, pi) for a valid polygon.
    pub fn interior_angle(&self, i: usize) -> f64 {
        let v = self.vertex(i);
        let to_next = self.vertex(i + 1) - v;
        let to_prev = self.vertex(i + self.verts.len() - 1) - v;
        let ang = to_next.cross(to_prev).atan2(to_next.dot(to_prev));
        if ang < 0.0 {
            ang + 2.0 * std::f64::consts::PI
        } else {
            ang
        }
    }

    pub fn angle_class(&self, i: usize) -> AngleClass {
        let half = std::f64::consts::FRAC_PI_2;
        let ang = self.interior_angle(i);
        if (ang - half).abs() <= self.tol.ang {
            AngleClass::Right
        } else if ang < half {
            AngleClass::Acute
        } else {
            AngleClass::NonAcute
        }
    }

    /// Closed containment: boundary points count as inside, with the
    /// collinearity band of the orientation predicate as slack.
    pub fn contains(&self, p: Point) -> bool {
        if !p.is_finite() {
            return false;
        }
        let n = self.verts.len();
        (0..n).all(|i| {
            let (a, b) = self.edge(i);
            orient(a, b, p, &self.tol) != Orientation::Cw
        })
    }

    /// Strict containment: within the boundary tolerance band counts as out.
    pub fn strictly_contains(&self, p: Point) -> bool {
        if !p.is_finite() {
            return false;
        }
        let n = self.verts.len();
        (0..n).all(|i| {
            let (a, b) = self.edge(i);
            orient(a, b, p, &self.tol) == Orientation::Ccw
        })
    }

    pub fn area(&self) -> f64 {
        let n = self.verts.len();
        let mut acc = 0.0;
        for i in 0..n {
            acc += self.verts[i].cross(self.verts[(i + 1) % n]);
        }
        acc / 2.0
    }

    pub fn centroid(&self) -> Point {
        let n = self.verts.len();
        let mut acc = pt(0.0, 0.0);
        let mut area = 0.0;
        for i in 0..n {
            let a = self.verts[i];
            let b = self.verts[(i + 1) % n];
            let w = a.cross(b);
            acc = acc + (a + b) * w;
            area += w;
        }
        acc * (1.0 / (3.0 * area))
    }

    pub fn bbox(&self) -> (Point, Point) {
        let mut lo = self.verts[0];
        let mut hi = self.verts[0];
        for v in &self.verts {
            lo = pt(lo.x.min(v.x), lo.y.min(v.y));
            hi = pt(hi.x.max(v.x), hi.y.max(v.y));
        }
        (lo, hi)
    }

    /// Index of the lowest vertex, ties broken by lowest x.
    pub fn lowest_vertex(&self) -> usize {
        let mut best = 0;
        for i in 1..self.verts.len() {
            let v = self.verts[i];
            let b = self.verts[best];
            if v.y < b.y || (v.y == b.y && v.x < b.x) {
                best = i;
            }
        }
        best
    }
}

fn validate(verts: &[Point], tol: &Tol) -> Result<()> {
    if verts.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    if verts.len() < 3 {
        return Err(Error::TooFewVertices(verts.len()));
    }
    let n = verts.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if verts[i].dist(verts[j]) <= tol.abs {
                return Err(Error::DuplicateVertex(i, j));
            }
        }
    }
    let mut cw = 0;
    let mut first_cw = 0;
    for i in 0..n {
        let o = orient(verts[i], verts[(i + 1) % n], verts[(i + 2) % n], tol);
        match o {
            Orientation::Collinear => return Err(Error::CollinearVertex((i + 1) % n)),
            Orientation::Cw => {
                if cw == 0 {
                    first_cw = (i + 1) % n;
                }
                cw += 1;
            }
            Orientation::Ccw => {}
        }
    }
    if cw == n {
        return Err(Error::NotCcw);
    }
    if cw > 0 {
        return Err(Error::NotConvex(first_cw));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    pub fn square() -> ConvexPolygon {
        ConvexPolygon::new(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)])
            .unwrap()
    }

    #[test]
    fn accepts_ccw_square() {
        let p = square();
        assert_eq!(p.n(), 4);
        assert!((p.perimeter() - 4.0).abs() < 1e-12);
        assert!((p.area() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_clockwise_order() {
        let r = ConvexPolygon::new(vec![pt(0.0, 0.0), pt(0.0, 1.0), pt(1.0, 1.0), pt(1.0, 0.0)]);
        assert_eq!(r.unwrap_err(), Error::NotCcw);
    }

    #[test]
    fn rejects_collinear_vertex() {
        let r = ConvexPolygon::new(vec![
            pt(0.0, 0.0),
            pt(0.5, 0.0),
            pt(1.0, 0.0),
            pt(1.0, 1.0),
            pt(0.0, 1.0),
        ]);
        assert!(matches!(r.unwrap_err(), Error::CollinearVertex(_)));
    }

    #[test]
    fn rejects_duplicate_and_nonconvex() {
        let r = ConvexPolygon::new(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 0.0), pt(0.0, 1.0)]);
        assert!(matches!(r.unwrap_err(), Error::DuplicateVertex(1, 2)));
        let r = ConvexPolygon::new(vec![
            pt(0.0, 0.0),
            pt(2.0, 0.0),
            pt(2.0, 2.0),
            pt(1.0, 0.5),
            pt(0.0, 2.0),
        ]);
        assert!(matches!(r.unwrap_err(), Error::NotConvex(_)));
    }

    #[test]
    fn rejects_non_finite_and_too_few() {
        let r = ConvexPolygon::new(vec![pt(0.0, 0.0), pt(1.0, f64::NAN), pt(0.0, 1.0)]);
        assert_eq!(r.unwrap_err(), Error::NonFinite);
        let r = ConvexPolygon::new(vec![pt(0.0, 0.0), pt(1.0, 0.0)]);
        assert_eq!(r.unwrap_err(), Error::TooFewVertices(2));
    }

    #[test]
    fn square_angles_are_right() {
        let p = square();
        for i in 0..4 {
            assert!((p.interior_angle(i) - PI / 2.0).abs() < 1e-12);
            assert_eq!(p.angle_class(i), AngleClass::Right);
        }
    }

    #[test]
    fn triangle_angle_classes() {
        let tri = ConvexPolygon::new(vec![
            pt(0.0, 0.0),
            pt(1.0, 0.0),
            pt(0.5, 3f64.sqrt() / 2.0),
        ])
        .unwrap();
        for i in 0..3 {
            assert!((tri.interior_angle(i) - PI / 3.0).abs() < 1e-12);
            assert_eq!(tri.angle_class(i), AngleClass::Acute);
        }
        let obtuse = ConvexPolygon::new(vec![pt(0.0, 0.0), pt(4.0, 0.0), pt(0.5, 1.0)]).unwrap();
        assert_eq!(obtuse.angle_class(2), AngleClass::NonAcute);
        let angs: f64 = (0..3).map(|i| obtuse.interior_angle(i)).sum();
        assert!((angs - PI).abs() < 1e-12);
    }

    #[test]
    fn containment_closed_vs_strict() {
        let p = square();
        assert!(p.contains(pt(0.5, 0.5)));
        assert!(p.strictly_contains(pt(0.5, 0.5)));
        assert!(p.contains(pt(0.0, 0.5)));
        assert!(!p.strictly_contains(pt(0.0, 0.5)));
        assert!(!p.contains(pt(-0.1, 0.5)));
        assert!(!p.contains(pt(1.2, 0.5)));
    }

    #[test]
    fn lowest_vertex_breaks_ties_by_x() {
        let p = square();
        assert_eq!(p.lowest_vertex(), 0);
        let p = ConvexPolygon::new(vec![pt(2.0, 0.0), pt(3.0, 2.0), pt(0.0, 2.0), pt(1.0, 0.0)])
            .unwrap();
        assert_eq!(p.lowest_vertex(), 3); // (1,0) before (2,0)
    }

    #[test]
    fn centroid_of_square_is_center() {
        let c = square().centroid();
        assert!(c.dist(pt(0.5, 0.5)) < 1e-12);
    }
}
