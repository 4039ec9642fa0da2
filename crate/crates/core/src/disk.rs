//! Smallest enclosing disk of the vertex set, with support classification.
//!
//! The planner reads the support to decide where to place its two-activation
//! fallback, so ties are broken deterministically: among all valid supports
//! the lexicographically least index tuple is reported.

use crate::error::{Error, Result};
use crate::point::{orientation, Orientation, Point};
use crate::polygon::ConvexPolygon;

#[derive(Debug, Clone, PartialEq)]
pub enum DiskSupport {
    /// Two vertices at antipodes of the disk; the center is their midpoint.
    Diameter(usize, usize),
    /// Three vertices whose circumcircle is the disk, center strictly inside
    /// the support triangle. Indices are in increasing order.
    Triple(usize, usize, usize),
}

#[derive(Debug, Clone)]
pub struct EnclosingDisk {
    pub center: Point,
    pub radius: f64,
    pub support: DiskSupport,
}

#[derive(Clone, Copy)]
struct Circle {
    c: Point,
    r: f64,
}

impl Circle {
    fn two(a: Point, b: Point) -> Circle {
        let c = a.lerp(b, 0.5);
        Circle { c, r: c.dist(a).max(c.dist(b)) }
    }

    /// Circumcircle, or None when the triple is (near) collinear.
    fn three(a: Point, b: Point, c: Point) -> Option<Circle> {
        let (bx, by) = (b.x - a.x, b.y - a.y);
        let (cx, cy) = (c.x - a.x, c.y - a.y);
        let d = 2.0 * (bx * cy - by * cx);
        if d.abs() < 1e-14 * (bx.hypot(by) * cx.hypot(cy)).max(f64::MIN_POSITIVE) {
            return None;
        }
        let ux = (cy * (bx * bx + by * by) - by * (cx * cx + cy * cy)) / d;
        let uy = (bx * (cx * cx + cy * cy) - cx * (bx * bx + by * by)) / d;
        let center = Point { x: a.x + ux, y: a.y + uy };
        let r = center.dist(a).max(center.dist(b)).max(center.dist(c));
        Some(Circle { c: center, r })
    }

    fn contains(&self, p: Point) -> bool {
        // Relative slack keeps the incremental passes stable; the final
        // support classification uses the polygon tolerance instead.
        p.dist(self.c) <= self.r * (1.0 + 1e-12) + 1e-12
    }
}

/// Smallest disk containing every vertex. Deterministic: the incremental
/// passes visit vertices in index order, no shuffling.
pub fn smallest_enclosing_disk(poly: &ConvexPolygon) -> Result<EnclosingDisk> {
    let pts = poly.vertices();
    let n = pts.len();
    let mut d = Circle::two(pts[0], pts[1]);
    for i in 2..n {
        if !d.contains(pts[i]) {
            d = disk_with_one(pts, i);
        }
    }
    classify(poly, d)
}

/// Smallest disk over pts[..=i] with pts[i] on its boundary.
fn disk_with_one(pts: &[Point], i: usize) -> Circle {
    let mut d = Circle::two(pts[0], pts[i]);
    for j in 1..i {
        if !d.contains(pts[j]) {
            d = disk_with_two(pts, j, i);
        }
    }
    d
}

/// Smallest disk over pts[..=j] with pts[j] and pts[i] on its boundary.
fn disk_with_two(pts: &[Point], j: usize, i: usize) -> Circle {
    let mut d = Circle::two(pts[j], pts[i]);
    for k in 0..j {
        if !d.contains(pts[k]) {
            if let Some(c) = Circle::three(pts[k], pts[j], pts[i]) {
                d = c;
            }
        }
    }
    d
}

fn classify(poly: &ConvexPolygon, d: Circle) -> Result<EnclosingDisk> {
    let tol = *poly.tol();
    let pts = poly.vertices();
    let on: Vec<usize> = (0..pts.len())
        .filter(|&i| (pts[i].dist(d.c) - d.r).abs() <= tol.abs.max(1e-9 * d.r))
        .collect();
    if on.len() < 2 {
        return Err(Error::Internal(format!(
            "enclosing disk support degenerated to {} vertices",
            on.len()
        )));
    }
    // Diameter pairs first: a pair at distance 2r pins the disk by itself.
    for (a, &i) in on.iter().enumerate() {
        for &j in &on[a + 1..] {
            if pts[i].dist(pts[j]) >= 2.0 * d.r - 2.0 * tol.abs.max(1e-9 * d.r) {
                return Ok(EnclosingDisk {
                    center: d.c,
                    radius: d.r,
                    support: DiskSupport::Diameter(i, j),
                });
            }
        }
    }
    // Otherwise some triple must hold the center strictly inside.
    for (a, &i) in on.iter().enumerate() {
        for (b, &j) in on.iter().enumerate().skip(a + 1) {
            for &k in &on[b + 1..] {
                if strictly_inside_triangle(d.c, pts[i], pts[j], pts[k], poly)? {
                    return Ok(EnclosingDisk {
                        center: d.c,
                        radius: d.r,
                        support: DiskSupport::Triple(i, j, k),
                    });
                }
            }
        }
    }
    Err(Error::Internal(
        "enclosing disk has no diameter pair and no centered support triple".into(),
    ))
}

fn strictly_inside_triangle(
    p: Point,
    a: Point,
    b: Point,
    c: Point,
    poly: &ConvexPolygon,
) -> Result<bool> {
    let tol = poly.tol();
    Ok(orientation(a, b, p, tol)? == Orientation::Ccw
        && orientation(b, c, p, tol)? == Orientation::Ccw
        && orientation(c, a, p, tol)? == Orientation::Ccw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::pt;

    fn poly(v: &[(f64, f64)]) -> ConvexPolygon {
        ConvexPolygon::new(v.iter().map(|&(x, y)| pt(x, y)).collect()).unwrap()
    }

    #[test]
    fn square_reports_lowest_diameter_pair() {
        let p = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let d = smallest_enclosing_disk(&p).unwrap();
        assert!((d.center.x - 0.5).abs() < 1e-12);
        assert!((d.center.y - 0.5).abs() < 1e-12);
        assert!((d.radius - 0.5_f64.sqrt()).abs() < 1e-12);
        // All four corners are cocircular; (0, 2) beats (1, 3).
        assert_eq!(d.support, DiskSupport::Diameter(0, 2));
    }

    #[test]
    fn obtuse_triangle_uses_longest_side_as_diameter() {
        let p = poly(&[(0.0, 0.0), (4.0, 0.0), (0.5, 1.0)]);
        let d = smallest_enclosing_disk(&p).unwrap();
        assert_eq!(d.support, DiskSupport::Diameter(0, 1));
        assert!((d.radius - 2.0).abs() < 1e-12);
        assert!(d.center.dist(pt(2.0, 0.0)) < 1e-12);
    }

    #[test]
    fn acute_triangle_reports_triple() {
        let p = poly(&[(0.0, 0.0), (2.0, 0.0), (1.0, 3.0_f64.sqrt())]);
        let d = smallest_enclosing_disk(&p).unwrap();
        assert_eq!(d.support, DiskSupport::Triple(0, 1, 2));
        // Circumcenter of the equilateral triangle.
        assert!(d.center.dist(pt(1.0, 1.0 / 3.0_f64.sqrt())) < 1e-9);
    }

    #[test]
    fn all_vertices_within_radius() {
        use crate::generate::random_convex_polygon;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in [3usize, 5, 8, 13] {
            for _ in 0..25 {
                let p = random_convex_polygon(&mut rng, n);
                let d = smallest_enclosing_disk(&p).unwrap();
                for v in p.vertices() {
                    assert!(v.dist(d.center) <= d.radius + 1e-7);
                }
                match d.support {
                    DiskSupport::Diameter(i, j) => {
                        assert!(p.vertex(i).dist(p.vertex(j)) >= 2.0 * d.radius - 1e-6);
                    }
                    DiskSupport::Triple(i, j, k) => {
                        let c = Circle::three(p.vertex(i), p.vertex(j), p.vertex(k)).unwrap();
                        assert!(c.c.dist(d.center) < 1e-6);
                    }
                }
            }
        }
    }

    #[test]
    fn pentagon_disk_is_circumcircle() {
        let p = crate::generate::regular_polygon(5, 2.0);
        let d = smallest_enclosing_disk(&p).unwrap();
        let r = 1.0 / (std::f64::consts::PI / 5.0).sin();
        assert!((d.radius - r).abs() < 1e-9);
        assert!(d.center.dist(pt(0.0, 0.0)) < 1e-9);
        assert!(matches!(d.support, DiskSupport::Triple(_, _, _)));
    }
}
