//! Polygon generators for fixtures and randomized tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::point::{pt, Point};
use crate::polygon::ConvexPolygon;
use crate::tol::Tol;

/// Regular n-gon with the given edge length, bottom edge horizontal and
/// centered on the y axis, vertex 0 at the bottom left, counterclockwise.
pub fn regular_polygon(n: usize, edge_len: f64) -> ConvexPolygon {
    assert!(n >= 3);
    let r = edge_len / (2.0 * (std::f64::consts::PI / n as f64).sin());
    let base = -std::f64::consts::FRAC_PI_2 - std::f64::consts::PI / n as f64;
    let verts = (0..n)
        .map(|i| {
            let a = base + 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            pt(r * a.cos(), r * a.sin())
        })
        .collect();
    ConvexPolygon::new(verts).expect("regular polygon is valid")
}

/// Random convex polygon with n vertices inside the unit square, built from
/// a random vector star (Valtr's construction). Retries internally until the
/// result passes strict validation.
pub fn random_convex_polygon<R: Rng>(rng: &mut R, n: usize) -> ConvexPolygon {
    assert!(n >= 3);
    for _ in 0..256 {
        let verts = valtr(rng, n);
        if let Ok(p) = ConvexPolygon::new(verts) {
            return p;
        }
    }
    panic!("failed to generate a valid convex polygon with n = {n}");
}

fn valtr<R: Rng>(rng: &mut R, n: usize) -> Vec<Point> {
    let axis = |rng: &mut R| {
        let mut c: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        c.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let (lo, hi) = (c[0], c[n - 1]);
        let mut last_a = lo;
        let mut last_b = lo;
        let mut deltas = Vec::with_capacity(n);
        for &v in &c[1..n - 1] {
            if rng.gen::<bool>() {
                deltas.push(v - last_a);
                last_a = v;
            } else {
                deltas.push(last_b - v);
                last_b = v;
            }
        }
        deltas.push(hi - last_a);
        deltas.push(last_b - hi);
        deltas
    };
    let dx = axis(rng);
    let mut dy = axis(rng);
    dy.shuffle(rng);
    let mut vecs: Vec<Point> = dx.into_iter().zip(dy).map(|(x, y)| pt(x, y)).collect();
    vecs.sort_by(|a, b| a.y.atan2(a.x).partial_cmp(&b.y.atan2(b.x)).unwrap());
    let mut acc = pt(0.0, 0.0);
    let mut verts = Vec::with_capacity(n);
    let mut min = pt(f64::INFINITY, f64::INFINITY);
    for v in vecs {
        verts.push(acc);
        min = pt(min.x.min(acc.x), min.y.min(acc.y));
        acc = acc + v;
    }
    verts.iter().map(|v| *v - min).collect()
}

/// Random convex polygon with vertices on the unit circle at jittered,
/// strictly increasing angles. Safe for large n where coordinate noise would
/// defeat the square construction.
pub fn random_convex_polygon_on_circle<R: Rng>(rng: &mut R, n: usize) -> ConvexPolygon {
    assert!(n >= 3);
    let step = 2.0 * std::f64::consts::PI / n as f64;
    let verts = (0..n)
        .map(|i| {
            let a = step * (i as f64 + rng.gen_range(-0.35..0.35));
            pt(a.cos(), a.sin())
        })
        .collect();
    ConvexPolygon::new(verts).expect("jittered circle polygon is valid")
}

/// Uniform point strictly inside the polygon, by rejection from the
/// bounding box. `margin` keeps the sample at least that far from the
/// boundary in the containment test sense.
pub fn random_interior_point<R: Rng>(rng: &mut R, poly: &ConvexPolygon, margin: f64) -> Point {
    let (lo, hi) = poly.bbox();
    let shrunk = ConvexPolygon::with_tol(
        poly.vertices().to_vec(),
        Tol { abs: margin.max(poly.tol().abs), ang: poly.tol().ang },
    );
    for _ in 0..100_000 {
        let p = pt(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        let inside = match &shrunk {
            Ok(sp) => sp.strictly_contains(p),
            Err(_) => poly.strictly_contains(p),
        };
        if inside {
            return p;
        }
    }
    poly.centroid()
}
