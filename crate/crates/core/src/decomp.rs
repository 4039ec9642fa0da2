//! Decomposition of the polygon by slab chords, and the 1-gather kernel.
//!
//! The slab of edge e is the closed strip between the perpendiculars to e at
//! its two endpoints; inside the polygon each perpendicular shows up as a
//! chord from the endpoint vertex to the far boundary, and it exists exactly
//! when the interior angle at that vertex is strictly obtuse (a right angle
//! degenerates onto the adjacent edge, an acute one leaves immediately).
//!
//! Cutting the polygon along every chord yields convex cells on which slab
//! membership is constant. Membership is seeded on one cell and propagated
//! across shared chord segments: crossing the chord of edge e can only change
//! membership in the slab of e. Cells covered by exactly one slab make up the
//! kernel: an actuator anywhere in such a cell gathers the whole polygon in
//! one activation.

use std::collections::{HashMap, VecDeque};

use crate::boundary::BoundaryPoint;
use crate::error::{Error, Result};
use crate::flow::{edge_region, is_1_gatherable_from, slab_membership, EdgeRegion};
use crate::point::{pt, Point};
use crate::polygon::{AngleClass, ConvexPolygon};

/// Which end of the slab a chord bounds: the perpendicular at the edge's
/// start vertex or at its end vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlabEnd {
    Start,
    End,
}

/// One slab boundary chord: the perpendicular to `edge` raised at polygon
/// vertex `base`, running through the interior to `exit`.
#[derive(Debug, Clone)]
pub struct Chord {
    pub edge: usize,
    pub end: SlabEnd,
    pub base: usize,
    pub exit: BoundaryPoint,
}

impl Chord {
    /// Chord endpoints, base first.
    pub fn segment(&self, poly: &ConvexPolygon) -> (Point, Point) {
        (poly.vertex(self.base), poly.boundary_eval(self.exit))
    }
}

/// Convex cell of the chord arrangement.
#[derive(Debug, Clone)]
pub struct Cell {
    pub verts: Vec<Point>,
    /// Strictly interior representative (the centroid).
    pub sample: Point,
    /// Ascending indices of the edges whose slab covers this cell.
    pub slabs: Vec<usize>,
}

impl Cell {
    pub fn area(&self) -> f64 {
        ring_area(&self.verts)
    }
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub chords: Vec<Chord>,
    pub cells: Vec<Cell>,
    /// Indices into `cells` of the kernel cells.
    pub kernel: Vec<usize>,
}

impl Decomposition {
    pub fn kernel_area(&self) -> f64 {
        self.kernel.iter().map(|&i| self.cells[i].area()).sum()
    }

    pub fn kernel_cells(&self) -> impl Iterator<Item = &Cell> {
        self.kernel.iter().map(|&i| &self.cells[i])
    }
}

/// All slab chords, deterministically ordered by edge then Start before End.
pub fn slab_chords(poly: &ConvexPolygon) -> Result<Vec<Chord>> {
    let n = poly.n();
    let mut out = Vec::new();
    for e in 0..n {
        for (end, base) in [(SlabEnd::Start, e), (SlabEnd::End, (e + 1) % n)] {
            if poly.angle_class(base) != AngleClass::NonAcute {
                continue;
            }
            // Perpendicular into the interior; for a counterclockwise polygon
            // that is the edge direction rotated a quarter turn left.
            let dir = poly.edge_dir(e).perp_ccw();
            let exit = ray_exit(poly, poly.vertex(base), dir)?;
            out.push(Chord { edge: e, end, base, exit });
        }
    }
    Ok(out)
}

/// First boundary hit of the ray from a boundary point, excluding the start.
fn ray_exit(poly: &ConvexPolygon, from: Point, dir: Point) -> Result<BoundaryPoint> {
    let tau = poly.tol().abs;
    let mut best: Option<(f64, usize, f64)> = None;
    for e in 0..poly.n() {
        let (a, b) = poly.edge(e);
        let ev = b - a;
        let denom = dir.cross(ev);
        if denom.abs() <= 1e-15 * ev.norm().max(1.0) {
            continue; // ray parallel to this edge
        }
        let ap = a - from;
        let s = ap.cross(ev) / denom;
        let u = ap.cross(dir) / denom;
        let eps = poly.param_eps(e);
        if s > tau && (-eps..=1.0 + eps).contains(&u) {
            if best.map_or(true, |(bs, _, _)| s < bs) {
                best = Some((s, e, u));
            }
        }
    }
    match best {
        Some((_, e, u)) => Ok(poly.boundary_point(e, u)),
        None => Err(Error::Internal(
            "interior ray failed to reach the boundary".into(),
        )),
    }
}

fn ring_area(ring: &[Point]) -> f64 {
    let n = ring.len();
    let mut acc = 0.0;
    for i in 0..n {
        acc += ring[i].cross(ring[(i + 1) % n]);
    }
    0.5 * acc
}

fn ring_centroid(ring: &[Point]) -> Point {
    let n = ring.len();
    let mut acc = pt(0.0, 0.0);
    let mut area = 0.0;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        let w = a.cross(b);
        acc = acc + (a + b) * w;
        area += w;
    }
    acc * (1.0 / (3.0 * area))
}

/// Split a convex ring by the oriented line through `base` along `dir` into
/// its left and right parts. Vertices within `band` of the line go to both
/// sides; either part may come back empty.
fn split_ring(
    ring: &[Point],
    base: Point,
    dir: Point,
    band: f64,
) -> (Vec<Point>, Vec<Point>) {
    let side: Vec<f64> = ring.iter().map(|&p| dir.cross(p - base)).collect();
    if side.iter().all(|&s| s >= -band) {
        return (ring.to_vec(), Vec::new());
    }
    if side.iter().all(|&s| s <= band) {
        return (Vec::new(), ring.to_vec());
    }
    let n = ring.len();
    let mut left = Vec::with_capacity(n + 2);
    let mut right = Vec::with_capacity(n + 2);
    for i in 0..n {
        let (p, sp) = (ring[i], side[i]);
        let (q, sq) = (ring[(i + 1) % n], side[(i + 1) % n]);
        if sp >= -band {
            left.push(p);
        }
        if sp <= band {
            right.push(p);
        }
        let crosses = (sp > band && sq < -band) || (sp < -band && sq > band);
        if crosses {
            let x = p.lerp(q, sp / (sp - sq));
            left.push(x);
            right.push(x);
        }
    }
    (left, right)
}

/// Drop repeated ring vertices and reject slivers below the area floor.
fn clean_ring(ring: Vec<Point>, eps: f64) -> Option<Vec<Point>> {
    let mut out: Vec<Point> = Vec::with_capacity(ring.len());
    for p in ring {
        if out.last().map_or(true, |&l| l.dist(p) > eps) {
            out.push(p);
        }
    }
    while out.len() >= 2 && out[0].dist(*out.last().unwrap()) <= eps {
        out.pop();
    }
    if out.len() < 3 || ring_area(&out) <= 1e-12 {
        None
    } else {
        Some(out)
    }
}

/// Cut the polygon along every chord and annotate each resulting cell with
/// the slabs covering it.
pub fn decompose(poly: &ConvexPolygon) -> Result<Decomposition> {
    let chords = slab_chords(poly)?;
    let tau = poly.tol().abs;

    let mut rings: Vec<Vec<Point>> = vec![poly.vertices().to_vec()];
    for ch in &chords {
        let base = poly.vertex(ch.base);
        let dir = poly.edge_dir(ch.edge).perp_ccw();
        let mut next = Vec::with_capacity(rings.len() + 4);
        for ring in rings {
            let (l, r) = split_ring(&ring, base, dir, tau);
            match (clean_ring(l, tau), clean_ring(r, tau)) {
                (Some(a), Some(b)) => {
                    next.push(a);
                    next.push(b);
                }
                (Some(a), None) | (None, Some(a)) => next.push(a),
                (None, None) => {}
            }
        }
        rings = next;
    }

    let samples: Vec<Point> = rings.iter().map(|r| ring_centroid(r)).collect();

    // Adjacency: cells sharing a run of a chord line, grouped per cell pair
    // so coincident chords update all their edges at once.
    let mut pair_edges: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for ch in &chords {
        let base = poly.vertex(ch.base);
        let dir = poly.edge_dir(ch.edge).perp_ccw();
        // (interval lo, hi, cell, cell is on the left)
        let mut spans: Vec<(f64, f64, usize, bool)> = Vec::new();
        for (ci, ring) in rings.iter().enumerate() {
            let n = ring.len();
            for i in 0..n {
                let p = ring[i];
                let q = ring[(i + 1) % n];
                if dir.cross(p - base).abs() <= 10.0 * tau
                    && dir.cross(q - base).abs() <= 10.0 * tau
                {
                    let sp = dir.dot(p - base);
                    let sq = dir.dot(q - base);
                    let on_left = dir.cross(samples[ci] - base) > 0.0;
                    spans.push((sp.min(sq), sp.max(sq), ci, on_left));
                }
            }
        }
        for (ai, a) in spans.iter().enumerate() {
            for b in spans.iter().skip(ai + 1) {
                if a.3 != b.3 && a.1.min(b.1) - a.0.max(b.0) > tau {
                    let key = (a.2.min(b.2), a.2.max(b.2));
                    let entry = pair_edges.entry(key).or_default();
                    if !entry.contains(&ch.edge) {
                        entry.push(ch.edge);
                    }
                }
            }
        }
    }
    let mut adj: Vec<Vec<(usize, Vec<usize>)>> = vec![Vec::new(); rings.len()];
    for (&(a, b), edges) in &pair_edges {
        adj[a].push((b, edges.clone()));
        adj[b].push((a, edges.clone()));
    }
    for list in &mut adj {
        list.sort_by_key(|(c, _)| *c);
    }

    // Seed one cell directly, then propagate: only the crossed chords' edges
    // need their membership re-decided.
    let mut slabs: Vec<Option<Vec<usize>>> = vec![None; rings.len()];
    if !rings.is_empty() {
        slabs[0] = Some(slab_membership(poly, samples[0])?);
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            let here = slabs[c].clone().unwrap();
            for (nb, edges) in &adj[c] {
                if slabs[*nb].is_some() {
                    continue;
                }
                let mut m = here.clone();
                for &e in edges {
                    let inside = edge_region(poly, e, samples[*nb])? == EdgeRegion::Slab;
                    match (m.binary_search(&e), inside) {
                        (Ok(pos), false) => {
                            m.remove(pos);
                        }
                        (Err(pos), true) => m.insert(pos, e),
                        _ => {}
                    }
                }
                slabs[*nb] = Some(m);
                queue.push_back(*nb);
            }
        }
    }

    let mut cells = Vec::with_capacity(rings.len());
    for (i, ring) in rings.into_iter().enumerate() {
        let membership = match slabs[i].take() {
            Some(m) => m,
            // Isolated cell (point contact only): fall back to direct
            // evaluation rather than failing the whole decomposition.
            None => slab_membership(poly, samples[i])?,
        };
        cells.push(Cell { verts: ring, sample: samples[i], slabs: membership });
    }

    let mut kernel = Vec::new();
    for (i, cell) in cells.iter().enumerate() {
        if cell.slabs.len() == 1 && is_1_gatherable_from(poly, cell.sample)?.is_some() {
            kernel.push(i);
        }
    }

    Ok(Decomposition { chords, cells, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[(f64, f64)]) -> ConvexPolygon {
        ConvexPolygon::new(v.iter().map(|&(x, y)| pt(x, y)).collect()).unwrap()
    }

    /// Tall pentagon whose bottom edge sees every other slab from outside:
    /// a thin sliver above the bottom edge lies in exactly one slab.
    fn peaked_pentagon() -> ConvexPolygon {
        poly(&[(0.0, 0.0), (1.0, 0.0), (1.3, 3.5), (0.5, 4.2), (-0.3, 3.5)])
    }

    #[test]
    fn right_angles_and_acute_angles_drop_chords() {
        let square = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        assert!(slab_chords(&square).unwrap().is_empty());
        let tri = poly(&[(0.0, 0.0), (2.0, 0.0), (1.0, 3.0_f64.sqrt())]);
        assert!(slab_chords(&tri).unwrap().is_empty());
    }

    #[test]
    fn obtuse_polygon_gets_two_chords_per_edge() {
        let p = crate::generate::regular_polygon(5, 2.0);
        let chords = slab_chords(&p).unwrap();
        assert_eq!(chords.len(), 10);
        // First chord: perpendicular to the bottom edge at vertex 0, which
        // leaves through the upper left edge.
        assert_eq!(chords[0].edge, 0);
        assert_eq!(chords[0].base, 0);
        assert_eq!(chords[0].exit.edge, 3);
    }

    #[test]
    fn square_decomposes_to_one_cell_with_empty_kernel() {
        let p = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let d = decompose(&p).unwrap();
        assert_eq!(d.cells.len(), 1);
        assert_eq!(d.cells[0].slabs, vec![0, 1, 2, 3]);
        assert!(d.kernel.is_empty());
    }

    #[test]
    fn cells_partition_the_polygon() {
        for p in [
            peaked_pentagon(),
            crate::generate::regular_polygon(5, 2.0),
            poly(&[(1.0, 0.0), (3.0, 0.0), (4.0, 2.0), (2.0, 3.5), (0.0, 2.0)]),
        ] {
            let d = decompose(&p).unwrap();
            let total: f64 = d.cells.iter().map(|c| c.area()).sum();
            assert!(
                (total - p.area()).abs() < 1e-6 * p.area(),
                "cell areas {total} vs polygon {}",
                p.area()
            );
            for c in &d.cells {
                assert!(p.strictly_contains(c.sample));
                assert!(c.area() > 0.0);
            }
        }
    }

    #[test]
    fn propagated_membership_matches_direct_evaluation() {
        use crate::generate::random_convex_polygon;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let mut fixtures = vec![
            peaked_pentagon(),
            crate::generate::regular_polygon(5, 2.0),
            crate::generate::regular_polygon(7, 1.0),
        ];
        for _ in 0..4 {
            fixtures.push(random_convex_polygon(&mut rng, 6));
        }
        for p in &fixtures {
            let d = decompose(p).unwrap();
            for c in &d.cells {
                assert_eq!(
                    c.slabs,
                    slab_membership(p, c.sample).unwrap(),
                    "cell at {:?}",
                    c.sample
                );
            }
        }
    }

    #[test]
    fn kernel_matches_gatherability_of_samples() {
        for p in [
            peaked_pentagon(),
            crate::generate::regular_polygon(5, 2.0),
            poly(&[(1.0, 0.0), (3.0, 0.0), (4.0, 2.0), (2.0, 3.5), (0.0, 2.0)]),
        ] {
            let d = decompose(&p).unwrap();
            for (i, c) in d.cells.iter().enumerate() {
                let gatherable = is_1_gatherable_from(&p, c.sample).unwrap().is_some();
                assert_eq!(d.kernel.contains(&i), gatherable);
            }
        }
    }

    #[test]
    fn peaked_pentagon_kernel_is_one_sliver_per_edge() {
        let p = peaked_pentagon();
        let d = decompose(&p).unwrap();
        // All five angles are obtuse, so each edge keeps a thin strip near
        // its own midline that no other slab reaches.
        assert_eq!(d.kernel.len(), 5);
        let mut owners: Vec<usize> = Vec::new();
        for &i in &d.kernel {
            let cell = &d.cells[i];
            assert_eq!(cell.slabs.len(), 1, "kernel cell {i} slabs {:?}", cell.slabs);
            owners.push(cell.slabs[0]);
            assert!(is_1_gatherable_from(&p, cell.sample).unwrap().is_some());
        }
        owners.sort_unstable();
        assert_eq!(owners, vec![0, 1, 2, 3, 4]);
        // The bottom edge sliver is the triangle under the two
        // near-horizontal chords y = (0.3/3.5) x and y = (0.3/3.5)(1 - x).
        let bottom = d.kernel.iter().map(|&i| &d.cells[i]).find(|c| c.slabs == [0]).unwrap();
        let expect = 0.5 * (0.3 / 3.5) * 0.5;
        assert!((bottom.area() - expect).abs() < 1e-9);
    }

    #[test]
    fn regular_pentagon_kernel_is_empty() {
        let d = decompose(&crate::generate::regular_polygon(5, 2.0)).unwrap();
        assert!(d.kernel.is_empty());
        // Slabs overlap so much that every cell lies in at least two.
        for c in &d.cells {
            assert!(c.slabs.len() >= 2, "cell {:?} slabs {:?}", c.sample, c.slabs);
        }
    }
}
