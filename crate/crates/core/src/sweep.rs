//! Boundary accumulation maps built by a single rotating sweep.
//!
//! Fix a walk direction. For a boundary point x, imagine the actuator sitting
//! exactly on x and a particle nudged off x in that direction: it walks from
//! vertex to vertex and comes to rest at the first vertex v where continuing
//! would move it back toward x, i.e. where dot(u_v, x - v) > 0 for the
//! departure direction u_v. That resting vertex is the accumulation value of
//! x for the chosen direction.
//!
//! As x slides around the boundary its resting vertex only ever advances in
//! the same rotational sense, so the whole map is computed caliper style: one
//! pass of x over every edge while the candidate vertex chases it. The result
//! is a partition of the boundary into arcs of constant value with O(n)
//! breakpoints.
//!
//! A point whose counterclockwise and clockwise values agree gathers the
//! whole polygon in one activation; `find_1_gather_point` overlays the two
//! maps to look for one.

use crate::boundary::BoundaryPoint;
use crate::error::{Error, Result};
use crate::flow::is_1_gatherable_from;
use crate::point::Point;
use crate::polygon::ConvexPolygon;

/// Direction of travel along the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkDir {
    Ccw,
    Cw,
}

impl WalkDir {
    pub fn opposite(self) -> WalkDir {
        match self {
            WalkDir::Ccw => WalkDir::Cw,
            WalkDir::Cw => WalkDir::Ccw,
        }
    }
}

impl std::fmt::Display for WalkDir {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WalkDir::Ccw => write!(f, "ccw"),
            WalkDir::Cw => write!(f, "cw"),
        }
    }
}

/// Half-open span [start_s, end_s) of walk-direction arc length on which the
/// accumulation vertex is constant. Distances are measured from the sweep
/// origin along the walk direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapArc {
    pub start_s: f64,
    pub end_s: f64,
    pub vertex: usize,
}

/// Work counters for one sweep; the event total stays linear in n.
#[derive(Debug, Clone, Copy, Default)]
pub struct SweepStats {
    pub vertex_events: usize,
    pub crossing_events: usize,
    pub advance_events: usize,
}

impl SweepStats {
    pub fn total(&self) -> usize {
        self.vertex_events + self.crossing_events + self.advance_events
    }
}

/// Accumulation vertex for every boundary point, one walk direction.
///
/// Queries must use the polygon the map was built from.
#[derive(Debug, Clone)]
pub struct AccumulationMap {
    dir: WalkDir,
    origin: usize,
    perimeter: f64,
    tol_abs: f64,
    arcs: Vec<MapArc>,
    pub stats: SweepStats,
}

/// Boundary point from which one activation gathers everything, and where
/// the particles end up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GatherWitness {
    pub location: BoundaryPoint,
    pub gather_vertex: usize,
}

/// Index arithmetic for walking the polygon in either direction. Walk
/// indices count vertices from the origin and may exceed n; they reduce
/// mod n onto polygon vertices.
struct WalkView<'a> {
    poly: &'a ConvexPolygon,
    dir: WalkDir,
    origin: usize,
}

impl<'a> WalkView<'a> {
    fn new(poly: &'a ConvexPolygon, dir: WalkDir, origin: usize) -> Self {
        WalkView { poly, dir, origin }
    }

    fn vid(&self, j: usize) -> usize {
        let n = self.poly.n() as i64;
        let signed = match self.dir {
            WalkDir::Ccw => self.origin as i64 + j as i64,
            WalkDir::Cw => self.origin as i64 - j as i64,
        };
        signed.rem_euclid(n) as usize
    }

    fn vertex(&self, j: usize) -> Point {
        self.poly.vertex(self.vid(j))
    }

    /// Unit direction in which the walk leaves the given polygon vertex.
    fn out_dir(&self, vid: usize) -> Point {
        match self.dir {
            WalkDir::Ccw => self.poly.edge_dir(vid),
            WalkDir::Cw => -self.poly.edge_dir((vid + self.poly.n() - 1) % self.poly.n()),
        }
    }

    /// Polygon edge traversed between walk vertices j and j + 1.
    fn walk_edge(&self, j: usize) -> usize {
        match self.dir {
            WalkDir::Ccw => self.vid(j),
            WalkDir::Cw => (self.vid(j) + self.poly.n() - 1) % self.poly.n(),
        }
    }

    /// Walk arc length from the origin vertex to b, in [0, perimeter).
    fn s_of(&self, b: BoundaryPoint) -> f64 {
        let p = self.poly.perimeter_pos(b);
        let p0 = self.poly.perimeter_pos(BoundaryPoint::vertex(self.origin));
        let per = self.poly.perimeter();
        match self.dir {
            WalkDir::Ccw => (p - p0).rem_euclid(per),
            WalkDir::Cw => (p0 - p).rem_euclid(per),
        }
    }

    /// Counterclockwise-from-vertex-0 position of a walk arc length.
    fn canonical_pos(&self, s: f64) -> f64 {
        let p0 = self.poly.perimeter_pos(BoundaryPoint::vertex(self.origin));
        let per = self.poly.perimeter();
        match self.dir {
            WalkDir::Ccw => (p0 + s).rem_euclid(per),
            WalkDir::Cw => (p0 - s).rem_euclid(per),
        }
    }

    /// Positive rate at which the walk past vid moves back toward x.
    fn h(&self, x: Point, vid: usize) -> f64 {
        self.out_dir(vid).dot(x - self.poly.vertex(vid))
    }
}

fn close_arc(arcs: &mut Vec<MapArc>, arc_start: &mut f64, end_s: f64, vertex: usize) {
    if end_s - *arc_start > 1e-12 {
        arcs.push(MapArc { start_s: *arc_start, end_s, vertex });
    }
    *arc_start = end_s;
}

/// Build the accumulation map for one walk direction in a single sweep.
pub fn accumulation_map(poly: &ConvexPolygon, dir: WalkDir) -> Result<AccumulationMap> {
    let n = poly.n();
    let origin = poly.lowest_vertex();
    let view = WalkView::new(poly, dir, origin);
    let tau = poly.tol().abs;
    let mut stats = SweepStats::default();

    // Resting vertex for a particle nudged off the origin itself.
    let x0 = view.vertex(0);
    let mut cur = 1usize;
    while cur < n && view.h(x0, view.vid(cur)) <= tau {
        cur += 1;
        stats.advance_events += 1;
    }
    if cur == n {
        return Err(Error::Internal(
            "sweep found no resting vertex from its origin".into(),
        ));
    }

    let mut arcs: Vec<MapArc> = Vec::new();
    let mut arc_start = 0.0f64;
    let mut s_base = 0.0f64;

    for je in 0..n {
        let e_len = poly.edge_len(view.walk_edge(je));
        let a_pt = view.vertex(je);
        let e_dir = (view.vertex(je + 1) - a_pt) * (1.0 / e_len);

        if je >= 1 {
            // x arrives at walk vertex je; resolve any value change here
            // before sweeping the outgoing edge.
            stats.vertex_events += 1;
            while view.h(a_pt, view.vid(cur)) <= tau {
                close_arc(&mut arcs, &mut arc_start, s_base, view.vid(cur));
                cur += 1;
                stats.advance_events += 1;
                if cur >= je + 2 * n {
                    return Err(Error::Internal("sweep stopper failed to settle".into()));
                }
            }
        }

        // Crossings strictly inside the edge. Invariant on entry and after
        // each advance: h at the current x position exceeds tau.
        loop {
            let vid = view.vid(cur);
            let h0 = view.h(a_pt, vid);
            let slope = view.out_dir(vid).dot(e_dir);
            let h_end = h0 + slope * e_len;
            if h_end > tau {
                break; // stopper survives to the far vertex
            }
            // h is linear and drops through zero on this edge; the value
            // changes at the zero of h (the tau band only pads arithmetic).
            let t_cross = (-h0 / slope).clamp(0.0, e_len);
            let x_star = a_pt + e_dir * t_cross;
            close_arc(&mut arcs, &mut arc_start, s_base + t_cross, vid);
            stats.crossing_events += 1;
            cur += 1;
            stats.advance_events += 1;
            while view.h(x_star, view.vid(cur)) <= tau {
                cur += 1;
                stats.advance_events += 1;
                if cur >= je + 2 * n {
                    return Err(Error::Internal("sweep stopper failed to settle".into()));
                }
            }
            if t_cross >= e_len - tau {
                break; // landed on the far vertex; its event runs next
            }
        }
        s_base += e_len;
    }
    close_arc(&mut arcs, &mut arc_start, s_base, view.vid(cur));

    // Adjacent spans can share a value when a breakpoint collapsed onto a
    // vertex; fold them.
    let mut folded: Vec<MapArc> = Vec::with_capacity(arcs.len());
    for a in arcs {
        match folded.last_mut() {
            Some(last) if last.vertex == a.vertex => last.end_s = a.end_s,
            _ => folded.push(a),
        }
    }

    Ok(AccumulationMap {
        dir,
        origin,
        perimeter: poly.perimeter(),
        tol_abs: tau,
        arcs: folded,
        stats,
    })
}

impl AccumulationMap {
    pub fn dir(&self) -> WalkDir {
        self.dir
    }

    pub fn origin(&self) -> usize {
        self.origin
    }

    pub fn arcs(&self) -> &[MapArc] {
        &self.arcs
    }

    /// Accumulation vertex at b. On a breakpoint the arc that begins there
    /// (in walk order) wins, matching where a particle nudged in the walk
    /// direction actually rests.
    pub fn value_at(&self, poly: &ConvexPolygon, b: BoundaryPoint) -> usize {
        let view = WalkView::new(poly, self.dir, self.origin);
        let mut s = view.s_of(b);
        if s >= self.perimeter - self.tol_abs {
            s = 0.0;
        }
        let mut idx = match self
            .arcs
            .binary_search_by(|a| a.start_s.partial_cmp(&s).unwrap())
        {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) => i - 1,
        };
        if idx + 1 < self.arcs.len() && self.arcs[idx + 1].start_s <= s + self.tol_abs {
            idx += 1;
        }
        self.arcs[idx].vertex
    }

    /// Arcs as boundary spans (start, end, vertex), listed in walk order.
    pub fn spans(&self, poly: &ConvexPolygon) -> Vec<(BoundaryPoint, BoundaryPoint, usize)> {
        let view = WalkView::new(poly, self.dir, self.origin);
        self.arcs
            .iter()
            .map(|a| {
                (
                    poly.at_perimeter_pos(view.canonical_pos(a.start_s)),
                    poly.at_perimeter_pos(view.canonical_pos(a.end_s)),
                    a.vertex,
                )
            })
            .collect()
    }

    fn cut_positions(&self, poly: &ConvexPolygon) -> Vec<f64> {
        let view = WalkView::new(poly, self.dir, self.origin);
        self.arcs
            .iter()
            .map(|a| view.canonical_pos(a.start_s))
            .collect()
    }
}

/// Resting vertex of a particle nudged off b in the given direction, by the
/// direct vertex walk. Linear per query; the reference the swept maps are
/// checked against.
pub fn displaced_rest_vertex(
    poly: &ConvexPolygon,
    b: BoundaryPoint,
    dir: WalkDir,
) -> Result<usize> {
    let n = poly.n();
    let x = poly.boundary_eval(b);
    let view = WalkView::new(poly, dir, 0);
    let first = match dir {
        WalkDir::Ccw => (b.edge + 1) % n,
        WalkDir::Cw if b.is_vertex() => (b.edge + n - 1) % n,
        WalkDir::Cw => b.edge,
    };
    for k in 0..n {
        let v = match dir {
            WalkDir::Ccw => (first + k) % n,
            WalkDir::Cw => (first + n - k % n) % n,
        };
        if view.h(x, v) > poly.tol().abs {
            return Ok(v);
        }
    }
    Err(Error::Internal(
        "displaced walk found no resting vertex".into(),
    ))
}

/// Search the overlay of both maps for a boundary point whose two values
/// agree; such a point gathers the whole polygon in one activation. The scan
/// runs in counterclockwise order from vertex 0 and reports the first hit:
/// the start of a qualifying arc when that endpoint itself qualifies,
/// otherwise the arc midpoint. Every report is confirmed against the flow
/// structure of the candidate before it is returned.
pub fn find_1_gather_point(poly: &ConvexPolygon) -> Result<Option<GatherWitness>> {
    let ccw = accumulation_map(poly, WalkDir::Ccw)?;
    let cw = accumulation_map(poly, WalkDir::Cw)?;
    let per = poly.perimeter();
    let tau = poly.tol().abs;

    let mut cuts = ccw.cut_positions(poly);
    cuts.extend(cw.cut_positions(poly));
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut dedup: Vec<f64> = Vec::with_capacity(cuts.len());
    for c in cuts {
        if dedup.last().map_or(true, |&l| c - l > tau) {
            dedup.push(c);
        }
    }
    // Cyclic wrap: a cut just under the perimeter duplicates one near zero.
    if dedup.len() > 1 {
        let first = dedup[0];
        let last = *dedup.last().unwrap();
        if per - last + first <= tau {
            dedup.pop();
        }
    }

    let m = dedup.len();
    for k in 0..m {
        let here = poly.at_perimeter_pos(dedup[k]);
        if let Some(w) = confirm_witness(poly, &ccw, &cw, here)? {
            return Ok(Some(w));
        }
        let next = if k + 1 < m { dedup[k + 1] } else { dedup[0] + per };
        if next - dedup[k] > tau {
            let mid = poly.at_perimeter_pos(0.5 * (dedup[k] + next));
            if let Some(w) = confirm_witness(poly, &ccw, &cw, mid)? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

fn confirm_witness(
    poly: &ConvexPolygon,
    ccw: &AccumulationMap,
    cw: &AccumulationMap,
    b: BoundaryPoint,
) -> Result<Option<GatherWitness>> {
    if ccw.value_at(poly, b) != cw.value_at(poly, b) {
        return Ok(None);
    }
    match is_1_gatherable_from(poly, poly.boundary_eval(b))? {
        Some(v) => Ok(Some(GatherWitness { location: b, gather_vertex: v })),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::pt;

    fn poly(v: &[(f64, f64)]) -> ConvexPolygon {
        ConvexPolygon::new(v.iter().map(|&(x, y)| pt(x, y)).collect()).unwrap()
    }

    fn unit_square() -> ConvexPolygon {
        poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
    }

    fn pentagon() -> ConvexPolygon {
        poly(&[(1.0, 0.0), (3.0, 0.0), (4.0, 2.0), (2.0, 3.5), (0.0, 2.0)])
    }

    #[test]
    fn square_ccw_arcs_shift_by_two() {
        let p = unit_square();
        let m = accumulation_map(&p, WalkDir::Ccw).unwrap();
        let arcs = m.arcs();
        assert_eq!(m.origin(), 0);
        assert_eq!(arcs.len(), 4);
        for (i, a) in arcs.iter().enumerate() {
            assert!((a.start_s - i as f64).abs() < 1e-9);
            assert!((a.end_s - (i + 1) as f64).abs() < 1e-9);
            assert_eq!(a.vertex, (i + 2) % 4);
        }
    }

    #[test]
    fn square_cw_arcs_shift_by_two() {
        let p = unit_square();
        let m = accumulation_map(&p, WalkDir::Cw).unwrap();
        let arcs = m.arcs();
        assert_eq!(arcs.len(), 4);
        // Walk order visits v3, v2, v1; values trail the walk by two.
        let expect = [2usize, 1, 0, 3];
        for (i, a) in arcs.iter().enumerate() {
            assert!((a.start_s - i as f64).abs() < 1e-9);
            assert_eq!(a.vertex, expect[i]);
        }
    }

    #[test]
    fn square_values_at_breakpoints_are_walk_continuous() {
        let p = unit_square();
        let ccw = accumulation_map(&p, WalkDir::Ccw).unwrap();
        let cw = accumulation_map(&p, WalkDir::Cw).unwrap();
        // At a corner both directions rest on the opposite corner.
        for v in 0..4 {
            let b = BoundaryPoint::vertex(v);
            assert_eq!(ccw.value_at(&p, b), (v + 2) % 4);
            assert_eq!(cw.value_at(&p, b), (v + 2) % 4);
        }
        // Mid-edge the two directions disagree.
        let b = p.boundary_point(0, 0.5);
        assert_eq!(ccw.value_at(&p, b), 2);
        assert_eq!(cw.value_at(&p, b), 3);
    }

    #[test]
    fn maps_match_displaced_walk_on_samples() {
        let polys = {
            use crate::generate::random_convex_polygon;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
            let mut ps = vec![pentagon(), unit_square()];
            for _ in 0..3 {
                ps.push(random_convex_polygon(&mut rng, 8));
            }
            ps
        };
        for p in &polys {
            for dir in [WalkDir::Ccw, WalkDir::Cw] {
                let m = accumulation_map(p, dir).unwrap();
                for e in 0..p.n() {
                    for t in [0.0, 0.13, 0.37, 0.61, 0.89] {
                        let b = p.boundary_point(e, t);
                        assert_eq!(
                            m.value_at(p, b),
                            displaced_rest_vertex(p, b, dir).unwrap(),
                            "dir {dir} edge {e} t {t}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn arcs_partition_the_boundary() {
        use crate::generate::random_convex_polygon;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for n in [3usize, 4, 7, 12] {
            let p = random_convex_polygon(&mut rng, n);
            for dir in [WalkDir::Ccw, WalkDir::Cw] {
                let m = accumulation_map(&p, dir).unwrap();
                let arcs = m.arcs();
                assert!((arcs[0].start_s).abs() < 1e-12);
                for w in arcs.windows(2) {
                    assert!((w[0].end_s - w[1].start_s).abs() < 1e-12);
                    assert_ne!(w[0].vertex, w[1].vertex);
                }
                assert!((arcs.last().unwrap().end_s - p.perimeter()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn square_witness_is_a_corner() {
        let p = unit_square();
        let w = find_1_gather_point(&p).unwrap().unwrap();
        assert_eq!(w.location, BoundaryPoint::vertex(0));
        assert_eq!(w.gather_vertex, 2);
    }

    #[test]
    fn rectangle_witness_is_a_corner() {
        let p = poly(&[(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (0.0, 1.0)]);
        let w = find_1_gather_point(&p).unwrap().unwrap();
        assert_eq!(w.location, BoundaryPoint::vertex(0));
        assert_eq!(w.gather_vertex, 2);
    }

    #[test]
    fn equilateral_triangle_has_no_witness() {
        let p = poly(&[(0.0, 0.0), (2.0, 0.0), (1.0, 3.0_f64.sqrt())]);
        assert!(find_1_gather_point(&p).unwrap().is_none());
    }

    #[test]
    fn witness_search_agrees_with_dense_flow_scan() {
        use crate::generate::random_convex_polygon;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for _ in 0..8 {
            let p = random_convex_polygon(&mut rng, 6);
            let found = find_1_gather_point(&p).unwrap();
            match found {
                Some(w) => {
                    let x = p.boundary_eval(w.location);
                    assert_eq!(is_1_gatherable_from(&p, x).unwrap(), Some(w.gather_vertex));
                }
                None => {
                    // No sampled point may be 1-gatherable either.
                    for e in 0..p.n() {
                        for k in 0..16 {
                            let b = p.boundary_point(e, (k as f64 + 0.5) / 16.0);
                            let x = p.boundary_eval(b);
                            assert_eq!(is_1_gatherable_from(&p, x).unwrap(), None);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sweep_event_count_is_linear() {
        use crate::generate::random_convex_polygon_on_circle;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for n in [16usize, 64, 256] {
            let p = random_convex_polygon_on_circle(&mut rng, n);
            for dir in [WalkDir::Ccw, WalkDir::Cw] {
                let m = accumulation_map(&p, dir).unwrap();
                assert!(
                    m.stats.total() <= 8 * n,
                    "n = {n}: {} events",
                    m.stats.total()
                );
            }
        }
    }
}
