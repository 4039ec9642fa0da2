//! Boundary flow induced by a repulsion actuator.
//!
//! An actuator at w pushes every boundary particle in the direction of
//! increasing distance from w. Along a single edge that distance is strictly
//! convex with its minimum at the perpendicular foot of w, so each edge
//! either drains entirely clockwise, entirely counterclockwise, or splits at
//! the interior foot. Particles pass through first-order flat vertices and
//! come to rest only at vertices where both incident directions lose
//! distance. Split and accumulation points strictly alternate around the
//! boundary and there is always at least one of each.

use crate::boundary::BoundaryPoint;
use crate::error::{Error, Result};
use crate::point::Point;
use crate::polygon::ConvexPolygon;

/// Position of w relative to the slab of an edge: the closed region swept by
/// the edge's interior-facing perpendiculars.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeRegion {
    /// w projects onto the edge; an activation splits the edge's particles.
    Slab,
    /// w lies beyond the perpendicular at the edge's end vertex; the whole
    /// edge drains clockwise (towards the start vertex).
    DrivesCw,
    /// w lies beyond the perpendicular at the edge's start vertex; the whole
    /// edge drains counterclockwise.
    DrivesCcw,
}

/// Direction of particle motion on one edge under a fixed actuator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeFlow {
    AllCcw,
    AllCw,
    /// Particles on either side of the interior point diverge.
    Split(BoundaryPoint),
}

/// What a perpendicular foot means for the motion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitSemantics {
    /// Flows diverge here; counted as a split point.
    TrueSplit,
    /// First-order flat in one direction only; particles pass through.
    PassThroughUnstable,
    /// The foot is the actuator itself (boundary actuator); counted as the
    /// single split at w.
    AtActuator,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowDiagram {
    pub actuator: Point,
    /// Flow of edge i under the actuator.
    pub flows: Vec<EdgeFlow>,
    /// Split points in ccw order (perimeter position from vertex 0).
    pub split_points: Vec<BoundaryPoint>,
    /// Accumulation vertex indices in ccw order.
    pub accumulation_points: Vec<usize>,
}

fn require_inside(poly: &ConvexPolygon, w: Point) -> Result<()> {
    if !w.is_finite() {
        return Err(Error::NonFinite);
    }
    if !poly.contains(w) {
        return Err(Error::OutsidePolygon(w));
    }
    Ok(())
}

/// Classify w against the slab of one edge. Pure projection arithmetic on a
/// closed parameter range; w is not required to lie inside the polygon.
pub fn edge_region(poly: &ConvexPolygon, edge: usize, w: Point) -> Result<EdgeRegion> {
    poly.check_edge(edge)?;
    if !w.is_finite() {
        return Err(Error::NonFinite);
    }
    let t = poly.foot_param(w, edge);
    let eps = poly.param_eps(edge);
    Ok(if t < -eps {
        EdgeRegion::DrivesCcw
    } else if t > 1.0 + eps {
        EdgeRegion::DrivesCw
    } else {
        EdgeRegion::Slab
    })
}

/// Edges whose slab contains w, in ascending index order.
pub fn slab_membership(poly: &ConvexPolygon, w: Point) -> Result<Vec<usize>> {
    require_inside(poly, w)?;
    let mut out = Vec::new();
    for i in 0..poly.n() {
        if edge_region(poly, i, w)? == EdgeRegion::Slab {
            out.push(i);
        }
    }
    Ok(out)
}

/// The perpendicular foot of w on one edge together with its role in the
/// flow, if the foot lands on the edge at all.
pub fn foot_semantics(
    poly: &ConvexPolygon,
    w: Point,
    edge: usize,
) -> Result<Option<(BoundaryPoint, SplitSemantics)>> {
    poly.check_edge(edge)?;
    if !w.is_finite() {
        return Err(Error::NonFinite);
    }
    let b = match poly.perpendicular_foot(w, edge) {
        Some(b) => b,
        None => return Ok(None),
    };
    let kind = if poly.boundary_eval(b).dist(w) <= poly.tol().abs {
        SplitSemantics::AtActuator
    } else if b.is_vertex() {
        // Motion through the vertex: a direction with non-negative gain
        // carries particles away from it (flat feet gain at second order).
        let v = poly.vertex(b.edge);
        let ccw_gain = poly.edge_dir(b.edge).dot(v - w);
        let cw_gain = (-poly.edge_dir(b.edge + poly.n() - 1)).dot(v - w);
        let tau = poly.tol().abs;
        if ccw_gain >= -tau && cw_gain >= -tau {
            SplitSemantics::TrueSplit
        } else {
            SplitSemantics::PassThroughUnstable
        }
    } else {
        SplitSemantics::TrueSplit
    };
    Ok(Some((b, kind)))
}

/// Full flow picture for an actuator at w (interior or on the boundary).
pub fn flow_diagram(poly: &ConvexPolygon, w: Point) -> Result<FlowDiagram> {
    require_inside(poly, w)?;
    let n = poly.n();

    let mut flows = Vec::with_capacity(n);
    for i in 0..n {
        let t = poly.foot_param(w, i);
        let eps = poly.param_eps(i);
        flows.push(if t <= eps {
            EdgeFlow::AllCcw
        } else if t >= 1.0 - eps {
            EdgeFlow::AllCw
        } else {
            EdgeFlow::Split(BoundaryPoint { edge: i, t })
        });
    }

    let mut splits: Vec<BoundaryPoint> = Vec::new();
    for i in 0..n {
        if let Some((b, kind)) = foot_semantics(poly, w, i)? {
            match kind {
                SplitSemantics::PassThroughUnstable => {}
                SplitSemantics::TrueSplit => splits.push(b),
                SplitSemantics::AtActuator => {
                    // Both incident edges of a vertex actuator project onto
                    // it; record the location once.
                    if !splits.iter().any(|s| poly.boundary_approx_eq(*s, b)) {
                        splits.push(b);
                    }
                }
            }
        }
    }
    splits.sort_by(|a, b| {
        poly.perimeter_pos(*a)
            .partial_cmp(&poly.perimeter_pos(*b))
            .unwrap()
    });

    let mut accums = Vec::new();
    for v in 0..n {
        let incoming_ccw = matches!(flows[(v + n - 1) % n], EdgeFlow::AllCcw | EdgeFlow::Split(_));
        let incoming_cw = matches!(flows[v], EdgeFlow::AllCw | EdgeFlow::Split(_));
        if incoming_ccw && incoming_cw {
            accums.push(v);
        }
    }

    let fd = FlowDiagram { actuator: w, flows, split_points: splits, accumulation_points: accums };
    debug_assert!(alternation_ok(poly, &fd), "flow events out of order for w = {w}");
    Ok(fd)
}

/// The unique accumulation vertex when w gathers the whole boundary to a
/// single point, None otherwise.
pub fn is_1_gatherable_from(poly: &ConvexPolygon, w: Point) -> Result<Option<usize>> {
    let fd = flow_diagram(poly, w)?;
    Ok(match fd.accumulation_points.as_slice() {
        [v] => Some(*v),
        _ => None,
    })
}

/// Split and accumulation points must strictly alternate around the
/// boundary, with equal counts and at least one of each.
pub fn alternation_ok(poly: &ConvexPolygon, fd: &FlowDiagram) -> bool {
    if fd.split_points.is_empty() || fd.split_points.len() != fd.accumulation_points.len() {
        return false;
    }
    let mut events: Vec<(f64, bool)> = Vec::new();
    for s in &fd.split_points {
        events.push((poly.perimeter_pos(*s), true));
    }
    for a in &fd.accumulation_points {
        events.push((poly.perimeter_pos(BoundaryPoint::vertex(*a)), false));
    }
    events.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    events.windows(2).all(|w| w[0].1 != w[1].1) && events.first().map(|e| e.1) != events.last().map(|e| e.1)
}
