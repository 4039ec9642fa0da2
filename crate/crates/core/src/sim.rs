//! Event-based particle simulator.
//!
//! The ground truth for every other module: particles are moved by explicit
//! events rather than time stepping. Distance from a fixed point is strictly
//! convex along an edge, so a walking particle can only change behaviour at
//! vertices and at perpendicular feet, and the walk visits vertices one at a
//! time. Traces record the full event history per particle; distance from
//! the actuator never decreases along a trace.

use crate::boundary::BoundaryPoint;
use crate::error::{Error, Result};
use crate::planner::GatherPlan;
use crate::point::Point;
use crate::polygon::ConvexPolygon;
use crate::sweep::WalkDir;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParticlePos {
    Interior(Point),
    OnBoundary(BoundaryPoint),
}

impl ParticlePos {
    pub fn eval(&self, poly: &ConvexPolygon) -> Point {
        match self {
            ParticlePos::Interior(p) => *p,
            ParticlePos::OnBoundary(b) => poly.boundary_eval(*b),
        }
    }
}

/// Multiset of particle positions; order carries no meaning.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ParticleSystem {
    pub particles: Vec<ParticlePos>,
}

impl ParticleSystem {
    pub fn len(&self) -> usize {
        self.particles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.particles.is_empty()
    }

    /// Distinct occupied locations after tolerance-aware merging.
    pub fn occupied(&self, poly: &ConvexPolygon) -> Vec<Point> {
        let mut out: Vec<Point> = Vec::new();
        for p in &self.particles {
            let q = p.eval(poly);
            if !out.iter().any(|r| r.dist(q) <= poly.tol().abs) {
                out.push(q);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParticleMode {
    /// One particle per vertex; by the reduction arguments this is enough to
    /// decide gathering.
    VerticesOnly,
    /// Vertices plus k evenly spaced interior samples per edge.
    BoundarySampled(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceKind {
    Start,
    /// Radial move from the interior onto the boundary.
    Radial,
    /// Passed a vertex while strictly gaining distance.
    Walk,
    /// Passed a first-order flat point (unstable maximum).
    Pass,
    Rest,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEvent {
    pub kind: TraceKind,
    pub position: Point,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParticleTrace {
    pub events: Vec<TraceEvent>,
    pub rest: BoundaryPoint,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ActivationTrace {
    pub actuator: Point,
    /// Indices (into the pre-activation system) removed by a first
    /// activation at an occupied point.
    pub removed: Vec<usize>,
    /// Per surviving particle: its pre-activation index and event history.
    pub traces: Vec<(usize, ParticleTrace)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SimOutcome {
    Gathered(Point),
    NotGathered(ParticleSystem),
}

pub fn initial_particles(poly: &ConvexPolygon, mode: ParticleMode) -> ParticleSystem {
    let n = poly.n();
    let mut particles = Vec::new();
    for i in 0..n {
        particles.push(ParticlePos::OnBoundary(BoundaryPoint::vertex(i)));
        if let ParticleMode::BoundarySampled(k) = mode {
            for j in 1..=k {
                let t = j as f64 / (k + 1) as f64;
                particles.push(ParticlePos::OnBoundary(BoundaryPoint { edge: i, t }));
            }
        }
    }
    ParticleSystem { particles }
}

/// Distance gain per unit of boundary motion from `v` in direction `dir`.
fn vertex_gain(poly: &ConvexPolygon, w: Point, v: usize, dir: WalkDir) -> f64 {
    let p = poly.vertex(v);
    match dir {
        WalkDir::Ccw => poly.edge_dir(v).dot(p - w),
        WalkDir::Cw => (-poly.edge_dir(v + poly.n() - 1)).dot(p - w),
    }
}

/// First boundary hit of the ray from w through the interior point p.
fn radial_exit(poly: &ConvexPolygon, w: Point, p: Point) -> Result<BoundaryPoint> {
    let d = (p - w).normalized();
    let tau = poly.tol().abs;
    let mut best: Option<(f64, usize, f64)> = None;
    for i in 0..poly.n() {
        let (a, _) = poly.edge(i);
        let e = poly.edge_vec(i);
        let denom = d.cross(e);
        if denom.abs() <= tau * e.norm() {
            continue; // ray parallel to the edge
        }
        let ap = a - p;
        let s = ap.cross(e) / denom;
        let u = ap.cross(d) / denom;
        let eps = poly.param_eps(i);
        if s >= -tau && (-eps..=1.0 + eps).contains(&u) {
            if best.map_or(true, |(bs, _, _)| s < bs) {
                best = Some((s, i, u.clamp(0.0, 1.0)));
            }
        }
    }
    let (_, edge, u) =
        best.ok_or_else(|| Error::Internal(format!("radial ray from {w} through {p} found no exit")))?;
    Ok(poly.boundary_point(edge, u))
}

/// Move one particle to rest under an actuator at w.
///
/// Interior particles first move radially away from w onto the boundary,
/// then walk in a direction of non-decreasing distance, counterclockwise
/// when both choices are flat, and stop at the first vertex where the
/// continuation strictly loses distance.
pub fn repel_particle(poly: &ConvexPolygon, w: Point, pos: ParticlePos) -> Result<ParticleTrace> {
    let tau = poly.tol().abs;
    let start = pos.eval(poly);
    if start.dist(w) <= tau {
        return Err(Error::ActuatorOnParticle(w));
    }
    let mut events = vec![TraceEvent { kind: TraceKind::Start, position: start }];

    let b = match pos {
        ParticlePos::OnBoundary(b) => b,
        ParticlePos::Interior(p) => match poly.boundary_locate(p) {
            Some(b) => b,
            None => {
                let b = radial_exit(poly, w, p)?;
                events.push(TraceEvent { kind: TraceKind::Radial, position: poly.boundary_eval(b) });
                b
            }
        },
    };

    // Choose the walk direction at the landing point.
    let x = poly.boundary_eval(b);
    let (ccw_gain, cw_gain) = if b.is_vertex() {
        (vertex_gain(poly, w, b.edge, WalkDir::Ccw), vertex_gain(poly, w, b.edge, WalkDir::Cw))
    } else {
        let g = poly.edge_dir(b.edge).dot(x - w);
        (g, -g)
    };
    let dir = if ccw_gain > tau {
        Some(WalkDir::Ccw)
    } else if cw_gain > tau {
        Some(WalkDir::Cw)
    } else if ccw_gain >= -tau {
        Some(WalkDir::Ccw) // flat; counterclockwise by convention
    } else if cw_gain >= -tau {
        Some(WalkDir::Cw)
    } else {
        None
    };

    let dir = match dir {
        None => {
            // Both directions strictly lose distance: already at rest.
            events.push(TraceEvent { kind: TraceKind::Rest, position: x });
            return Ok(ParticleTrace { events, rest: b });
        }
        Some(d) => d,
    };
    let departure_gain = match dir {
        WalkDir::Ccw => ccw_gain,
        WalkDir::Cw => cw_gain,
    };
    if departure_gain.abs() <= tau {
        events.push(TraceEvent { kind: TraceKind::Pass, position: x });
    }

    let n = poly.n();
    let mut v = match (dir, b.is_vertex()) {
        (WalkDir::Ccw, _) => (b.edge + 1) % n,
        (WalkDir::Cw, true) => (b.edge + n - 1) % n,
        (WalkDir::Cw, false) => b.edge,
    };
    for _ in 0..2 * n + 2 {
        let gain = vertex_gain(poly, w, v, dir);
        let pv = poly.vertex(v);
        if gain > tau {
            events.push(TraceEvent { kind: TraceKind::Walk, position: pv });
        } else if gain >= -tau {
            events.push(TraceEvent { kind: TraceKind::Pass, position: pv });
        } else {
            events.push(TraceEvent { kind: TraceKind::Rest, position: pv });
            return Ok(ParticleTrace { events, rest: BoundaryPoint::vertex(v) });
        }
        v = match dir {
            WalkDir::Ccw => (v + 1) % n,
            WalkDir::Cw => (v + n - 1) % n,
        };
    }
    Err(Error::Internal(format!("boundary walk from {start} did not terminate")))
}

/// Activate an actuator at w against a particle system.
///
/// A first activation removes any particles already at w; later activations
/// require w to be particle-free. Rest positions within tolerance of each
/// other coalesce into one particle.
pub fn simulate_activation(
    poly: &ConvexPolygon,
    system: &ParticleSystem,
    w: Point,
    first: bool,
) -> Result<(ParticleSystem, ActivationTrace)> {
    if !w.is_finite() {
        return Err(Error::NonFinite);
    }
    if !poly.contains(w) {
        return Err(Error::OutsidePolygon(w));
    }
    let tau = poly.tol().abs;
    let mut removed = Vec::new();
    let mut traces = Vec::new();
    let mut rests: Vec<BoundaryPoint> = Vec::new();
    for (i, pos) in system.particles.iter().enumerate() {
        if pos.eval(poly).dist(w) <= tau {
            if first {
                removed.push(i);
                continue;
            }
            return Err(Error::ActuatorOnParticle(w));
        }
        let trace = repel_particle(poly, w, *pos)?;
        rests.push(trace.rest);
        traces.push((i, trace));
    }
    let mut coalesced: Vec<BoundaryPoint> = Vec::new();
    for r in rests {
        if !coalesced.iter().any(|c| poly.boundary_approx_eq(*c, r)) {
            coalesced.push(r);
        }
    }
    let system = ParticleSystem {
        particles: coalesced.into_iter().map(ParticlePos::OnBoundary).collect(),
    };
    Ok((system, ActivationTrace { actuator: w, removed, traces }))
}

/// Run a plan's activations in order against a fresh particle system.
pub fn simulate_plan(
    poly: &ConvexPolygon,
    plan: &GatherPlan,
    mode: ParticleMode,
) -> Result<SimOutcome> {
    if plan.activations.is_empty() {
        return Err(Error::EmptyPlan);
    }
    let mut system = initial_particles(poly, mode);
    for (k, w) in plan.activations.iter().enumerate() {
        let (next, _) = simulate_activation(poly, &system, *w, k == 0)?;
        system = next;
    }
    if system.len() == 1 {
        Ok(SimOutcome::Gathered(system.particles[0].eval(poly)))
    } else {
        Ok(SimOutcome::NotGathered(system))
    }
}
