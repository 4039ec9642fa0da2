//! Line-oriented text formats: polygons, plans, flow diagrams, traces.
//!
//! Formats are deterministic (same value, same bytes) and round-trip
//! through the parsers. Floats are written with Rust's shortest
//! round-trippable notation.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::flow::{EdgeFlow, FlowDiagram, SplitSemantics};
use crate::planner::{GatherPlan, GatherSite, PlanRationale, PlanVerdict};
use crate::point::{pt, Point};
use crate::polygon::ConvexPolygon;
use crate::sim::{ActivationTrace, TraceKind};

/// Parse a polygon: one `x y` vertex per line, counterclockwise, with `#`
/// starting a comment and blank lines ignored.
pub fn parse_polygon(text: &str) -> Result<ConvexPolygon> {
    let mut verts = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let (sx, sy) = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("expected `x y`, got `{line}`"),
                })
            }
        };
        let parse = |s: &str| -> Result<f64> {
            s.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                msg: format!("not a number: `{s}`"),
            })
        };
        verts.push(pt(parse(sx)?, parse(sy)?));
    }
    ConvexPolygon::new(verts)
}

pub fn write_polygon(poly: &ConvexPolygon) -> String {
    let mut out = String::new();
    for v in poly.vertices() {
        let _ = writeln!(out, "{} {}", v.x, v.y);
    }
    out
}

fn verdict_str(v: PlanVerdict) -> &'static str {
    match v {
        PlanVerdict::Ungatherable => "ungatherable",
        PlanVerdict::OneActivation => "one-activation",
        PlanVerdict::TwoActivations => "two-activations",
    }
}

fn rationale_str(r: PlanRationale) -> &'static str {
    match r {
        PlanRationale::Witness => "witness",
        PlanRationale::DiameterCase => "diameter",
        PlanRationale::TriangleCase => "triangle",
    }
}

/// Serialize a plan: verdict, rationale, activations in order, predicted
/// gather site.
pub fn write_plan(poly: &ConvexPolygon, plan: &GatherPlan) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict {}", verdict_str(plan.verdict));
    if let Some(r) = plan.rationale {
        let _ = writeln!(out, "rationale {}", rationale_str(r));
    }
    for a in &plan.activations {
        let _ = writeln!(out, "activation {} {}", a.x, a.y);
    }
    match plan.predicted_gather {
        Some(GatherSite::Vertex(v)) => {
            let p = poly.vertex(v);
            let _ = writeln!(out, "gather vertex {} {} {}", v, p.x, p.y);
        }
        Some(GatherSite::OnBoundary(b)) => {
            let p = poly.boundary_eval(b);
            let _ = writeln!(out, "gather boundary {} {} {} {}", b.edge, b.t, p.x, p.y);
        }
        None => {}
    }
    out
}

/// Parse a plan written by `write_plan`.
pub fn parse_plan(text: &str) -> Result<GatherPlan> {
    let mut verdict = None;
    let mut rationale = None;
    let mut activations = Vec::new();
    let mut predicted = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: idx + 1, msg };
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "verdict" if toks.len() == 2 => {
                verdict = Some(match toks[1] {
                    "ungatherable" => PlanVerdict::Ungatherable,
                    "one-activation" => PlanVerdict::OneActivation,
                    "two-activations" => PlanVerdict::TwoActivations,
                    other => return Err(err(format!("unknown verdict `{other}`"))),
                });
            }
            "rationale" if toks.len() == 2 => {
                rationale = Some(match toks[1] {
                    "witness" => PlanRationale::Witness,
                    "diameter" => PlanRationale::DiameterCase,
                    "triangle" => PlanRationale::TriangleCase,
                    other => return Err(err(format!("unknown rationale `{other}`"))),
                });
            }
            "activation" if toks.len() == 3 => {
                let x: f64 = toks[1].parse().map_err(|_| err("bad x".into()))?;
                let y: f64 = toks[2].parse().map_err(|_| err("bad y".into()))?;
                activations.push(pt(x, y));
            }
            "gather" if toks.len() >= 2 && toks[1] == "vertex" && toks.len() == 5 => {
                let v: usize = toks[2].parse().map_err(|_| err("bad vertex".into()))?;
                predicted = Some(GatherSite::Vertex(v));
            }
            "gather" if toks.len() >= 2 && toks[1] == "boundary" && toks.len() == 6 => {
                let e: usize = toks[2].parse().map_err(|_| err("bad edge".into()))?;
                let t: f64 = toks[3].parse().map_err(|_| err("bad t".into()))?;
                if !t.is_finite() {
                    return Err(err("bad t".into()));
                }
                predicted = Some(GatherSite::OnBoundary(crate::boundary::BoundaryPoint {
                    edge: e,
                    t,
                }));
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    let verdict = verdict.ok_or(Error::Parse { line: 0, msg: "missing verdict".into() })?;
    Ok(GatherPlan { verdict, activations, predicted_gather: predicted, rationale })
}

/// Serialize a flow diagram: actuator, per-edge flow, split points with
/// their kind, accumulation vertices.
pub fn write_flow(poly: &ConvexPolygon, fd: &FlowDiagram) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "actuator {} {}", fd.actuator.x, fd.actuator.y);
    for (e, flow) in fd.flows.iter().enumerate() {
        match flow {
            EdgeFlow::AllCcw => {
                let _ = writeln!(out, "edge {e} ccw");
            }
            EdgeFlow::AllCw => {
                let _ = writeln!(out, "edge {e} cw");
            }
            EdgeFlow::Split(b) => {
                let _ = writeln!(out, "edge {e} split {}", b.t);
            }
        }
    }
    for b in &fd.split_points {
        let p = poly.boundary_eval(*b);
        let sem = crate::flow::foot_semantics(poly, fd.actuator, b.edge)
            .ok()
            .flatten()
            .map(|(_, s)| s);
        let kind = match sem {
            Some(SplitSemantics::TrueSplit) | None => "split",
            Some(SplitSemantics::PassThroughUnstable) => "unstable",
            Some(SplitSemantics::AtActuator) => "at-actuator",
        };
        let _ = writeln!(out, "split {} {} {} {} {}", b.edge, b.t, p.x, p.y, kind);
    }
    for &v in &fd.accumulation_points {
        let p = poly.vertex(v);
        let _ = writeln!(out, "accumulation {} {} {}", v, p.x, p.y);
    }
    out
}

/// Serialize activation traces, one event line per step:
/// `particle event x y`.
pub fn write_traces(_poly: &ConvexPolygon, traces: &[ActivationTrace]) -> String {
    let mut out = String::new();
    for (k, act) in traces.iter().enumerate() {
        let _ = writeln!(out, "activation {} {} {}", k, act.actuator.x, act.actuator.y);
        for &r in &act.removed {
            let _ = writeln!(out, "{r} removed");
        }
        for (id, trace) in &act.traces {
            for ev in &trace.events {
                let kind = match ev.kind {
                    TraceKind::Start => "start",
                    TraceKind::Radial => "radial",
                    TraceKind::Walk => "walk",
                    TraceKind::Pass => "pass",
                    TraceKind::Rest => "rest",
                };
                let _ = writeln!(out, "{} {} {} {}", id, kind, ev.position.x, ev.position.y);
            }
        }
    }
    out
}

/// Deterministic short form of a point for messages.
pub fn fmt_point(p: Point) -> String {
    format!("{} {}", p.x, p.y)
}
