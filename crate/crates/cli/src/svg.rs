//! Deterministic SVG figures. Geometry is emitted in mathematical y-up
//! coordinates inside one top-level flip group; every element carries a
//! fixed class name so figures stay greppable and diffable.
//!
//! Classes: poly, cell, kernel, arrow, split, accum, actuator, trace,
//! witness, verdict.

use std::fmt::Write as _;

use repulse_core::decomp::Decomposition;
use repulse_core::flow::{EdgeFlow, FlowDiagram};
use repulse_core::planner::GatherPlan;
use repulse_core::sim::ActivationTrace;
use repulse_core::sweep::GatherWitness;
use repulse_core::{ConvexPolygon, Point};

const STYLE: &str = "\
  .poly { fill: none; stroke: #333; stroke-width: 0.8; }\n\
  .cell { fill: #4a6fa5; stroke: #666; stroke-width: 0.3; }\n\
  .cell.kernel { stroke: #b03a2e; stroke-width: 0.9; }\n\
  .arrow { fill: none; stroke: #1a6e3c; stroke-width: 0.7; }\n\
  .split { fill: #b03a2e; }\n\
  .accum { fill: #1f4e9c; }\n\
  .actuator { fill: #111; }\n\
  .trace { fill: none; stroke: #888; stroke-width: 0.5; }\n\
  .witness { fill: #b03a2e; }\n";

/// Figure canvas around a polygon; all drawing happens in world
/// coordinates and the single group transform performs the y flip.
pub struct Canvas {
    header: String,
    out: String,
    caption: Option<String>,
    caption_at: Point,
    /// Marker radius, scaled to the figure.
    pub r: f64,
}

impl Canvas {
    pub fn new(poly: &ConvexPolygon) -> Canvas {
        let (lo, hi) = poly.bbox();
        let w = hi.x - lo.x;
        let h = hi.y - lo.y;
        let m = 0.08 * w.max(h);
        let mut header = String::new();
        let _ = writeln!(
            header,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
            lo.x - m,
            -(hi.y + m),
            w + 2.0 * m,
            h + 2.0 * m
        );
        let size = 0.05 * w.max(h);
        let _ = writeln!(
            header,
            "<style>\n{}  .verdict {{ font: {size}px monospace; fill: #333; }}\n</style>",
            STYLE
        );
        Canvas {
            header,
            out: String::new(),
            caption: None,
            caption_at: repulse_core::pt(lo.x, -hi.y - 0.2 * size),
            r: 0.018 * w.max(h),
        }
    }

    pub fn finish(self) -> String {
        let mut doc = self.header;
        if let Some(text) = self.caption {
            let _ = writeln!(
                doc,
                "<text class=\"verdict\" x=\"{}\" y=\"{}\">{text}</text>",
                self.caption_at.x, self.caption_at.y
            );
        }
        doc.push_str("<g transform=\"scale(1,-1)\">\n");
        doc.push_str(&self.out);
        doc.push_str("</g>\n</svg>\n");
        doc
    }

    fn ring(&mut self, class: &str, verts: &[Point]) {
        let mut d = String::new();
        for (i, v) in verts.iter().enumerate() {
            let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, v.x, v.y);
        }
        d.push_str(" Z");
        let _ = writeln!(self.out, "<path class=\"{class}\" d=\"{d}\"/>");
    }

    pub fn polygon(&mut self, poly: &ConvexPolygon) {
        self.ring("poly", poly.vertices());
    }

    pub fn marker(&mut self, class: &str, p: Point) {
        let _ = writeln!(
            self.out,
            "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            p.x, p.y, self.r
        );
    }

    /// Arrow from a to b with a fixed-proportion head.
    pub fn arrow(&mut self, a: Point, b: Point) {
        let d = b - a;
        let len = d.norm();
        if len <= 0.0 {
            return;
        }
        let u = d * (1.0 / len);
        let head = self.r * 1.2;
        let left = b - u * head + u.perp_ccw() * (head * 0.6);
        let right = b - u * head - u.perp_ccw() * (head * 0.6);
        let _ = writeln!(
            self.out,
            "<path class=\"arrow\" d=\"M{} {} L{} {} M{} {} L{} {} L{} {}\"/>",
            a.x, a.y, b.x, b.y, left.x, left.y, b.x, b.y, right.x, right.y
        );
    }

    pub fn polyline(&mut self, class: &str, pts: &[Point]) {
        if pts.len() < 2 {
            return;
        }
        let mut d = String::new();
        for (i, v) in pts.iter().enumerate() {
            let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, v.x, v.y);
        }
        let _ = writeln!(self.out, "<path class=\"{class}\" d=\"{d}\"/>");
    }

    /// Caption placed outside the flipped group so the glyphs read upright.
    pub fn caption(&mut self, text: &str) {
        self.caption = Some(text.to_string());
    }
}

pub fn flow_figure(poly: &ConvexPolygon, fd: &FlowDiagram) -> String {
    let mut c = Canvas::new(poly);
    c.polygon(poly);
    for (e, flow) in fd.flows.iter().enumerate() {
        let (a, b) = poly.edge(e);
        match flow {
            EdgeFlow::AllCcw => c.arrow(a.lerp(b, 0.35), a.lerp(b, 0.65)),
            EdgeFlow::AllCw => c.arrow(b.lerp(a, 0.35), b.lerp(a, 0.65)),
            EdgeFlow::Split(s) => {
                let p = poly.boundary_eval(*s);
                let (ea, eb) = poly.edge(s.edge);
                c.arrow(p.lerp(eb, 0.25), p.lerp(eb, 0.6));
                c.arrow(p.lerp(ea, 0.25), p.lerp(ea, 0.6));
            }
        }
    }
    for s in &fd.split_points {
        c.marker("split", poly.boundary_eval(*s));
    }
    for &v in &fd.accumulation_points {
        c.marker("accum", poly.vertex(v));
    }
    c.marker("actuator", fd.actuator);
    c.finish()
}

pub fn kernel_figure(poly: &ConvexPolygon, d: &Decomposition) -> String {
    let mut c = Canvas::new(poly);
    let deepest = d.cells.iter().map(|cell| cell.slabs.len()).max().unwrap_or(1).max(1);
    for (i, cell) in d.cells.iter().enumerate() {
        let class = if d.kernel.contains(&i) { "cell kernel" } else { "cell" };
        let opacity = 0.12 + 0.75 * cell.slabs.len() as f64 / deepest as f64;
        let mut path = String::new();
        for (k, v) in cell.verts.iter().enumerate() {
            let _ = write!(path, "{}{} {}", if k == 0 { "M" } else { " L" }, v.x, v.y);
        }
        path.push_str(" Z");
        let _ = writeln!(
            c.out,
            "<path class=\"{class}\" fill-opacity=\"{opacity}\" d=\"{path}\"/>"
        );
    }
    c.polygon(poly);
    c.finish()
}

pub fn check1_figure(poly: &ConvexPolygon, witness: Option<&GatherWitness>) -> String {
    let mut c = Canvas::new(poly);
    c.polygon(poly);
    match witness {
        Some(w) => {
            c.marker("witness", poly.boundary_eval(w.location));
            c.marker("accum", poly.vertex(w.gather_vertex));
            c.caption("witness");
        }
        None => c.caption("none"),
    }
    c.finish()
}

pub fn plan_figure(poly: &ConvexPolygon, plan: &GatherPlan) -> String {
    let mut c = Canvas::new(poly);
    c.polygon(poly);
    for a in &plan.activations {
        c.marker("actuator", *a);
    }
    if let Some(g) = plan.predicted_gather {
        c.marker("accum", g.eval(poly));
    }
    c.caption(match plan.verdict {
        repulse_core::planner::PlanVerdict::Ungatherable => "ungatherable",
        repulse_core::planner::PlanVerdict::OneActivation => "one-activation",
        repulse_core::planner::PlanVerdict::TwoActivations => "two-activations",
    });
    c.finish()
}

pub fn trace_figure(
    poly: &ConvexPolygon,
    traces: &[ActivationTrace],
    verdict: &str,
) -> String {
    let mut c = Canvas::new(poly);
    c.polygon(poly);
    for act in traces {
        for (_, t) in &act.traces {
            let pts: Vec<Point> = t.events.iter().map(|e| e.position).collect();
            c.polyline("trace", &pts);
            if let Some(last) = t.events.last() {
                c.marker("accum", last.position);
            }
        }
        c.marker("actuator", act.actuator);
    }
    c.caption(verdict);
    c.finish()
}
