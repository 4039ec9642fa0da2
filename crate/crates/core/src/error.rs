//! Error type shared across the crate.

use thiserror::Error;

use crate::point::Point;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite coordinate in input")]
    NonFinite,
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertices {0} and {1} coincide")]
    DuplicateVertex(usize, usize),
    #[error("vertex {0} is collinear with its neighbours")]
    CollinearVertex(usize),
    #[error("vertices are ordered clockwise, expected counterclockwise")]
    NotCcw,
    #[error("polygon is not convex at vertex {0}")]
    NotConvex(usize),
    #[error("edge index {0} out of range for polygon with {1} edges")]
    EdgeOutOfRange(usize, usize),
    #[error("point ({}, {}) lies outside the polygon", .0.x, .0.y)]
    OutsidePolygon(Point),
    #[error("actuator at ({}, {}) coincides with a particle", .0.x, .0.y)]
    ActuatorOnParticle(Point),
    #[error("plan has no activations to simulate")]
    EmptyPlan,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
