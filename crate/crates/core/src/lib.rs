//! Geometry engine for gathering particles in convex polygons with
//! repulsion actuators.
//!
//! An actuator placed at a point w repels every particle: interior particles
//! move radially until they hit the boundary, then walk along it while their
//! distance from w increases, passing through flat spots and stopping at
//! vertices where neither direction gains distance. The crate computes where
//! particles end up (`flow`), the region of actuator positions that gather
//! everything to a single vertex (`decomp`), a linear-time boundary witness
//! search (`sweep`), activation plans with at most two actuators (`planner`),
//! and an event-based simulator used as the ground-truth oracle (`sim`).

pub mod boundary;
pub mod decomp;
pub mod disk;
pub mod error;
pub mod flow;
pub mod generate;
pub mod io;
pub mod planner;
pub mod point;
pub mod polygon;
pub mod sim;
pub mod sweep;
pub mod tol;

pub use boundary::BoundaryPoint;
pub use error::{Error, Result};
pub use point::{orientation, pt, Orientation, Point};
pub use polygon::{AngleClass, ConvexPolygon};
pub use tol::Tol;
