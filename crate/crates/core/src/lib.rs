//! Minimum non-obtuse triangulation toolkit.
//!
//! The pipeline is: [`generators`] produce planar straight-line graph
//! instances, [`solver`] places Steiner points and completes them with the
//! constrained Delaunay triangulation from [`cdt`], [`verify`] checks a
//! solution with exact arithmetic, and [`scoring`] turns verification reports
//! into per-instance scores. All geometry goes through the exact kernel in
//! [`geom`].

mod filter;

pub mod cdt;
pub mod generators;
pub mod geom;
pub mod model;
pub mod render;
pub mod scoring;
pub mod solver;
pub mod verify;

pub use cdt::{build_cdt, CdtError, Location, Triangulation};
pub use geom::{Coord, Orientation, Point, TriangleClass};
pub use model::{Instance, Solution};
pub use verify::{verify, Objective, VerifyReport};
