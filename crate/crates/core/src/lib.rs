//! Explicit constructions of `(k, eps)`-nets: finite families of k-flats that
//! stab every convex body of volume at least `eps` inside the unit cube
//! `[0,1]^d`, together with the tooling needed to check them empirically.
//!
//! The crate is split into four layers:
//!
//! * [`geom`] holds flats, ellipsoids, boxes, polytopes and the predicates
//!   between them, plus minimum-volume enclosing ellipsoids.
//! * [`net`] holds the constructions themselves. Every construction is a pure
//!   function of `(d, k, eps)` and returns a canonically ordered [`Net`].
//! * [`verify`] fuzzes nets with random heavy bodies, probes for uncovered
//!   balls, and computes exact empty rectangles for the 2-D box nets.
//! * [`report`] reads and writes net files, CSV scaling tables and SVG plots.

pub mod error;
pub mod geom;
pub mod net;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use geom::{AxisBox, Body, ConvexPolytope, Ellipsoid, FlatRef, KFlat, Point};
pub use net::{Construction, Net, Schedule};
