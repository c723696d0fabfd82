//! Geometric primitives: flats, convex bodies, intersection predicates,
//! volumes and ellipsoid fitting.

mod boxes;
mod ellipsoid;
mod flat;
pub(crate) mod lp;
mod montecarlo;
mod mvee;
mod point;
mod polytope;

use std::fmt;

pub use boxes::{flat_intersects_box, AxisBox};
pub use ellipsoid::{flat_intersects_ellipsoid, Ellipsoid};
pub use flat::{dist_point_flat, flat_from_affine_hull, project_point_flat, FlatRef, KFlat};
pub use montecarlo::mc_volume_in_cube;
pub use mvee::{mvee, MVEE_MAX_ITERATIONS, MVEE_TOL};
pub use point::Point;
pub use polytope::{flat_intersects_polytope, ConvexPolytope};

use crate::Result;

/// Tolerance for geometric predicates. Closed bodies: touching counts.
pub const TOL: f64 = 1e-9;

/// Tolerance for symmetry checks on shape matrices.
pub const SYM_TOL: f64 = 1e-12;

/// Volume of the unit ball in `R^d`, `pi^(d/2) / Gamma(d/2 + 1)`.
pub fn unit_ball_volume(d: usize) -> f64 {
    // V_d = V_{d-2} * 2 pi / d
    let mut v = if d % 2 == 0 { 1.0 } else { 2.0 };
    let mut m = if d % 2 == 0 { 2 } else { 3 };
    while m <= d {
        v *= 2.0 * std::f64::consts::PI / m as f64;
        m += 2;
    }
    v
}

/// A convex body accepted by the stabbing predicates.
#[derive(Clone, Debug, PartialEq)]
pub enum Body {
    Ellipsoid(Ellipsoid),
    Box(AxisBox),
    Polytope(ConvexPolytope),
}

impl Body {
    pub fn dim(&self) -> usize {
        match self {
            Body::Ellipsoid(e) => e.dim(),
            Body::Box(b) => b.dim(),
            Body::Polytope(p) => p.dim(),
        }
    }

    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        match self {
            Body::Ellipsoid(e) => Ok(e.contains(x)),
            Body::Box(b) => Ok(b.contains(x)),
            Body::Polytope(p) => p.contains(x),
        }
    }

    /// Axis-aligned bounding box of the body.
    pub fn bounding_box(&self) -> AxisBox {
        match self {
            Body::Ellipsoid(e) => e.bounding_box(),
            Body::Box(b) => b.clone(),
            Body::Polytope(p) => p.bounding_box(),
        }
    }

    pub fn intersects_flat(&self, flat: FlatRef<'_>) -> Result<bool> {
        match self {
            Body::Ellipsoid(e) => flat_intersects_ellipsoid(flat, e),
            Body::Box(b) => flat_intersects_box(flat, b),
            Body::Polytope(p) => flat_intersects_polytope(flat, p),
        }
    }
}

impl From<Ellipsoid> for Body {
    fn from(e: Ellipsoid) -> Self {
        Body::Ellipsoid(e)
    }
}

impl From<AxisBox> for Body {
    fn from(b: AxisBox) -> Self {
        Body::Box(b)
    }
}

impl From<ConvexPolytope> for Body {
    fn from(p: ConvexPolytope) -> Self {
        Body::Polytope(p)
    }
}

fn fmt_list(f: &mut fmt::Formatter<'_>, xs: &[f64]) -> fmt::Result {
    f.write_str("[")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x:e}")?;
    }
    f.write_str("]")
}

/// One-line textual form, used to log unstabbed adversaries.
impl fmt::Display for Body {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Body::Ellipsoid(e) => {
                f.write_str("ellipsoid center=")?;
                fmt_list(f, e.center())?;
                f.write_str(" shape=")?;
                fmt_list(f, e.shape().as_slice())
            }
            Body::Box(b) => {
                f.write_str("box lo=")?;
                fmt_list(f, b.lo())?;
                f.write_str(" hi=")?;
                fmt_list(f, b.hi())
            }
            Body::Polytope(p) => {
                f.write_str("polytope vertices=[")?;
                for (i, v) in p.vertices().iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    fmt_list(f, v)?;
                }
                f.write_str("]")
            }
        }
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
