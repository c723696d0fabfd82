use super::{lp, AxisBox, FlatRef, KFlat, Point, TOL};
use crate::error::check_dim;
use crate::{Error, Result};

/// Convex hull of a finite vertex set. Interior points in the list are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolytope {
    vertices: Vec<Point>,
}

impl ConvexPolytope {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let first = vertices
            .first()
            .ok_or_else(|| Error::InvalidParameter("polytope needs at least one vertex".into()))?;
        let d = first.dim();
        for v in &vertices {
            check_dim(d, v.dim())?;
        }
        Ok(ConvexPolytope { vertices })
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn bounding_box(&self) -> AxisBox {
        let d = self.dim();
        let mut lo = vec![f64::INFINITY; d];
        let mut hi = vec![f64::NEG_INFINITY; d];
        for v in &self.vertices {
            for i in 0..d {
                lo[i] = lo[i].min(v[i]);
                hi[i] = hi[i].max(v[i]);
            }
        }
        AxisBox::from_vecs_unchecked(lo, hi)
    }

    pub fn vertex_mean(&self) -> Point {
        let d = self.dim();
        let n = self.vertices.len() as f64;
        let mut c = vec![0.0; d];
        for v in &self.vertices {
            for i in 0..d {
                c[i] += v[i] / n;
            }
        }
        Point::from_vec_unchecked(c)
    }

    /// Hull membership via an LP over convex weights.
    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        check_dim(self.dim(), x.len())?;
        if !self.bounding_box().contains(x) {
            return Ok(false);
        }
        let q = KFlat::point(Point::new(x.to_vec())?);
        flat_intersects_polytope(q.as_ref(), self)
    }

    /// Applies `f` to every vertex (affine maps keep the result a polytope).
    pub fn map_vertices(&self, mut f: impl FnMut(&[f64]) -> Vec<f64>) -> Result<Self> {
        ConvexPolytope::new(self.vertices.iter().map(|v| Point::new(f(v))).collect::<Result<_>>()?)
    }

    /// Counter-clockwise hull vertices of a planar polytope (monotone chain).
    pub fn hull_2d(&self) -> Result<Vec<[f64; 2]>> {
        check_dim(2, self.dim())?;
        let mut pts: Vec<[f64; 2]> = self.vertices.iter().map(|v| [v[0], v[1]]).collect();
        pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
        pts.dedup();
        if pts.len() < 3 {
            return Ok(pts);
        }
        let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| {
            (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
        };
        let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
        for pass in 0..2 {
            let start = hull.len();
            let iter: Box<dyn Iterator<Item = &[f64; 2]>> =
                if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
            for &p in iter {
                while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                    hull.pop();
                }
                hull.push(p);
            }
            hull.pop();
        }
        Ok(hull)
    }

    /// Exact (shoelace) area of a planar polytope.
    pub fn area_2d(&self) -> Result<f64> {
        let hull = self.hull_2d()?;
        let n = hull.len();
        let twice: f64 = (0..n)
            .map(|i| {
                let (a, b) = (hull[i], hull[(i + 1) % n]);
                a[0] * b[1] - a[1] * b[0]
            })
            .sum();
        Ok(twice.abs() / 2.0)
    }
}

/// True iff the flat meets the hull, decided by the L1-residual LP.
pub fn flat_intersects_polytope(flat: FlatRef<'_>, p: &ConvexPolytope) -> Result<bool> {
    check_dim(p.dim(), flat.dim())?;
    if flat.k() == 0 && !p.bounding_box().contains(flat.base()) {
        return Ok(false);
    }
    let verts: Vec<&[f64]> = p.vertices.iter().map(|v| v.coords()).collect();
    let scale = verts
        .iter()
        .flat_map(|v| v.iter())
        .chain(flat.base())
        .fold(1.0f64, |m, x| m.max(x.abs()));
    Ok(lp::hull_residual(&verts, flat)? <= TOL * scale)
}
