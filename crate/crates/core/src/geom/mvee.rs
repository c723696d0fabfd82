//! Minimum-volume enclosing ellipsoid by Khachiyan's barycentric
//! coordinate-ascent, with the Todd-Yildirim away steps that let weights of
//! interior points drain to zero.
//!
//! With weights `u` on the lifted points `q_j = (p_j, 1)`, the iteration
//! drives `kappa_j = q_j^T (Q U Q^T)^{-1} q_j` towards `<= d + 1` everywhere.
//! The ellipsoid is read off as center `P u` and shape
//! `(P U P^T - c c^T)^{-1} / d`.

use nalgebra::{DMatrix, DVector};

use super::{flat_from_affine_hull, Ellipsoid, Point};
use crate::error::check_dim;
use crate::{Error, Result};

pub const MVEE_TOL: f64 = 1e-7;
pub const MVEE_MAX_ITERATIONS: usize = 100_000;

/// Minimum-volume ellipsoid containing `points`, to relative residual `tol`.
///
/// Every input point satisfies `(x - c)^T M (x - c) <= 1` on return; the
/// shape is rescaled at the end if the last iterate left any point slightly
/// outside.
pub fn mvee(points: &[Point], tol: f64) -> Result<Ellipsoid> {
    let first = points
        .first()
        .ok_or_else(|| Error::InvalidParameter("MVEE of an empty point set".into()))?;
    let d = first.dim();
    for p in points {
        check_dim(d, p.dim())?;
    }
    if points.len() < d + 1 {
        return Err(Error::Degenerate(format!("{} points cannot span R^{d}", points.len())));
    }
    match flat_from_affine_hull(points) {
        Err(Error::FullDimensional(_)) => {}
        Ok(f) => return Err(Error::Degenerate(format!("points lie in a {}-flat", f.k()))),
        Err(e) => return Err(e),
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance {tol} must be positive")));
    }

    let n = points.len();
    let lifted = DMatrix::from_fn(d + 1, n, |i, j| if i < d { points[j][i] } else { 1.0 });
    let dd = (d + 1) as f64;
    let mut u = DVector::from_element(n, 1.0 / n as f64);

    for _ in 0..MVEE_MAX_ITERATIONS {
        let weighted = DMatrix::from_fn(d + 1, n, |i, j| lifted[(i, j)] * u[j]);
        let x = &weighted * lifted.transpose();
        let x_inv = x
            .cholesky()
            .ok_or_else(|| Error::Degenerate("moment matrix became singular".into()))?
            .inverse();
        let kappa: Vec<f64> = (0..n)
            .map(|j| {
                let q = lifted.column(j);
                q.dot(&(&x_inv * q))
            })
            .collect();
        let (j_up, k_up) = kappa
            .iter()
            .copied()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty");
        let (j_down, k_down) = kappa
            .iter()
            .copied()
            .enumerate()
            .filter(|&(j, _)| u[j] > 0.0)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("weights sum to one");
        let up_gap = k_up / dd - 1.0;
        let down_gap = 1.0 - k_down / dd;
        if up_gap <= tol && down_gap <= tol {
            break;
        }
        if up_gap >= down_gap {
            let beta = (k_up - dd) / (dd * (k_up - 1.0));
            u *= 1.0 - beta;
            u[j_up] += beta;
        } else {
            let mut beta = (k_down - dd) / (dd * (k_down - 1.0));
            let floor = -u[j_down] / (1.0 - u[j_down]);
            if beta <= floor {
                beta = floor;
            }
            u *= 1.0 - beta;
            u[j_down] += beta;
            if beta == floor {
                u[j_down] = 0.0;
            }
        }
    }

    let pts = lifted.rows(0, d);
    let center = &pts * &u;
    let weighted = DMatrix::from_fn(d, n, |i, j| pts[(i, j)] * u[j]);
    let scatter = &weighted * pts.transpose() - &center * center.transpose();
    let mut shape = scatter
        .cholesky()
        .ok_or_else(|| Error::Degenerate("scatter matrix is singular".into()))?
        .inverse()
        / d as f64;
    shape = (&shape + shape.transpose()) * 0.5;

    let center = Point::new(center.iter().copied().collect())?;
    let e = Ellipsoid::new(center.clone(), shape.clone())?;
    let worst = points.iter().map(|p| e.quadratic(p)).fold(0.0f64, f64::max);
    if worst > 1.0 {
        Ellipsoid::new(center, shape / worst)
    } else {
        Ok(e)
    }
}
