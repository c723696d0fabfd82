use nalgebra::{DMatrix, DVector};

use super::{grid_hyperplane_net, recursive_kflat_net, weak_eps_net, check_eps, Construction, Net};
use crate::geom::{dot, mvee, norm, unit_ball_volume, ConvexPolytope, Ellipsoid, Point, MVEE_TOL};
use crate::{Error, Result};

/// Affine map `T(x) = A x + b` taking a convex body into the unit cube so
/// that `B/d ⊆ T(C) ⊆ B`, where `B` is the ball of diameter 1 centered at
/// the cube center.
#[derive(Clone, Debug)]
pub struct AffineNormalization {
    linear: DMatrix<f64>,
    inverse: DMatrix<f64>,
    shift: DVector<f64>,
}

impl AffineNormalization {
    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn linear(&self) -> &DMatrix<f64> {
        &self.linear
    }

    pub fn shift(&self) -> &DVector<f64> {
        &self.shift
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (&self.linear * DVector::from_column_slice(x) + &self.shift).iter().copied().collect()
    }

    pub fn apply_inverse(&self, y: &[f64]) -> Vec<f64> {
        (&self.inverse * (DVector::from_column_slice(y) - &self.shift)).iter().copied().collect()
    }

    /// `T^-1(E)` for an ellipsoid `E` given in normalized coordinates.
    pub fn pull_back_ellipsoid(&self, e: &Ellipsoid) -> Result<Ellipsoid> {
        let center = Point::new(self.apply_inverse(e.center()))?;
        let shape = self.linear.transpose() * e.shape() * &self.linear;
        Ellipsoid::new(center, (&shape + shape.transpose()) * 0.5)
    }

    /// `|det A|`, the factor by which `T` scales volumes.
    pub fn volume_factor(&self) -> f64 {
        self.linear.determinant().abs()
    }
}

/// `delta = c_d / (2d)^d`, the guaranteed fraction of the cube covered by
/// the normalized body.
pub fn body_scaling_factor(d: usize) -> f64 {
    unit_ball_volume(d) / (2.0 * d as f64).powi(d as i32)
}

/// Normalizing map from the minimum-volume enclosing ellipsoid of the
/// body's vertices: the ellipsoid goes to the ball of radius 1/2 centered at
/// `(1/2, ..., 1/2)`.
pub fn ball_normalization(body: &ConvexPolytope) -> Result<AffineNormalization> {
    let e = mvee(body.vertices(), MVEE_TOL)?;
    let d = e.dim();
    let l = e.shape().clone().cholesky().ok_or(Error::NotPositiveDefinite)?.l();
    let linear = l.transpose() * 0.5;
    let inverse = linear.clone().try_inverse().ok_or_else(|| Error::Degenerate("singular normalization".into()))?;
    let c = DVector::from_column_slice(e.center());
    let shift = DVector::from_element(d, 0.5) - &linear * c;
    Ok(AffineNormalization { linear, inverse, shift })
}

/// k-flats stabbing every convex body `X` with `vol(X ∩ C) >= eps vol(C)`,
/// for a polytope `C` with nonempty interior.
///
/// Normalizes `C` into the cube, builds the cube net at `eps * delta` and
/// maps it back. The net of a normalized body comes from [`weak_eps_net`]
/// for points, the hyperplane grid for `k = d - 1` and the recursive
/// construction otherwise.
pub fn affine_net_for_body(body: &ConvexPolytope, k: usize, eps: f64) -> Result<Net> {
    let d = body.dim();
    if k >= d {
        return Err(Error::FullDimensional(d));
    }
    check_eps(eps)?;
    let t = ball_normalization(body)?;
    let inner_eps = eps * body_scaling_factor(d);
    let cube_net = if k == 0 {
        weak_eps_net(d, inner_eps)?
    } else if k + 1 == d {
        grid_hyperplane_net(d, inner_eps)?
    } else {
        recursive_kflat_net(d, k, inner_eps)?
    };

    let mut data = Vec::with_capacity(cube_net.len() * d * (k + 1));
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(k);
    for f in cube_net.flats() {
        let base = t.apply_inverse(f.base());
        basis.clear();
        for v in f.basis() {
            let mut w: Vec<f64> = (&t.inverse * DVector::from_column_slice(v)).iter().copied().collect();
            // Gram-Schmidt, twice for stability
            for _ in 0..2 {
                for u in &basis {
                    let c = dot(&w, u);
                    w.iter_mut().zip(u).for_each(|(wi, ui)| *wi -= c * ui);
                }
            }
            let n = norm(&w);
            w.iter_mut().for_each(|wi| *wi /= n);
            basis.push(w);
        }
        data.extend_from_slice(&base);
        for w in &basis {
            data.extend_from_slice(w);
        }
    }
    Ok(Net::from_records(d, k, eps, Construction::AffineBody, None, data))
}
