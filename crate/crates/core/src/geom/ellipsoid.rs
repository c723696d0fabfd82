use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::{unit_ball_volume, AxisBox, FlatRef, Point, SYM_TOL, TOL};
use crate::error::check_dim;
use crate::{Error, Result};

/// The body `{ x : (x - c)^T M (x - c) <= 1 }` for a symmetric positive
/// definite shape matrix `M`.
///
/// The inverse of `M` (the covariance form) is cached at construction since
/// bounding boxes, slices and projections all need it.
#[derive(Clone, Debug, PartialEq)]
pub struct Ellipsoid {
    center: Point,
    shape: DMatrix<f64>,
    cov: DMatrix<f64>,
    det: f64,
}

impl Ellipsoid {
    pub fn new(center: Point, shape: DMatrix<f64>) -> Result<Self> {
        let d = center.dim();
        check_dim(d, shape.nrows())?;
        check_dim(d, shape.ncols())?;
        let scale = shape.amax().max(1.0);
        for i in 0..d {
            for j in 0..i {
                if (shape[(i, j)] - shape[(j, i)]).abs() > SYM_TOL * scale {
                    return Err(Error::InvalidParameter("shape matrix is not symmetric".into()));
                }
            }
        }
        if shape.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("non-finite shape matrix".into()));
        }
        let shape = (&shape + shape.transpose()) * 0.5;
        let chol = shape.clone().cholesky().ok_or(Error::NotPositiveDefinite)?;
        let det = chol.l_dirty().diagonal().iter().map(|x| x * x).product::<f64>();
        if !(det > 0.0) {
            return Err(Error::NotPositiveDefinite);
        }
        let cov = chol.inverse();
        Ok(Ellipsoid { center, shape, cov, det })
    }

    /// Ball of radius `r` about `center`.
    pub fn ball(center: Point, r: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidParameter(format!("ball radius {r} must be positive")));
        }
        let d = center.dim();
        Ellipsoid::new(center, DMatrix::identity(d, d) / (r * r))
    }

    /// Ellipsoid with principal directions `axes` (orthonormal) and the
    /// matching semi-axis lengths.
    pub fn from_axes(center: Point, axes: &[Vec<f64>], semi_axes: &[f64]) -> Result<Self> {
        let d = center.dim();
        check_dim(d, axes.len())?;
        check_dim(d, semi_axes.len())?;
        let mut m = DMatrix::zeros(d, d);
        for (u, &a) in axes.iter().zip(semi_axes) {
            check_dim(d, u.len())?;
            if !(a > 0.0) {
                return Err(Error::InvalidParameter(format!("semi-axis {a} must be positive")));
            }
            let u = DVector::from_column_slice(u);
            m += &u * u.transpose() / (a * a);
        }
        Ellipsoid::new(center, m)
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn shape(&self) -> &DMatrix<f64> {
        &self.shape
    }

    /// `M^{-1}`; its diagonal holds the squared half-widths of the bounding box.
    pub fn covariance(&self) -> &DMatrix<f64> {
        &self.cov
    }

    /// `(x - c)^T M (x - c)`.
    pub fn quadratic(&self, x: &[f64]) -> f64 {
        let d = self.dim();
        let w: Vec<f64> = x.iter().zip(self.center.iter()).map(|(a, b)| a - b).collect();
        let mut s = 0.0;
        for i in 0..d {
            let mut row = 0.0;
            for j in 0..d {
                row += self.shape[(i, j)] * w[j];
            }
            s += w[i] * row;
        }
        s
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.quadratic(x) <= 1.0 + TOL
    }

    /// `c_d / sqrt(det M)`.
    pub fn volume(&self) -> f64 {
        unit_ball_volume(self.dim()) / self.det.sqrt()
    }

    pub fn half_widths(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.cov[(i, i)].sqrt()).collect()
    }

    pub fn bounding_box(&self) -> AxisBox {
        let h = self.half_widths();
        let lo = self.center.iter().zip(&h).map(|(c, h)| c - h).collect();
        let hi = self.center.iter().zip(&h).map(|(c, h)| c + h).collect();
        AxisBox::from_vecs_unchecked(lo, hi)
    }

    /// True when the closed ellipsoid lies inside `[0,1]^d`.
    pub fn inside_unit_cube(&self) -> bool {
        self.center
            .iter()
            .zip(self.half_widths())
            .all(|(c, h)| c - h >= 0.0 && c + h <= 1.0)
    }

    /// Principal directions (as columns) and semi-axis lengths.
    pub fn principal_axes(&self) -> (DMatrix<f64>, Vec<f64>) {
        let eig = SymmetricEigen::new(self.shape.clone());
        let semi = eig.eigenvalues.iter().map(|l| 1.0 / l.sqrt()).collect();
        (eig.eigenvectors, semi)
    }

    /// `(d-1)`-volume of the section by the hyperplane `x_axis = alpha`.
    ///
    /// Fixing `x_axis - c_axis = t`, the section is the ellipsoid with shape
    /// `M_RR / (1 - t^2 / cov_aa)` over the remaining coordinates `R`.
    pub fn slice_volume(&self, axis: usize, alpha: f64) -> Result<f64> {
        let d = self.dim();
        if axis >= d {
            return Err(Error::InvalidParameter(format!("axis {axis} out of range for d = {d}")));
        }
        let t = alpha - self.center[axis];
        let rho = 1.0 - t * t / self.cov[(axis, axis)];
        if rho < 0.0 {
            return Ok(0.0);
        }
        if d == 1 {
            // a 0-dimensional section is a single point
            return Ok(1.0);
        }
        let rest: Vec<usize> = (0..d).filter(|&i| i != axis).collect();
        let sub = self.shape.select_rows(&rest).select_columns(&rest);
        let det = sub.determinant();
        if !(det > 0.0) {
            return Err(Error::Numerical("section shape lost positive definiteness".into()));
        }
        Ok(unit_ball_volume(d - 1) * rho.powf((d - 1) as f64 / 2.0) / det.sqrt())
    }

    /// Orthogonal projection onto the listed coordinates, itself an
    /// ellipsoid whose covariance is the matching sub-block of `M^{-1}`.
    pub fn project_onto(&self, axes: &[usize]) -> Result<Ellipsoid> {
        if axes.is_empty() || axes.iter().any(|&a| a >= self.dim()) {
            return Err(Error::InvalidParameter("bad projection axes".into()));
        }
        let cov = self.cov.select_rows(axes).select_columns(axes);
        let shape = cov
            .clone()
            .cholesky()
            .ok_or_else(|| Error::Numerical("projected covariance is singular".into()))?
            .inverse();
        let center = Point::from_vec_unchecked(axes.iter().map(|&a| self.center[a]).collect());
        Ellipsoid::new(center, (&shape + shape.transpose()) * 0.5)
    }

    /// The ellipsoid scaled by `factor` about its center.
    pub fn scaled(&self, factor: f64) -> Result<Ellipsoid> {
        Ellipsoid::new(self.center.clone(), &self.shape / (factor * factor))
    }
}

/// True iff the flat meets the closed ellipsoid. The minimum of the quadratic
/// over the flat is found by solving `(B^T M B) t = -B^T M (base - c)`.
pub fn flat_intersects_ellipsoid(flat: FlatRef<'_>, e: &Ellipsoid) -> Result<bool> {
    check_dim(e.dim(), flat.dim())?;
    let k = flat.k();
    if k == 0 {
        return Ok(e.contains(flat.base()));
    }
    let d = flat.dim();
    let b = DMatrix::from_fn(d, k, |i, j| flat.basis_vector(j)[i]);
    let w0 = DVector::from_iterator(d, flat.base().iter().zip(e.center.iter()).map(|(x, c)| x - c));
    let mb = &e.shape * &b;
    let gram = b.transpose() * &mb;
    let rhs = -(mb.transpose() * &w0);
    let chol = gram
        .cholesky()
        .ok_or_else(|| Error::Numerical("B^T M B is singular".into()))?;
    let t = chol.solve(&rhs);
    let w = w0 + b * t;
    let value = w.dot(&(&e.shape * &w));
    Ok(value <= 1.0 + TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::KFlat;
    use std::f64::consts::PI;

    fn pt(xs: &[f64]) -> Point {
        Point::new(xs.to_vec()).unwrap()
    }

    fn axis_ellipsoid(c: &[f64], semi: &[f64]) -> Ellipsoid {
        let d = c.len();
        let axes: Vec<Vec<f64>> = (0..d)
            .map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Ellipsoid::from_axes(pt(c), &axes, semi).unwrap()
    }

    #[test]
    fn rejects_invalid_shapes() {
        let asym = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.4, 1.0]);
        assert!(Ellipsoid::new(pt(&[0.0, 0.0]), asym).is_err());
        let indefinite = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        assert!(matches!(
            Ellipsoid::new(pt(&[0.0, 0.0]), indefinite),
            Err(Error::NotPositiveDefinite)
        ));
        assert!(Ellipsoid::new(pt(&[0.0, 0.0]), DMatrix::identity(3, 3)).is_err());
    }

    #[test]
    fn flat_through_center_intersects() {
        let e = axis_ellipsoid(&[0.3, 0.7], &[0.01, 0.2]);
        let f = KFlat::new(pt(&[0.3, 0.7]), vec![vec![0.6, 0.8]]).unwrap();
        assert!(flat_intersects_ellipsoid(f.as_ref(), &e).unwrap());
    }

    #[test]
    fn distant_line_misses_unit_disk() {
        let e = Ellipsoid::ball(pt(&[0.0, 0.0]), 1.0).unwrap();
        let f = KFlat::new(pt(&[0.0, 2.0]), vec![vec![1.0, 0.0]]).unwrap();
        assert!(!flat_intersects_ellipsoid(f.as_ref(), &e).unwrap());
    }

    #[test]
    fn vertical_line_near_the_rim() {
        // min over the line x = 0.95 is (0.45 / 0.5)^2 = 0.81
        let e = axis_ellipsoid(&[0.5, 0.5], &[0.5, 0.1]);
        let f = KFlat::new(pt(&[0.95, 0.0]), vec![vec![0.0, 1.0]]).unwrap();
        assert!(flat_intersects_ellipsoid(f.as_ref(), &e).unwrap());
        let q = e.quadratic(&[0.95, 0.5]);
        assert!((q - 0.81).abs() < 1e-12);
        let g = KFlat::new(pt(&[1.0 + 1e-6, 0.0]), vec![vec![0.0, 1.0]]).unwrap();
        assert!(!flat_intersects_ellipsoid(g.as_ref(), &e).unwrap());
    }

    #[test]
    fn tangent_flat_counts_as_intersecting() {
        let e = Ellipsoid::ball(pt(&[0.0, 0.0, 0.0]), 1.0).unwrap();
        let plane = KFlat::new(pt(&[0.0, 0.0, 1.0]), vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        assert!(flat_intersects_ellipsoid(plane.as_ref(), &e).unwrap());
    }

    #[test]
    fn volumes() {
        assert!((Ellipsoid::ball(pt(&[0.0, 0.0]), 1.0).unwrap().volume() - PI).abs() < 1e-14);
        let b3 = Ellipsoid::ball(pt(&[0.0, 0.0, 0.0]), 1.0).unwrap();
        assert!((b3.volume() - 4.0 * PI / 3.0).abs() < 1e-14);
        let e = axis_ellipsoid(&[0.5, 0.5], &[0.5, 0.1]);
        assert!((e.volume() - PI * 0.05).abs() < 1e-14);
        assert!((e.volume() - 0.15708).abs() < 1e-5);
    }

    #[test]
    fn slices() {
        let disk = Ellipsoid::ball(pt(&[0.0, 0.0]), 1.0).unwrap();
        assert!((disk.slice_volume(0, 0.0).unwrap() - 2.0).abs() < 1e-14);
        assert_eq!(disk.slice_volume(0, 1.5).unwrap(), 0.0);
        assert_eq!(disk.slice_volume(1, -1.0001).unwrap(), 0.0);
        let ball = Ellipsoid::ball(pt(&[0.0, 0.0, 0.0]), 1.0).unwrap();
        // section radius sqrt(1 - 0.25)
        assert!((ball.slice_volume(2, 0.5).unwrap() - PI * 0.75).abs() < 1e-14);
        assert!((ball.slice_volume(2, 0.5).unwrap() - 2.3562).abs() < 1e-4);
        assert!(ball.slice_volume(3, 0.0).is_err());
    }

    #[test]
    fn projection_of_a_rotated_ellipse() {
        // semi-axes 2 and 1 rotated by 45 degrees: shadow on x has half-width sqrt((4 + 1) / 2)
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let e = Ellipsoid::from_axes(pt(&[1.0, 2.0]), &[vec![s, s], vec![-s, s]], &[2.0, 1.0]).unwrap();
        let p = e.project_onto(&[0]).unwrap();
        assert!((p.half_widths()[0] - 2.5f64.sqrt()).abs() < 1e-12);
        assert!((e.half_widths()[0] - 2.5f64.sqrt()).abs() < 1e-12);
        assert_eq!(p.center().coords(), &[1.0]);
    }
}
