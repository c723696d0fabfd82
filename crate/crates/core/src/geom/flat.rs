use super::{dot, norm, Point, TOL};
use crate::error::check_dim;
use crate::{Error, Result};

/// An owned k-flat: a base point plus `k` orthonormal direction vectors.
///
/// Storage is one contiguous record `[base; basis_0; ...; basis_{k-1}]`, the
/// same layout a [`crate::Net`] uses for each of its flats.
#[derive(Clone, Debug, PartialEq)]
pub struct KFlat {
    dim: usize,
    k: usize,
    data: Vec<f64>,
}

/// Borrowed view of a k-flat record.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlatRef<'a> {
    dim: usize,
    k: usize,
    data: &'a [f64],
}

impl KFlat {
    /// Builds a flat, checking `k < d` and orthonormality of the basis.
    pub fn new(base: Point, basis: Vec<Vec<f64>>) -> Result<Self> {
        let dim = base.dim();
        let k = basis.len();
        if k >= dim {
            return Err(Error::FullDimensional(dim));
        }
        let mut data = base.into_vec();
        for v in &basis {
            check_dim(dim, v.len())?;
            data.extend_from_slice(v);
        }
        let flat = KFlat { dim, k, data };
        flat.as_ref().check_orthonormal()?;
        Ok(flat)
    }

    /// The 0-flat `{p}`.
    pub fn point(p: Point) -> Self {
        KFlat { dim: p.dim(), k: 0, data: p.into_vec() }
    }

    pub(crate) fn from_record(dim: usize, k: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), dim * (k + 1));
        KFlat { dim, k, data }
    }

    pub fn as_ref(&self) -> FlatRef<'_> {
        FlatRef { dim: self.dim, k: self.k, data: &self.data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> &[f64] {
        &self.data[..self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> &[f64] {
        self.as_ref().basis_vector(i)
    }
}

impl<'a> FlatRef<'a> {
    pub(crate) fn new(dim: usize, k: usize, data: &'a [f64]) -> Self {
        debug_assert_eq!(data.len(), dim * (k + 1));
        FlatRef { dim, k, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> &'a [f64] {
        &self.data[..self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> &'a [f64] {
        assert!(i < self.k, "basis index {i} out of range for a {}-flat", self.k);
        &self.data[self.dim * (i + 1)..self.dim * (i + 2)]
    }

    pub fn basis(&self) -> impl Iterator<Item = &'a [f64]> + 'a {
        let dim = self.dim;
        self.data[dim..].chunks_exact(dim)
    }

    /// The raw record: base followed by the basis vectors.
    pub fn record(&self) -> &'a [f64] {
        self.data
    }

    pub fn to_owned(&self) -> KFlat {
        KFlat::from_record(self.dim, self.k, self.data.to_vec())
    }

    pub(crate) fn check_orthonormal(&self) -> Result<()> {
        let vs: Vec<&[f64]> = self.basis().collect();
        for (i, a) in vs.iter().enumerate() {
            if (dot(a, a) - 1.0).abs() > TOL {
                return Err(Error::InvalidParameter(format!("basis vector {i} is not unit length")));
            }
            for (j, b) in vs.iter().enumerate().skip(i + 1) {
                if dot(a, b).abs() > TOL {
                    return Err(Error::InvalidParameter(format!(
                        "basis vectors {i} and {j} are not orthogonal"
                    )));
                }
            }
        }
        if let Some(x) = self.data.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite flat coordinate {x}")));
        }
        Ok(())
    }

    /// If every basis vector is a signed coordinate axis, the bitmask of
    /// those (free) axes.
    pub fn axis_aligned_free_axes(&self) -> Option<u64> {
        let mut mask = 0u64;
        for v in self.basis() {
            let mut axis = None;
            for (i, &x) in v.iter().enumerate() {
                if x == 0.0 {
                    continue;
                }
                if x.abs() != 1.0 || axis.is_some() {
                    return None;
                }
                axis = Some(i);
            }
            mask |= 1u64 << axis?;
        }
        Some(mask)
    }

    pub(crate) fn project_unchecked(&self, q: &[f64]) -> Vec<f64> {
        let base = self.base();
        let diff: Vec<f64> = q.iter().zip(base).map(|(a, b)| a - b).collect();
        let mut p = base.to_vec();
        for v in self.basis() {
            let t = dot(&diff, v);
            for (pi, vi) in p.iter_mut().zip(v) {
                *pi += t * vi;
            }
        }
        p
    }

    pub(crate) fn dist_sq_unchecked(&self, q: &[f64]) -> f64 {
        let mut stack = [0.0; 16];
        let mut heap = Vec::new();
        let diff: &mut [f64] = if q.len() <= stack.len() {
            &mut stack[..q.len()]
        } else {
            heap.resize(q.len(), 0.0);
            &mut heap
        };
        for ((d, a), b) in diff.iter_mut().zip(q).zip(self.base()) {
            *d = a - b;
        }
        for v in self.basis() {
            let t = dot(diff, v);
            for (di, vi) in diff.iter_mut().zip(v) {
                *di -= t * vi;
            }
        }
        dot(diff, diff)
    }
}

/// The flat spanned by `points`: `k` is the affine rank minus one, the basis
/// is an orthonormalization of the difference vectors, and the base is the
/// first point.
pub fn flat_from_affine_hull(points: &[Point]) -> Result<KFlat> {
    let first = points
        .first()
        .ok_or_else(|| Error::InvalidParameter("affine hull of an empty point set".into()))?;
    let dim = first.dim();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for p in &points[1..] {
        check_dim(dim, p.dim())?;
        let mut v: Vec<f64> = p.iter().zip(first.iter()).map(|(a, b)| a - b).collect();
        let scale = norm(&v);
        // two passes of modified Gram-Schmidt keep the basis orthonormal to 1e-15
        for _ in 0..2 {
            for b in &basis {
                let t = dot(&v, b);
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= t * bi;
                }
            }
        }
        let n = norm(&v);
        if n > TOL * scale.max(1.0) {
            v.iter_mut().for_each(|x| *x /= n);
            basis.push(v);
        }
    }
    if basis.len() >= dim {
        return Err(Error::FullDimensional(dim));
    }
    KFlat::new(first.clone(), basis)
}

/// Euclidean distance `|(I - B B^T)(q - base)|`.
pub fn dist_point_flat(q: &[f64], flat: FlatRef<'_>) -> Result<f64> {
    check_dim(flat.dim(), q.len())?;
    Ok(flat.dist_sq_unchecked(q).sqrt())
}

/// Orthogonal projection of `q` onto the flat.
pub fn project_point_flat(q: &[f64], flat: FlatRef<'_>) -> Result<Point> {
    check_dim(flat.dim(), q.len())?;
    Point::new(flat.project_unchecked(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(xs: &[f64]) -> Point {
        Point::new(xs.to_vec()).unwrap()
    }

    /// Rank of a set of row vectors by Gaussian elimination with partial
    /// pivoting; independent of the Gram-Schmidt path above.
    fn rank_by_elimination(mut rows: Vec<Vec<f64>>) -> usize {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows.len())
                .filter(|&r| rows[r][c].abs() > 1e-12)
                .max_by(|&a, &b| rows[a][c].abs().total_cmp(&rows[b][c].abs()))
            else {
                continue;
            };
            rows.swap(rank, piv);
            for r in 0..rows.len() {
                if r != rank {
                    let f = rows[r][c] / rows[rank][c];
                    for cc in 0..cols {
                        rows[r][cc] -= f * rows[rank][cc];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn single_point_is_a_zero_flat() {
        let f = flat_from_affine_hull(&[pt(&[0.0, 0.0])]).unwrap();
        assert_eq!(f.k(), 0);
        assert_eq!(f.base(), &[0.0, 0.0]);
    }

    #[test]
    fn two_points_give_the_x_axis() {
        let f = flat_from_affine_hull(&[pt(&[0.0, 0.0, 0.0]), pt(&[1.0, 0.0, 0.0])]).unwrap();
        assert_eq!(f.k(), 1);
        assert_eq!(f.basis_vector(0), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn coplanar_points_give_a_plane() {
        let pts = [
            pt(&[0.0, 0.0, 0.0]),
            pt(&[1.0, 0.0, 0.0]),
            pt(&[1.0, 1.0, 0.0]),
            pt(&[2.0, 1.0, 0.0]),
        ];
        let diffs: Vec<Vec<f64>> = pts[1..]
            .iter()
            .map(|p| p.iter().zip(pts[0].iter()).map(|(a, b)| a - b).collect())
            .collect();
        let expected_k = rank_by_elimination(diffs);
        assert_eq!(expected_k, 2);
        let f = flat_from_affine_hull(&pts).unwrap();
        assert_eq!(f.k(), expected_k);
        // normal of the plane is e_z
        for v in f.as_ref().basis() {
            assert!(v[2].abs() < 1e-15);
        }
        f.as_ref().check_orthonormal().unwrap();
    }

    #[test]
    fn spanning_points_are_rejected() {
        let err = flat_from_affine_hull(&[pt(&[0.0, 0.0]), pt(&[1.0, 0.0]), pt(&[0.0, 1.0])]);
        assert!(matches!(err, Err(Error::FullDimensional(2))));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let err = flat_from_affine_hull(&[pt(&[0.0, 0.0]), pt(&[1.0, 0.0, 0.0])]);
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn distances() {
        let xaxis2 = KFlat::new(pt(&[0.0, 0.0]), vec![vec![1.0, 0.0]]).unwrap();
        assert_eq!(dist_point_flat(&[0.0, 1.0], xaxis2.as_ref()).unwrap(), 1.0);
        assert_eq!(dist_point_flat(&[3.0, 0.0], xaxis2.as_ref()).unwrap(), 0.0);
        let xaxis3 = KFlat::new(pt(&[0.0, 0.0, 0.0]), vec![vec![1.0, 0.0, 0.0]]).unwrap();
        let d = dist_point_flat(&[1.0, 1.0, 1.0], xaxis3.as_ref()).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
        assert!(dist_point_flat(&[1.0, 1.0], xaxis3.as_ref()).is_err());
    }

    #[test]
    fn new_rejects_bad_bases() {
        assert!(KFlat::new(pt(&[0.0, 0.0]), vec![vec![2.0, 0.0]]).is_err());
        assert!(KFlat::new(pt(&[0.0, 0.0, 0.0]), vec![vec![1.0, 0.0, 0.0], vec![0.6, 0.8, 0.0]]).is_err());
        assert!(KFlat::new(pt(&[0.0, 0.0]), vec![vec![1.0, 0.0], vec![0.0, 1.0]]).is_err());
    }

    #[test]
    fn axis_alignment_detection() {
        let f = KFlat::new(pt(&[0.0, 0.5, 0.0]), vec![vec![0.0, 0.0, -1.0]]).unwrap();
        assert_eq!(f.as_ref().axis_aligned_free_axes(), Some(0b100));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let g = KFlat::new(pt(&[0.0, 0.0]), vec![vec![s, s]]).unwrap();
        assert_eq!(g.as_ref().axis_aligned_free_axes(), None);
        let p = KFlat::point(pt(&[0.1, 0.2]));
        assert_eq!(p.as_ref().axis_aligned_free_axes(), Some(0));
    }
}
