use super::{lp, FlatRef, Point, TOL};
use crate::error::check_dim;
use crate::{Error, Result};

/// Axis-aligned box `[lo_0, hi_0] x ... x [lo_{d-1}, hi_{d-1}]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisBox {
    lo: Point,
    hi: Point,
}

impl AxisBox {
    pub fn new(lo: Point, hi: Point) -> Result<Self> {
        check_dim(lo.dim(), hi.dim())?;
        if lo.iter().zip(hi.iter()).any(|(a, b)| a > b) {
            return Err(Error::InvalidParameter("box has lo > hi on some axis".into()));
        }
        Ok(AxisBox { lo, hi })
    }

    pub(crate) fn from_vecs_unchecked(lo: Vec<f64>, hi: Vec<f64>) -> Self {
        AxisBox { lo: Point::from_vec_unchecked(lo), hi: Point::from_vec_unchecked(hi) }
    }

    pub fn unit_cube(d: usize) -> Self {
        AxisBox::from_vecs_unchecked(vec![0.0; d], vec![1.0; d])
    }

    pub fn dim(&self) -> usize {
        self.lo.dim()
    }

    pub fn lo(&self) -> &Point {
        &self.lo
    }

    pub fn hi(&self) -> &Point {
        &self.hi
    }

    pub fn side(&self, i: usize) -> f64 {
        self.hi[i] - self.lo[i]
    }

    pub fn volume(&self) -> f64 {
        (0..self.dim()).map(|i| self.side(i)).product()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lo.iter().zip(self.hi.iter()))
            .all(|(x, (lo, hi))| *x >= lo - TOL && *x <= hi + TOL)
    }

    pub fn inside_unit_cube(&self) -> bool {
        self.lo.iter().all(|&x| x >= 0.0) && self.hi.iter().all(|&x| x <= 1.0)
    }
}

/// True iff some `t` has `lo <= base + B t <= hi` (up to [`TOL`]).
///
/// Points and lines are decided directly; higher flats go through a small
/// LP over the `2d` slab constraints in `k` variables.
pub fn flat_intersects_box(flat: FlatRef<'_>, b: &AxisBox) -> Result<bool> {
    check_dim(b.dim(), flat.dim())?;
    let base = flat.base();
    match flat.k() {
        0 => Ok(b.contains(base)),
        1 => {
            let v = flat.basis_vector(0);
            let (mut tmin, mut tmax) = (f64::NEG_INFINITY, f64::INFINITY);
            for i in 0..flat.dim() {
                let (lo, hi) = (b.lo[i] - TOL, b.hi[i] + TOL);
                if v[i] == 0.0 {
                    if base[i] < lo || base[i] > hi {
                        return Ok(false);
                    }
                } else {
                    let (t0, t1) = ((lo - base[i]) / v[i], (hi - base[i]) / v[i]);
                    tmin = tmin.max(t0.min(t1));
                    tmax = tmax.min(t0.max(t1));
                }
            }
            Ok(tmin <= tmax)
        }
        _ => lp::flat_meets_box(flat, b.lo(), b.hi()),
    }
}
