use std::ops::Deref;

use crate::{Error, Result};

/// A point of `R^d` with finite coordinates, `d >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidParameter("point needs at least one coordinate".into()));
        }
        if let Some(x) = coords.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite coordinate {x}")));
        }
        Ok(Point(coords))
    }

    pub fn origin(d: usize) -> Self {
        Point(vec![0.0; d.max(1)])
    }

    /// The center of the unit cube `[0,1]^d`.
    pub fn cube_center(d: usize) -> Self {
        Point(vec![0.5; d.max(1)])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub(crate) fn from_vec_unchecked(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty());
        Point(coords)
    }
}

impl Deref for Point {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<&[f64]> for Point {
    type Error = Error;

    fn try_from(xs: &[f64]) -> Result<Self> {
        Point::new(xs.to_vec())
    }
}
