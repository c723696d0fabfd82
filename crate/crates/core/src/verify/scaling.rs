use std::time::Instant;

use crate::net::Construction;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingRow {
    pub eps: f64,
    pub size: usize,
    /// Least-squares slope over this row and all earlier ones; undefined
    /// for the first row.
    pub slope_so_far: Option<f64>,
    pub millis: u128,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingReport {
    pub construction: Construction,
    pub d: usize,
    pub k: usize,
    pub rows: Vec<ScalingRow>,
}

impl ScalingReport {
    /// Slope of `log |net|` against `log(1/eps)` over all rows.
    pub fn slope(&self) -> Option<f64> {
        self.rows.last().and_then(|r| r.slope_so_far)
    }
}

/// Least-squares slope of `ys` against `xs`; `None` with fewer than two
/// distinct x-values.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len() as f64;
    if xs.len() < 2 || xs.len() != ys.len() {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Builds the construction at every `eps` (strictly decreasing) and records
/// size and build time, with the running log-log slope.
pub fn scaling_report(construction: Construction, d: usize, k: usize, eps_list: &[f64]) -> Result<ScalingReport> {
    scaling_report_with(construction, d, k, eps_list, |_| {})
}

/// [`scaling_report`] calling `progress` after each row.
pub fn scaling_report_with(
    construction: Construction,
    d: usize,
    k: usize,
    eps_list: &[f64],
    mut progress: impl FnMut(&ScalingRow),
) -> Result<ScalingReport> {
    if eps_list.is_empty() {
        return Err(Error::InvalidParameter("empty eps list".into()));
    }
    if eps_list.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidParameter("eps list must be strictly decreasing".into()));
    }
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    let mut rows = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let start = Instant::now();
        let size = construction.build(d, k, eps)?.len();
        let millis = start.elapsed().as_millis();
        if size > 0 {
            xs.push((1.0 / eps).ln());
            ys.push((size as f64).ln());
        }
        let row = ScalingRow { eps, size, slope_so_far: least_squares_slope(&xs, &ys), millis };
        progress(&row);
        rows.push(row);
    }
    Ok(ScalingReport { construction, d, k, rows })
}
