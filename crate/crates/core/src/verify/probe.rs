//! Falsification probe behind the lower bound: a ball of volume `eps` that
//! keeps distance more than `r` from every flat is an unstabbed heavy body.
//! Finding one proves a net broken; finding none proves nothing.

use super::StabIndex;
use crate::geom::{unit_ball_volume, Point};
use crate::{Error, Net, Result};

/// Cap on the number of grid points a probe visits.
pub const PROBE_MAX_POINTS: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeResult {
    pub found: bool,
    pub center: Option<Point>,
    pub radius: f64,
    pub ball_volume: f64,
    /// Grid resolution per axis actually scanned.
    pub resolution: usize,
    /// Number of candidate centers tested.
    pub candidates: usize,
}

/// Radius of the ball of volume `eps`: `(eps / c_d)^(1/d)`.
pub fn probe_radius(d: usize, eps: f64) -> f64 {
    (eps / unit_ball_volume(d)).powf(1.0 / d as f64)
}

fn max_resolution(d: usize) -> usize {
    let mut n = (PROBE_MAX_POINTS as f64).powf(1.0 / d as f64).floor() as usize;
    while n.checked_pow(d as u32).map_or(true, |p| p > PROBE_MAX_POINTS) {
        n -= 1;
    }
    n.max(2)
}

/// `ceil(4 / r)` per axis, reduced so that at most [`PROBE_MAX_POINTS`]
/// grid points are scanned.
pub fn default_resolution(d: usize, eps: f64) -> usize {
    let r = probe_radius(d, eps);
    ((4.0 / r).ceil() as usize).clamp(2, max_resolution(d))
}

/// Scans the cube center and the grid `(m + 1/2) / resolution` for a center
/// whose ball of volume `eps` lies in the cube and misses every flat.
/// Returns the uncovered candidate closest to the cube center.
pub fn adversarial_ball_probe(net: &Net, eps: f64, resolution: usize) -> Result<ProbeResult> {
    adversarial_ball_probe_indexed(&StabIndex::new(net), eps, resolution)
}

pub fn adversarial_ball_probe_indexed(index: &StabIndex<'_>, eps: f64, resolution: usize) -> Result<ProbeResult> {
    if resolution < 2 {
        return Err(Error::InvalidParameter(format!("probe resolution must be at least 2, got {resolution}")));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    let d = index.net().dim();
    let resolution = resolution.min(max_resolution(d));
    let r = probe_radius(d, eps);
    let mut result = ProbeResult {
        found: false,
        center: None,
        radius: r,
        ball_volume: unit_ball_volume(d) * r.powi(d as i32),
        resolution,
        candidates: 0,
    };
    if 2.0 * r > 1.0 {
        return Ok(result);
    }

    let mid = vec![0.5; d];
    result.candidates += 1;
    if !index.ball_is_stabbed(&mid, r) {
        result.found = true;
        result.center = Some(Point::cube_center(d));
        return Ok(result);
    }

    let ticks: Vec<f64> = (0..resolution)
        .map(|m| (m as f64 + 0.5) / resolution as f64)
        .filter(|&x| x >= r && x <= 1.0 - r)
        .collect();
    if ticks.is_empty() {
        return Ok(result);
    }
    let mut digit = vec![0usize; d];
    let mut x: Vec<f64> = vec![ticks[0]; d];
    let mut best: Option<(f64, Vec<f64>)> = None;
    loop {
        result.candidates += 1;
        let dist2: f64 = x.iter().map(|c| (c - 0.5) * (c - 0.5)).sum();
        if best.as_ref().map_or(true, |b| dist2 < b.0) && !index.ball_is_stabbed(&x, r) {
            best = Some((dist2, x.clone()));
        }
        // odometer over the tick grid
        let mut axis = 0;
        loop {
            if axis == d {
                if let Some((_, c)) = best {
                    result.found = true;
                    result.center = Some(Point::new(c)?);
                }
                return Ok(result);
            }
            digit[axis] += 1;
            if digit[axis] < ticks.len() {
                x[axis] = ticks[digit[axis]];
                break;
            }
            digit[axis] = 0;
            x[axis] = ticks[0];
            axis += 1;
        }
    }
}
