use super::{ceil_snap, check_eps, lg_inv, Construction, Net};
use crate::{Error, Result};

/// Interior hyperplane positions of the grid with spacing `eps^(1/d)`.
///
/// When `eps^(-1/d)` is (numerically) an integer `n` the positions are the
/// exact quotients `m / n`.
pub(crate) fn grid_positions(d: usize, eps: f64) -> Vec<f64> {
    if eps >= 1.0 {
        return Vec::new();
    }
    let inv_side = 2f64.powf(lg_inv(eps) / d as f64);
    let n = ceil_snap(inv_side);
    if (inv_side - n as f64).abs() <= 1e-9 * inv_side {
        (1..n).map(|m| m as f64 / n as f64).collect()
    } else {
        let side = 1.0 / inv_side;
        (1..n).map(|m| m as f64 * side).collect()
    }
}

/// Raw `(d-1)`-flat records of the grid net.
pub(crate) fn grid_records(d: usize, eps: f64) -> Vec<f64> {
    let positions = grid_positions(d, eps);
    let w = d * d;
    let mut out = Vec::with_capacity(d * positions.len() * w);
    for axis in 0..d {
        for &c in &positions {
            let mut base = vec![0.0; d];
            base[axis] = c;
            out.extend_from_slice(&base);
            for free in (0..d).filter(|&i| i != axis) {
                let mut e = vec![0.0; d];
                e[free] = 1.0;
                out.extend_from_slice(&e);
            }
        }
    }
    out
}

/// Hyperplanes of the regular grid with side `eps^(1/d)`: on each axis the
/// interior planes `x_j = m s` for `m = 1..ceil(1/s) - 1`. Any body of
/// volume at least `eps` is too fat to fit inside one grid cell.
///
/// `eps >= 1` gives the empty net.
pub fn grid_hyperplane_net(d: usize, eps: f64) -> Result<Net> {
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be at least 1".into()));
    }
    check_eps(eps)?;
    Ok(Net::from_records(d, d - 1, eps, Construction::GridHyperplane, None, grid_records(d, eps)))
}
