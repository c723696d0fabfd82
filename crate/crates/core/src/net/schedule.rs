use super::{ceil_snap, lg_inv};

/// Derived parameters of the recursive constructions. All logarithms are
/// base 2.
///
/// * k-flat nets: `tau = ceil(lg(1/eps) / d) + 3 ceil(lg(3d)) + 1` levels,
///   with sub-net parameters `eps_i = 2^i eps / (4d)` for `i = 1..=tau`.
/// * 2-D ellipse nets: `m = 3 + ceil(lg(1/eps))` grid shapes.
/// * d-dimensional ellipsoid nets: `tau = ceil(lg(1/eps) / d)`,
///   `delta(i) = 2^i eps^(1/d)` and `m_levels[i] = ceil(lg(1/delta(i)))`
///   for `i = 0..=tau`.
#[derive(Clone, Debug, PartialEq)]
pub struct Schedule {
    pub dim: usize,
    pub eps: f64,
    pub tau: u32,
    pub eps_levels: Vec<f64>,
    pub m: Option<u32>,
    pub m_levels: Vec<i64>,
}

impl Schedule {
    pub fn kflat(d: usize, eps: f64) -> Schedule {
        let first = ceil_snap(lg_inv(eps) / d as f64).max(0);
        let tau = (first + 3 * ceil_snap((3.0 * d as f64).log2()) + 1) as u32;
        let eps_levels = (1..=tau).map(|i| 2f64.powi(i as i32) * eps / (4.0 * d as f64)).collect();
        Schedule { dim: d, eps, tau, eps_levels, m: None, m_levels: Vec::new() }
    }

    pub fn ellipse_2d(eps: f64) -> Schedule {
        let m = (3 + ceil_snap(lg_inv(eps))).max(0) as u32;
        Schedule { dim: 2, eps, tau: 0, eps_levels: Vec::new(), m: Some(m), m_levels: Vec::new() }
    }

    pub fn ellipsoid(d: usize, eps: f64) -> Schedule {
        let l = lg_inv(eps) / d as f64;
        let tau = ceil_snap(l).max(0) as u32;
        // lg(1/delta(i)) = lg(1/eps)/d - i, kept in the log domain to avoid pow rounding
        let m_levels = (0..=tau as i64).map(|i| ceil_snap(l - i as f64)).collect();
        Schedule { dim: d, eps, tau, eps_levels: Vec::new(), m: None, m_levels }
    }

    /// `delta(i) = 2^i eps^(1/d)`.
    pub fn delta(&self, i: u32) -> f64 {
        2f64.powf(i as f64 - lg_inv(self.eps) / self.dim as f64)
    }

    /// Sub-net parameter `eps / delta(i + 2)` for level `i` of the
    /// ellipsoid construction.
    pub fn ellipsoid_sub_eps(&self, i: u32) -> f64 {
        2f64.powf(-(lg_inv(self.eps) * (1.0 - 1.0 / self.dim as f64) + i as f64 + 2.0))
    }
}
