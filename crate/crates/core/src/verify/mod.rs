//! Empirical certification of nets: stabbing checks against random heavy
//! bodies, the ball probe, exact empty rectangles and scaling tables.
//!
//! Sampling cannot prove a net correct. Reports state what was tried:
//! body class, count, and the seed that regenerates every adversary.

mod adversary;
mod harness;
mod index;
mod probe;
mod rect;
mod scaling;

pub use adversary::{
    hull_volume_lower_bound, random_heavy_body, random_heavy_box, random_heavy_ellipsoid, random_heavy_polytope,
    BodyClass, POLYTOPE_VERTICES,
};
pub use harness::{run_trials, stab_trials, trial_body, trial_eps, trial_seed, Failure, StabReport, THREADS_ENV};
pub use index::StabIndex;
pub use probe::{
    adversarial_ball_probe, adversarial_ball_probe_indexed, default_resolution, probe_radius, ProbeResult,
    PROBE_MAX_POINTS,
};
pub use rect::max_empty_rect_2d;
pub use scaling::{least_squares_slope, scaling_report, scaling_report_with, ScalingReport, ScalingRow};

use crate::geom::Body;
use crate::{Net, Result};

/// Index of the first flat of `net`, in net order, that meets `body`.
pub fn stab_check(net: &Net, body: &Body) -> Result<Option<usize>> {
    crate::error::check_dim(net.dim(), body.dim())?;
    for (i, f) in net.flats().enumerate() {
        if body.intersects_flat(f)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{ellipse_net_2d, grid_hyperplane_net, recursive_kflat_net};
    use crate::{Ellipsoid, Point};

    #[test]
    fn stab_check_examples() {
        let net = grid_hyperplane_net(2, 0.25).unwrap();
        let disk = Body::Ellipsoid(Ellipsoid::ball(Point::new(vec![0.5, 0.5]).unwrap(), 0.3).unwrap());
        let i = stab_check(&net, &disk).unwrap().unwrap();
        assert_eq!(i, 0);
        assert_eq!(net.flat(i).base(), &[0.0, 0.5]);

        let empty = grid_hyperplane_net(2, 1.0).unwrap();
        assert_eq!(stab_check(&empty, &disk).unwrap(), None);

        let pts = ellipse_net_2d(0.1).unwrap();
        let p = pts.flat(5).base().to_vec();
        let around = Body::Ellipsoid(Ellipsoid::ball(Point::new(p).unwrap(), 1e-6).unwrap());
        assert_eq!(stab_check(&pts, &around).unwrap(), Some(5));
    }

    #[test]
    fn index_agrees_with_linear_scan() {
        let nets = [
            grid_hyperplane_net(3, 0.001).unwrap(),
            recursive_kflat_net(3, 1, 2f64.powi(-8)).unwrap(),
            ellipse_net_2d(2f64.powi(-6)).unwrap(),
        ];
        for net in &nets {
            let index = StabIndex::new(net);
            let d = net.dim();
            for seed in 0..300 {
                let class = [BodyClass::Ellipsoid, BodyClass::Box, BodyClass::Polytope][seed as usize % 3];
                let eps = if class == BodyClass::Polytope { 0.001 } else { 0.0005 };
                let body = random_heavy_body(class, d, eps, seed).unwrap();
                assert_eq!(index.first_stab(&body).unwrap(), stab_check(net, &body).unwrap(), "seed {seed}");
            }
        }
    }
}
