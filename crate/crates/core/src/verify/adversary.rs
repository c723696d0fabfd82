//! Seeded generators of convex bodies inside `[0,1]^d` whose volume is at
//! least a given `eps`.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::geom::{mvee, unit_ball_volume, AxisBox, Body, ConvexPolytope, Ellipsoid, Point, MVEE_TOL};
use crate::{Error, Result};

const MAX_ATTEMPTS: usize = 10_000;

/// Vertex count of the random polytope adversaries.
pub const POLYTOPE_VERTICES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BodyClass {
    Ellipsoid,
    Box,
    Polytope,
}

impl BodyClass {
    pub fn id(self) -> &'static str {
        match self {
            BodyClass::Ellipsoid => "ellipsoid",
            BodyClass::Box => "box",
            BodyClass::Polytope => "polytope",
        }
    }

    /// Largest `eps` the generator accepts in dimension `d`.
    pub fn max_eps(self, d: usize) -> f64 {
        match self {
            BodyClass::Ellipsoid => unit_ball_volume(d) * 0.5f64.powi(d as i32),
            BodyClass::Box => 1.0,
            // room for the hull of a skinny point cloud, and for the d^d loss
            // of the volume bound in d >= 3
            BodyClass::Polytope => 0.5f64.powi(d as i32) / (d as f64).powi(d as i32 - 1),
        }
    }
}

impl fmt::Display for BodyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for BodyClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [BodyClass::Ellipsoid, BodyClass::Box, BodyClass::Polytope]
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown body class '{s}'")))
    }
}

fn check_feasible(class: BodyClass, d: usize, eps: f64) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be at least 1".into()));
    }
    let cap = class.max_eps(d);
    if !(eps > 0.0 && eps <= cap) {
        return Err(Error::InvalidParameter(format!("no {class} of volume {eps} fits in [0,1]^{d} (limit {cap})")));
    }
    Ok(())
}

/// Uniformly random rotation (Haar measure) from the QR factorization of a
/// Gaussian matrix.
pub(crate) fn random_rotation(d: usize, rng: &mut impl Rng) -> DMatrix<f64> {
    let g = DMatrix::from_fn(d, d, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// A random ellipsoid inside `[0,1]^d` with volume at least `eps`.
///
/// The target volume is `eps (1 + u)` for uniform `u`, capped by the
/// inscribed ball. Semi-axes are log-uniform with a spread that narrows
/// after repeated rejections, the orientation is a random rotation and the
/// center is uniform among positions where the bounding box fits.
pub fn random_heavy_ellipsoid(d: usize, eps: f64, seed: u64) -> Result<Ellipsoid> {
    check_feasible(BodyClass::Ellipsoid, d, eps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cd = unit_ball_volume(d);
    let target = (eps * (1.0 + rng.gen::<f64>())).min(BodyClass::Ellipsoid.max_eps(d));
    let mut spread = (1.0 / eps).ln().max(1.0) / 2.0;
    for attempt in 0..MAX_ATTEMPTS {
        if attempt > 0 && attempt % 16 == 0 {
            spread *= 0.7;
        }
        let mut semi: Vec<f64> = (0..d).map(|_| (rng.gen_range(-1.0..=1.0) * spread).exp()).collect();
        let scale = (target / (cd * semi.iter().product::<f64>())).powf(1.0 / d as f64);
        semi.iter_mut().for_each(|a| *a *= scale);
        let rot = random_rotation(d, &mut rng);
        let half: Vec<f64> =
            (0..d).map(|i| (0..d).map(|j| (rot[(i, j)] * semi[j]).powi(2)).sum::<f64>().sqrt()).collect();
        if half.iter().any(|&h| h > 0.5) {
            continue;
        }
        let center: Vec<f64> = half.iter().map(|&h| h + rng.gen::<f64>() * (1.0 - 2.0 * h)).collect();
        let axes: Vec<Vec<f64>> = (0..d).map(|j| rot.column(j).iter().copied().collect()).collect();
        let e = Ellipsoid::from_axes(Point::new(center)?, &axes, &semi)?;
        if e.inside_unit_cube() && e.volume() >= eps {
            return Ok(e);
        }
    }
    Err(Error::Numerical(format!("could not place an ellipsoid of volume {eps}")))
}

/// A random axis-aligned box inside `[0,1]^d` with volume at least `eps`.
///
/// With target volume `V = min(eps (1 + u), 1)`, the sides are `V^(a_i)`
/// for weights `a_i >= 0` summing to one, so each side lies in `[V, 1]`.
pub fn random_heavy_box(d: usize, eps: f64, seed: u64) -> Result<AxisBox> {
    check_feasible(BodyClass::Box, d, eps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = (eps * (1.0 + rng.gen::<f64>())).min(1.0);
    let w: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = w.iter().sum();
    let mut side: Vec<f64> = w.iter().map(|wi| target.powf(wi / total)).collect();
    let vol: f64 = side.iter().product();
    if vol < target {
        // undo rounding on the thinnest side
        let j = (0..d).min_by(|&a, &b| side[a].total_cmp(&side[b])).unwrap();
        side[j] = (side[j] * target / vol).min(1.0);
    }
    let lo: Vec<f64> = side.iter().map(|&s| rng.gen::<f64>() * (1.0 - s)).collect();
    let hi: Vec<f64> = lo.iter().zip(&side).map(|(l, s)| (l + s).min(1.0)).collect();
    let b = AxisBox::new(Point::new(lo)?, Point::new(hi)?)?;
    if b.volume() < eps {
        return Err(Error::Numerical(format!("box volume {} fell below {eps}", b.volume())));
    }
    Ok(b)
}

/// Lower bound on the volume of the hull of `pts`: exact area in the plane,
/// the John bound `vol(E) / d^d` from the enclosing ellipsoid otherwise.
pub fn hull_volume_lower_bound(pts: &[Point]) -> Result<f64> {
    let d = pts.first().map(|p| p.dim()).unwrap_or(0);
    match d {
        0 => Err(Error::InvalidParameter("empty point set".into())),
        1 => {
            let lo = pts.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
            let hi = pts.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
            Ok(hi - lo)
        }
        2 => ConvexPolytope::new(pts.to_vec())?.area_2d(),
        _ => {
            // the iterate is only near-optimal, so keep a margin on the bound
            let e = mvee(pts, MVEE_TOL)?;
            Ok(0.99 * e.volume() / (d as f64).powi(d as i32))
        }
    }
}

/// The convex hull of [`POLYTOPE_VERTICES`] random points with volume at
/// least `eps`, inside `[0,1]^d`.
///
/// Points are uniform in a randomly rotated and stretched cube, scaled so a
/// lower bound on the hull volume reaches `eps (1 + u)`, then translated to
/// a uniform position.
pub fn random_heavy_polytope(d: usize, eps: f64, seed: u64) -> Result<ConvexPolytope> {
    check_feasible(BodyClass::Polytope, d, eps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = (eps * (1.0 + rng.gen::<f64>())).min(BodyClass::Polytope.max_eps(d));
    let mut spread = (1.0 / eps).ln().max(1.0) / 4.0;
    for attempt in 0..MAX_ATTEMPTS {
        if attempt > 0 && attempt % 16 == 0 {
            spread *= 0.7;
        }
        let rot = random_rotation(d, &mut rng);
        let stretch: Vec<f64> = (0..d).map(|_| (rng.gen_range(-1.0..=1.0) * spread).exp()).collect();
        let raw: Vec<Point> = (0..POLYTOPE_VERTICES)
            .map(|_| {
                let g: Vec<f64> = stretch.iter().map(|s| s * rng.gen_range(-1.0..=1.0)).collect();
                Point::from_vec_unchecked((0..d).map(|i| (0..d).map(|j| rot[(i, j)] * g[j]).sum()).collect())
            })
            .collect();
        let vol = match hull_volume_lower_bound(&raw) {
            Ok(v) if v > 0.0 => v,
            _ => continue,
        };
        let scale = (target / vol).powf(1.0 / d as f64);
        let scaled: Vec<Vec<f64>> = raw.iter().map(|p| p.iter().map(|x| x * scale).collect()).collect();
        let lo: Vec<f64> = (0..d).map(|i| scaled.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min)).collect();
        let hi: Vec<f64> = (0..d).map(|i| scaled.iter().map(|p| p[i]).fold(f64::NEG_INFINITY, f64::max)).collect();
        if (0..d).any(|i| hi[i] - lo[i] > 1.0) {
            continue;
        }
        let shift: Vec<f64> = (0..d).map(|i| rng.gen::<f64>() * (1.0 - (hi[i] - lo[i])) - lo[i]).collect();
        let pts: Vec<Point> = scaled
            .into_iter()
            .map(|p| {
                let q = p.iter().zip(&shift).map(|(x, s)| (x + s).clamp(0.0, 1.0)).collect();
                Point::from_vec_unchecked(q)
            })
            .collect();
        if hull_volume_lower_bound(&pts).map_or(false, |v| v >= eps) {
            return ConvexPolytope::new(pts);
        }
    }
    Err(Error::Numerical(format!("could not place a polytope of volume {eps}")))
}

/// Random heavy body of the given class.
pub fn random_heavy_body(class: BodyClass, d: usize, eps: f64, seed: u64) -> Result<Body> {
    Ok(match class {
        BodyClass::Ellipsoid => random_heavy_ellipsoid(d, eps, seed)?.into(),
        BodyClass::Box => random_heavy_box(d, eps, seed)?.into(),
        BodyClass::Polytope => random_heavy_polytope(d, eps, seed)?.into(),
    })
}
