mod common;

use common::*;
use flatnet::geom::{
    dist_point_flat, flat_from_affine_hull, flat_intersects_ellipsoid, mc_volume_in_cube, mvee, project_point_flat,
    unit_ball_volume, Body, MVEE_TOL,
};
use flatnet::verify::random_heavy_ellipsoid;
use flatnet::{Ellipsoid, Point};
use minilp::{ComparisonOp, OptimizationDirection, Problem};
use proptest::prelude::*;
use rand::Rng;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg(256))]

    #[test]
    fn hull_basis_is_orthonormal(d in 1usize..=6, seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = r.gen_range(0..d);
        let f = random_flat(d, k, &mut r);
        for i in 0..k {
            for j in 0..k {
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((dot(f.basis_vector(i), f.basis_vector(j)) - want).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn projection_is_idempotent(d in 1usize..=5, seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = r.gen_range(0..d);
        let f = random_flat(d, k, &mut r);
        let q: Vec<f64> = (0..d).map(|_| r.gen_range(-2.0..3.0)).collect();
        let p = project_point_flat(&q, f.as_ref()).unwrap();
        prop_assert!(dist_point_flat(p.coords(), f.as_ref()).unwrap() <= 1e-9);
        let pp = project_point_flat(p.coords(), f.as_ref()).unwrap();
        prop_assert!(p.iter().zip(pp.iter()).all(|(a, b)| (a - b).abs() <= 1e-9));
        // the residual is orthogonal to the flat
        let res: Vec<f64> = q.iter().zip(p.iter()).map(|(a, b)| a - b).collect();
        for j in 0..k {
            prop_assert!(dot(&res, f.basis_vector(j)).abs() <= 1e-9);
        }
    }

    #[test]
    fn hull_flat_passes_through_its_points(d in 2usize..=5, seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = r.gen_range(1..d);
        let pts: Vec<Point> = (0..=k).map(|_| random_point(d, &mut r)).collect();
        let f = flat_from_affine_hull(&pts).unwrap();
        for p in &pts {
            prop_assert!(dist_point_flat(p.coords(), f.as_ref()).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn slices_are_concave_after_the_root(seed in any::<u64>(), axis in 0usize..10) {
        let d = 10;
        let e = random_heavy_ellipsoid(d, 1e-4, seed).unwrap();
        let (c, w) = (e.center()[axis], e.half_widths()[axis]);
        let g = |x: f64| e.slice_volume(axis, x).unwrap().powf(1.0 / (d - 1) as f64);
        let h = w / 50.0;
        for i in 1..100 {
            let a = c - w + i as f64 * w / 50.0;
            if a - h < c - w || a + h > c + w {
                continue;
            }
            prop_assert!(g(a) >= (g(a - h) + g(a + h)) / 2.0 - 1e-7);
        }
    }
}

/// 1,000 flat and ellipsoid pairs in d <= 3 against the minimum of the
/// gauge over the flat; only gaps wider than 1e-6 must agree.
#[test]
fn ellipsoid_predicate_matches_minimization() {
    let mut r = rng(41);
    let mut hits = 0;
    for case in 0..1000u64 {
        let d = 1 + (case % 3) as usize;
        let k = r.gen_range(0..d);
        let f = random_flat(d, k, &mut r);
        let e = random_heavy_ellipsoid(d, r.gen_range(0.001..0.1f64).min(unit_ball_volume(d) / 2f64.powi(d as i32)), case)
            .unwrap();
        let body = Body::Ellipsoid(e.clone());
        let g = min_over_flat(f.as_ref(), gap_fn(&body));
        let got = flat_intersects_ellipsoid(f.as_ref(), &e).unwrap();
        if g.abs() > 1e-6 {
            assert_eq!(got, g < 0.0, "case {case}: d={d} k={k} gap {g}");
        }
        hits += got as usize;
    }
    // both outcomes are exercised
    assert!(hits > 100 && hits < 900, "{hits}");
}

/// Ellipsoids strictly inside the cube: exact volume within three standard
/// deviations of the hit-or-miss estimate.
#[test]
fn volume_matches_monte_carlo() {
    let n = 40_000;
    for seed in 0..60u64 {
        let d = 2 + (seed % 3) as usize;
        let e = random_heavy_ellipsoid(d, 0.05 * unit_ball_volume(d) / 2f64.powi(d as i32), seed).unwrap();
        let v = e.volume();
        let est = mc_volume_in_cube(&Body::Ellipsoid(e), n, seed).unwrap();
        let sd = (v * (1.0 - v) / n as f64).sqrt();
        assert!((est - v).abs() <= 3.0 * sd, "seed {seed}: exact {v} estimate {est} sd {sd}");
    }
}

/// Membership in the convex hull by LP feasibility: `x = sum l_j p_j` with
/// `l >= 0` and `sum l_j = 1`.
fn in_hull(pts: &[Point], x: &[f64]) -> bool {
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<_> = pts.iter().map(|_| lp.add_var(0.0, (0.0, f64::INFINITY))).collect();
    for i in 0..x.len() {
        let row: Vec<_> = vars.iter().zip(pts).map(|(&v, p)| (v, p[i])).collect();
        lp.add_constraint(&row[..], ComparisonOp::Eq, x[i]);
    }
    let ones: Vec<_> = vars.iter().map(|&v| (v, 1.0)).collect();
    lp.add_constraint(&ones[..], ComparisonOp::Eq, 1.0);
    lp.solve().is_ok()
}

fn boundary_points(e: &Ellipsoid, shrink: f64, count: usize, r: &mut rand_chacha::ChaCha8Rng) -> Vec<Vec<f64>> {
    let d = e.dim();
    let (vecs, semi) = e.principal_axes();
    (0..count)
        .map(|_| {
            let mut u: Vec<f64> = (0..d).map(|_| r.gen_range(-1.0..1.0)).collect();
            let n = dot(&u, &u).sqrt();
            u.iter_mut().for_each(|x| *x /= n);
            (0..d)
                .map(|i| e.center()[i] + shrink * (0..d).map(|j| vecs[(i, j)] * semi[j] * u[j]).sum::<f64>())
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn mvee_sandwiches_the_hull(d in 2usize..=3, n in 4usize..30, seed in any::<u64>()) {
        let mut r = rng(seed);
        let pts: Vec<Point> = (0..n).map(|_| random_point(d, &mut r)).collect();
        let e = match mvee(&pts, MVEE_TOL) {
            Ok(e) => e,
            Err(_) => return Err(TestCaseError::reject("degenerate sample")),
        };
        for p in &pts {
            prop_assert!(e.quadratic(p.coords()) <= 1.0 + 1e-9);
        }
        // John: shrinking by d lands inside the hull; a hair of slack covers
        // the iteration's tolerance
        for x in boundary_points(&e, (1.0 - 1e-6) / d as f64, 40, &mut r) {
            prop_assert!(in_hull(&pts, &x), "{x:?}");
        }
    }
}
