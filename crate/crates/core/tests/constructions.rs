mod common;

use common::dot;
use flatnet::net::{
    ellipse_net_2d, ellipsoid_net_dd, grid_hyperplane_net, halton_hammersley_net, recursive_kflat_net,
    van_der_corput_net, weak_eps_net,
};
use flatnet::{Construction, Net};
use proptest::prelude::*;

/// Largest `|N| eps^(1 - k/d)` of the d = 3, k = 1 recursive net over
/// eps = 2^-6..2^-14, frozen at measurement (eps = 2^-14).
const RK_31_C: f64 = RK_31_C_MEASURED * 1.1;
const RK_31_C_MEASURED: f64 = 2011.6;

/// `|N| / (eps^-1 lg(1/eps))` of the planar ellipse net at eps = 2^-4.
const ELLIPSE_2D_C: f64 = 5.02;

/// Cube constructions with their `(d, k)` and the smallest eps tried.
fn cases() -> Vec<(Construction, usize, usize, f64)> {
    use Construction::*;
    vec![
        (GridHyperplane, 1, 0, 1e-4),
        (GridHyperplane, 2, 1, 1e-4),
        (GridHyperplane, 3, 2, 1e-4),
        (RecursiveKFlat, 3, 1, 2f64.powi(-10)),
        (RecursiveKFlat, 4, 1, 2f64.powi(-5)),
        (RecursiveKFlat, 4, 2, 2f64.powi(-8)),
        (Ellipse2D, 2, 0, 2f64.powi(-10)),
        (EllipsoidDD, 3, 0, 2f64.powi(-7)),
        (WeakNet, 2, 0, 2f64.powi(-6)),
        (VdC, 2, 0, 2f64.powi(-12)),
        (HaltonHammersley, 2, 0, 2f64.powi(-10)),
        (HaltonHammersley, 3, 0, 2f64.powi(-8)),
    ]
}

fn eps_in(lo: f64, t: f64) -> f64 {
    // log-uniform between lo and 1/2
    (lo.ln() + t * (0.5f64.ln() - lo.ln())).exp()
}

fn check_flats(net: &Net) -> Result<(), TestCaseError> {
    let d = net.dim();
    for f in net.flats() {
        for i in 0..f.k() {
            for j in 0..f.k() {
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((dot(f.basis_vector(i), f.basis_vector(j)) - want).abs() <= 1e-9);
            }
        }
        // every constructed flat is axis-parallel: free axes are unit
        // vectors and the remaining coordinates must lie in [0, 1]
        let mut free = vec![false; d];
        for b in f.basis() {
            let axis = b.iter().position(|&x| x.abs() == 1.0);
            prop_assert!(axis.is_some() && b.iter().filter(|&&x| x != 0.0).count() == 1, "{b:?}");
            free[axis.unwrap()] = true;
        }
        for i in 0..d {
            prop_assert!(free[i] || (0.0..=1.0).contains(&f.base()[i]), "{:?}", f.base());
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn deterministic_orthonormal_and_in_the_cube(which in 0usize..12, t in 0.0f64..1.0) {
        let (c, d, k, lo) = cases()[which];
        let eps = eps_in(lo, t);
        let a = c.build(d, k, eps).unwrap();
        let b = c.build(d, k, eps).unwrap();
        prop_assert_eq!(a.len(), b.len());
        let bits = |n: &Net| n.flats().flat_map(|f| f.record().to_vec()).map(f64::to_bits).collect::<Vec<_>>();
        prop_assert_eq!(bits(&a), bits(&b));
        check_flats(&a)?;
    }

    #[test]
    fn smaller_eps_never_shrinks_the_net(which in 0usize..12, t in 0.0f64..1.0, u in 0.0f64..1.0) {
        let (c, d, k, lo) = cases()[which];
        let (e1, e2) = (eps_in(lo, t), eps_in(lo, u));
        let (big, small) = if e1 >= e2 { (e1, e2) } else { (e2, e1) };
        prop_assert!(c.build(d, k, small).unwrap().len() >= c.build(d, k, big).unwrap().len(), "{big} {small}");
    }
}

#[test]
fn recursive_size_stays_under_frozen_constant() {
    let mut worst = 0.0f64;
    for e in 6..=14 {
        let eps = 2f64.powi(-e);
        let n = recursive_kflat_net(3, 1, eps).unwrap().len();
        worst = worst.max(n as f64 * eps.powf(2.0 / 3.0));
    }
    assert!(worst <= RK_31_C, "{worst}");
    assert!(worst >= RK_31_C_MEASURED * 0.9, "{worst}");
}

#[test]
fn ellipse_size_stays_under_frozen_constant() {
    for e in 4..=12 {
        let eps = 2f64.powi(-e);
        let n = ellipse_net_2d(eps).unwrap().len() as f64;
        assert!(n <= ELLIPSE_2D_C * 1.1 * e as f64 / eps, "eps=2^-{e} size {n}");
    }
}

#[test]
fn vdc_and_grid_examples() {
    assert_eq!(van_der_corput_net(0.25).unwrap().len(), 16);
    assert_eq!(grid_hyperplane_net(2, 1.0 / 16.0).unwrap().len(), 6);
    assert_eq!(halton_hammersley_net(3, 0.25).unwrap().dim(), 3);
    assert_eq!(weak_eps_net(1, 0.25).unwrap().k(), 0);
    let records = |n: &Net| n.flats().map(|f| f.record().to_vec()).collect::<Vec<_>>();
    assert_eq!(records(&ellipsoid_net_dd(2, 2f64.powi(-6)).unwrap()), records(&ellipse_net_2d(2f64.powi(-6)).unwrap()));
}
