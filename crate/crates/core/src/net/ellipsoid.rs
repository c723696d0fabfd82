use std::collections::HashMap;
use std::rc::Rc;

use super::grid::grid_records;
use super::{canonicalize, check_eps, lift_into, Construction, Net, Schedule};
use crate::{Error, Result};

fn ellipse_records(eps: f64) -> Vec<f64> {
    let m = Schedule::ellipse_2d(eps).m.unwrap_or(0);
    let mut out = Vec::new();
    for j in 1..m {
        let (nx, ny) = (1u64 << (m - j), 1u64 << j);
        for a in 1..nx {
            for b in 1..ny {
                out.push(a as f64 / nx as f64);
                out.push(b as f64 / ny as f64);
            }
        }
    }
    canonicalize(out, 2)
}

/// Stabbing points for ellipses of area at least `eps` in the unit square.
///
/// With `M = 3 + ceil(lg 1/eps)`, takes the interior vertices of the tilings
/// of `[0,1]^2` by the rectangles `[0, 2^-(M-j)] x [0, 2^-j]`,
/// `j = 1..M-1`. Size is `O(eps^-1 lg eps^-1)`.
pub fn ellipse_net_2d(eps: f64) -> Result<Net> {
    check_eps(eps)?;
    Ok(Net::from_records(2, 0, eps, Construction::Ellipse2D, None, ellipse_records(eps)))
}

type Memo = HashMap<(usize, u64), Rc<Vec<f64>>>;

/// Canonical `(d, eps)` sub-net records, shared between the levels and
/// planes that use them.
fn sub_records(d: usize, eps: f64, memo: &mut Memo) -> Rc<Vec<f64>> {
    if let Some(v) = memo.get(&(d, eps.to_bits())) {
        return Rc::clone(v);
    }
    let v = Rc::new(canonicalize(ellipsoid_records(d, eps, memo), d));
    memo.insert((d, eps.to_bits()), Rc::clone(&v));
    v
}

fn ellipsoid_records(d: usize, eps: f64, memo: &mut Memo) -> Vec<f64> {
    if d == 2 {
        ellipse_records(eps)
    } else {
        build_dd(d, eps, memo)
    }
}

fn build_dd(d: usize, eps: f64, memo: &mut Memo) -> Vec<f64> {
    let s = Schedule::ellipsoid(d, eps);
    // level i places hyperplanes at every multiple of 2^-M_i (the union over
    // j = 0..=M_i of the 2^j + 1 evenly spaced planes) and carries the
    // (0, eps / delta(i + 2))-net of dimension d - 1 on each of them
    let mut levels: Vec<(u32, Rc<Vec<f64>>)> = Vec::new();
    for i in 0..=s.tau {
        let mi = s.m_levels[i as usize];
        let sub_eps = s.ellipsoid_sub_eps(i);
        if mi < 0 || sub_eps >= 1.0 {
            continue;
        }
        let sub = sub_records(d - 1, sub_eps, memo);
        if !sub.is_empty() {
            levels.push((mi as u32, sub));
        }
    }
    let Some(finest) = levels.iter().map(|l| l.0).max() else {
        return Vec::new();
    };

    // a plane m / 2^finest belongs to every level whose spacing divides it;
    // planes with the same level set carry the same point union
    let n = 1u64 << finest;
    let need = |m: u64| if m == 0 || m == n { 0 } else { finest - m.trailing_zeros() };
    let mut unions: HashMap<u32, Vec<f64>> = HashMap::new();
    for m in 0..=n {
        unions.entry(need(m)).or_insert_with_key(|&need| {
            let mut all = Vec::new();
            for (mi, sub) in &levels {
                if *mi >= need {
                    all.extend_from_slice(sub);
                }
            }
            canonicalize(all, d - 1)
        });
    }
    let total: usize = (0..=n).map(|m| unions[&need(m)].len() / (d - 1) * d * d).sum();
    let mut out = Vec::with_capacity(total);
    for m in 0..=n {
        let c = m as f64 / n as f64;
        for axis in 0..d {
            lift_into(&unions[&need(m)], d - 1, 0, axis, c, &mut out);
        }
    }
    out
}

/// Stabbing points for ellipsoids of volume at least `eps` in `[0,1]^d`.
///
/// For `d = 2` this is [`ellipse_net_2d`]. Otherwise, with
/// `tau = ceil(lg(1/eps) / d)`, `delta(i) = 2^i eps^(1/d)` and
/// `M_i = ceil(lg 1/delta(i))`: on every axis, for `i = 0..=tau` and
/// `j = 0..=M_i`, the `2^j + 1` hyperplanes `x = m / 2^j` each receive a
/// `(d-1)`-dimensional net for `eps / delta(i + 2)`. Levels whose sub-net
/// parameter is at least 1 contribute nothing.
pub fn ellipsoid_net_dd(d: usize, eps: f64) -> Result<Net> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("ellipsoid net needs d >= 2, got {d}")));
    }
    check_eps(eps)?;
    let data = ellipsoid_records(d, eps, &mut HashMap::new());
    let tau = (d >= 3).then(|| Schedule::ellipsoid(d, eps).tau);
    Ok(Net::from_records(d, 0, eps, Construction::EllipsoidDD, tau, data))
}

/// Weak eps-net for arbitrary convex bodies: every convex body of volume
/// `eps` contains an ellipsoid of volume `eps / d^d`, so the ellipsoid net
/// at that parameter stabs it. In one dimension a convex body is an
/// interval and the grid of spacing `eps` suffices.
pub fn weak_eps_net(d: usize, eps: f64) -> Result<Net> {
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be at least 1".into()));
    }
    check_eps(eps)?;
    let data = if d == 1 {
        grid_records(1, eps)
    } else {
        let inner = eps / (d as f64).powi(d as i32);
        check_eps(inner)?;
        ellipsoid_records(d, inner, &mut HashMap::new())
    };
    Ok(Net::from_records(d, 0, eps, Construction::WeakNet, None, data))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn points(net: &Net) -> Vec<Vec<f64>> {
        net.flats().map(|f| f.base().to_vec()).collect()
    }

    #[test]
    fn ellipse_half_by_enumeration() {
        let net = ellipse_net_2d(0.5).unwrap();
        // M = 4: P_1 = 7, P_2 = 9, P_3 = 7 points, brute-force union below
        let mut all = Vec::new();
        for (nx, ny) in [(8u32, 2u32), (4, 4), (2, 8)] {
            for a in 1..nx {
                for b in 1..ny {
                    all.push((a * 8 / nx, b * 8 / ny));
                }
            }
        }
        assert_eq!(all.len(), 23);
        all.sort();
        all.dedup();
        assert_eq!(net.len(), all.len());
        assert_eq!(net.len(), 17);
        let mut got: Vec<(u32, u32)> =
            points(&net).iter().map(|p| ((p[0] * 8.0) as u32, (p[1] * 8.0) as u32)).collect();
        got.sort();
        assert_eq!(got, all);
    }

    #[test]
    fn ellipse_points_are_dyadic() {
        let eps = 2f64.powi(-6);
        let m = 9;
        for p in points(&ellipse_net_2d(eps).unwrap()) {
            for x in p {
                let s = x * 2f64.powi(m);
                assert_eq!(s, s.round());
                assert!(x > 0.0 && x < 1.0);
            }
        }
    }

    #[test]
    fn ellipse_nets_are_nested() {
        let coarse = ellipse_net_2d(2f64.powi(-4)).unwrap();
        let fine = ellipse_net_2d(2f64.powi(-6)).unwrap();
        let fine_pts = points(&fine);
        assert!(points(&coarse).iter().all(|p| fine_pts.contains(p)));
    }

    #[test]
    fn dd_d2_is_the_ellipse_net() {
        let a = ellipsoid_net_dd(2, 0.01).unwrap();
        assert_eq!(points(&a), points(&ellipse_net_2d(0.01).unwrap()));
    }

    #[test]
    fn dd_small_case_matches_direct_union() {
        // d = 3, eps = 2^-6: tau = 2, M = (2, 1, 0), sub eps = 2^-6, 2^-7, 2^-8
        let eps = 2f64.powi(-6);
        let net = ellipsoid_net_dd(3, eps).unwrap();
        let mut want: Vec<Vec<f64>> = Vec::new();
        for (i, mi) in [(0, 2u32), (1, 1), (2, 0)] {
            let sub = points(&ellipse_net_2d(2f64.powi(-6 - i)).unwrap());
            for j in 0..=mi {
                for m in 0..=(1u32 << j) {
                    let c = m as f64 / (1u32 << j) as f64;
                    for axis in 0..3 {
                        for p in &sub {
                            let mut q = p.clone();
                            q.insert(axis, c);
                            want.push(q);
                        }
                    }
                }
            }
        }
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        want.dedup();
        assert_eq!(points(&net), want);
        assert_eq!(net.tau(), Some(2));
    }

    #[test]
    fn dd_points_in_closed_cube() {
        let net = ellipsoid_net_dd(4, 2f64.powi(-4)).unwrap();
        assert!(!net.is_empty());
        for p in points(&net) {
            assert!(p.iter().all(|&x| (0.0..=1.0).contains(&x)));
        }
    }

    #[test]
    fn dd_rejects_d1() {
        assert!(ellipsoid_net_dd(1, 0.1).is_err());
    }

    #[test]
    fn weak_net_delegates() {
        let w = weak_eps_net(2, 0.4).unwrap();
        assert_eq!(points(&w), points(&ellipsoid_net_dd(2, 0.1).unwrap()));
        assert_eq!(w.eps(), 0.4);
        assert_eq!(w.construction(), Construction::WeakNet);
        let w3 = weak_eps_net(3, 27.0 * 2f64.powi(-10)).unwrap();
        assert_eq!(points(&w3), points(&ellipsoid_net_dd(3, 2f64.powi(-10)).unwrap()));
    }

    #[test]
    fn weak_net_d1_is_a_grid_of_points() {
        let w = weak_eps_net(1, 0.25).unwrap();
        assert_eq!(points(&w), vec![vec![0.25], vec![0.5], vec![0.75]]);
    }
}
