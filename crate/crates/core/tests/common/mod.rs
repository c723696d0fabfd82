//! Oracles shared by the property tests. Each one recomputes a fact from
//! first principles instead of calling the predicate under test.

#![allow(dead_code)]

use flatnet::geom::{flat_from_affine_hull, Body};
use flatnet::{FlatRef, KFlat, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_point(d: usize, rng: &mut ChaCha8Rng) -> Point {
    Point::new((0..d).map(|_| rng.gen::<f64>()).collect()).unwrap()
}

/// A k-flat through `k + 1` random points of the cube.
pub fn random_flat(d: usize, k: usize, rng: &mut ChaCha8Rng) -> KFlat {
    loop {
        let pts: Vec<Point> = (0..=k).map(|_| random_point(d, rng)).collect();
        if let Ok(f) = flat_from_affine_hull(&pts) {
            if f.k() == k {
                return f;
            }
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Point of `flat` with parameters `t`.
pub fn at(flat: FlatRef<'_>, t: &[f64]) -> Vec<f64> {
    let mut x = flat.base().to_vec();
    for (j, tj) in t.iter().enumerate() {
        for (xi, bi) in x.iter_mut().zip(flat.basis_vector(j)) {
            *xi += tj * bi;
        }
    }
    x
}

/// Minimum of a convex `phi` over `flat` by repeated grid search, each
/// round shrinking a box around the best grid point. The search starts from
/// the point of the flat closest to the cube center, with a box wide enough
/// to cover every point of the flat within the cube.
pub fn min_over_flat(flat: FlatRef<'_>, phi: impl Fn(&[f64]) -> f64) -> f64 {
    let k = flat.k();
    let d = flat.dim();
    if k == 0 {
        return phi(flat.base());
    }
    let c: Vec<f64> = (0..d).map(|i| 0.5 - flat.base()[i]).collect();
    let mut center: Vec<f64> = (0..k).map(|j| dot(&c, flat.basis_vector(j))).collect();
    let mut half = (d as f64).sqrt();
    let n: usize = if k == 1 { 201 } else { 41 };
    let mut best = f64::INFINITY;
    for _ in 0..if k == 1 { 15 } else { 30 } {
        let step = 2.0 * half / (n - 1) as f64;
        let mut best_t = center.clone();
        let mut idx = vec![0usize; k];
        loop {
            let t: Vec<f64> = (0..k).map(|j| center[j] - half + idx[j] as f64 * step).collect();
            let v = phi(&at(flat, &t));
            if v < best {
                best = v;
                best_t = t;
            }
            let mut j = 0;
            while j < k {
                idx[j] += 1;
                if idx[j] < n {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == k {
                break;
            }
        }
        center = best_t;
        half = 4.0 * step;
    }
    best
}

/// Facets of the hull of `v` in `R^3` as `(unit normal, offset)` with
/// `n.x <= offset` inside, by testing every vertex triple.
pub fn facets_3d(v: &[Point]) -> Vec<([f64; 3], f64)> {
    let mut out = Vec::new();
    let n = v.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (p, q, r) = (&v[a], &v[b], &v[c]);
                let u = [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
                let w = [r[0] - p[0], r[1] - p[1], r[2] - p[2]];
                let mut nrm = [u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]];
                let len = dot(&nrm, &nrm).sqrt();
                if len < 1e-12 {
                    continue;
                }
                nrm.iter_mut().for_each(|x| *x /= len);
                let off = dot(&nrm, p.coords());
                let side: Vec<f64> = v.iter().map(|x| dot(&nrm, x.coords()) - off).collect();
                if side.iter().all(|&s| s <= 1e-12) {
                    out.push((nrm, off));
                } else if side.iter().all(|&s| s >= -1e-12) {
                    out.push(([-nrm[0], -nrm[1], -nrm[2]], -off));
                }
            }
        }
    }
    out
}

/// Counter-clockwise hull of planar points by monotone chain.
pub fn hull_2d(v: &[Point]) -> Vec<[f64; 2]> {
    let mut p: Vec<[f64; 2]> = v.iter().map(|x| [x[0], x[1]]).collect();
    p.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut h: Vec<[f64; 2]> = Vec::new();
    for pass in 0..2 {
        let start = h.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> = if pass == 0 { Box::new(p.iter()) } else { Box::new(p.iter().rev()) };
        for &q in iter {
            while h.len() >= start + 2 && cross(h[h.len() - 2], h[h.len() - 1], q) <= 0.0 {
                h.pop();
            }
            h.push(q);
        }
        h.pop();
    }
    h
}

pub fn shoelace(h: &[[f64; 2]]) -> f64 {
    (0..h.len()).map(|i| {
        let (a, b) = (h[i], h[(i + 1) % h.len()]);
        a[0] * b[1] - a[1] * b[0]
    }).sum::<f64>() / 2.0
}

/// Signed gap from a body: `<= 0` exactly on the body, convex in `x`.
/// Facets and hulls are computed once, up front.
pub fn gap_fn(body: &Body) -> Box<dyn Fn(&[f64]) -> f64 + '_> {
    match body {
        Body::Ellipsoid(e) => Box::new(move |x: &[f64]| {
            let (c, m) = (e.center(), e.shape());
            let d = x.len();
            let mut q = 0.0;
            for i in 0..d {
                for j in 0..d {
                    q += (x[i] - c[i]) * m[(i, j)] * (x[j] - c[j]);
                }
            }
            // sqrt keeps the gap comparable to a distance
            q.sqrt() - 1.0
        }),
        Body::Box(b) => Box::new(move |x: &[f64]| {
            (0..x.len()).map(|i| (b.lo()[i] - x[i]).max(x[i] - b.hi()[i])).fold(f64::NEG_INFINITY, f64::max)
        }),
        Body::Polytope(p) => {
            let planes: Vec<(Vec<f64>, f64)> = match p.dim() {
                2 => {
                    let h = hull_2d(p.vertices());
                    (0..h.len())
                        .map(|i| {
                            let (a, b) = (h[i], h[(i + 1) % h.len()]);
                            let (nx, ny) = (b[1] - a[1], a[0] - b[0]);
                            let len = (nx * nx + ny * ny).sqrt();
                            (vec![nx / len, ny / len], (nx * a[0] + ny * a[1]) / len)
                        })
                        .collect()
                }
                3 => facets_3d(p.vertices()).into_iter().map(|(n, o)| (n.to_vec(), o)).collect(),
                d => panic!("no polytope oracle for d = {d}"),
            };
            Box::new(move |x: &[f64]| planes.iter().map(|(n, o)| dot(n, x) - o).fold(f64::NEG_INFINITY, f64::max))
        }
    }
}
