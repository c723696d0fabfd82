//! Net constructions. Each one is a pure function of its parameters and
//! returns a [`Net`] whose flats are deduplicated and sorted
//! lexicographically by record, so results never depend on build order.

mod affine;
mod ellipsoid;
mod grid;
mod lowdisc;
mod recursive;
mod schedule;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

pub use affine::{affine_net_for_body, ball_normalization, body_scaling_factor, AffineNormalization};
pub use ellipsoid::{ellipse_net_2d, ellipsoid_net_dd, weak_eps_net};
pub use grid::grid_hyperplane_net;
pub use lowdisc::{
    bit_reversal, box_net, halton_hammersley, halton_hammersley_net, nth_prime, primorial, van_der_corput,
    van_der_corput_net,
};
pub use recursive::recursive_kflat_net;
pub use schedule::Schedule;

use crate::geom::{FlatRef, KFlat};
use crate::{Error, Result};

/// Smallest accepted `eps`; below it the dyadic grids stop being exact in
/// double precision.
pub const MIN_EPS: f64 = 9.094947017729282e-13; // 2^-40

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    GridHyperplane,
    RecursiveKFlat,
    Ellipse2D,
    EllipsoidDD,
    WeakNet,
    VdC,
    HaltonHammersley,
    AffineBody,
}

impl Construction {
    pub const ALL: [Construction; 8] = [
        Construction::GridHyperplane,
        Construction::RecursiveKFlat,
        Construction::Ellipse2D,
        Construction::EllipsoidDD,
        Construction::WeakNet,
        Construction::VdC,
        Construction::HaltonHammersley,
        Construction::AffineBody,
    ];

    /// Short identifier used on the command line and in net files.
    pub fn id(self) -> &'static str {
        match self {
            Construction::GridHyperplane => "grid",
            Construction::RecursiveKFlat => "rk",
            Construction::Ellipse2D => "ellipse2d",
            Construction::EllipsoidDD => "ell-dd",
            Construction::WeakNet => "weak",
            Construction::VdC => "vdc",
            Construction::HaltonHammersley => "hh",
            Construction::AffineBody => "affine",
        }
    }

    /// Builds the cube construction for `(d, k, eps)`.
    ///
    /// [`Construction::AffineBody`] needs a body and is built with
    /// [`affine_net_for_body`] instead.
    pub fn build(self, d: usize, k: usize, eps: f64) -> Result<Net> {
        let need_k = |want: usize| {
            if k == want {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("construction {} needs k = {want}, got {k}", self.id())))
            }
        };
        let need_d = |want: usize| {
            if d == want {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("construction {} needs d = {want}, got {d}", self.id())))
            }
        };
        match self {
            Construction::GridHyperplane => {
                need_k(d.saturating_sub(1))?;
                grid_hyperplane_net(d, eps)
            }
            Construction::RecursiveKFlat => recursive_kflat_net(d, k, eps),
            Construction::Ellipse2D => {
                need_d(2)?;
                need_k(0)?;
                ellipse_net_2d(eps)
            }
            Construction::EllipsoidDD => {
                need_k(0)?;
                ellipsoid_net_dd(d, eps)
            }
            Construction::WeakNet => {
                need_k(0)?;
                weak_eps_net(d, eps)
            }
            Construction::VdC => {
                need_d(2)?;
                need_k(0)?;
                van_der_corput_net(eps)
            }
            Construction::HaltonHammersley => {
                need_k(0)?;
                halton_hammersley_net(d, eps)
            }
            Construction::AffineBody => Err(Error::InvalidParameter(
                "the affine construction needs a body; use affine_net_for_body".into(),
            )),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Construction::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown construction '{s}'")))
    }
}

/// A finite family of k-flats in `R^d` with its construction metadata.
///
/// Flats are stored back to back as records of `d * (k + 1)` numbers: the
/// base point followed by the `k` basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Net {
    dim: usize,
    k: usize,
    eps: f64,
    construction: Construction,
    tau: Option<u32>,
    data: Vec<f64>,
}

impl Net {
    /// Builds a net from raw records, then sorts and deduplicates them.
    pub(crate) fn from_records(
        dim: usize,
        k: usize,
        eps: f64,
        construction: Construction,
        tau: Option<u32>,
        data: Vec<f64>,
    ) -> Net {
        let data = canonicalize(data, dim * (k + 1));
        Net { dim, k, eps, construction, tau, data }
    }

    /// Assembles a net from explicit flats, validating every one of them.
    /// Order is kept as given.
    pub fn from_flats(
        dim: usize,
        k: usize,
        eps: f64,
        construction: Construction,
        tau: Option<u32>,
        flats: &[KFlat],
    ) -> Result<Net> {
        if k >= dim {
            return Err(Error::FullDimensional(dim));
        }
        let mut data = Vec::with_capacity(flats.len() * dim * (k + 1));
        for f in flats {
            crate::error::check_dim(dim, f.dim())?;
            if f.k() != k {
                return Err(Error::InvalidParameter(format!("flat has k = {}, net has k = {k}", f.k())));
            }
            f.as_ref().check_orthonormal()?;
            data.extend_from_slice(f.as_ref().record());
        }
        Ok(Net { dim, k, eps, construction, tau, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    /// Number of recursion levels, for the constructions that have one.
    pub fn tau(&self) -> Option<u32> {
        self.tau
    }

    /// Schedule parameters the construction was built with, if any.
    pub fn schedule(&self) -> Option<Schedule> {
        match self.construction {
            Construction::RecursiveKFlat if self.k + 1 < self.dim => Some(Schedule::kflat(self.dim, self.eps)),
            Construction::Ellipse2D => Some(Schedule::ellipse_2d(self.eps)),
            Construction::EllipsoidDD if self.dim >= 3 => Some(Schedule::ellipsoid(self.dim, self.eps)),
            Construction::EllipsoidDD => Some(Schedule::ellipse_2d(self.eps)),
            _ => None,
        }
    }

    pub fn record_len(&self) -> usize {
        self.dim * (self.k + 1)
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.record_len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn flat(&self, i: usize) -> FlatRef<'_> {
        let w = self.record_len();
        FlatRef::new(self.dim, self.k, &self.data[i * w..(i + 1) * w])
    }

    pub fn flats(&self) -> impl ExactSizeIterator<Item = FlatRef<'_>> + '_ {
        let (dim, k) = (self.dim, self.k);
        self.data.chunks_exact(self.record_len()).map(move |r| FlatRef::new(dim, k, r))
    }

    /// Keeps the flats whose index satisfies `keep`, in order.
    pub fn retain_indices(&self, mut keep: impl FnMut(usize) -> bool) -> Net {
        let w = self.record_len();
        let data = self
            .data
            .chunks_exact(w)
            .enumerate()
            .filter(|(i, _)| keep(*i))
            .flat_map(|(_, r)| r.iter().copied())
            .collect();
        Net { data, ..self.clone_meta() }
    }

    /// All records back to back, in net order.
    pub(crate) fn raw(&self) -> &[f64] {
        &self.data
    }

    fn clone_meta(&self) -> Net {
        Net { data: Vec::new(), ..*self }
    }
}

fn cmp_records(a: &[f64], b: &[f64]) -> Ordering {
    a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

/// Sorts fixed-width records lexicographically and drops exact duplicates.
/// Works in place apart from a `u32` index per record.
pub(crate) fn canonicalize(mut data: Vec<f64>, width: usize) -> Vec<f64> {
    if data.is_empty() {
        return data;
    }
    for x in data.iter_mut() {
        if *x == 0.0 {
            *x = 0.0; // -0.0 and 0.0 must compare equal
        }
    }
    let n = data.len() / width;
    assert!(n <= u32::MAX as usize, "too many records");
    let mut order: Vec<u32> = (0..n as u32).collect();
    {
        let rec = |i: u32| &data[i as usize * width..(i as usize + 1) * width];
        order.sort_unstable_by(|&a, &b| cmp_records(rec(a), rec(b)));
    }

    // apply the permutation cycle by cycle: slot j receives record order[j]
    let mut tmp = vec![0.0; width];
    for start in 0..n {
        if order[start] as usize == start {
            continue;
        }
        tmp.copy_from_slice(&data[start * width..(start + 1) * width]);
        let mut j = start;
        loop {
            let src = order[j] as usize;
            order[j] = j as u32;
            if src == start {
                data[j * width..(j + 1) * width].copy_from_slice(&tmp);
                break;
            }
            data.copy_within(src * width..(src + 1) * width, j * width);
            j = src;
        }
    }
    drop(order);

    let mut kept = 1;
    for r in 1..n {
        if data[r * width..(r + 1) * width] != data[(kept - 1) * width..kept * width] {
            data.copy_within(r * width..(r + 1) * width, kept * width);
            kept += 1;
        }
    }
    data.truncate(kept * width);
    data.shrink_to_fit();
    data
}

/// Copies each `(sub_dim)`-dimensional record into `R^{sub_dim+1}` by
/// inserting `value` at coordinate `axis` of the base and `0` at the same
/// coordinate of every basis vector.
pub(crate) fn lift_into(sub: &[f64], sub_dim: usize, k: usize, axis: usize, value: f64, out: &mut Vec<f64>) {
    for rec in sub.chunks_exact(sub_dim * (k + 1)) {
        for (v, chunk) in rec.chunks_exact(sub_dim).enumerate() {
            out.extend_from_slice(&chunk[..axis]);
            out.push(if v == 0 { value } else { 0.0 });
            out.extend_from_slice(&chunk[axis..]);
        }
    }
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    if eps < MIN_EPS {
        return Err(Error::InvalidParameter(format!("eps {eps} is below the supported minimum 2^-40")));
    }
    Ok(())
}

/// `ceil(x)`, except that values within `1e-9` of an integer snap onto it,
/// so `ceil(lg(1/eps) / d)` is not thrown off by one ulp.
pub(crate) fn ceil_snap(x: f64) -> i64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * r.abs().max(1.0) {
        r as i64
    } else {
        x.ceil() as i64
    }
}

/// `lg(1/eps)`.
pub(crate) fn lg_inv(eps: f64) -> f64 {
    -eps.log2()
}
