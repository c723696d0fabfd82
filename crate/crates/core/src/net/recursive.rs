use std::collections::HashMap;

use super::grid::grid_records;
use super::{canonicalize, check_eps, lift_into, Construction, Net, Schedule};
use crate::{Error, Result};

/// Deterministic `(k, eps)`-net of k-flats for convex bodies in `[0,1]^d`.
///
/// For `k = d - 1` this is the hyperplane grid. Otherwise, at each level
/// `i = 1..=tau` and on every axis, the splitting hyperplanes
/// `x_j = (2m + 1) / 2^i` each carry a `(k, eps_i)`-net of their own
/// `(d-1)`-cube, lifted back by inserting the fixed coordinate at index `j`.
pub fn recursive_kflat_net(d: usize, k: usize, eps: f64) -> Result<Net> {
    if k == 0 || k >= d {
        return Err(Error::InvalidParameter(format!("recursive net needs 1 <= k < d, got d = {d}, k = {k}")));
    }
    check_eps(eps)?;
    let tau = (k + 1 < d).then(|| Schedule::kflat(d, eps).tau);
    let mut memo = HashMap::new();
    let data = records(d, k, eps, &mut memo);
    Ok(Net::from_records(d, k, eps, Construction::RecursiveKFlat, tau, data))
}

type Memo = HashMap<(usize, u64), Vec<f64>>;

fn records(d: usize, k: usize, eps: f64, memo: &mut Memo) -> Vec<f64> {
    if k + 1 == d {
        return grid_records(d, eps);
    }
    let schedule = Schedule::kflat(d, eps);
    let levels: Vec<(u32, f64)> =
        (1..=schedule.tau).zip(schedule.eps_levels.iter().copied()).filter(|&(_, e)| e < 1.0).collect();

    for &(_, e) in &levels {
        if !memo.contains_key(&(d - 1, e.to_bits())) {
            let sub = canonicalize(records(d - 1, k, e, memo), (d - 1) * (k + 1));
            memo.insert((d - 1, e.to_bits()), sub);
        }
    }

    // each lifted record grows from (d-1)(k+1) to d(k+1) numbers
    let total: usize = levels
        .iter()
        .map(|&(i, e)| memo[&(d - 1, e.to_bits())].len() / (d - 1) * d * d * (1usize << (i - 1)))
        .sum();
    let mut out = Vec::with_capacity(total);
    for &(i, e) in &levels {
        let sub = &memo[&(d - 1, e.to_bits())];
        if sub.is_empty() {
            continue;
        }
        let denom = (1u64 << i) as f64;
        for axis in 0..d {
            for m in 0..(1u64 << (i - 1)) {
                lift_into(sub, d - 1, k, axis, (2 * m + 1) as f64 / denom, &mut out);
            }
        }
    }
    out
}
