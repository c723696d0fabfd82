use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::adversary::{random_heavy_body, BodyClass};
use super::StabIndex;
use crate::geom::Body;
use crate::{Error, Net, Result};

/// Environment variable capping the number of verification threads.
pub const THREADS_ENV: &str = "FLATNET_THREADS";

/// An adversary no flat met, with what it takes to regenerate it.
#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub id: u64,
    pub seed: u64,
    pub eps: f64,
    pub body: Body,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct StabReport {
    pub total: usize,
    pub stabbed: usize,
    /// `(adversary id, index of the first stabbing flat)`, by id.
    pub witnesses: Vec<(u64, usize)>,
    pub failures: Vec<Failure>,
}

impl StabReport {
    pub fn all_stabbed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// SplitMix64 finalizer of `seed + id`, giving independent per-trial seeds.
pub fn trial_seed(seed: u64, id: u64) -> u64 {
    let mut z = seed.wrapping_add(id.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Volume bound used for trial `id`. Even ids keep `eps`, so with the
/// generators' `eps (1 + u)` targets half the budget lands in `[eps, 2 eps)`.
/// Odd ids scale `eps` by `2^v`, `v` uniform up to the largest feasible value.
pub fn trial_eps(class: BodyClass, d: usize, eps: f64, seed: u64, id: u64) -> f64 {
    if id % 2 == 0 {
        return eps;
    }
    let room = (class.max_eps(d) / eps).log2();
    if room <= 1.0 {
        return eps;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, id) ^ 0x5eed);
    let v = rng.gen_range(1.0..room);
    (eps * 2f64.powf(v)).min(class.max_eps(d))
}

/// Regenerates the adversary of trial `id`.
pub fn trial_body(class: BodyClass, d: usize, eps: f64, seed: u64, id: u64) -> Result<(Body, f64)> {
    let e = trial_eps(class, d, eps, seed, id);
    Ok((random_heavy_body(class, d, e, trial_seed(seed, id))?, e))
}

fn thread_count() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(rayon::current_num_threads)
}

/// Checks `trials` seeded adversaries of `class` against an indexed net.
/// Trials run in parallel and are merged in id order.
pub fn run_trials(index: &StabIndex<'_>, class: BodyClass, eps: f64, trials: usize, seed: u64) -> Result<StabReport> {
    let d = index.net().dim();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count())
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let outcomes: Vec<Result<(u64, Option<usize>, Body, f64)>> = pool.install(|| {
        (0..trials as u64)
            .into_par_iter()
            .map(|id| {
                let (body, e) = trial_body(class, d, eps, seed, id)?;
                let hit = index.first_stab(&body)?;
                Ok((id, hit, body, e))
            })
            .collect()
    });
    let mut report = StabReport { total: trials, ..StabReport::default() };
    for outcome in outcomes {
        let (id, hit, body, e) = outcome?;
        match hit {
            Some(i) => {
                report.stabbed += 1;
                report.witnesses.push((id, i));
            }
            None => report.failures.push(Failure { id, seed: trial_seed(seed, id), eps: e, body }),
        }
    }
    Ok(report)
}

/// [`run_trials`] on a freshly indexed net.
pub fn stab_trials(net: &Net, class: BodyClass, eps: f64, trials: usize, seed: u64) -> Result<StabReport> {
    run_trials(&StabIndex::new(net), class, eps, trials, seed)
}
