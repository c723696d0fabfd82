use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Body;
use crate::{Error, Result};

/// Monte Carlo estimate of `vol(body ∩ [0,1]^d)` from `samples` uniform
/// points of the cube. Deterministic for a given seed.
pub fn mc_volume_in_cube(body: &Body, samples: usize, seed: u64) -> Result<f64> {
    if samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let d = body.dim();
    let bbox = body.bounding_box();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![0.0; d];
    let mut hits = 0usize;
    for _ in 0..samples {
        x.iter_mut().for_each(|xi| *xi = rng.gen::<f64>());
        if bbox.contains(&x) && body.contains(&x)? {
            hits += 1;
        }
    }
    Ok(hits as f64 / samples as f64)
}
