use super::{ceil_snap, check_eps, Construction, Net};
use crate::geom::Point;
use crate::{Error, Result};

/// Largest point set the box nets will materialize.
const MAX_POINTS: u64 = 1 << 31;

/// Radical inverse of `alpha` in base `rho`: if `alpha = sum b_i rho^i` then
/// the result is `sum b_i rho^-(i+1)`. Computed as one integer ratio, so it
/// is exact whenever `rho^digits` fits in 53 bits.
pub fn bit_reversal(alpha: u64, rho: u64) -> f64 {
    assert!(rho >= 2, "base must be at least 2");
    let (mut num, mut den, mut a) = (0u128, 1u128, alpha as u128);
    let r = rho as u128;
    while a > 0 {
        num = num * r + a % r;
        den *= r;
        a /= r;
    }
    num as f64 / den as f64
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| n % p != 0)
}

/// The `m`-th prime, counting from `nth_prime(0) = 2`.
pub fn nth_prime(m: usize) -> u64 {
    (2..).filter(|&n| is_prime(n)).nth(m).expect("primes are infinite")
}

/// Product of the first `m` primes; `primorial(0) = 1`.
pub fn primorial(m: usize) -> u128 {
    (0..m).map(|i| nth_prime(i) as u128).product()
}

/// The n-point Van der Corput set `p_i = (i / n, br_2(i))`, `i = 0..n-1`.
pub fn van_der_corput(n: usize) -> Vec<Point> {
    (0..n)
        .map(|i| Point::from_vec_unchecked(vec![i as f64 / n as f64, bit_reversal(i as u64, 2)]))
        .collect()
}

/// The n-point Halton-Hammersley set in `d >= 2` dimensions:
/// `p_i = (br_2(i), br_3(i), ..., br_rho(d-1)(i), i / n)`, `i = 0..n-1`.
pub fn halton_hammersley(n: usize, d: usize) -> Vec<Point> {
    assert!(d >= 2, "Halton-Hammersley needs d >= 2");
    let primes: Vec<u64> = (0..d - 1).map(nth_prime).collect();
    (0..n)
        .map(|i| {
            let mut c: Vec<f64> = primes.iter().map(|&p| bit_reversal(i as u64, p)).collect();
            c.push(i as f64 / n as f64);
            Point::from_vec_unchecked(c)
        })
        .collect()
}

fn box_net_size(d: usize, eps: f64) -> Result<usize> {
    let n = ceil_snap(2f64.powi(d as i32 - 1) * primorial(d - 1) as f64 / eps);
    if n as u64 > MAX_POINTS {
        return Err(Error::InvalidParameter(format!("box net for eps = {eps} would need {n} points")));
    }
    Ok(n.max(1) as usize)
}

fn point_net(d: usize, eps: f64, construction: Construction, pts: Vec<Point>) -> Net {
    let data = pts.into_iter().flat_map(Point::into_vec).collect();
    Net::from_records(d, 0, eps, construction, None, data)
}

/// Van der Corput net with `n = ceil(4 / eps)` points: every axis-aligned
/// rectangle of area `eps` in the unit square contains one of them.
pub fn van_der_corput_net(eps: f64) -> Result<Net> {
    check_eps(eps)?;
    let n = box_net_size(2, eps)?;
    Ok(point_net(2, eps, Construction::VdC, van_der_corput(n)))
}

/// Halton-Hammersley net with `n = ceil(2^(d-1) (d-1)# / eps)` points for
/// axis-aligned boxes of volume `eps` in `[0,1]^d`. For `d = 2` the count
/// is the Van der Corput `ceil(4 / eps)`.
pub fn halton_hammersley_net(d: usize, eps: f64) -> Result<Net> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("Halton-Hammersley needs d >= 2, got {d}")));
    }
    check_eps(eps)?;
    let n = box_net_size(d, eps)?;
    Ok(point_net(d, eps, Construction::HaltonHammersley, halton_hammersley(n, d)))
}

/// Point net for axis-aligned boxes: Van der Corput in the plane,
/// Halton-Hammersley above.
pub fn box_net(d: usize, eps: f64) -> Result<Net> {
    if d == 2 {
        van_der_corput_net(eps)
    } else {
        halton_hammersley_net(d, eps)
    }
}
