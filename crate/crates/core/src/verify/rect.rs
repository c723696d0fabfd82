use crate::geom::{AxisBox, Point};
use crate::{Error, Result};

/// The largest-area axis-aligned rectangle in `[0,1]^2` whose open interior
/// holds none of `points`.
///
/// Every maximal empty rectangle has its bottom edge on a point or on
/// `y = 0`, and its top edge on a point or on `y = 1`. Rectangles resting
/// on a point are enumerated by sweeping upward from it while narrowing the
/// x-range; those with bottom on `y = 0` and top on a point by sweeping
/// down; the rest are full-height strips between consecutive x-values.
/// `O(n^2)` after sorting.
pub fn max_empty_rect_2d(points: &[Point]) -> Result<AxisBox> {
    for p in points {
        crate::error::check_dim(2, p.dim())?;
        if p.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
            return Err(Error::InvalidParameter(format!("point {:?} outside the unit square", p.coords())));
        }
    }
    let mut pts: Vec<(f64, f64)> = points.iter().map(|p| (p[0], p[1])).collect();
    pts.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.total_cmp(&b.0)));

    let mut best = (0.0f64, 0.0, 0.0, 1.0, 1.0);
    let mut offer = |x0: f64, y0: f64, x1: f64, y1: f64| {
        let area = (x1 - x0) * (y1 - y0);
        if area > best.0 {
            best = (area, x0, y0, x1, y1);
        }
    };

    // full-height strips
    let mut xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    xs.extend([0.0, 1.0]);
    xs.sort_by(f64::total_cmp);
    for w in xs.windows(2) {
        offer(w[0], 0.0, w[1], 1.0);
    }

    for (s, &(px, py)) in pts.iter().enumerate() {
        // bottom edge through p
        let (mut lo, mut hi) = (0.0, 1.0);
        let mut open = true;
        for &(qx, qy) in &pts[s + 1..] {
            if qy == py || qx <= lo || qx >= hi {
                continue;
            }
            offer(lo, py, hi, qy);
            if qx < px {
                lo = qx;
            } else if qx > px {
                hi = qx;
            } else {
                open = false;
                break;
            }
        }
        if open {
            offer(lo, py, hi, 1.0);
        }

        // top edge through p
        let (mut lo, mut hi) = (0.0, 1.0);
        let mut open = true;
        for &(qx, qy) in pts[..s].iter().rev() {
            if qy == py || qx <= lo || qx >= hi {
                continue;
            }
            offer(lo, qy, hi, py);
            if qx < px {
                lo = qx;
            } else if qx > px {
                hi = qx;
            } else {
                open = false;
                break;
            }
        }
        if open {
            offer(lo, 0.0, hi, py);
        }
    }
    if pts.is_empty() {
        offer(0.0, 0.0, 1.0, 1.0);
    }
    let (_, x0, y0, x1, y1) = best;
    Ok(AxisBox::from_vecs_unchecked(vec![x0, y0], vec![x1, y1]))
}
