use std::fmt::Write;

use crate::geom::{Body, FlatRef};
use crate::{Error, Net, Result};

/// Width and height of the rendered square, in pixels.
pub const SVG_SIZE: f64 = 512.0;

fn px(x: f64) -> f64 {
    x * SVG_SIZE
}

fn py(y: f64) -> f64 {
    (1.0 - y) * SVG_SIZE
}

/// Part of a line inside the unit square, as its two end points.
fn clip_line(f: FlatRef<'_>) -> Option<([f64; 2], [f64; 2])> {
    let (b, v) = (f.base(), f.basis_vector(0));
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for i in 0..2 {
        if v[i] == 0.0 {
            if b[i] < 0.0 || b[i] > 1.0 {
                return None;
            }
        } else {
            let (a, c) = ((0.0 - b[i]) / v[i], (1.0 - b[i]) / v[i]);
            t0 = t0.max(a.min(c));
            t1 = t1.min(a.max(c));
        }
    }
    (t0 <= t1).then(|| ([b[0] + t0 * v[0], b[1] + t0 * v[1]], [b[0] + t1 * v[0], b[1] + t1 * v[1]]))
}

/// SVG 1.1 drawing of a planar net over the unit square: points as dots,
/// lines clipped to the square, and an optional body outlined in red.
pub fn render_svg(net: &Net, overlay: Option<&Body>) -> Result<String> {
    if net.dim() != 2 {
        return Err(Error::InvalidParameter(format!("can only plot d = 2 nets, got d = {}", net.dim())));
    }
    let s = SVG_SIZE;
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{s}" height="{s}" fill="white" stroke="black" stroke-width="1"/>"#).unwrap();
    for f in net.flats() {
        if f.k() == 0 {
            let b = f.base();
            writeln!(out, r#"<circle cx="{:.4}" cy="{:.4}" r="2.5" fill="black"/>"#, px(b[0]), py(b[1])).unwrap();
        } else if let Some((p, q)) = clip_line(f) {
            writeln!(
                out,
                r#"<line x1="{:.4}" y1="{:.4}" x2="{:.4}" y2="{:.4}" stroke="black" stroke-width="1"/>"#,
                px(p[0]),
                py(p[1]),
                px(q[0]),
                py(q[1])
            )
            .unwrap();
        }
    }
    match overlay {
        None => {}
        Some(b) if b.dim() != 2 => {
            return Err(Error::DimensionMismatch { expected: 2, got: b.dim() });
        }
        Some(Body::Ellipsoid(e)) => {
            let (axes, semi) = e.principal_axes();
            // the y flip mirrors angles
            let angle = -axes[(1, 0)].atan2(axes[(0, 0)]).to_degrees();
            let (cx, cy) = (px(e.center()[0]), py(e.center()[1]));
            writeln!(
                out,
                r#"<ellipse cx="{cx:.4}" cy="{cy:.4}" rx="{:.4}" ry="{:.4}" transform="rotate({angle:.4} {cx:.4} {cy:.4})" fill="none" stroke="red" stroke-width="1.5"/>"#,
                px(semi[0]),
                px(semi[1])
            )
            .unwrap();
        }
        Some(Body::Box(b)) => {
            writeln!(
                out,
                r#"<rect x="{:.4}" y="{:.4}" width="{:.4}" height="{:.4}" fill="none" stroke="red" stroke-width="1.5"/>"#,
                px(b.lo()[0]),
                py(b.hi()[1]),
                px(b.side(0)),
                px(b.side(1))
            )
            .unwrap();
        }
        Some(Body::Polytope(p)) => {
            let pts: Vec<String> = p.hull_2d()?.iter().map(|v| format!("{:.4},{:.4}", px(v[0]), py(v[1]))).collect();
            writeln!(out, r#"<polygon points="{}" fill="none" stroke="red" stroke-width="1.5"/>"#, pts.join(" "))
                .unwrap();
        }
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}
