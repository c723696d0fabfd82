//! Net files, eps parsing, CSV scaling tables and SVG plots.

mod csv;
mod netfile;
mod svg;

pub use csv::{write_scaling_csv, CSV_HEADER};
pub use netfile::{read_net, read_net_file, write_net, write_net_file, FORMAT_VERSION};
pub use svg::{render_svg, SVG_SIZE};

use crate::{Error, Result};

/// Parses `eps` given as a decimal (`0.25`, `1e-3`) or as `2^-K`.
pub fn parse_eps(s: &str) -> Result<f64> {
    let t = s.trim();
    let bad = || Error::InvalidParameter(format!("cannot parse eps '{s}'; use a decimal or 2^-K"));
    let v = if let Some(exp) = t.strip_prefix("2^") {
        let k: i32 = exp.trim().parse().map_err(|_| bad())?;
        2f64.powi(k)
    } else {
        t.parse::<f64>().map_err(|_| bad())?
    };
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::InvalidParameter(format!("eps must be positive, got '{s}'")));
    }
    Ok(v)
}

/// Comma-separated list of [`parse_eps`] values.
pub fn parse_eps_list(s: &str) -> Result<Vec<f64>> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(parse_eps).collect()
}
