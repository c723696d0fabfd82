use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::geom::{KFlat, Point};
use crate::{Construction, Error, Net, Result};

pub const FORMAT_VERSION: u32 = 1;

const MAGIC: &str = "# flatnet net file";

/// Writes the text form of a net: a header of `key value` lines, then one
/// line per flat holding the base point and basis vectors, each number with
/// 17 significant digits.
pub fn write_net(net: &Net, w: &mut impl Write) -> Result<()> {
    writeln!(w, "{MAGIC}")?;
    writeln!(w, "format {FORMAT_VERSION}")?;
    writeln!(w, "d {}", net.dim())?;
    writeln!(w, "k {}", net.k())?;
    writeln!(w, "eps {}", net.eps())?;
    writeln!(w, "construction {}", net.construction())?;
    if let Some(tau) = net.tau() {
        writeln!(w, "tau {tau}")?;
    }
    writeln!(w, "count {}", net.len())?;
    let mut line = String::new();
    for f in net.flats() {
        line.clear();
        for (i, x) in f.record().iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            // {:.16e} keeps 17 significant digits, enough to round-trip any f64
            line.push_str(&format!("{:.16e}", if *x == 0.0 { 0.0 } else { *x }));
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

pub fn write_net_file(net: &Net, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_net(net, &mut w)?;
    w.flush()?;
    Ok(())
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Reads a net written by [`write_net`]. Flats keep the file's order and are
/// validated (dimension, `k`, orthonormal basis).
pub fn read_net(r: impl Read) -> Result<Net> {
    let mut lines = BufReader::new(r).lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut next = |what: &str| -> Result<(usize, String)> {
        match lines.next() {
            Some((n, Ok(l))) => Ok((n, l)),
            Some((_, Err(e))) => Err(e.into()),
            None => Err(parse_err(0, format!("unexpected end of file, expected {what}"))),
        }
    };

    let (n, first) = next("header")?;
    if first.trim() != MAGIC {
        return Err(parse_err(n, "not a flatnet net file"));
    }
    let mut field = |key: &str| -> Result<(usize, String)> {
        let (n, l) = next(key)?;
        match l.split_once(' ') {
            Some((k, v)) if k == key => Ok((n, v.trim().to_string())),
            _ => Err(parse_err(n, format!("expected '{key} <value>'"))),
        }
    };
    let num = |n: usize, v: &str| v.parse::<usize>().map_err(|_| parse_err(n, format!("bad integer '{v}'")));

    let (n, v) = field("format")?;
    if num(n, &v)? != FORMAT_VERSION as usize {
        return Err(parse_err(n, format!("unsupported format version {v}")));
    }
    let (n, v) = field("d")?;
    let d = num(n, &v)?;
    let (n, v) = field("k")?;
    let k = num(n, &v)?;
    if d == 0 || k >= d {
        return Err(parse_err(n, format!("need 0 <= k < d, got d = {d}, k = {k}")));
    }
    let (n, v) = field("eps")?;
    let eps: f64 = v.parse().map_err(|_| parse_err(n, format!("bad eps '{v}'")))?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(parse_err(n, format!("eps must be positive, got {v}")));
    }
    let (n, v) = field("construction")?;
    let construction: Construction = v.parse().map_err(|_| parse_err(n, format!("unknown construction '{v}'")))?;

    let (mut n, mut l) = next("count")?;
    let mut tau = None;
    if let Some(v) = l.strip_prefix("tau ") {
        tau = Some(v.trim().parse::<u32>().map_err(|_| parse_err(n, format!("bad tau '{v}'")))?);
        (n, l) = next("count")?;
    }
    let count = match l.strip_prefix("count ") {
        Some(v) => num(n, v.trim())?,
        None => return Err(parse_err(n, "expected 'count <value>'")),
    };

    let width = d * (k + 1);
    let mut flats = Vec::with_capacity(count);
    for _ in 0..count {
        let (n, l) = next("flat record")?;
        let xs: Vec<f64> = l
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|_| parse_err(n, format!("bad number '{t}'"))))
            .collect::<Result<_>>()?;
        if xs.len() != width {
            return Err(parse_err(n, format!("expected {width} numbers, found {}", xs.len())));
        }
        let base = Point::new(xs[..d].to_vec()).map_err(|e| parse_err(n, e.to_string()))?;
        let basis = xs[d..].chunks(d).map(<[f64]>::to_vec).collect();
        flats.push(KFlat::new(base, basis).map_err(|e| parse_err(n, e.to_string()))?);
    }
    if let Some((n, Ok(l))) = lines.next() {
        if !l.trim().is_empty() {
            return Err(parse_err(n, "trailing data after the last record"));
        }
    }
    Net::from_flats(d, k, eps, construction, tau, &flats)
}

pub fn read_net_file(path: &Path) -> Result<Net> {
    read_net(File::open(path)?)
}
