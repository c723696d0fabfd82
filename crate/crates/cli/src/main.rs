//! `flatnet`: build, check, measure and draw k-flat nets.
//!
//! Exit status: 0 when every checked guarantee held, 1 when a stabbing
//! failure or uncovered ball was found, 2 on usage, parse or I/O errors.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use flatnet::net::affine_net_for_body;
use flatnet::report::{parse_eps, parse_eps_list, read_net_file, render_svg, write_net_file, write_scaling_csv};
use flatnet::verify::{
    adversarial_ball_probe_indexed, default_resolution, random_heavy_body, run_trials, scaling_report_with,
    trial_body, BodyClass, StabIndex,
};
use flatnet::{Construction, ConvexPolytope, Point};

#[derive(Parser)]
#[command(name = "flatnet", version, about = "Deterministic k-flat nets for convex bodies in the unit cube")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a net and write it to a net file.
    Generate(GenerateArgs),
    /// Check a net against seeded random heavy bodies.
    Verify(VerifyArgs),
    /// Search for a ball of volume eps that misses every flat.
    Lowerbound(LowerboundArgs),
    /// Tabulate net size against eps as CSV.
    Scaling(ScalingArgs),
    /// Draw a planar net as SVG.
    Plot(PlotArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    k: usize,
    /// Decimal or 2^-K.
    #[arg(long, value_parser = eps_arg)]
    eps: f64,
    #[arg(long, default_value = "rk", value_parser = construction_arg)]
    construction: Construction,
    /// Body for the affine construction, as `x,y,..;x,y,..;...` vertices.
    #[arg(long)]
    vertices: Option<String>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    net: PathBuf,
    #[arg(long, default_value = "ellipsoid", value_parser = body_arg)]
    body: BodyClass,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Volume bound of the adversaries; defaults to the net's eps. Below the
    /// net's eps the run is informational and failures do not fail the command.
    #[arg(long, value_parser = eps_arg)]
    eps: Option<f64>,
    /// Re-run the single trial with this id.
    #[arg(long)]
    only: Option<u64>,
    /// Write failing adversaries here, one per line.
    #[arg(long)]
    failures: Option<PathBuf>,
}

#[derive(Args)]
struct LowerboundArgs {
    net: PathBuf,
    #[arg(long, value_parser = eps_arg)]
    eps: Option<f64>,
    #[arg(long)]
    resolution: Option<usize>,
}

#[derive(Args)]
struct ScalingArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    k: usize,
    /// Comma-separated, strictly decreasing.
    #[arg(long, value_parser = eps_list_arg)]
    eps: EpsList,
    #[arg(long, value_parser = construction_arg)]
    construction: Construction,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    net: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Outline a random heavy body of this class.
    #[arg(long, value_parser = body_arg)]
    overlay: Option<BodyClass>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone)]
struct EpsList(Vec<f64>);

fn eps_arg(s: &str) -> std::result::Result<f64, String> {
    parse_eps(s).map_err(|e| e.to_string())
}

fn eps_list_arg(s: &str) -> std::result::Result<EpsList, String> {
    parse_eps_list(s).map(EpsList).map_err(|e| e.to_string())
}

fn construction_arg(s: &str) -> std::result::Result<Construction, String> {
    s.parse().map_err(|e: flatnet::Error| e.to_string())
}

fn body_arg(s: &str) -> std::result::Result<BodyClass, String> {
    s.parse().map_err(|e: flatnet::Error| e.to_string())
}

fn parse_vertices(s: &str, d: usize) -> Result<ConvexPolytope> {
    let pts = s
        .split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let xs = p.split(',').map(|x| x.trim().parse::<f64>()).collect::<std::result::Result<Vec<_>, _>>()?;
            if xs.len() != d {
                bail!("vertex '{p}' has {} coordinates, expected {d}", xs.len());
            }
            Ok(Point::new(xs)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvexPolytope::new(pts)?)
}

fn generate(a: GenerateArgs) -> Result<ExitCode> {
    let start = Instant::now();
    let net = match a.construction {
        Construction::AffineBody => {
            let v = a.vertices.context("the affine construction needs --vertices")?;
            affine_net_for_body(&parse_vertices(&v, a.d)?, a.k, a.eps)?
        }
        c => c.build(a.d, a.k, a.eps)?,
    };
    let millis = start.elapsed().as_millis();
    write_net_file(&net, &a.out).with_context(|| format!("writing {}", a.out.display()))?;
    println!("{} flats, built in {millis} ms", net.len());
    if let Some(tau) = net.tau() {
        println!("tau = {tau}");
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(a: VerifyArgs) -> Result<ExitCode> {
    let net = read_net_file(&a.net).with_context(|| format!("reading {}", a.net.display()))?;
    let eps = a.eps.unwrap_or(net.eps());
    let informational = eps < net.eps();
    let index = StabIndex::new(&net);

    if let Some(id) = a.only {
        let (body, e) = trial_body(a.body, net.dim(), eps, a.seed, id)?;
        println!("trial {id}: volume bound {e}, {body}");
        return Ok(match index.first_stab(&body)? {
            Some(i) => {
                println!("stabbed by flat {i}");
                ExitCode::SUCCESS
            }
            None => {
                println!("not stabbed");
                ExitCode::from(1)
            }
        });
    }

    let start = Instant::now();
    let report = run_trials(&index, a.body, eps, a.trials, a.seed)?;
    println!(
        "{} of {} {} adversaries stabbed (seed {}, eps {eps}) in {} ms",
        report.stabbed,
        report.total,
        a.body,
        a.seed,
        start.elapsed().as_millis()
    );
    if let Some(path) = &a.failures {
        let mut out = String::new();
        for f in &report.failures {
            out.push_str(&format!("id {} seed {} eps {} {}\n", f.id, f.seed, f.eps, f.body));
        }
        fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
    }
    for f in report.failures.iter().take(5) {
        println!("failure: trial {} (replay with --seed {} --only {}): {}", f.id, a.seed, f.id, f.body);
    }
    if report.failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else if informational {
        println!("{} failures below the net's eps {}; not counted", report.failures.len(), net.eps());
        Ok(ExitCode::SUCCESS)
    } else {
        println!("{} failures", report.failures.len());
        Ok(ExitCode::from(1))
    }
}

fn lowerbound(a: LowerboundArgs) -> Result<ExitCode> {
    let net = read_net_file(&a.net).with_context(|| format!("reading {}", a.net.display()))?;
    let eps = a.eps.unwrap_or(net.eps());
    let resolution = a.resolution.unwrap_or_else(|| default_resolution(net.dim(), eps));
    let res = adversarial_ball_probe_indexed(&StabIndex::new(&net), eps, resolution)?;
    println!("radius {} resolution {} candidates {}", res.radius, res.resolution, res.candidates);
    match &res.center {
        Some(c) if res.found => {
            println!("gap found: ball at {:?} misses every flat", c.coords());
            Ok(ExitCode::from(1))
        }
        _ => {
            println!("no gap found");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn scaling(a: ScalingArgs) -> Result<ExitCode> {
    let report = scaling_report_with(a.construction, a.d, a.k, &a.eps.0, |row| {
        eprintln!("eps {} size {} ({} ms)", row.eps, row.size, row.millis);
    })?;
    let mut buf = Vec::new();
    write_scaling_csv(&report, &mut buf)?;
    match &a.out {
        Some(p) => fs::write(p, buf).with_context(|| format!("writing {}", p.display()))?,
        None => io::stdout().write_all(&buf)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn plot(a: PlotArgs) -> Result<ExitCode> {
    let net = read_net_file(&a.net).with_context(|| format!("reading {}", a.net.display()))?;
    let overlay = match a.overlay {
        Some(class) => Some(random_heavy_body(class, net.dim(), net.eps().min(class.max_eps(net.dim())), a.seed)?),
        None => None,
    };
    let svg = render_svg(&net, overlay.as_ref())?;
    fs::write(&a.out, svg).with_context(|| format!("writing {}", a.out.display()))?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Generate(a) => generate(a),
        Cmd::Verify(a) => verify(a),
        Cmd::Lowerbound(a) => lowerbound(a),
        Cmd::Scaling(a) => scaling(a),
        Cmd::Plot(a) => plot(a),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
