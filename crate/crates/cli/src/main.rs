//! `geofat` command-line front end.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use geofat::Point;

#[derive(Parser)]
#[command(name = "geofat", version, about = "Geodesic toolkit for fat polygons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a polygon from one of the built-in families, plus a marks sidecar.
    Generate(GenerateArgs),
    /// Check a polygon file; exits 1 when it has defects.
    Validate(PolygonIn),
    /// Geodesic distance and shortest path between two points.
    Dist(DistArgs),
    /// Relative convex hull of a point set and its perimeter ratio.
    Rch(PointsIn),
    /// Exact geodesic closest pair by randomized grid insertion.
    ClosestPair(ClosestArgs),
    /// Furthest-neighbor coreset.
    Coreset(CoresetArgs),
    /// Greedy geodesic spanner.
    Spanner(SpannerArgs),
    /// Fatness certificates.
    Fatness(FatnessArgs),
    /// Doubling cover, packing and growth experiments.
    Doubling(DoublingArgs),
    /// Cross-check the geodesic engine against brute-force oracles; exits 1 on violations.
    Verify(VerifyArgs),
    /// Draw a polygon with an optional path and point set as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
pub struct Output {
    /// Output file; stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct PolygonIn {
    #[arg(long)]
    pub polygon: PathBuf,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args)]
pub struct PointsIn {
    #[arg(long)]
    pub polygon: PathBuf,
    /// JSON list `[[x, y], ...]`.
    #[arg(long)]
    pub points: PathBuf,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Family {
    P1,
    Pm,
    Pstar,
    Comb,
    Convex,
    Blob,
}

#[derive(Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, default_value_t = 2)]
    pub m: u32,
    /// Corridor width parameter of the p1/pm/pstar families.
    #[arg(long, default_value_t = 1e-3)]
    pub eps: f64,
    /// Teeth (comb) or vertices (convex, blob).
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    #[arg(long, default_value_t = 0.02)]
    pub width: f64,
    #[arg(long, default_value_t = 0.5)]
    pub depth: f64,
    /// Required by the randomized families.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Polygon file; marks go to `<stem>.marks.json` next to it.
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Args)]
pub struct DistArgs {
    #[arg(long)]
    pub polygon: PathBuf,
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub from: Point,
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub to: Point,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args)]
pub struct ClosestArgs {
    #[command(flatten)]
    pub input: PointsIn,
    #[arg(long)]
    pub seed: u64,
    /// Grid constant M; cells have side delta / (2M).
    #[arg(long, default_value_t = geofat::proximity::DEFAULT_M)]
    pub grid_m: f64,
}

#[derive(Args)]
pub struct CoresetArgs {
    #[command(flatten)]
    pub input: PointsIn,
    #[arg(long)]
    pub epsilon: f64,
    /// Perimeter-ratio bound; measured from the input when omitted.
    #[arg(long)]
    pub nu: Option<f64>,
}

#[derive(Args)]
pub struct SpannerArgs {
    #[command(flatten)]
    pub input: PointsIn,
    #[arg(long)]
    pub epsilon: f64,
}

#[derive(Args)]
pub struct FatnessArgs {
    #[command(flatten)]
    pub input: PolygonIn,
    #[arg(long, requires = "beta")]
    pub alpha: Option<f64>,
    #[arg(long, requires = "alpha")]
    pub beta: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Boundary samples for the triangle check and centers for the disk check.
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
    #[arg(long, default_value_t = 24)]
    pub radii: usize,
    #[arg(long, default_value_t = geofat::fatness::DEFAULT_DIRECTIONS)]
    pub directions: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum DoublingMode {
    Cover,
    Packing,
    Growth,
}

#[derive(Args)]
pub struct DoublingArgs {
    /// Required except in growth mode.
    #[arg(long)]
    pub polygon: Option<PathBuf>,
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub center: Option<Point>,
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.5)]
    pub beta: f64,
    #[arg(long, value_enum, default_value_t = DoublingMode::Cover)]
    pub mode: DoublingMode,
    /// Disk sample spacing; defaults to radius / 64.
    #[arg(long)]
    pub pitch: Option<f64>,
    /// Growth mode: comma-separated family levels.
    #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 3])]
    pub ms: Vec<u32>,
    /// Growth mode: corridor width parameter.
    #[arg(long, default_value_t = 1e-3)]
    pub eps: f64,
    /// Also draw the disk sample, centers and witnesses.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub polygon: PathBuf,
    /// Query points; sampled uniformly from the polygon when omitted.
    #[arg(long)]
    pub points: Option<PathBuf>,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub triples: usize,
    #[arg(long, default_value_t = 50)]
    pub pairs: usize,
    /// Oracle grid pitch as a fraction of the diameter.
    #[arg(long, default_value_t = 1.0 / 200.0)]
    pub pitch_fraction: f64,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args)]
pub struct RenderArgs {
    #[arg(long)]
    pub polygon: Option<PathBuf>,
    /// A point list, or the JSON written by `dist`.
    #[arg(long)]
    pub path: Option<PathBuf>,
    #[arg(long)]
    pub points: Option<PathBuf>,
    #[command(flatten)]
    pub out: Output,
}

fn parse_point(s: &str) -> Result<Point, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y, got {s:?}"))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("bad coordinate {t:?}"))
    };
    Ok(Point::new(parse(x)?, parse(y)?))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Ok(v) = std::env::var("GEOFAT_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .expect("global pool is configured once");
            }
            _ => {
                eprintln!("error: GEOFAT_THREADS must be a positive integer, got {v:?}");
                return ExitCode::from(2);
            }
        }
    }
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            let body = serde_json::json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            eprintln!("{body}");
            ExitCode::from(1)
        }
    }
}
