use std::fmt;
use std::path::{Path, PathBuf};

use geofat::doubling::{
    doubling_growth_experiment, grid_cover, packing_lower_bound, verify_packing,
};
use geofat::fatness::{
    check_alpha_beta_covered, check_locally_fat, doubling_bound_formula, FatnessParams,
};
use geofat::generators::{gen_comb, gen_fat_blob, gen_p1, gen_pm, gen_pstar, gen_random_convex};
use geofat::geodesic::{geodesic_disk_sample, relative_convex_hull, GeodesicEngine};
use geofat::geom::io::{marks_to_json, points_from_json, polygon_from_json, write_polygon};
use geofat::geom::{euclidean_diameter, point_in_polygon, validate, Location};
use geofat::oracle::{oracle_distance, DenseGridOracle, GRID_DISTORTION};
use geofat::proximity::{closest_pair, coreset_furthest, greedy_spanner, perimeter_ratio};
use geofat::{Error, Point, Polygon};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::render::{render, Payload, Scene, Style};
use crate::{
    ClosestArgs, Command, CoresetArgs, DistArgs, DoublingArgs, DoublingMode, Family, FatnessArgs,
    GenerateArgs, PointsIn, PolygonIn, RenderArgs, SpannerArgs, VerifyArgs,
};

/// Metric checks tolerate this much additive slack.
const METRIC_TOL: f64 = 1e-9;

pub enum Failure {
    Core(Error),
    /// Flag combinations clap cannot express; exit code 2.
    Usage(String),
    Render(String),
}

impl Failure {
    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Core(e) => e.kind(),
            Failure::Usage(_) => "usage",
            Failure::Render(_) => "render",
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => e.fmt(f),
            Failure::Usage(m) | Failure::Render(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Core(Error::Io(e))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Core(Error::Json(e))
    }
}

type Outcome = Result<u8, Failure>;

pub fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Generate(a) => generate(a),
        Command::Validate(a) => validate_cmd(a),
        Command::Dist(a) => dist(a),
        Command::Rch(a) => rch(a),
        Command::ClosestPair(a) => closest(a),
        Command::Coreset(a) => coreset(a),
        Command::Spanner(a) => spanner(a),
        Command::Fatness(a) => fatness(a),
        Command::Doubling(a) => doubling(a),
        Command::Verify(a) => verify(a),
        Command::Render(a) => render_cmd(a),
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| {
        Failure::Core(Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
    })
}

fn load_polygon(path: &Path) -> Result<Polygon, Failure> {
    Ok(polygon_from_json(&read_text(path)?)?)
}

fn load_points(path: &Path) -> Result<Vec<Point>, Failure> {
    Ok(points_from_json(&read_text(path)?)?)
}

fn engine_for(path: &Path) -> Result<GeodesicEngine, Failure> {
    Ok(GeodesicEngine::new(load_polygon(path)?)?)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_json(out: &Option<PathBuf>, v: &Value) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    emit(out, &text)
}

fn generate(a: GenerateArgs) -> Outcome {
    let need_seed = || {
        a.seed.ok_or_else(|| Failure::Usage("--seed is required for randomized families".into()))
    };
    let (polygon, marks) = match a.family {
        Family::P1 => split(gen_p1(a.eps)?),
        Family::Pm => split(gen_pm(a.m, a.eps)?),
        Family::Pstar => split(gen_pstar(a.m, a.eps)?),
        Family::Comb => split(gen_comb(a.n, a.width, a.depth)?),
        Family::Convex => (gen_random_convex(a.n, need_seed()?)?, Default::default()),
        Family::Blob => (gen_fat_blob(a.n, need_seed()?)?, Default::default()),
    };
    write_polygon(&a.output, &polygon)?;
    let mut summary = json!({
        "polygon": a.output.display().to_string(),
        "n_vertices": polygon.n_vertices(),
    });
    if !marks.is_empty() {
        let sidecar = a.output.with_extension("marks.json");
        std::fs::write(&sidecar, marks_to_json(&marks))?;
        summary["marks"] = json!(sidecar.display().to_string());
    }
    emit_json(&None, &summary)?;
    Ok(0)
}

fn split(mp: geofat::generators::MarkedPolygon) -> (Polygon, std::collections::BTreeMap<String, Point>) {
    (mp.polygon, mp.marks)
}

fn validate_cmd(a: PolygonIn) -> Outcome {
    let report = validate(&load_polygon(&a.polygon)?);
    emit_json(&a.out.output, &serde_json::to_value(&report)?)?;
    Ok(if report.ok { 0 } else { 1 })
}

fn dist(a: DistArgs) -> Outcome {
    let engine = engine_for(&a.polygon)?;
    let path = engine.path(a.from, a.to)?;
    emit_json(
        &a.out.output,
        &json!({ "from": a.from, "to": a.to, "distance": path.length, "path": path.waypoints }),
    )?;
    Ok(0)
}

fn rch(a: PointsIn) -> Outcome {
    let engine = engine_for(&a.polygon)?;
    let s = load_points(&a.points)?;
    let hull = relative_convex_hull(&engine, &s)?;
    // Undefined when all points coincide.
    let ratio = perimeter_ratio(&engine, &s).ok();
    emit_json(&a.out.output, &json!({ "hull": hull, "perimeter_ratio": ratio }))?;
    Ok(0)
}

fn closest(a: ClosestArgs) -> Outcome {
    let engine = engine_for(&a.input.polygon)?;
    let q = load_points(&a.input.points)?;
    let res = closest_pair(&engine, &q, a.grid_m, a.seed)?;
    let mut v = serde_json::to_value(&res)?;
    v["seed"] = json!(a.seed);
    v["grid_m"] = json!(a.grid_m);
    emit_json(&a.input.out.output, &v)?;
    Ok(0)
}

fn coreset(a: CoresetArgs) -> Outcome {
    let engine = engine_for(&a.input.polygon)?;
    let s = load_points(&a.input.points)?;
    let c = coreset_furthest(&engine, &s, a.epsilon, a.nu)?;
    emit_json(&a.input.out.output, &serde_json::to_value(&c)?)?;
    Ok(0)
}

fn spanner(a: SpannerArgs) -> Outcome {
    let engine = engine_for(&a.input.polygon)?;
    let s = load_points(&a.input.points)?;
    let g = greedy_spanner(&engine, &s, a.epsilon)?;
    let stretch = g.max_stretch(&engine)?;
    let mut v = serde_json::to_value(&g)?;
    v["n_edges"] = json!(g.edges.len());
    v["max_stretch"] = json!(stretch);
    emit_json(&a.input.out.output, &v)?;
    Ok(0)
}

fn fatness(a: FatnessArgs) -> Outcome {
    if a.alpha.is_none() && a.gamma.is_none() {
        return Err(Failure::Usage("give --alpha and --beta, --gamma, or both".into()));
    }
    let poly = load_polygon(&a.input.polygon)?;
    let report = validate(&poly);
    if !report.ok {
        return Err(Error::InvalidPolygon(report.summary()).into());
    }
    let mut out = json!({});
    if let (Some(alpha), Some(beta)) = (a.alpha, a.beta) {
        let params = FatnessParams::new(alpha, beta)?;
        let (g, c) = doubling_bound_formula(params)?;
        let covered = check_alpha_beta_covered(&poly, params, a.samples, a.directions)?;
        out["doubling_bound"] = json!({ "grid_size": g, "constant": c });
        out["covered"] = serde_json::to_value(&covered)?;
    }
    if let Some(gamma) = a.gamma {
        let local = check_locally_fat(&poly, gamma, a.samples, a.radii, a.seed)?;
        out["locally_fat"] = serde_json::to_value(&local)?;
    }
    emit_json(&a.input.out.output, &out)?;
    Ok(0)
}

fn doubling(a: DoublingArgs) -> Outcome {
    if let DoublingMode::Growth = a.mode {
        if a.svg.is_some() {
            return Err(Failure::Usage("--svg is not available in growth mode".into()));
        }
        let pitch = a.pitch.unwrap_or(2.0 / 256.0);
        let table = doubling_growth_experiment(a.ms.iter().copied(), a.eps, pitch);
        emit_json(&a.out.output, &json!({ "mode": "growth", "pitch": pitch, "table": table }))?;
        return Ok(0);
    }
    let (Some(polygon), Some(center), Some(radius)) = (&a.polygon, a.center, a.radius) else {
        return Err(Failure::Usage("cover and packing need --polygon, --center and --radius".into()));
    };
    let engine = engine_for(polygon)?;
    let pitch = a.pitch.unwrap_or(radius * geofat::doubling::DEFAULT_PITCH_FRACTION);
    let mut scene = Scene::default();
    scene.push(Payload::Polygon { polygon: engine.polygon().clone() }, Style::new("black", "#eeeeee", 0.002));
    let out = match a.mode {
        DoublingMode::Cover => {
            let params = FatnessParams::new(a.alpha, a.beta)?;
            let res = grid_cover(&engine, center, radius, params, pitch)?;
            scene.push(
                Payload::Circles { circles: res.cover_centers.iter().map(|&c| (c, res.cover_radius)).collect() },
                Style::new("#1f77b4", "none", 0.001),
            );
            scene.push(Payload::Points { points: res.uncovered.clone(), radius: 0.004 }, Style::new("none", "red", 0.0));
            json!({ "mode": "cover", "certificate": res.is_certificate(), "result": res })
        }
        DoublingMode::Packing => {
            let res = packing_lower_bound(&engine, center, radius, pitch)?;
            let ok = verify_packing(&engine, &res)?;
            scene.push(
                Payload::Circles { circles: res.witnesses.iter().map(|&c| (c, res.separation / 2.0)).collect() },
                Style::new("#d62728", "none", 0.001),
            );
            json!({ "mode": "packing", "lower_bound": res.witnesses.len(), "verified": ok, "result": res })
        }
        DoublingMode::Growth => unreachable!("handled above"),
    };
    if let Some(svg) = &a.svg {
        let sample = geodesic_disk_sample(&engine, center, radius, pitch)?;
        scene.layers.insert(1, crate::render::Layer {
            payload: Payload::Points { points: sample, radius: 0.0015 },
            style: Style::new("none", "#999999", 0.0),
        });
        std::fs::write(svg, render(&scene).map_err(Failure::Render)?)?;
    }
    emit_json(&a.out.output, &out)?;
    Ok(0)
}

fn sample_interior(poly: &Polygon, n: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
    let (lo, hi) = poly.bbox();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = Point::new(rng.gen_range(lo.x..=hi.x), rng.gen_range(lo.y..=hi.y));
        if point_in_polygon(poly, p) == Location::Inside {
            out.push(p);
        }
    }
    out
}

fn verify(a: VerifyArgs) -> Outcome {
    let engine = engine_for(&a.polygon)?;
    let poly = engine.polygon().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let draw = |k: usize, rng: &mut ChaCha8Rng| -> Result<Vec<Point>, Failure> {
        match &a.points {
            None => Ok(sample_interior(&poly, k, rng)),
            Some(path) => {
                let pts = load_points(path)?;
                if pts.is_empty() {
                    return Err(Error::EmptyInput("verify needs at least one point").into());
                }
                Ok((0..k).map(|_| pts[rng.gen_range(0..pts.len())]).collect())
            }
        }
    };
    let mut violations = Vec::new();
    let triples = draw(3 * a.triples, &mut rng)?;
    for t in triples.chunks_exact(3) {
        let (p, q, r) = (t[0], t[1], t[2]);
        let (pq, qp) = (engine.distance(p, q)?, engine.distance(q, p)?);
        let (qr, pr) = (engine.distance(q, r)?, engine.distance(p, r)?);
        if pq.to_bits() != qp.to_bits() {
            violations.push(json!({ "check": "symmetry", "points": [p, q], "values": [pq, qp] }));
        }
        if pq < p.dist(q) - METRIC_TOL {
            violations.push(json!({ "check": "euclidean_lower_bound", "points": [p, q], "values": [pq, p.dist(q)] }));
        }
        if pr > pq + qr + METRIC_TOL {
            violations.push(json!({ "check": "triangle", "points": [p, q, r], "values": [pr, pq, qr] }));
        }
    }
    let diam = euclidean_diameter(&poly.vertices().collect::<Vec<_>>())?;
    let pitch = diam * a.pitch_fraction;
    let oracle = DenseGridOracle::new(&poly, pitch)?;
    let pairs = draw(2 * a.pairs, &mut rng)?;
    let mut skipped = 0usize;
    for pair in pairs.chunks_exact(2) {
        let (p, q) = (pair[0], pair[1]);
        let exact = engine.distance(p, q)?;
        match oracle_distance(&oracle, p, q) {
            Ok(grid) => {
                if grid < exact - METRIC_TOL || grid > GRID_DISTORTION * exact + 4.0 * pitch {
                    violations.push(json!({ "check": "grid_oracle", "points": [p, q], "values": [exact, grid] }));
                }
            }
            // The grid is too coarse to thread a narrow passage.
            Err(Error::Unreachable(..)) => skipped += 1,
            Err(e) => return Err(e.into()),
        }
    }
    let ok = violations.is_empty();
    emit_json(
        &a.out.output,
        &json!({
            "ok": ok,
            "triples": a.triples,
            "pairs": a.pairs,
            "oracle_pitch": pitch,
            "oracle_nodes": oracle.n_nodes(),
            "oracle_skipped": skipped,
            "violations": violations,
        }),
    )?;
    Ok(if ok { 0 } else { 1 })
}

/// Accepts a bare point list or an object carrying one under `path` or `waypoints`.
fn load_path(path: &Path) -> Result<Vec<Point>, Failure> {
    let v: Value = serde_json::from_str(&read_text(path)?)?;
    let list = match &v {
        Value::Object(m) => m
            .get("path")
            .or_else(|| m.get("waypoints"))
            .cloned()
            .ok_or_else(|| Error::InvalidQuery("path file has no `path` or `waypoints` field".into()))?,
        _ => v,
    };
    let pts: Vec<Point> = serde_json::from_value(list)?;
    Ok(pts)
}

fn render_cmd(a: RenderArgs) -> Outcome {
    let mut scene = Scene::default();
    if let Some(p) = &a.polygon {
        scene.push(Payload::Polygon { polygon: load_polygon(p)? }, Style::new("black", "#eeeeee", 0.002));
    }
    if let Some(p) = &a.path {
        scene.push(Payload::Path { points: load_path(p)? }, Style::new("red", "none", 0.004));
    }
    if let Some(p) = &a.points {
        scene.push(Payload::Points { points: load_points(p)?, radius: 0.006 }, Style::new("none", "#1f77b4", 0.0));
    }
    emit(&a.out.output, &render(&scene).map_err(Failure::Render)?)?;
    Ok(0)
}
