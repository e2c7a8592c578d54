//! Doubling-constant estimates for the geodesic metric: an explicit cover
//! by radius-r/2 disks around grid points (upper bound on fat inputs) and a
//! greedy packing (lower bound on any input). Both work on a lattice sample
//! of the geodesic disk.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fatness::{doubling_bound_formula, FatnessParams};
use crate::generators::gen_pstar;
use crate::geodesic::{geodesic_disk_sample, geodesic_disk_sample_with_distances, grid_points_in_polygon};
use crate::geodesic::{DistanceField, GeodesicEngine};
use crate::{Error, Point, Result};

/// Sample pitch relative to the radius used when none is given.
pub const DEFAULT_PITCH_FRACTION: f64 = 1.0 / 64.0;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverResult {
    pub center: Point,
    pub radius: f64,
    /// Grid resolution: the grid has `g × g` cells on the side-3r square.
    pub grid_size: u64,
    pub cover_centers: Vec<Point>,
    pub cover_radius: f64,
    /// Sample points at geodesic distance more than `cover_radius` from every center.
    pub uncovered: Vec<Point>,
    pub samples: usize,
}

impl CoverResult {
    pub fn is_certificate(&self) -> bool {
        self.uncovered.is_empty()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PackingResult {
    pub center: Point,
    pub radius: f64,
    /// Points of the disk sample, pairwise more than `separation` apart.
    pub witnesses: Vec<Point>,
    pub separation: f64,
    pub samples: usize,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct GrowthRow {
    pub m: u32,
    pub n_vertices: usize,
    pub lower_bound: usize,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct GrowthTable {
    pub rows: Vec<GrowthRow>,
    /// Why the table stops early, if it does.
    pub stopped: Option<String>,
}

fn check_radius(r: f64, pitch: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {r}")));
    }
    if !(pitch > 0.0 && pitch.is_finite()) {
        return Err(Error::InvalidParameter(format!("sample pitch must be positive, got {pitch}")));
    }
    Ok(())
}

/// Cover of the sampled disk `D_g(p, r)` by geodesic disks of radius `r/2`
/// centered at the grid points inside the polygon, where the side-3r square
/// around `p` is split into `g × g` cells and `g` depends only on `params`.
///
/// `pitch` is the lattice spacing of the disk sample.
pub fn grid_cover(
    engine: &GeodesicEngine,
    p: Point,
    r: f64,
    params: FatnessParams,
    pitch: f64,
) -> Result<CoverResult> {
    check_radius(r, pitch)?;
    let (g, _) = doubling_bound_formula(params)?;
    let samples = geodesic_disk_sample(engine, p, r, pitch)?;
    let side = 3.0 * r / g as f64;
    let origin = p - Point::new(1.5 * r, 1.5 * r);
    let n = g as i64;
    let centers = grid_points_in_polygon(engine.polygon(), origin, side, (0, n), (0, n));
    let width = (n + 1) as usize;
    let mut inside = vec![false; width * width];
    for q in &centers {
        let i = ((q.x - origin.x) / side).round() as usize;
        let j = ((q.y - origin.y) / side).round() as usize;
        inside[j * width + i] = true;
    }
    let half = r / 2.0;
    let grid_point = |i: i64, j: i64| origin + Point::new(i as f64 * side, j as f64 * side);
    let reach = (half / side).ceil() as i64 + 1;

    let covered = |u: Point| -> bool {
        let ci = ((u.x - origin.x) / side).round() as i64;
        let cj = ((u.y - origin.y) / side).round() as i64;
        let cell = |i: i64, j: i64| (0..=n).contains(&i) && (0..=n).contains(&j) && inside[j as usize * width + i as usize];
        // Nearby grid points first, by straight visibility.
        for i in ci - 2..=ci + 2 {
            for j in cj - 2..=cj + 2 {
                if cell(i, j) {
                    let q = grid_point(i, j);
                    if q.dist(u) <= half && engine.visible(u, q) {
                        return true;
                    }
                }
            }
        }
        // Otherwise every grid point within Euclidean distance r/2, nearest first.
        let mut cand: Vec<(f64, Point)> = Vec::new();
        for i in ci - reach..=ci + reach {
            for j in cj - reach..=cj + reach {
                if cell(i, j) {
                    let q = grid_point(i, j);
                    let d = q.dist(u);
                    if d <= half {
                        cand.push((d, q));
                    }
                }
            }
        }
        cand.sort_by(|a, b| a.0.total_cmp(&b.0));
        let Ok(src) = engine.locate(u) else { return false };
        let field = DistanceField::new(engine, &src);
        cand.iter().any(|&(_, q)| field.distance_within(q, half).is_some())
    };

    let flags: Vec<bool> = samples.par_iter().map(|&u| covered(u)).collect();
    let uncovered = samples.iter().zip(&flags).filter(|(_, &c)| !c).map(|(&u, _)| u).collect();
    Ok(CoverResult {
        center: p,
        radius: r,
        grid_size: g,
        cover_centers: centers,
        cover_radius: half,
        uncovered,
        samples: samples.len(),
    })
}

/// Greedy farthest-point packing of the sampled disk `D_g(p, r)` with
/// separation `r`. No geodesic disk of radius `r/2` holds two of the
/// witnesses, so their number bounds the size of any such cover from below.
pub fn packing_lower_bound(engine: &GeodesicEngine, p: Point, r: f64, pitch: f64) -> Result<PackingResult> {
    check_radius(r, pitch)?;
    let sample = geodesic_disk_sample_with_distances(engine, p, r, pitch)?;
    let points: Vec<Point> = sample.iter().map(|s| s.0).collect();
    let mut witnesses = Vec::new();
    if !points.is_empty() {
        // Start from the sample point farthest from the center; ties go to
        // the lowest index.
        let first = sample
            .iter()
            .enumerate()
            .fold(0, |best, (k, s)| if s.1 > sample[best].1 { k } else { best });
        let mut gap = vec![f64::INFINITY; points.len()];
        let mut next = first;
        loop {
            let w = points[next];
            witnesses.push(w);
            let field = DistanceField::new(engine, &engine.locate(w)?);
            gap.par_iter_mut().zip(points.par_iter()).for_each(|(g, &q)| {
                if let Some(d) = field.distance_within(q, *g) {
                    *g = g.min(d);
                }
            });
            let (k, &far) = gap
                .iter()
                .enumerate()
                .fold((0, &f64::NEG_INFINITY), |best, (k, g)| if *g > *best.1 { (k, g) } else { best });
            if far <= r {
                break;
            }
            next = k;
        }
    }
    Ok(PackingResult { center: p, radius: r, witnesses, separation: r, samples: points.len() })
}

/// Recomputes every pairwise witness distance and checks it exceeds the separation.
pub fn verify_packing(engine: &GeodesicEngine, packing: &PackingResult) -> Result<bool> {
    let w = &packing.witnesses;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if engine.distance(w[i], w[j])? <= packing.separation {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Packing lower bounds on the chained Hilbert polygons at their apex with
/// radius 2, one row per `m`. Stops at the first failure and keeps the rows
/// computed so far.
pub fn doubling_growth_experiment(ms: impl IntoIterator<Item = u32>, eps: f64, pitch: f64) -> GrowthTable {
    let mut table = GrowthTable::default();
    for m in ms {
        let row = gen_pstar(m, eps).and_then(|pm| {
            let n_vertices = pm.polygon.n_vertices();
            let c = pm.mark("c");
            let engine = GeodesicEngine::new(pm.polygon)?;
            let pack = packing_lower_bound(&engine, c, 2.0, pitch)?;
            Ok(GrowthRow { m, n_vertices, lower_bound: pack.witnesses.len() })
        });
        match row {
            Ok(r) => table.rows.push(r),
            Err(e) => {
                log::warn!("growth experiment stopped at m = {m}: {e}");
                table.stopped = Some(format!("m = {m}: {e}"));
                break;
            }
        }
    }
    table
}

/// Seven disks of radius `r/2` covering the disk of radius `r` around `c`:
/// one concentric, six centered at distance `r·√3/2` at angles 30° + k·60°.
pub fn seven_disk_cover(c: Point, r: f64) -> [Point; 7] {
    let mut out = [c; 7];
    for (k, slot) in out.iter_mut().skip(1).enumerate() {
        *slot = c + Point::from_polar(r * 3f64.sqrt() / 2.0, PI / 6.0 + k as f64 * PI / 3.0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_fat_blob, gen_random_convex};
    use crate::Polygon;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn l_shape() -> Polygon {
        Polygon::simple(vec![
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(2.0, 1.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 2.0),
            Point::new(0.0, 2.0),
        ])
    }

    #[test]
    fn seven_disks_cover_the_disk() {
        let c = Point::new(0.3, -1.0);
        let r = 2.0;
        let cover = seven_disk_cover(c, r);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for k in 0..20_000 {
            // Include the boundary circle, where the cover is tight.
            let rho = if k % 4 == 0 { r } else { r * rng.gen::<f64>().sqrt() };
            let q = c + Point::from_polar(rho, rng.gen_range(0.0..2.0 * PI));
            assert!(cover.iter().any(|z| z.dist(q) <= r / 2.0 + 1e-12), "{q:?}");
        }
    }

    #[test]
    fn convex_cover_is_complete() {
        let params = FatnessParams::new(PI / 3.0, 0.5).unwrap();
        for seed in 0..3 {
            let poly = gen_random_convex(10, seed).unwrap();
            let engine = GeodesicEngine::new(poly.clone()).unwrap();
            let p = poly.outer.vertices().iter().fold(Point::new(0.0, 0.0), |a, &v| a + v)
                * (1.0 / poly.outer.len() as f64);
            for r in [0.05, 0.2, 0.6] {
                let res = grid_cover(&engine, p, r, params, r / 32.0).unwrap();
                assert!(res.is_certificate(), "seed {seed} r {r}: {}", res.uncovered.len());
                let (g, c) = doubling_bound_formula(params).unwrap();
                assert!(res.cover_centers.len() as f64 <= c);
                assert_eq!(res.grid_size, g);
                assert_eq!(res.cover_radius, r / 2.0);
            }
        }
    }

    #[test]
    fn blob_cover_is_stable_under_resampling() {
        let poly = gen_fat_blob(64, 1).unwrap();
        let engine = GeodesicEngine::new(poly).unwrap();
        let params = FatnessParams::new(0.2, 0.05).unwrap();
        let p = Point::new(0.5, 0.5);
        let r = 0.3;
        let res = grid_cover(&engine, p, r, params, r / 64.0).unwrap();
        assert!(res.is_certificate());
        let fine = grid_cover(&engine, p, r, params, r / 128.0).unwrap();
        assert!((fine.uncovered.len() as f64) < 0.01 * fine.samples as f64);
    }

    #[test]
    fn violating_input_still_reports() {
        let pm = gen_pstar(2, 1e-4).unwrap();
        let c = pm.mark("c");
        let engine = GeodesicEngine::new(pm.polygon).unwrap();
        let res = grid_cover(&engine, c, 2.0, FatnessParams::new(PI / 6.0, 0.1).unwrap(), 1.0 / 16.0).unwrap();
        assert!(res.samples > 0);
        assert!(res.uncovered.len() <= res.samples);
    }

    #[test]
    fn outside_center_is_an_error() {
        let engine = GeodesicEngine::new(l_shape()).unwrap();
        let params = FatnessParams::new(0.5, 0.5).unwrap();
        assert!(grid_cover(&engine, Point::new(1.5, 1.5), 0.5, params, 0.05).is_err());
        assert!(packing_lower_bound(&engine, Point::new(1.5, 1.5), 0.5, 0.05).is_err());
        assert!(packing_lower_bound(&engine, Point::new(0.5, 0.5), -1.0, 0.05).is_err());
    }

    /// Largest subset of `pts` with pairwise distance above `sep`, by exhaustive search.
    fn max_packing(pts: &[Point], sep: f64) -> usize {
        fn grow(pts: &[Point], sep: f64, chosen: &mut Vec<Point>, from: usize, best: &mut usize) {
            *best = (*best).max(chosen.len());
            for k in from..pts.len() {
                if chosen.iter().all(|c| c.dist(pts[k]) > sep) {
                    chosen.push(pts[k]);
                    grow(pts, sep, chosen, k + 1, best);
                    chosen.pop();
                }
            }
        }
        let mut best = 0;
        grow(pts, sep, &mut Vec::new(), 0, &mut best);
        best
    }

    #[test]
    fn convex_packing_is_bounded_by_the_optimum() {
        let big = Polygon::simple(vec![
            Point::new(-3.0, -3.0),
            Point::new(3.0, -3.0),
            Point::new(3.0, 3.0),
            Point::new(-3.0, 3.0),
        ]);
        let engine = GeodesicEngine::new(big).unwrap();
        let p = Point::new(0.2, -0.1);
        let r = 1.0;
        let pitch = r / 5.0;
        let res = packing_lower_bound(&engine, p, r, pitch).unwrap();
        let sample = geodesic_disk_sample(&engine, p, r, pitch).unwrap();
        let opt = max_packing(&sample, r);
        assert!(res.witnesses.len() <= opt);
        // Points pairwise more than r apart inside a radius-r disk: at most five.
        assert!(opt <= 5);
        assert!(res.witnesses.len() >= 2);
        assert!(verify_packing(&engine, &res).unwrap());
    }

    #[test]
    fn huge_radius_gives_one_witness() {
        let engine = GeodesicEngine::new(l_shape()).unwrap();
        let res = packing_lower_bound(&engine, Point::new(0.5, 0.5), 10.0, 0.1).unwrap();
        assert_eq!(res.witnesses.len(), 1);
    }

    #[test]
    fn scale_invariance() {
        let lambda = 3.0;
        let a = GeodesicEngine::new(l_shape()).unwrap();
        let b = GeodesicEngine::new(l_shape().map(|q| q * lambda)).unwrap();
        let p = Point::new(0.5, 1.5);
        let (r, pitch) = (1.5, 1.5 / 16.0);
        let pa = packing_lower_bound(&a, p, r, pitch).unwrap();
        let pb = packing_lower_bound(&b, p * lambda, r * lambda, pitch * lambda).unwrap();
        assert_eq!(pa.witnesses.len(), pb.witnesses.len());
        assert_eq!(pa.samples, pb.samples);
        for (u, v) in pa.witnesses.iter().zip(&pb.witnesses) {
            assert!((*u * lambda).dist(*v) < 1e-9);
        }
        let params = FatnessParams::new(0.8, 0.4).unwrap();
        let ca = grid_cover(&a, p, r, params, pitch).unwrap();
        let cb = grid_cover(&b, p * lambda, r * lambda, params, pitch * lambda).unwrap();
        assert_eq!(ca.cover_centers.len(), cb.cover_centers.len());
        assert_eq!(ca.uncovered.len(), cb.uncovered.len());
        assert_eq!(cb.cover_radius, ca.cover_radius * lambda);
    }

    #[test]
    fn pstar_growth_small_rows() {
        let table = doubling_growth_experiment(1..=2, 1e-4, 1.0 / 64.0);
        assert!(table.stopped.is_none());
        assert!(table.rows[0].lower_bound >= 2, "{table:?}");
        assert!(table.rows[1].lower_bound >= 4, "{table:?}");
        let ratio = table.rows[1].n_vertices as f64 / table.rows[0].n_vertices as f64;
        assert!((6.0..=9.0).contains(&ratio));
    }

    #[test]
    fn growth_reports_partial_tables() {
        // eps too large for m = 3 copies.
        let table = doubling_growth_experiment([1, 3], 3e-3, 1.0 / 16.0);
        assert_eq!(table.rows.len(), 1);
        assert!(table.stopped.is_some());
    }
}
