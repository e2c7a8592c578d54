use rayon::prelude::*;

use super::{GeodesicEngine, Located};
use crate::geom::point_in_polygon;
use crate::{Error, Point, Polygon, Result};

/// Geodesic distances from one source to arbitrary points.
pub struct DistanceField<'e> {
    engine: &'e GeodesicEngine,
    source: Point,
    /// `(distance from source, reflex index)`, ascending.
    via: Vec<(f64, u32)>,
}

impl<'e> DistanceField<'e> {
    pub fn new(engine: &'e GeodesicEngine, source: &Located) -> Self {
        let r = engine.n_reflex();
        let mut f = vec![f64::INFINITY; r];
        for &(u, du) in &source.visible {
            for (v, fv) in f.iter_mut().enumerate() {
                let d = du + engine.reflex_dist(u as usize, v);
                if d < *fv {
                    *fv = d;
                }
            }
        }
        let mut via: Vec<(f64, u32)> = f
            .into_iter()
            .enumerate()
            .filter(|(_, d)| d.is_finite())
            .map(|(v, d)| (d, v as u32))
            .collect();
        via.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        DistanceField { engine, source: source.point, via }
    }

    pub fn source(&self) -> Point {
        self.source
    }

    /// Distance to `q`, which must lie in the polygon; infinite if unreachable.
    pub fn distance_to(&self, q: Point) -> f64 {
        self.distance_within(q, f64::INFINITY).unwrap_or(f64::INFINITY)
    }

    /// Distance to `q` if it is at most `limit`.
    pub fn distance_within(&self, q: Point, limit: f64) -> Option<f64> {
        let direct = self.source.dist(q);
        if direct > limit {
            return None;
        }
        if self.engine.visible(self.source, q) {
            return Some(direct);
        }
        let mut best = f64::INFINITY;
        for &(f, v) in &self.via {
            if f >= best || f > limit {
                break;
            }
            let p = self.engine.reflex_point(v as usize);
            let d = f + p.dist(q);
            if d < best
                && d <= limit
                && self.engine.tangent_from(v as usize, q)
                && self.engine.visible(p, q)
            {
                best = d;
            }
        }
        (best <= limit).then_some(best)
    }
}

/// Points `origin + (i, j) * pitch` for `i in i_range`, `j in j_range` that lie
/// in the closed polygon, row by row. Uses a scanline parity test and falls
/// back to the exact classifier near edges.
pub fn grid_points_in_polygon(
    poly: &Polygon,
    origin: Point,
    pitch: f64,
    i_range: (i64, i64),
    j_range: (i64, i64),
) -> Vec<Point> {
    let edges: Vec<(Point, Point)> = poly.edges().collect();
    let band = 1e-7 * (1.0 + pitch);
    (j_range.0..=j_range.1)
        .into_par_iter()
        .flat_map_iter(|j| {
            let y = origin.y + j as f64 * pitch;
            let near_vertex = edges.iter().any(|(a, _)| (a.y - y).abs() <= band);
            let mut xs: Vec<f64> = edges
                .iter()
                .filter(|(a, b)| (a.y > y) != (b.y > y))
                .map(|(a, b)| a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y))
                .collect();
            xs.sort_by(f64::total_cmp);
            (i_range.0..=i_range.1).filter_map(move |i| {
                let p = Point::new(origin.x + i as f64 * pitch, y);
                let k = xs.partition_point(|&x| x < p.x);
                let close = near_vertex
                    || (k > 0 && p.x - xs[k - 1] <= band)
                    || (k < xs.len() && xs[k] - p.x <= band);
                let inside = if close { point_in_polygon(poly, p).in_closed() } else { k % 2 == 1 };
                inside.then_some(p)
            })
        })
        .collect()
}

/// Lattice points of pitch `density` anchored at `p` with geodesic distance
/// at most `r` from `p`, paired with that distance.
pub fn geodesic_disk_sample_with_distances(
    engine: &GeodesicEngine,
    p: Point,
    r: f64,
    density: f64,
) -> Result<Vec<(Point, f64)>> {
    if r.is_nan() || r < 0.0 || !r.is_finite() {
        return Err(Error::InvalidParameter(format!("radius must be finite and >= 0, got {r}")));
    }
    if density.is_nan() || density <= 0.0 {
        return Err(Error::InvalidParameter(format!("density must be > 0, got {density}")));
    }
    let source = engine.locate(p)?;
    let field = DistanceField::new(engine, &source);
    let (lo, hi) = engine.polygon().bbox();
    let range = |lo_c: f64, hi_c: f64, c: f64| {
        let a = ((lo_c.max(c - r) - c) / density).ceil() as i64;
        let b = ((hi_c.min(c + r) - c) / density).floor() as i64;
        (a, b)
    };
    let (i0, i1) = range(lo.x, hi.x, p.x);
    let (j0, j1) = range(lo.y, hi.y, p.y);
    if i0 > i1 || j0 > j1 {
        return Ok(Vec::new());
    }
    let candidates = grid_points_in_polygon(engine.polygon(), p, density, (i0, i1), (j0, j1));
    Ok(candidates
        .into_par_iter()
        .filter_map(|q| field.distance_within(q, r).map(|d| (q, d)))
        .collect())
}

/// Lattice points of pitch `density` anchored at `p` within geodesic distance `r`.
pub fn geodesic_disk_sample(engine: &GeodesicEngine, p: Point, r: f64, density: f64) -> Result<Vec<Point>> {
    Ok(geodesic_disk_sample_with_distances(engine, p, r, density)?
        .into_iter()
        .map(|(q, _)| q)
        .collect())
}
