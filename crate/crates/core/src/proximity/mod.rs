//! Proximity problems under the geodesic distance: closest pair, furthest
//! neighbors with a small coreset, greedy spanners, and the perimeter to
//! diameter ratio of relative convex hulls.

mod closest;
mod spanner;

use serde::{Deserialize, Serialize};

use crate::geodesic::{relative_convex_hull, GeodesicEngine, RelativeHull};
use crate::geom::{euclidean_diameter, point_segment_distance};
use crate::{Error, Point, Result};

pub use closest::{closest_pair, ClosestPairResult, GridState, DEFAULT_M};
pub use spanner::{greedy_spanner, SpannerGraph};

/// Safety factor applied to the measured perimeter ratio when no `nu` is given.
pub const NU_SAFETY: f64 = 1.25;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Coreset {
    pub points: Vec<Point>,
    pub epsilon: f64,
    pub nu: f64,
    pub hull_perimeter: f64,
    /// Arc-length spacing `epsilon / (2 nu) · hull_perimeter`.
    pub spacing: f64,
}

/// Exact furthest point of `c` from `q`; ties go to the lowest index.
pub fn furthest_neighbor(engine: &GeodesicEngine, q: Point, c: &[Point]) -> Result<(Point, f64)> {
    if c.is_empty() {
        return Err(Error::EmptyInput("furthest_neighbor needs a non-empty set"));
    }
    let lq = engine.locate(q)?;
    let mut best = (c[0], f64::NEG_INFINITY);
    for &p in c {
        let d = engine.distance_located(&lq, &engine.locate(p)?)?;
        if d > best.1 {
            best = (p, d);
        }
    }
    Ok(best)
}

fn ratio_of(hull: &RelativeHull) -> Result<f64> {
    let diam = euclidean_diameter(&hull.boundary)?;
    if diam <= 0.0 {
        return Err(Error::Degenerate("relative hull has zero diameter".into()));
    }
    Ok(hull.perimeter / diam)
}

/// `per(rch(S)) / diam(rch(S))`, with the diameter taken over the hull's
/// boundary vertices.
pub fn perimeter_ratio(engine: &GeodesicEngine, s: &[Point]) -> Result<f64> {
    if s.len() < 2 {
        return Err(Error::InvalidParameter("perimeter ratio needs at least 2 points".into()));
    }
    ratio_of(&relative_convex_hull(engine, s)?)
}

/// Arc-length positions of the points of `s` that lie on the hull boundary,
/// ascending and without duplicate points.
fn boundary_positions(hull: &RelativeHull, s: &[Point]) -> Vec<(f64, Point)> {
    let b = &hull.boundary;
    let tol = 1e-9 * (1.0 + hull.perimeter);
    let mut out: Vec<(f64, Point)> = Vec::new();
    for &p in s {
        let mut acc = 0.0;
        for i in 0..b.len() {
            let (a, c) = (b[i], b[(i + 1) % b.len()]);
            let len = a.dist(c);
            if point_segment_distance(p, a, c) <= tol {
                let t = if len > 0.0 { ((p - a).dot(c - a) / (len * len)).clamp(0.0, 1.0) } else { 0.0 };
                out.push((acc + t * len, p));
                break;
            }
            acc += len;
        }
    }
    out.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.lex_cmp(&y.1)));
    out.dedup_by(|x, y| x.1 == y.1);
    out
}

/// Furthest-neighbor coreset: points of `s` on the boundary of `rch(S)`,
/// walked from the first hull corner; a point is kept when it lies more than
/// `epsilon / (2 nu) · per(rch(S))` of arc length past the last kept one.
/// Every boundary point of `S` is then within that spacing of a kept point,
/// and at most `⌈2 nu / epsilon⌉ + 1` points are kept.
///
/// `nu` defaults to the measured perimeter ratio times [`NU_SAFETY`].
pub fn coreset_furthest(engine: &GeodesicEngine, s: &[Point], epsilon: f64, nu: Option<f64>) -> Result<Coreset> {
    if s.is_empty() {
        return Err(Error::EmptyInput("coreset needs a non-empty set"));
    }
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon = {epsilon} must lie in (0, 1]")));
    }
    if let Some(v) = nu {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter(format!("nu must be positive, got {v}")));
        }
    }
    let hull = relative_convex_hull(engine, s)?;
    if hull.perimeter == 0.0 {
        return Ok(Coreset {
            points: vec![s[0]],
            epsilon,
            nu: nu.unwrap_or(1.0),
            hull_perimeter: 0.0,
            spacing: 0.0,
        });
    }
    let nu = match nu {
        Some(v) => v,
        None => NU_SAFETY * ratio_of(&hull)?,
    };
    let spacing = epsilon / (2.0 * nu) * hull.perimeter;
    let mut points = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for (pos, p) in boundary_positions(&hull, s) {
        if pos - last > spacing {
            points.push(p);
            last = pos;
        }
    }
    Ok(Coreset { points, epsilon, nu, hull_perimeter: hull.perimeter, spacing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_comb, gen_fat_blob};
    use crate::Polygon;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn square(s: f64) -> Polygon {
        Polygon::simple(vec![Point::new(0.0, 0.0), Point::new(s, 0.0), Point::new(s, s), Point::new(0.0, s)])
    }

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

    fn sample_in(engine: &GeodesicEngine, n: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
        let (lo, hi) = engine.polygon().bbox();
        let mut out = Vec::new();
        while out.len() < n {
            let p = Point::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
            if engine.contains(p) {
                out.push(p);
            }
        }
        out
    }

    #[test]
    fn furthest_basics() {
        let engine = GeodesicEngine::new(square(1.0)).unwrap();
        let q = Point::new(0.3, 0.4);
        assert_eq!(furthest_neighbor(&engine, q, &[q]).unwrap(), (q, 0.0));
        let c = [Point::new(0.9, 0.9), Point::new(0.0, 0.0), Point::new(1.0, 0.0)];
        let (p, d) = furthest_neighbor(&engine, q, &c).unwrap();
        let euclid = c.iter().map(|x| x.dist(q)).fold(0.0, f64::max);
        assert_eq!(d, euclid);
        assert_eq!(p.dist(q), euclid);
        assert!(furthest_neighbor(&engine, q, &[]).is_err());
    }

    #[test]
    fn furthest_in_l_shape() {
        let engine = GeodesicEngine::new(l_shape()).unwrap();
        let q = Point::new(0.2, 0.2);
        let c = [Point::new(1.8, 0.2), Point::new(0.2, 1.8), Point::new(1.5, 0.5)];
        let (p, d) = furthest_neighbor(&engine, q, &c).unwrap();
        // Both arms are straight shots of length 1.6; the first wins the tie.
        assert_eq!(p, c[0]);
        assert!((d - 1.6).abs() < 1e-12);
    }

    #[test]
    fn square_corner_ratio() {
        let engine = GeodesicEngine::new(square(3.0)).unwrap();
        let s = [Point::new(1.0, 1.0), Point::new(2.0, 1.0), Point::new(2.0, 2.0), Point::new(1.0, 2.0)];
        let r = perimeter_ratio(&engine, &s).unwrap();
        assert!((r - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        let c = coreset_furthest(&engine, &s, 1.0, Some(2.0 * 2f64.sqrt())).unwrap();
        assert!(!c.points.is_empty() && c.points.len() <= 4);
        assert!(perimeter_ratio(&engine, &[Point::new(1.0, 1.0), Point::new(1.0, 1.0)]).is_err());
    }

    #[test]
    fn singleton_coreset() {
        let engine = GeodesicEngine::new(square(1.0)).unwrap();
        let p = Point::new(0.5, 0.5);
        assert_eq!(coreset_furthest(&engine, &[p], 0.3, None).unwrap().points, vec![p]);
        assert!(coreset_furthest(&engine, &[], 0.3, None).is_err());
        assert!(coreset_furthest(&engine, &[p], 1.5, None).is_err());
    }

    #[test]
    fn coreset_guarantee_in_blob() {
        let engine = GeodesicEngine::new(gen_fat_blob(64, 3).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..3 {
            let s = sample_in(&engine, 30, &mut rng);
            let eps = 0.2;
            let c = coreset_furthest(&engine, &s, eps, None).unwrap();
            assert!(c.points.len() as f64 <= (2.0 * c.nu / eps).ceil() + 1.0);
            assert!(c.points.iter().all(|p| s.contains(p)));
            for q in sample_in(&engine, 100, &mut rng) {
                let full = furthest_neighbor(&engine, q, &s).unwrap().1;
                let core = furthest_neighbor(&engine, q, &c.points).unwrap().1;
                assert!(core >= (1.0 - eps) * full, "{core} vs {full}");
            }
        }
    }

    #[test]
    fn comb_ratio_grows_with_teeth() {
        let ratio = |n: usize| {
            let comb = gen_comb(n, 0.01, 0.45).unwrap();
            let engine = GeodesicEngine::new(comb.polygon.clone()).unwrap();
            let tips: Vec<Point> = (1..=n).map(|i| comb.mark(&format!("tip_{i}"))).collect();
            perimeter_ratio(&engine, &tips).unwrap()
        };
        let (a, b, c) = (ratio(8), ratio(16), ratio(32));
        assert!(a < b && b < c, "{a} {b} {c}");
    }
}
