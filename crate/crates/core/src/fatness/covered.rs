use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::local::boundary_samples;
use super::{FatnessParams, ANGLE_TOL, LENGTH_TOL};
use crate::geodesic::grid::EdgeGrid;
use crate::geom::{euclidean_diameter, point_in_polygon, segment_clear, segment_in_polygon};
use crate::{Point, Polygon, Result};

/// Triangle with `apex` on the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessTriangle {
    pub apex: Point,
    pub v1: Point,
    pub v2: Point,
}

impl WitnessTriangle {
    /// Isosceles triangle with apex angle `alpha` around `bisector` (a unit
    /// vector) and height `h`; both legs have length `h / cos(alpha/2)`.
    fn isosceles(apex: Point, bisector: Point, alpha: f64, h: f64) -> Self {
        let leg = h / (alpha / 2.0).cos();
        let dir = |t: f64| {
            let (s, c) = t.sin_cos();
            Point::new(bisector.x * c - bisector.y * s, bisector.x * s + bisector.y * c)
        };
        WitnessTriangle { apex, v1: apex + dir(-alpha / 2.0) * leg, v2: apex + dir(alpha / 2.0) * leg }
    }

    /// Interior angles at `apex`, `v1` and `v2`.
    pub fn angles(&self) -> [f64; 3] {
        let at = |p: Point, q: Point, r: Point| {
            let (u, v) = (q - p, r - p);
            u.cross(v).abs().atan2(u.dot(v))
        };
        [at(self.apex, self.v1, self.v2), at(self.v1, self.v2, self.apex), at(self.v2, self.apex, self.v1)]
    }

    /// Independent check of the witness against `params`: every angle at
    /// least `alpha`, both legs at least `beta·diam`, and the closed triangle
    /// inside `poly` (all three sides inside, no hole within).
    pub fn verify(&self, poly: &Polygon, params: FatnessParams, diam: f64) -> bool {
        let angles_ok = self.angles().iter().all(|&a| a >= params.alpha - ANGLE_TOL);
        let min_leg = params.beta * diam - LENGTH_TOL;
        let legs_ok = self.apex.dist(self.v1) >= min_leg && self.apex.dist(self.v2) >= min_leg;
        let sides = [(self.apex, self.v1), (self.v1, self.v2), (self.v2, self.apex)];
        let inside = sides
            .iter()
            .all(|&(a, b)| segment_in_polygon(poly, a, b).unwrap_or(false))
            && !poly.holes.iter().any(|h| strictly_inside(self, h.vertex(0)));
        angles_ok && legs_ok && inside
    }
}

fn strictly_inside(t: &WitnessTriangle, p: Point) -> bool {
    let s = |a: Point, b: Point| (b - a).cross(p - a);
    let (d1, d2, d3) = (s(t.apex, t.v1), s(t.v1, t.v2), s(t.v2, t.apex));
    (d1 > 0.0 && d2 > 0.0 && d3 > 0.0) || (d1 < 0.0 && d2 < 0.0 && d3 < 0.0)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoveredReport {
    pub params: FatnessParams,
    /// Sampled boundary points without a witness, in arc-length order.
    pub failures: Vec<Point>,
    /// Convex vertices whose interior angle is below `alpha`; no witness
    /// triangle can have its vertex there.
    pub vertex_failures: Vec<Point>,
    /// One witness per sampled point that has one, in arc-length order.
    pub witnesses: Vec<WitnessTriangle>,
    pub tested: usize,
    pub ok: bool,
}

impl CoveredReport {
    /// `ok` and no vertex failures either.
    pub fn strict_ok(&self) -> bool {
        self.ok && self.vertex_failures.is_empty()
    }
}

struct Search<'a> {
    poly: &'a Polygon,
    grid: EdgeGrid,
}

impl Search<'_> {
    fn clear(&self, a: Point, b: Point) -> bool {
        segment_clear(self.poly, a, b, self.grid.edges_along(a, b))
    }

    fn contains(&self, t: &WitnessTriangle) -> bool {
        self.clear(t.apex, t.v1)
            && self.clear(t.apex, t.v2)
            && self.clear(t.v1, t.v2)
            && point_in_polygon(self.poly, t.v1).in_closed()
            && point_in_polygon(self.poly, t.v2).in_closed()
            // With all sides inside, only a whole hole can sit within the triangle.
            && !self.poly.holes.iter().any(|h| strictly_inside(t, h.vertex(0)))
    }
}

/// Sampled (α,β)-coverage check.
///
/// `n_boundary` points are spread evenly by arc length over all rings, with
/// vertices skipped. At each point the candidates are isosceles triangles
/// with apex angle `alpha` and height `beta·diam(P)`, their bisector taken
/// from `n_dirs` directions `jπ/(n_dirs-1)` relative to the edge, keeping
/// those whose legs point into the half-plane on the domain side. A larger
/// candidate contains every candidate for smaller `(alpha, beta)` with the
/// same bisector, so a pass at `(alpha, beta)` implies a pass at any smaller
/// pair.
pub fn check_alpha_beta_covered(
    poly: &Polygon,
    params: FatnessParams,
    n_boundary: usize,
    n_dirs: usize,
) -> Result<CoveredReport> {
    params.check()?;
    let n_dirs = n_dirs.max(2);
    let diam = euclidean_diameter(poly.outer.vertices())?;
    let h = params.beta * diam;
    let search = Search { poly, grid: EdgeGrid::new(poly) };

    let half = params.alpha / 2.0;
    let mut dirs: Vec<f64> = (0..n_dirs)
        .map(|j| j as f64 * PI / (n_dirs - 1) as f64)
        .filter(|&t| t >= half - 1e-15 && t <= PI - half + 1e-15)
        .collect();
    // Try the directions closest to the inward normal first.
    dirs.sort_by(|a, b| (a - PI / 2.0).abs().total_cmp(&(b - PI / 2.0).abs()));

    let snap = 1e-9 * diam.max(1.0);
    let samples: Vec<_> = boundary_samples(poly, n_boundary)
        .into_iter()
        .filter(|&(p, _, ri, i)| {
            let ring = poly.ring(ri);
            p.dist(ring.vertex(i)) > snap && p.dist(ring.next(i)) > snap
        })
        .collect();

    let found: Vec<Option<WitnessTriangle>> = samples
        .par_iter()
        .map(|&(p, inward, _, _)| {
            let along = -inward.perp();
            dirs.iter().find_map(|&t| {
                let bisector = along * t.cos() + inward * t.sin();
                let tri = WitnessTriangle::isosceles(p, bisector, params.alpha, h);
                search.contains(&tri).then_some(tri)
            })
        })
        .collect();

    let mut failures = Vec::new();
    let mut witnesses = Vec::new();
    for (s, w) in samples.iter().zip(found) {
        match w {
            Some(t) => witnesses.push(t),
            None => failures.push(s.0),
        }
    }

    let mut vertex_failures = Vec::new();
    for ring in poly.rings() {
        for i in 0..ring.len() {
            let w = ring.vertex(i);
            let (out, back) = (ring.next(i) - w, ring.prev(i) - w);
            // Interior angle, swept counterclockwise from the outgoing edge.
            let angle = out.cross(back).atan2(out.dot(back)).rem_euclid(2.0 * PI);
            if angle < params.alpha - ANGLE_TOL {
                vertex_failures.push(w);
            }
        }
    }

    Ok(CoveredReport {
        params,
        ok: failures.is_empty(),
        failures,
        vertex_failures,
        witnesses,
        tested: samples.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_pstar, gen_random_convex};

    fn square() -> Polygon {
        Polygon::simple(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
    }

    #[test]
    fn unit_square_is_covered() {
        let s = square();
        let params = FatnessParams::new(PI / 6.0, 0.1).unwrap();
        let r = check_alpha_beta_covered(&s, params, 512, 64).unwrap();
        assert!(r.ok && r.strict_ok(), "{:?}", r.failures);
        assert_eq!(r.tested, 512);
        assert_eq!(r.witnesses.len(), 512);
        let diam = 2f64.sqrt();
        assert!(r.witnesses.iter().all(|w| w.verify(&s, params, diam)));

        // Hand-placed witness next to a corner: legs along the bottom edge
        // and 30 degrees above it.
        let apex = Point::new(0.01, 0.0);
        let leg = 0.15;
        let hand = WitnessTriangle {
            apex,
            v1: apex + Point::new(leg, 0.0),
            v2: apex + Point::from_polar(leg, PI / 6.0),
        };
        assert!(hand.verify(&s, params, diam));
        // Pointing out of the square it fails.
        let outside = WitnessTriangle { v2: apex + Point::from_polar(leg, -PI / 6.0), ..hand };
        assert!(!outside.verify(&s, params, diam));
    }

    #[test]
    fn narrow_vertex_is_reported_separately() {
        let sliver = Polygon::simple(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 0.05)]);
        let r = check_alpha_beta_covered(&sliver, FatnessParams::new(0.2, 0.01).unwrap(), 64, 32).unwrap();
        assert_eq!(r.vertex_failures, vec![Point::new(0.0, 0.0)]);
        assert!(!r.strict_ok());
    }

    #[test]
    fn pstar_corridors_fail() {
        let p = gen_pstar(2, 1e-4).unwrap();
        let r = check_alpha_beta_covered(&p.polygon, FatnessParams::new(PI / 6.0, 0.1).unwrap(), 512, 64).unwrap();
        assert!(!r.ok);
        assert!(!r.failures.is_empty());
    }

    #[test]
    fn random_convex_is_covered() {
        for seed in 0..3 {
            let p = gen_random_convex(12, seed).unwrap();
            let params = FatnessParams::new(0.1, 0.01).unwrap();
            let r = check_alpha_beta_covered(&p, params, 512, 64).unwrap();
            assert!(r.ok, "seed {seed}: {:?}", r.failures);
            let diam = euclidean_diameter(p.outer.vertices()).unwrap();
            assert!(r.witnesses.iter().all(|w| w.verify(&p, params, diam)));
        }
    }

    #[test]
    fn monotone_in_parameters() {
        let p = crate::generators::gen_fat_blob(48, 2).unwrap();
        let strong = check_alpha_beta_covered(&p, FatnessParams::new(0.6, 0.15).unwrap(), 256, 48).unwrap();
        for (a, b) in [(0.6, 0.1), (0.3, 0.15), (0.2, 0.05)] {
            let weak = check_alpha_beta_covered(&p, FatnessParams::new(a, b).unwrap(), 256, 48).unwrap();
            // Every point that passed at the stronger setting passes here too.
            for f in &weak.failures {
                assert!(strong.failures.contains(f), "({a}, {b}) lost {f:?}");
            }
        }
    }

    #[test]
    fn holes_inside_the_triangle_are_caught() {
        let mut holed = square();
        holed.holes.push(crate::geom::Ring::new(vec![
            Point::new(0.45, 0.05),
            Point::new(0.45, 0.07),
            Point::new(0.47, 0.07),
            Point::new(0.47, 0.05),
        ]));
        let t = WitnessTriangle {
            apex: Point::new(0.3, 0.0),
            v1: Point::new(0.7, 0.0),
            v2: Point::new(0.5, 0.3),
        };
        let params = FatnessParams::new(0.5, 0.1).unwrap();
        assert!(!t.verify(&holed, params, 2f64.sqrt()));
        let search = Search { poly: &holed, grid: EdgeGrid::new(&holed) };
        assert!(!search.contains(&t));
        assert!(search.contains(&WitnessTriangle { v2: Point::new(0.5, 0.04), ..t }));
    }
}
