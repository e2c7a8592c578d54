use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::clip::clipped_component_area;
use crate::geom::{euclidean_diameter, point_in_polygon};
use crate::{Error, Point, Polygon, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskWitness {
    pub center: Point,
    pub radius: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocalFatReport {
    pub gamma: f64,
    /// Smallest `area(component of D ∩ P) / area(D)` over the tested disks.
    pub min_ratio: f64,
    pub witness: DiskWitness,
    /// Number of (center, radius) pairs evaluated.
    pub samples: usize,
    pub ok: bool,
}

/// Points on the boundary at evenly spaced arc-length positions, each with
/// the unit inward normal of its edge.
pub(super) fn boundary_samples(poly: &Polygon, n: usize) -> Vec<(Point, Point, usize, usize)> {
    let per = poly.perimeter();
    let mut out = Vec::with_capacity(n);
    let mut k = 0usize;
    let mut acc = 0.0;
    for (ri, ring) in poly.rings().enumerate() {
        for i in 0..ring.len() {
            let (a, b) = (ring.vertex(i), ring.next(i));
            let len = a.dist(b);
            while k < n {
                let s = (k as f64 + 0.5) * per / n as f64;
                if s >= acc + len {
                    break;
                }
                let dir = (b - a) * (1.0 / len);
                out.push((a.lerp(b, (s - acc) / len), dir.perp(), ri, i));
                k += 1;
            }
            acc += len;
        }
    }
    out
}

fn centers(poly: &Polygon, n_centers: usize, diam: f64, rng: &mut ChaCha8Rng) -> Vec<Point> {
    let (lo, hi) = poly.bbox();
    let mut out = Vec::with_capacity(n_centers);
    // Half of the budget on a jittered grid over the bounding box, the rest
    // just inside the boundary where the ratio is smallest.
    let side = ((n_centers / 2).max(1) as f64).sqrt().ceil() as usize;
    let (w, h) = ((hi.x - lo.x) / side as f64, (hi.y - lo.y) / side as f64);
    for j in 0..side {
        for i in 0..side {
            let p = Point::new(
                lo.x + (i as f64 + rng.gen::<f64>()) * w,
                lo.y + (j as f64 + rng.gen::<f64>()) * h,
            );
            if point_in_polygon(poly, p).in_closed() {
                out.push(p);
            }
        }
    }
    let rest = n_centers.saturating_sub(out.len());
    let offset = 1e-7 * diam;
    for (p, inward, _, _) in boundary_samples(poly, rest) {
        let q = p + inward * offset;
        out.push(if point_in_polygon(poly, q).in_closed() { q } else { p });
    }
    for v in poly.vertices() {
        out.push(v);
    }
    out
}

/// Sampled check that every disk `D` centered in `poly` and not containing it
/// satisfies `area(component of D ∩ P containing the center) ≥ gamma·area(D)`.
///
/// Centers: a jittered grid, boundary points nudged inward, and the vertices.
/// Radii: `n_radii` geometrically spaced values in `[1e-4·diam, diam)` with a
/// per-center random phase.
pub fn check_locally_fat(
    poly: &Polygon,
    gamma: f64,
    n_centers: usize,
    n_radii: usize,
    seed: u64,
) -> Result<LocalFatReport> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::InvalidParameter(format!("gamma = {gamma} must lie in (0, 1]")));
    }
    if n_centers == 0 || n_radii == 0 {
        return Err(Error::InvalidParameter("need at least one center and one radius".into()));
    }
    let diam = euclidean_diameter(poly.outer.vertices())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cs = centers(poly, n_centers, diam, &mut rng);
    let phases: Vec<f64> = cs.iter().map(|_| rng.gen::<f64>()).collect();
    let (r_min, r_max) = (1e-4 * diam, diam);
    let step = (r_max / r_min).ln() / n_radii as f64;

    let results: Vec<(f64, usize, DiskWitness)> = cs
        .par_iter()
        .zip(phases.par_iter())
        .map(|(&c, &phase)| {
            let far = poly.vertices().map(|v| v.dist(c)).fold(0.0, f64::max);
            let mut best = (f64::INFINITY, 0usize, DiskWitness { center: c, radius: r_min });
            for k in 0..n_radii {
                let r = r_min * ((k as f64 + phase) * step).exp();
                if r >= far {
                    break;
                }
                best.1 += 1;
                let ratio = clipped_component_area(poly, c, r) / (PI * r * r);
                if ratio < best.0 {
                    best.0 = ratio;
                    best.2 = DiskWitness { center: c, radius: r };
                }
            }
            best
        })
        .collect();

    // Sequential reduction keeps the reported witness independent of scheduling.
    let samples = results.iter().map(|r| r.1).sum();
    let (min_ratio, _, witness) = results
        .into_iter()
        .filter(|r| r.1 > 0)
        .fold((1.0f64, 0, DiskWitness { center: cs[0], radius: r_min }), |acc, r| {
            if r.0 < acc.0 {
                r
            } else {
                acc
            }
        });
    let min_ratio = min_ratio.clamp(0.0, 1.0);
    Ok(LocalFatReport { gamma, min_ratio, witness, samples, ok: min_ratio >= gamma })
}
