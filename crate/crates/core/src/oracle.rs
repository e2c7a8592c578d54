//! Slow, independent reference implementations for tests and cross-checks.
//!
//! Nothing here uses the engine's visibility structures: the grid oracle only
//! relies on the basic predicates in [`crate::geom`].

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::geodesic::{GeodesicEngine, Located};
use crate::geom::{point_in_polygon, segment_in_polygon_unchecked};
use crate::{Error, Point, Polygon, Result};

/// Eight-neighbor lattice graph over the polygon, anchored at the bounding
/// box minimum. Its path lengths overestimate geodesic distances by at most
/// the factor `1/cos(π/8) ≈ 1.0824` plus a few pitches for snapping.
pub struct DenseGridOracle {
    poly: Polygon,
    pitch: f64,
    origin: Point,
    cols: usize,
    rows: usize,
    /// Lattice index of each node, or `usize::MAX` outside the polygon.
    index: Vec<usize>,
    nodes: Vec<Point>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

/// Worst-case ratio of 8-neighbor path length to straight-line length.
pub const GRID_DISTORTION: f64 = 1.082_392_200_292_394;

#[derive(Clone, Copy, PartialEq)]
struct Key(f64);
impl Eq for Key {}
impl PartialOrd for Key {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Key {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&o.0)
    }
}

impl DenseGridOracle {
    pub fn new(poly: &Polygon, pitch: f64) -> Result<Self> {
        if !(pitch > 0.0 && pitch.is_finite()) {
            return Err(Error::InvalidParameter(format!("pitch must be positive, got {pitch}")));
        }
        let (lo, hi) = poly.bbox();
        let cols = ((hi.x - lo.x) / pitch).floor() as usize + 1;
        let rows = ((hi.y - lo.y) / pitch).floor() as usize + 1;
        let at = |i: usize, j: usize| lo + Point::new(i as f64 * pitch, j as f64 * pitch);
        let inside: Vec<bool> = (0..cols * rows)
            .into_par_iter()
            .map(|k| point_in_polygon(poly, at(k % cols, k / cols)).in_closed())
            .collect();
        let mut index = vec![usize::MAX; cols * rows];
        let mut nodes = Vec::new();
        for k in 0..cols * rows {
            if inside[k] {
                index[k] = nodes.len();
                nodes.push(at(k % cols, k / cols));
            }
        }
        let diag = pitch * 2f64.sqrt();
        let steps: [(i64, i64, f64); 4] = [(1, 0, pitch), (0, 1, pitch), (1, 1, diag), (-1, 1, diag)];
        let links: Vec<(usize, usize, f64)> = (0..cols * rows)
            .into_par_iter()
            .filter(|&k| inside[k])
            .flat_map_iter(|k| {
                let (i, j) = ((k % cols) as i64, (k / cols) as i64);
                let index = &index;
                steps.iter().filter_map(move |&(di, dj, w)| {
                    let (a, b) = (i + di, j + dj);
                    if a < 0 || a as usize >= cols || b as usize >= rows {
                        return None;
                    }
                    let kk = b as usize * cols + a as usize;
                    if index[kk] == usize::MAX {
                        return None;
                    }
                    let (p, q) = (at(i as usize, j as usize), at(a as usize, b as usize));
                    segment_in_polygon_unchecked(poly, p, q).then_some((index[k], index[kk], w))
                })
            })
            .collect();
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for (u, v, w) in links {
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
        }
        Ok(DenseGridOracle { poly: poly.clone(), pitch, origin: lo, cols, rows, index, nodes, adjacency })
    }

    pub fn pitch(&self) -> f64 {
        self.pitch
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn n_links(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.adjacency[i]
    }

    /// Nodes within two pitches of `p` reachable by a straight leg, with the leg length.
    fn legs(&self, p: Point) -> Vec<(usize, f64)> {
        let ci = ((p.x - self.origin.x) / self.pitch).round() as i64;
        let cj = ((p.y - self.origin.y) / self.pitch).round() as i64;
        let mut out = Vec::new();
        for j in cj - 2..=cj + 2 {
            for i in ci - 2..=ci + 2 {
                if i < 0 || j < 0 || i as usize >= self.cols || j as usize >= self.rows {
                    continue;
                }
                let k = self.index[j as usize * self.cols + i as usize];
                if k != usize::MAX && segment_in_polygon_unchecked(&self.poly, p, self.nodes[k]) {
                    out.push((k, p.dist(self.nodes[k])));
                }
            }
        }
        out
    }
}

/// Length of the shortest route `a → grid path → b`, where `a` and `b` join
/// the grid through straight legs to nearby nodes.
pub fn oracle_distance(o: &DenseGridOracle, a: Point, b: Point) -> Result<f64> {
    for p in [a, b] {
        if !point_in_polygon(&o.poly, p).in_closed() {
            return Err(Error::InvalidQuery(format!("point ({}, {}) is outside the polygon", p.x, p.y)));
        }
    }
    if a == b {
        return Ok(0.0);
    }
    let (from, to) = (o.legs(a), o.legs(b));
    let mut exit = vec![f64::INFINITY; o.nodes.len()];
    for &(k, w) in &to {
        exit[k] = w;
    }
    let mut dist = vec![f64::INFINITY; o.nodes.len()];
    let mut heap = BinaryHeap::new();
    for &(k, w) in &from {
        if w < dist[k] {
            dist[k] = w;
            heap.push(Reverse((Key(w), k)));
        }
    }
    let mut best = f64::INFINITY;
    while let Some(Reverse((Key(d), u))) = heap.pop() {
        if d >= best {
            break;
        }
        if d > dist[u] {
            continue;
        }
        best = best.min(d + exit[u]);
        for &(v, w) in &o.adjacency[u] {
            if d + w < dist[v] {
                dist[v] = d + w;
                heap.push(Reverse((Key(d + w), v)));
            }
        }
    }
    if best.is_finite() {
        Ok(best)
    } else {
        Err(Error::Unreachable(a, b))
    }
}

fn locate_all(engine: &GeodesicEngine, q: &[Point]) -> Result<Vec<Located>> {
    q.iter().map(|&p| engine.locate(p)).collect()
}

/// Minimum over all pairs; ties go to the lexicographically smallest index pair.
pub fn brute_closest_pair(engine: &GeodesicEngine, q: &[Point]) -> Result<((Point, Point), f64)> {
    if q.len() < 2 {
        return Err(Error::InvalidParameter(format!("closest pair needs at least 2 points, got {}", q.len())));
    }
    let located = locate_all(engine, q)?;
    let mut best = ((q[0], q[1]), f64::INFINITY);
    for i in 0..q.len() {
        for j in i + 1..q.len() {
            let d = engine.distance_located(&located[i], &located[j])?;
            if d < best.1 {
                best = ((q[i], q[j]), d);
            }
        }
    }
    Ok(best)
}

/// Maximum over `s` by linear scan; ties go to the lowest index.
pub fn brute_furthest(engine: &GeodesicEngine, q: Point, s: &[Point]) -> Result<(Point, f64)> {
    if s.is_empty() {
        return Err(Error::EmptyInput("brute_furthest needs a non-empty set"));
    }
    let lq = engine.locate(q)?;
    let mut best = (s[0], f64::NEG_INFINITY);
    for (p, lp) in s.iter().zip(locate_all(engine, s)?) {
        let d = engine.distance_located(&lq, &lp)?;
        if d > best.1 {
            best = (*p, d);
        }
    }
    Ok(best)
}

/// Samples `n_pairs` pairs of points in the region bounded by `boundary` (and
/// in the polygon) and returns those whose shortest path leaves the region,
/// judged at path waypoints and segment midpoints.
pub fn geodesic_convexity_check(
    engine: &GeodesicEngine,
    boundary: &[Point],
    n_pairs: usize,
    seed: u64,
) -> Result<Vec<(Point, Point)>> {
    if boundary.len() < 3 {
        return Err(Error::Degenerate("region boundary needs at least 3 points".into()));
    }
    let region = Polygon::simple(boundary.to_vec());
    let in_region = |p: Point| point_in_polygon(&region, p).in_closed();
    let (lo, hi) = region.bbox();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = || -> Result<Point> {
        for _ in 0..100_000 {
            let p = Point::new(rng.gen_range(lo.x..=hi.x), rng.gen_range(lo.y..=hi.y));
            if in_region(p) && engine.contains(p) {
                return Ok(p);
            }
        }
        Err(Error::Degenerate("could not sample inside the region".into()))
    };
    let mut violations = Vec::new();
    for _ in 0..n_pairs {
        let (a, b) = (sample()?, sample()?);
        let path = engine.path(a, b)?;
        let w = &path.waypoints;
        let leaves = w.iter().any(|&p| !in_region(p)) || w.windows(2).any(|s| !in_region(s[0].midpoint(s[1])));
        if leaves {
            violations.push((a, b));
        }
    }
    Ok(violations)
}
