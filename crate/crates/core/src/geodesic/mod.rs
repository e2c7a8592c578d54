//! Geodesic metric inside a polygonal domain.
//!
//! [`GeodesicEngine`] holds the visibility graph over the polygon vertices and
//! the all-pairs distances between reflex vertices. Queries connect their
//! endpoints to the reflex vertices they can see; a shortest path only bends
//! at reflex vertices, so nothing else is needed.

pub(crate) mod grid;
mod hull;
mod sample;

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geom::{self, normalized_cross, point_in_polygon, validate, wedge_allows};
use crate::{Error, Point, Polygon, Result};
use grid::EdgeGrid;

pub use hull::{relative_convex_hull, RelativeHull};
pub use sample::{
    geodesic_disk_sample, geodesic_disk_sample_with_distances, grid_points_in_polygon, DistanceField,
};

/// Shortest path as a polyline from the source to the target.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicPath {
    pub waypoints: Vec<Point>,
    pub length: f64,
}

/// A query point connected to the reflex vertices it can use as a first bend.
#[derive(Clone, Debug)]
pub struct Located {
    pub point: Point,
    /// `(reflex index, Euclidean distance)` pairs.
    pub(crate) visible: Vec<(u32, f64)>,
}

impl Located {
    pub fn n_visible(&self) -> usize {
        self.visible.len()
    }
}

#[derive(Clone, Debug)]
pub struct GeodesicEngine {
    poly: Polygon,
    grid: EdgeGrid,
    vertices: Vec<Point>,
    /// `(ring, index within ring)` for every entry of `vertices`.
    origin: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(u32, f64)>>,
    reflex: Vec<u32>,
    /// Row-major `reflex.len()²` distance matrix, exactly symmetric.
    dist: Vec<f64>,
    /// `pred[s * r + t]`: predecessor of `t` on the path from `s`.
    pred: Vec<u32>,
}

const NONE: u32 = u32::MAX;

/// Builds the engine for a valid polygon.
pub fn build_engine(poly: &Polygon) -> Result<GeodesicEngine> {
    GeodesicEngine::new(poly.clone())
}

impl GeodesicEngine {
    pub fn new(poly: Polygon) -> Result<Self> {
        let report = validate(&poly);
        if !report.ok {
            return Err(Error::InvalidPolygon(report.summary()));
        }
        let grid = EdgeGrid::new(&poly);
        let mut vertices = Vec::with_capacity(poly.n_vertices());
        let mut origin = Vec::with_capacity(poly.n_vertices());
        for k in 0..poly.n_rings() {
            for (i, &v) in poly.ring(k).vertices().iter().enumerate() {
                vertices.push(v);
                origin.push((k, i));
            }
        }
        let mut engine = GeodesicEngine {
            poly,
            grid,
            vertices,
            origin,
            adjacency: Vec::new(),
            reflex: Vec::new(),
            dist: Vec::new(),
            pred: Vec::new(),
        };
        engine.build_visibility();
        engine.build_reflex_distances();
        log::debug!(
            "engine: {} vertices, {} reflex, {} visible pairs",
            engine.vertices.len(),
            engine.reflex.len(),
            engine.n_visible_pairs()
        );
        Ok(engine)
    }

    fn build_visibility(&mut self) {
        let n = self.vertices.len();
        let upper: Vec<Vec<(u32, f64)>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let (ki, ii) = self.origin[i];
                let a = self.vertices[i];
                ((i + 1)..n)
                    .filter(|&j| {
                        let b = self.vertices[j];
                        let (kj, ij) = self.origin[j];
                        wedge_allows(self.poly.ring(ki), ii, b - a)
                            && wedge_allows(self.poly.ring(kj), ij, a - b)
                            && self.visible(a, b)
                    })
                    .map(|j| (j as u32, a.dist(self.vertices[j])))
                    .collect()
            })
            .collect();
        let mut adjacency = upper.clone();
        for (i, row) in upper.iter().enumerate() {
            for &(j, w) in row {
                adjacency[j as usize].push((i as u32, w));
            }
        }
        for row in &mut adjacency {
            row.sort_by_key(|&(j, _)| j);
        }
        self.adjacency = adjacency;
    }

    fn build_reflex_distances(&mut self) {
        let reflex: Vec<u32> = (0..self.vertices.len())
            .filter(|&v| {
                let (k, i) = self.origin[v];
                self.poly.is_reflex(k, i)
            })
            .map(|v| v as u32)
            .collect();
        let r = reflex.len();
        let mut slot = vec![NONE; self.vertices.len()];
        for (s, &v) in reflex.iter().enumerate() {
            slot[v as usize] = s as u32;
        }
        let graph: Vec<Vec<(u32, f64)>> = reflex
            .iter()
            .map(|&v| {
                self.adjacency[v as usize]
                    .iter()
                    .filter(|&&(u, _)| slot[u as usize] != NONE)
                    .map(|&(u, w)| (slot[u as usize], w))
                    .collect()
            })
            .collect();
        let rows: Vec<(Vec<f64>, Vec<u32>)> = (0..r).into_par_iter().map(|s| dijkstra(&graph, s)).collect();
        let mut dist = vec![f64::INFINITY; r * r];
        let mut pred = vec![NONE; r * r];
        for (s, (d, p)) in rows.into_iter().enumerate() {
            dist[s * r..(s + 1) * r].copy_from_slice(&d);
            pred[s * r..(s + 1) * r].copy_from_slice(&p);
        }
        for s in 0..r {
            for t in (s + 1)..r {
                let m = dist[s * r + t].min(dist[t * r + s]);
                dist[s * r + t] = m;
                dist[t * r + s] = m;
            }
        }
        self.reflex = reflex;
        self.dist = dist;
        self.pred = pred;
    }

    pub fn polygon(&self) -> &Polygon {
        &self.poly
    }

    /// All ring vertices, outer ring first, then holes in order.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Visible neighbours of vertex `i` with Euclidean weights, sorted by index.
    pub fn neighbors(&self, i: usize) -> &[(u32, f64)] {
        &self.adjacency[i]
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search_by_key(&(j as u32), |&(k, _)| k).is_ok()
    }

    pub fn n_visible_pairs(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn n_reflex(&self) -> usize {
        self.reflex.len()
    }

    pub(crate) fn reflex_point(&self, s: usize) -> Point {
        self.vertices[self.reflex[s] as usize]
    }

    pub(crate) fn reflex_dist(&self, s: usize, t: usize) -> f64 {
        self.dist[s * self.reflex.len() + t]
    }

    /// Visibility between two points already known to lie in the polygon.
    pub fn visible(&self, a: Point, b: Point) -> bool {
        geom::segment_clear(&self.poly, a, b, self.grid.edges_along(a, b))
    }

    /// Whether the reflex vertex `s` can be a bend of a shortest path arriving
    /// from or leaving towards `p`: the line through `p` and the vertex must
    /// not separate its two incident edges.
    pub(crate) fn tangent_from(&self, s: usize, p: Point) -> bool {
        let (k, i) = self.origin[self.reflex[s] as usize];
        let ring = self.poly.ring(k);
        let v = ring.vertex(i);
        let tol = 1e-12;
        let o1 = normalized_cross(p, v, ring.prev(i));
        let o2 = normalized_cross(p, v, ring.next(i));
        !((o1 > tol && o2 < -tol) || (o1 < -tol && o2 > tol))
    }

    pub fn contains(&self, p: Point) -> bool {
        p.is_finite() && point_in_polygon(&self.poly, p).in_closed()
    }

    fn check_inside(&self, p: Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::InvalidQuery(format!("point ({}, {}) is outside the polygon", p.x, p.y)))
        }
    }

    /// Connects `p` to every reflex vertex it sees and can bend around.
    pub fn locate(&self, p: Point) -> Result<Located> {
        self.check_inside(p)?;
        Ok(self.locate_unchecked(p))
    }

    pub(crate) fn locate_unchecked(&self, p: Point) -> Located {
        let visible = (0..self.reflex.len())
            .filter_map(|s| {
                let v = self.reflex_point(s);
                if v.dist(p) <= 1e-12 {
                    return Some((s as u32, 0.0));
                }
                (self.tangent_from(s, p) && self.visible(p, v)).then(|| (s as u32, p.dist(v)))
            })
            .collect();
        Located { point: p, visible }
    }

    /// Geodesic distance between located points. Exactly symmetric: the pair
    /// is put into a canonical order before any arithmetic happens.
    pub fn distance_located(&self, a: &Located, b: &Located) -> Result<f64> {
        let (a, b) = if b.point.lex_cmp(&a.point) == Ordering::Less { (b, a) } else { (a, b) };
        Ok(self.best_route(a, b)?.0)
    }

    /// Returns the length and the reflex entry/exit pair, if any.
    fn best_route(&self, a: &Located, b: &Located) -> Result<(f64, Option<(usize, usize)>)> {
        if a.point == b.point {
            return Ok((0.0, None));
        }
        if self.visible(a.point, b.point) {
            return Ok((a.point.dist(b.point), None));
        }
        let r = self.reflex.len();
        let mut best = f64::INFINITY;
        let mut via = None;
        for &(u, du) in &a.visible {
            let row = &self.dist[u as usize * r..(u as usize + 1) * r];
            for &(v, dv) in &b.visible {
                let d = (du + row[v as usize]) + dv;
                if d < best {
                    best = d;
                    via = Some((u as usize, v as usize));
                }
            }
        }
        if via.is_none() {
            return Err(Error::Unreachable(a.point, b.point));
        }
        Ok((best, via))
    }

    fn reflex_chain(&self, s: usize, t: usize) -> Vec<Point> {
        let r = self.reflex.len();
        let mut chain = vec![self.reflex_point(t)];
        let mut cur = t;
        while cur != s {
            cur = self.pred[s * r + cur] as usize;
            chain.push(self.reflex_point(cur));
        }
        chain.reverse();
        chain
    }

    pub fn distance(&self, a: Point, b: Point) -> Result<f64> {
        let la = self.locate(a)?;
        let lb = self.locate(b)?;
        self.distance_located(&la, &lb)
    }

    pub fn path(&self, a: Point, b: Point) -> Result<GeodesicPath> {
        let la = self.locate(a)?;
        let lb = self.locate(b)?;
        let (length, via) = self.best_route(&la, &lb)?;
        let mut waypoints = vec![a];
        if let Some((u, v)) = via {
            waypoints.extend(self.reflex_chain(u, v));
        }
        if b != a {
            waypoints.push(b);
        }
        waypoints.dedup();
        Ok(GeodesicPath { waypoints, length })
    }
}

fn dijkstra(graph: &[Vec<(u32, f64)>], s: usize) -> (Vec<f64>, Vec<u32>) {
    #[derive(PartialEq)]
    struct Item(f64, u32);
    impl Eq for Item {}
    impl PartialOrd for Item {
        fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
            Some(self.cmp(o))
        }
    }
    impl Ord for Item {
        fn cmp(&self, o: &Self) -> Ordering {
            o.0.total_cmp(&self.0).then(o.1.cmp(&self.1))
        }
    }

    let mut dist = vec![f64::INFINITY; graph.len()];
    let mut pred = vec![NONE; graph.len()];
    let mut heap = BinaryHeap::new();
    dist[s] = 0.0;
    pred[s] = s as u32;
    heap.push(Item(0.0, s as u32));
    while let Some(Item(d, u)) = heap.pop() {
        if d > dist[u as usize] {
            continue;
        }
        for &(v, w) in &graph[u as usize] {
            let nd = d + w;
            if nd < dist[v as usize] {
                dist[v as usize] = nd;
                pred[v as usize] = u;
                heap.push(Item(nd, v));
            }
        }
    }
    (dist, pred)
}

/// Shortest path from `a` to `b`; both must lie in the closed polygon.
pub fn shortest_path(engine: &GeodesicEngine, a: Point, b: Point) -> Result<GeodesicPath> {
    engine.path(a, b)
}

pub fn geodesic_distance(engine: &GeodesicEngine, a: Point, b: Point) -> Result<f64> {
    engine.distance(a, b)
}
