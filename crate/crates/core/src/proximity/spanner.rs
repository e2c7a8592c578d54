use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geodesic::{GeodesicEngine, Located};
use crate::{Error, Point, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpannerGraph {
    pub nodes: Vec<Point>,
    /// `(i, j, geodesic length)` with `i < j`.
    pub edges: Vec<(usize, usize, f64)>,
    pub epsilon: f64,
}

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

/// Dijkstra from `s`, abandoning paths longer than `limit`.
fn bounded_dist(adj: &[Vec<(usize, f64)>], s: usize, t: usize, limit: f64) -> f64 {
    let mut dist = vec![f64::INFINITY; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[s] = 0.0;
    heap.push(Reverse((Key(0.0), s)));
    while let Some(Reverse((Key(d), u))) = heap.pop() {
        if u == t {
            return d;
        }
        if d > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = d + w;
            if nd < dist[v] && nd <= limit {
                dist[v] = nd;
                heap.push(Reverse((Key(nd), v)));
            }
        }
    }
    f64::INFINITY
}

impl SpannerGraph {
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(i, j, w) in &self.edges {
            adj[i].push((j, w));
            adj[j].push((i, w));
        }
        adj
    }

    /// Largest ratio of graph distance to geodesic distance over all pairs
    /// of distinct points; 1 when there are no such pairs.
    pub fn max_stretch(&self, engine: &GeodesicEngine) -> Result<f64> {
        let adj = self.adjacency();
        let located: Vec<Located> = self.nodes.iter().map(|&p| engine.locate(p)).collect::<Result<_>>()?;
        let n = self.nodes.len();
        let rows: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|i| -> Result<f64> {
                let mut worst = 1.0f64;
                for j in i + 1..n {
                    let d = engine.distance_located(&located[i], &located[j])?;
                    if d > 0.0 {
                        worst = worst.max(bounded_dist(&adj, i, j, f64::INFINITY) / d);
                    }
                }
                Ok(worst)
            })
            .collect::<Result<_>>()?;
        Ok(rows.into_iter().fold(1.0, f64::max))
    }
}

/// Greedy `(1+epsilon)`-spanner: pairs in ascending geodesic distance (ties
/// by index pair), an edge added whenever the graph built so far does not
/// already connect the pair within `(1+epsilon)` times their distance.
pub fn greedy_spanner(engine: &GeodesicEngine, s: &[Point], epsilon: f64) -> Result<SpannerGraph> {
    if s.is_empty() {
        return Err(Error::EmptyInput("greedy_spanner needs at least one point"));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
    }
    let located: Vec<Located> = s.iter().map(|&p| engine.locate(p)).collect::<Result<_>>()?;
    let n = s.len();
    let mut pairs: Vec<(f64, usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| Ok((engine.distance_located(&located[i], &located[j])?, i, j)))
        .collect::<Result<_>>()?;
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for (d, i, j) in pairs {
        let limit = (1.0 + epsilon) * d;
        if bounded_dist(&adj, i, j, limit) > limit {
            adj[i].push((j, d));
            adj[j].push((i, d));
            edges.push((i, j, d));
        }
    }
    Ok(SpannerGraph { nodes: s.to_vec(), edges, epsilon })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_fat_blob;
    use crate::Polygon;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn square() -> Polygon {
        Polygon::simple(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
    }

    #[test]
    fn two_points_one_edge() {
        let engine = GeodesicEngine::new(square()).unwrap();
        let g = greedy_spanner(&engine, &[Point::new(0.1, 0.1), Point::new(0.9, 0.2)], 0.5).unwrap();
        assert_eq!(g.edges.len(), 1);
    }

    #[test]
    fn collinear_points_form_a_path() {
        let engine = GeodesicEngine::new(square()).unwrap();
        let pts: Vec<Point> = (0..8).map(|k| Point::new(0.1 + 0.1 * k as f64, 0.5)).collect();
        let g = greedy_spanner(&engine, &pts, 0.1).unwrap();
        assert_eq!(g.edges.len(), pts.len() - 1);
        assert!(g.edges.iter().all(|&(i, j, _)| j == i + 1));
    }

    #[test]
    fn stretch_within_bound_in_blob() {
        let poly = gen_fat_blob(48, 9).unwrap();
        let engine = GeodesicEngine::new(poly).unwrap();
        let (lo, hi) = engine.polygon().bbox();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut pts = Vec::new();
        while pts.len() < 25 {
            let p = Point::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
            if engine.contains(p) {
                pts.push(p);
            }
        }
        let g = greedy_spanner(&engine, &pts, 0.5).unwrap();
        assert!(g.max_stretch(&engine).unwrap() <= 1.5 + 1e-9);
        assert!(g.edges.len() < 25 * 24 / 2);
    }

    #[test]
    fn empty_input_is_an_error() {
        let engine = GeodesicEngine::new(square()).unwrap();
        assert!(greedy_spanner(&engine, &[], 0.5).is_err());
        assert!(greedy_spanner(&engine, &[Point::new(0.5, 0.5)], 0.0).is_err());
        assert!(greedy_spanner(&engine, &[Point::new(0.5, 0.5)], 0.5).unwrap().edges.is_empty());
    }
}
