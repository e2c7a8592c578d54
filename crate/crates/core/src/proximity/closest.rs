use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geodesic::{GeodesicEngine, Located};
use crate::{Error, Point, Result};

/// Grid constant used when none is given.
pub const DEFAULT_M: f64 = 8.0;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClosestPairResult {
    pub pair: (Point, Point),
    pub distance: f64,
    /// Geodesic distance evaluations, the initial pair included.
    pub n_distance_queries: u64,
    pub n_rebuilds: u64,
}

/// Hash grid over the processed points with cells of side `delta / (2M)`.
#[derive(Clone, Debug)]
pub struct GridState {
    pub delta: f64,
    pub cell_side: f64,
    pub m: f64,
    pub cells: HashMap<(i64, i64), Vec<usize>>,
}

impl GridState {
    fn new(delta: f64, m: f64) -> Self {
        GridState { delta, cell_side: delta / (2.0 * m), m, cells: HashMap::new() }
    }

    pub fn cell_of(&self, p: Point) -> (i64, i64) {
        ((p.x / self.cell_side).floor() as i64, (p.y / self.cell_side).floor() as i64)
    }

    fn insert(&mut self, p: Point, id: usize) {
        let c = self.cell_of(p);
        self.cells.entry(c).or_default().push(id);
    }

    /// Half-width, in cells, of the square neighborhood that contains every
    /// point within Euclidean distance `delta` of any point of the center cell.
    pub fn reach(&self) -> i64 {
        (2.0 * self.m).ceil() as i64 + 1
    }
}

/// Randomized incremental closest pair under the geodesic distance.
///
/// Points are inserted in a seeded random order. A new point is compared
/// with every processed point in the `(2·reach+1)²` cells around its own;
/// since the Euclidean distance never exceeds the geodesic one, any pair
/// closer than the current `delta` is found. The grid is rebuilt whenever
/// `delta` shrinks. The result is exact for every input; `m` only trades
/// neighborhood size against points per cell.
pub fn closest_pair(engine: &GeodesicEngine, q: &[Point], m: f64, seed: u64) -> Result<ClosestPairResult> {
    closest_pair_traced(engine, q, m, seed, |_, _| {})
}

pub(crate) fn closest_pair_traced(
    engine: &GeodesicEngine,
    q: &[Point],
    m: f64,
    seed: u64,
    mut trace: impl FnMut(&GridState, &[usize]),
) -> Result<ClosestPairResult> {
    if q.len() < 2 {
        return Err(Error::InvalidParameter(format!("closest pair needs at least 2 points, got {}", q.len())));
    }
    if !(m >= 1.0 && m.is_finite()) {
        return Err(Error::InvalidParameter(format!("grid constant M must be >= 1, got {m}")));
    }
    let located: Vec<Located> = q.iter().map(|&p| engine.locate(p)).collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..q.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let mut queries = 1u64;
    let mut rebuilds = 0u64;
    let (a, b) = (order[0], order[1]);
    let mut delta = engine.distance_located(&located[a], &located[b])?;
    let mut best = (a, b);
    if delta == 0.0 {
        return Ok(ClosestPairResult { pair: (q[a], q[b]), distance: 0.0, n_distance_queries: 1, n_rebuilds: 0 });
    }
    let mut grid = GridState::new(delta, m);
    grid.insert(q[a], a);
    grid.insert(q[b], b);
    trace(&grid, &order[..2]);

    for step in 2..order.len() {
        let j = order[step];
        let (cx, cy) = grid.cell_of(q[j]);
        let k = grid.reach();
        let mut found: Option<(f64, usize)> = None;
        for x in cx - k..=cx + k {
            for y in cy - k..=cy + k {
                let Some(ids) = grid.cells.get(&(x, y)) else { continue };
                for &i in ids {
                    queries += 1;
                    let d = engine.distance_located(&located[i], &located[j])?;
                    if d < found.map_or(delta, |f| f.0) {
                        found = Some((d, i));
                    }
                }
            }
        }
        match found {
            Some((d, i)) => {
                delta = d;
                best = (i, j);
                if delta == 0.0 {
                    break;
                }
                rebuilds += 1;
                grid = GridState::new(delta, m);
                for &p in &order[..=step] {
                    grid.insert(q[p], p);
                }
            }
            None => grid.insert(q[j], j),
        }
        trace(&grid, &order[..=step]);
    }
    Ok(ClosestPairResult {
        pair: (q[best.0], q[best.1]),
        distance: delta,
        n_distance_queries: queries,
        n_rebuilds: rebuilds,
    })
}
