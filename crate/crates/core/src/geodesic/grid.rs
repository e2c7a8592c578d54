use crate::{Point, Polygon};

/// Uniform bucket grid over the polygon edges, used to prune visibility tests
/// to the edges near a segment.
#[derive(Clone, Debug)]
pub(crate) struct EdgeGrid {
    lo: Point,
    h: f64,
    nx: usize,
    ny: usize,
    offsets: Vec<u32>,
    items: Vec<(u32, u32)>,
}

impl EdgeGrid {
    pub(crate) fn new(poly: &Polygon) -> Self {
        let (lo, hi) = poly.bbox();
        let n_edges = poly.n_vertices().max(1);
        let w = (hi.x - lo.x).max(1e-12);
        let ht = (hi.y - lo.y).max(1e-12);
        // Roughly two edges per cell on average.
        let h = (w * ht / (2.0 * n_edges as f64)).sqrt().max(w.max(ht) / 4096.0);
        let nx = ((w / h).ceil() as usize).max(1);
        let ny = ((ht / h).ceil() as usize).max(1);
        let pad = 1e-7 + h * 1e-6;

        let mut counts = vec![0u32; nx * ny + 1];
        let mut spans = Vec::with_capacity(n_edges);
        for k in 0..poly.n_rings() {
            let ring = poly.ring(k);
            for i in 0..ring.len() {
                let (a, b) = (ring.vertex(i), ring.next(i));
                let cx0 = cell_coord(a.x.min(b.x) - pad, lo.x, h, nx);
                let cx1 = cell_coord(a.x.max(b.x) + pad, lo.x, h, nx);
                let cy0 = cell_coord(a.y.min(b.y) - pad, lo.y, h, ny);
                let cy1 = cell_coord(a.y.max(b.y) + pad, lo.y, h, ny);
                for cy in cy0..=cy1 {
                    for cx in cx0..=cx1 {
                        counts[cy * nx + cx] += 1;
                    }
                }
                spans.push((k as u32, i as u32, cx0, cx1, cy0, cy1));
            }
        }
        let mut offsets = vec![0u32; nx * ny + 1];
        for c in 0..nx * ny {
            offsets[c + 1] = offsets[c] + counts[c];
        }
        let mut fill = offsets.clone();
        let mut items = vec![(0u32, 0u32); offsets[nx * ny] as usize];
        for (k, i, cx0, cx1, cy0, cy1) in spans {
            for cy in cy0..=cy1 {
                for cx in cx0..=cx1 {
                    let c = cy * nx + cx;
                    items[fill[c] as usize] = (k, i);
                    fill[c] += 1;
                }
            }
        }
        EdgeGrid { lo, h, nx, ny, offsets, items }
    }

    fn cell(&self, c: usize) -> &[(u32, u32)] {
        &self.items[self.offsets[c] as usize..self.offsets[c + 1] as usize]
    }

    /// Edges registered in the cells crossed by segment `ab`, in order of
    /// traversal from `a`. Edges spanning several cells repeat.
    pub(crate) fn edges_along(&self, a: Point, b: Point) -> impl Iterator<Item = (usize, usize)> + '_ {
        SegmentCells::new(self, a, b)
            .flat_map(move |c| self.cell(c).iter().map(|&(k, i)| (k as usize, i as usize)))
    }
}

fn cell_coord(v: f64, lo: f64, h: f64, n: usize) -> usize {
    let c = ((v - lo) / h).floor();
    if c < 0.0 {
        0
    } else {
        (c as usize).min(n - 1)
    }
}

/// Amanatides-Woo traversal of the cells crossed by a segment.
struct SegmentCells {
    nx: usize,
    cx: i64,
    cy: i64,
    end: (i64, i64),
    step: (i64, i64),
    t_max: (f64, f64),
    t_delta: (f64, f64),
    done: bool,
    budget: usize,
}

impl SegmentCells {
    fn new(g: &EdgeGrid, a: Point, b: Point) -> Self {
        let cx = cell_coord(a.x, g.lo.x, g.h, g.nx) as i64;
        let cy = cell_coord(a.y, g.lo.y, g.h, g.ny) as i64;
        let ex = cell_coord(b.x, g.lo.x, g.h, g.nx) as i64;
        let ey = cell_coord(b.y, g.lo.y, g.h, g.ny) as i64;
        let d = b - a;
        let axis = |d: f64, start: f64, lo: f64, c: i64| -> (i64, f64, f64) {
            if d > 0.0 {
                let next = lo + (c + 1) as f64 * g.h;
                (1, (next - start) / d, g.h / d)
            } else if d < 0.0 {
                let next = lo + c as f64 * g.h;
                (-1, (next - start) / d, -g.h / d)
            } else {
                (0, f64::INFINITY, f64::INFINITY)
            }
        };
        let (sx, tx, dx) = axis(d.x, a.x, g.lo.x, cx);
        let (sy, ty, dy) = axis(d.y, a.y, g.lo.y, cy);
        SegmentCells {
            nx: g.nx,
            cx,
            cy,
            end: (ex, ey),
            step: (sx, sy),
            t_max: (tx, ty),
            t_delta: (dx, dy),
            done: false,
            budget: (ex - cx).unsigned_abs() as usize + (ey - cy).unsigned_abs() as usize + 1,
        }
    }
}

impl Iterator for SegmentCells {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.done {
            return None;
        }
        let here = self.cy as usize * self.nx + self.cx as usize;
        self.budget -= 1;
        if (self.cx, self.cy) == self.end || self.budget == 0 {
            self.done = true;
            return Some(here);
        }
        // Clamp to the end cell's row/column so rounding can never overshoot.
        let step_x = if self.cx == self.end.0 {
            false
        } else if self.cy == self.end.1 {
            true
        } else {
            self.t_max.0 < self.t_max.1
        };
        if step_x {
            self.cx += self.step.0;
            self.t_max.0 += self.t_delta.0;
        } else {
            self.cy += self.step.1;
            self.t_max.1 += self.t_delta.1;
        }
        Some(here)
    }
}
