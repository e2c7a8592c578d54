//! Boundary tracing for "box minus axis-aligned rectangles" regions.

use std::collections::HashMap;

use crate::geom::Ring;
use crate::{Error, Point, Polygon, Result};

const SNAP: f64 = 1e-12;

/// Rounds to a multiple of 2^-44 so that coordinates computed along different
/// routes (and tiny residues around zero) agree bitwise.
fn quantize(v: f64) -> f64 {
    const Q: f64 = (1u64 << 44) as f64;
    (v * Q).round() / Q + 0.0
}

fn quantize_rect(r: &Rect) -> Rect {
    Rect {
        lo: Point::new(quantize(r.lo.x), quantize(r.lo.y)),
        hi: Point::new(quantize(r.hi.x), quantize(r.hi.y)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect {
    pub lo: Point,
    pub hi: Point,
}

fn snap_axis(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::with_capacity(v.len());
    for x in v {
        match out.last() {
            Some(&l) if x - l <= SNAP => {}
            _ => out.push(x),
        }
    }
    out
}

fn index_of(axis: &[f64], v: f64) -> usize {
    let k = axis.partition_point(|&a| a < v - SNAP);
    debug_assert!(k < axis.len() && (axis[k] - v).abs() <= 2.0 * SNAP);
    k
}

/// Traces the free space of `bounds` minus the union of `walls`. Every
/// connected component becomes a polygon (outer ring counterclockwise, holes
/// clockwise), with collinear runs merged. Components are returned in the
/// order of their lowest-leftmost vertex.
pub fn trace_free_space(bounds: Rect, walls: &[Rect]) -> Result<Vec<Polygon>> {
    let bounds = quantize_rect(&bounds);
    let clip = |r: &Rect| Rect {
        lo: Point::new(r.lo.x.max(bounds.lo.x), r.lo.y.max(bounds.lo.y)),
        hi: Point::new(r.hi.x.min(bounds.hi.x), r.hi.y.min(bounds.hi.y)),
    };
    let walls: Vec<Rect> = walls
        .iter()
        .map(|r| clip(&quantize_rect(r)))
        .filter(|r| r.hi.x - r.lo.x > SNAP && r.hi.y - r.lo.y > SNAP)
        .collect();
    let xs = snap_axis(
        walls.iter().flat_map(|r| [r.lo.x, r.hi.x]).chain([bounds.lo.x, bounds.hi.x]).collect(),
    );
    let ys = snap_axis(
        walls.iter().flat_map(|r| [r.lo.y, r.hi.y]).chain([bounds.lo.y, bounds.hi.y]).collect(),
    );
    let (nx, ny) = (xs.len() - 1, ys.len() - 1);
    let mut blocked = vec![false; nx * ny];
    for r in &walls {
        let (i0, i1) = (index_of(&xs, r.lo.x), index_of(&xs, r.hi.x));
        let (j0, j1) = (index_of(&ys, r.lo.y), index_of(&ys, r.hi.y));
        for j in j0..j1 {
            blocked[j * nx + i0..j * nx + i1].fill(true);
        }
    }
    let free = |i: i64, j: i64| -> bool {
        i >= 0 && j >= 0 && (i as usize) < nx && (j as usize) < ny && !blocked[j as usize * nx + i as usize]
    };

    // Directed boundary edges between lattice vertices, free space on the left.
    let mut out_edge: HashMap<(u32, u32), (u32, u32)> = HashMap::new();
    let mut add = |from: (usize, usize), to: (usize, usize)| -> Result<()> {
        let key = (from.0 as u32, from.1 as u32);
        if out_edge.insert(key, (to.0 as u32, to.1 as u32)).is_some() {
            return Err(Error::Degenerate(format!(
                "free space pinches at ({}, {})",
                xs[from.0], ys[from.1]
            )));
        }
        Ok(())
    };
    for j in 0..ny {
        for i in 0..nx {
            if blocked[j * nx + i] {
                continue;
            }
            let (ii, jj) = (i as i64, j as i64);
            if !free(ii, jj - 1) {
                add((i, j), (i + 1, j))?;
            }
            if !free(ii + 1, jj) {
                add((i + 1, j), (i + 1, j + 1))?;
            }
            if !free(ii, jj + 1) {
                add((i + 1, j + 1), (i, j + 1))?;
            }
            if !free(ii - 1, jj) {
                add((i, j + 1), (i, j))?;
            }
        }
    }

    let mut starts: Vec<(u32, u32)> = out_edge.keys().copied().collect();
    starts.sort_by_key(|&(i, j)| (j, i));
    let mut seen: HashMap<(u32, u32), ()> = HashMap::new();
    let mut outers: Vec<Ring<f64>> = Vec::new();
    let mut holes: Vec<Ring<f64>> = Vec::new();
    for s in starts {
        if seen.contains_key(&s) {
            continue;
        }
        let mut loop_pts = vec![s];
        seen.insert(s, ());
        let mut cur = out_edge[&s];
        while cur != s {
            seen.insert(cur, ());
            loop_pts.push(cur);
            cur = out_edge[&cur];
        }
        let ring = Ring::new(merge_collinear(&loop_pts).into_iter().map(|(i, j)| Point::new(xs[i as usize], ys[j as usize])).collect());
        if ring.signed_area() > 0.0 {
            outers.push(ring);
        } else {
            holes.push(ring);
        }
    }

    let mut polys: Vec<Polygon> = outers.into_iter().map(|o| Polygon::new(o, Vec::new())).collect();
    for h in holes {
        let probe = h.vertex(0);
        let owner = polys
            .iter()
            .enumerate()
            .filter(|(_, p)| p.outer.winds_around(probe))
            .min_by(|a, b| a.1.outer.area().total_cmp(&b.1.outer.area()))
            .map(|(k, _)| k)
            .ok_or_else(|| Error::Degenerate("hole outside every component".into()))?;
        polys[owner].holes.push(h);
    }
    Ok(polys)
}

/// Drops lattice vertices where the boundary goes straight on, and rotates
/// the loop to start at its lowest-leftmost corner.
fn merge_collinear(pts: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let n = pts.len();
    let dir = |a: (u32, u32), b: (u32, u32)| ((b.0 as i64 - a.0 as i64).signum(), (b.1 as i64 - a.1 as i64).signum());
    let mut out: Vec<(u32, u32)> = (0..n)
        .filter(|&k| dir(pts[(k + n - 1) % n], pts[k]) != dir(pts[k], pts[(k + 1) % n]))
        .map(|k| pts[k])
        .collect();
    let first = (0..out.len()).min_by_key(|&k| (out[k].1, out[k].0)).unwrap_or(0);
    out.rotate_left(first);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::validate;

    fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Rect {
        Rect { lo: Point::new(x0, y0), hi: Point::new(x1, y1) }
    }

    #[test]
    fn empty_box_is_a_square() {
        let polys = trace_free_space(rect(0.0, 0.0, 1.0, 1.0), &[]).unwrap();
        assert_eq!(polys.len(), 1);
        assert_eq!(polys[0].outer.len(), 4);
        assert_eq!(polys[0].area(), 1.0);
    }

    #[test]
    fn notch_and_hole() {
        let walls = [rect(0.4, 0.0, 0.6, 0.5), rect(0.2, 0.7, 0.3, 0.8)];
        let polys = trace_free_space(rect(0.0, 0.0, 1.0, 1.0), &walls).unwrap();
        assert_eq!(polys.len(), 1);
        assert_eq!(polys[0].outer.len(), 8);
        assert_eq!(polys[0].holes.len(), 1);
        assert!(validate(&polys[0]).ok);
        assert!((polys[0].area() - (1.0 - 0.1 - 0.01)).abs() < 1e-12);
    }

    #[test]
    fn wall_splits_components() {
        let polys = trace_free_space(rect(0.0, 0.0, 1.0, 1.0), &[rect(0.4, -1.0, 0.6, 2.0)]).unwrap();
        assert_eq!(polys.len(), 2);
    }

    #[test]
    fn diagonal_contact_is_an_error() {
        let walls = [rect(0.2, 0.2, 0.5, 0.5), rect(0.5, 0.5, 0.8, 0.8)];
        assert!(trace_free_space(rect(0.0, 0.0, 1.0, 1.0), &walls).is_err());
    }
}
