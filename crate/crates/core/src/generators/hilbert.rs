//! Hilbert-corridor polygons: the recursive family and its chained variant.

use std::collections::BTreeMap;

use super::trace::{trace_free_space, Rect};
use super::{FamilyParams, MarkedPolygon};
use crate::geom::{point_in_polygon, validate};
use crate::{Error, Point, Polygon, Result};

/// The three gaps in the top-level cross of a corridor polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Opening {
    /// Top-left corner of the south-west copy, on the horizontal wall.
    West,
    /// Bottom-right corner of the north-west copy, on the upper vertical wall.
    Center,
    /// Top-right corner of the south-east copy, on the horizontal wall.
    East,
}

/// Axis-aligned wall centerline; a gap end stops short of whatever it meets.
#[derive(Clone, Copy, Debug)]
struct Slit {
    a: Point,
    b: Point,
    gap_a: bool,
    gap_b: bool,
}

/// Similarity with rational coefficients: `p -> s * R p + t`, `R` a multiple
/// of a quarter turn given by its first column.
#[derive(Clone, Copy, Debug)]
struct Frame {
    col: (f64, f64),
    scale: f64,
    offset: Point,
}

impl Frame {
    const UNIT: Frame = Frame { col: (1.0, 0.0), scale: 1.0, offset: Point::new(0.0, 0.0) };

    fn apply(&self, p: Point) -> Point {
        let (c, s) = self.col;
        Point::new(
            self.offset.x + self.scale * (c * p.x - s * p.y),
            self.offset.y + self.scale * (s * p.x + c * p.y),
        )
    }

    /// `self ∘ inner`.
    fn then(&self, inner: Frame) -> Frame {
        let (c1, s1) = self.col;
        let (c2, s2) = inner.col;
        Frame {
            col: (c1 * c2 - s1 * s2, s1 * c2 + c1 * s2),
            scale: self.scale * inner.scale,
            offset: self.apply(inner.offset),
        }
    }
}

/// Child frames of the 2x2 subdivision: SW rotated clockwise, NW, NE, SE
/// rotated counterclockwise.
fn children() -> [Frame; 4] {
    [
        // (x, y) -> (y, 1 - x) / 2
        Frame { col: (0.0, -1.0), scale: 0.5, offset: Point::new(0.0, 0.5) },
        Frame { col: (1.0, 0.0), scale: 0.5, offset: Point::new(0.0, 0.5) },
        Frame { col: (1.0, 0.0), scale: 0.5, offset: Point::new(0.5, 0.5) },
        // (x, y) -> (1 - y, x) / 2 + (1/2, 0)
        Frame { col: (0.0, 1.0), scale: 0.5, offset: Point::new(1.0, 0.0) },
    ]
}

/// Cross of a unit cell: the horizontal wall with gaps at both ends, the lower
/// vertical wall closed, and the upper vertical wall open at the center.
fn cross(closed: &[Opening]) -> [Slit; 3] {
    let open = |o: Opening| !closed.contains(&o);
    [
        Slit {
            a: Point::new(0.0, 0.5),
            b: Point::new(1.0, 0.5),
            gap_a: open(Opening::West),
            gap_b: open(Opening::East),
        },
        Slit { a: Point::new(0.5, 0.0), b: Point::new(0.5, 0.5), gap_a: false, gap_b: false },
        Slit {
            a: Point::new(0.5, 0.5),
            b: Point::new(0.5, 1.0),
            gap_a: open(Opening::Center),
            gap_b: false,
        },
    ]
}

fn collect_slits(m: u32, frame: Frame, closed: &[Opening], out: &mut Vec<Slit>) {
    if m == 0 {
        return;
    }
    for s in cross(closed) {
        out.push(Slit { a: frame.apply(s.a), b: frame.apply(s.b), ..s });
    }
    for child in children() {
        collect_slits(m - 1, frame.then(child), &[], out);
    }
}

fn inflate(s: &Slit, eps: f64) -> Rect {
    let d = s.b - s.a;
    let u = d * (1.0 / d.norm());
    let a = s.a + u * if s.gap_a { 1.5 * eps } else { -0.5 * eps };
    let b = s.b - u * if s.gap_b { 1.5 * eps } else { -0.5 * eps };
    let n = u.perp() * (0.5 * eps);
    let (p, q) = (a + n, b - n);
    Rect {
        lo: Point::new(p.x.min(q.x), p.y.min(q.y)),
        hi: Point::new(p.x.max(q.x), p.y.max(q.y)),
    }
}

fn single_component(mut polys: Vec<Polygon>, what: &str) -> Result<Polygon> {
    if polys.len() != 1 {
        return Err(Error::Degenerate(format!("{what}: free space has {} components", polys.len())));
    }
    let poly = polys.pop().unwrap();
    let report = validate(&poly);
    if !report.ok {
        return Err(Error::Degenerate(format!("{what}: traced boundary is invalid: {}", report.summary())));
    }
    Ok(poly)
}

fn unit_bounds() -> Rect {
    Rect { lo: Point::new(0.0, 0.0), hi: Point::new(1.0, 1.0) }
}

pub(super) fn pm(params: FamilyParams) -> Result<MarkedPolygon> {
    params.check()?;
    let mut slits = Vec::new();
    collect_slits(params.m, Frame::UNIT, &[], &mut slits);
    let walls: Vec<Rect> = slits.iter().map(|s| inflate(s, params.corridor_epsilon)).collect();
    let polygon = single_component(trace_free_space(unit_bounds(), &walls)?, "P_m")?;
    let mut marks = BTreeMap::new();
    marks.insert("start".to_string(), Point::new(0.0, 0.0));
    marks.insert("end".to_string(), Point::new(1.0, 0.0));
    MarkedPolygon::new(polygon, marks)
}

/// Free-space components of the corridor polygon with some top-level
/// openings walled off.
pub fn gen_pm_closed(m: u32, eps: f64, closed: &[Opening]) -> Result<Vec<Polygon>> {
    let params = FamilyParams::new(m, eps)?;
    let mut slits = Vec::new();
    collect_slits(params.m, Frame::UNIT, closed, &mut slits);
    let walls: Vec<Rect> = slits.iter().map(|s| inflate(s, eps)).collect();
    trace_free_space(unit_bounds(), &walls)
}

pub(super) fn pstar(params: FamilyParams) -> Result<MarkedPolygon> {
    params.check()?;
    let m = params.m;
    let eps = params.corridor_epsilon;
    let k = 1usize << m;
    let side = 1.0 / k as f64;
    if eps >= side / f64::powi(2.0, m as i32 + 3) {
        return Err(Error::InvalidParameter(format!(
            "corridor epsilon {eps} too large for {k} copies of depth {m}"
        )));
    }
    // The copies sit on a wall of width eps whose underside is u v. A
    // temporary free band below u v keeps the traced region connected; it is
    // replaced by the triangle afterwards.
    let y0 = eps / 2.0;
    let mut slits = Vec::new();
    for i in 0..k {
        let x0 = i as f64 * side;
        let frame = Frame { col: (1.0, 0.0), scale: side, offset: Point::new(x0, y0) };
        collect_slits(m, frame, &[], &mut slits);
        slits.push(Slit {
            a: Point::new(x0, y0),
            b: Point::new(x0 + side, y0),
            gap_a: true,
            gap_b: false,
        });
        if i + 1 < k {
            slits.push(Slit {
                a: Point::new(x0 + side, y0),
                b: Point::new(x0 + side, y0 + side),
                gap_a: false,
                gap_b: false,
            });
        }
    }
    let walls: Vec<Rect> = slits.iter().map(|s| inflate(s, eps)).collect();
    let band_depth = 0.25;
    let bounds = Rect { lo: Point::new(0.0, -band_depth), hi: Point::new(1.0, y0 + side) };
    let traced = single_component(trace_free_space(bounds, &walls)?, "P*_m")?;

    let u = Point::new(0.0, 0.0);
    let v = Point::new(1.0, 0.0);
    let c = Point::new(0.5, -(3f64.sqrt()) / 2.0);
    let mut ring: Vec<Point> = traced.outer.vertices().to_vec();
    let (b0, b1) = (Point::new(0.0, -band_depth), Point::new(1.0, -band_depth));
    let at = ring
        .iter()
        .position(|&p| p == b0)
        .filter(|&i| ring[(i + 1) % ring.len()] == b1 && ring[(i + 2) % ring.len()] == v)
        .ok_or_else(|| Error::Degenerate("P*_m: bottom band not found".into()))?;
    let n = ring.len();
    ring[at] = u;
    ring[(at + 1) % n] = c;
    let polygon = Polygon::new(crate::geom::Ring::new(ring), traced.holes);
    let report = validate(&polygon);
    if !report.ok {
        return Err(Error::Degenerate(format!("P*_m: invalid boundary: {}", report.summary())));
    }

    let mut marks = BTreeMap::new();
    marks.insert("c".to_string(), c);
    marks.insert("u".to_string(), u);
    marks.insert("v".to_string(), v);
    for i in 1..=k {
        let x = if i < k { i as f64 * side - eps / 2.0 } else { 1.0 };
        marks.insert(format!("p_{i}"), Point::new(x, eps));
    }
    debug_assert!(marks.values().all(|&p| point_in_polygon(&polygon, p).in_closed()));
    MarkedPolygon::new(polygon, marks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frames_map_corners() {
        let [sw, nw, ne, se] = children();
        let (o, e) = (Point::new(0.0, 0.0), Point::new(1.0, 0.0));
        assert_eq!((sw.apply(o), sw.apply(e)), (Point::new(0.0, 0.5), Point::new(0.0, 0.0)));
        assert_eq!((nw.apply(o), nw.apply(e)), (Point::new(0.0, 0.5), Point::new(0.5, 0.5)));
        assert_eq!((ne.apply(o), ne.apply(e)), (Point::new(0.5, 0.5), Point::new(1.0, 0.5)));
        assert_eq!((se.apply(o), se.apply(e)), (Point::new(1.0, 0.0), Point::new(1.0, 0.5)));
        let twice = sw.then(sw);
        assert_eq!(twice.apply(Point::new(1.0, 1.0)), sw.apply(sw.apply(Point::new(1.0, 1.0))));
    }

    #[test]
    fn inflation_respects_gaps() {
        let s = Slit { a: Point::new(0.0, 0.5), b: Point::new(1.0, 0.5), gap_a: true, gap_b: false };
        let r = inflate(&s, 0.01);
        assert!((r.lo.x - 0.015).abs() < 1e-15 && (r.hi.x - 1.005).abs() < 1e-15);
        assert!((r.lo.y - 0.495).abs() < 1e-15 && (r.hi.y - 0.505).abs() < 1e-15);
    }
}
