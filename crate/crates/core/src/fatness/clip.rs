//! Exact area of the part of `disk ∩ polygon` connected to the disk center.
//!
//! The boundary of the intersection is assembled from the polygon edges
//! inside the disk and the circle arcs inside the polygon. Areas come from
//! Green's theorem taken relative to the center, where an arc sweeping an
//! angle `Δ` contributes `r²Δ/2`.

use std::f64::consts::TAU;

use crate::{Point, Polygon};

#[derive(Clone, Copy, Debug)]
enum Piece {
    Line(Point, Point),
    /// Counterclockwise arc starting at angle `from`.
    Arc { from: f64, sweep: f64 },
}

/// Boundary chain of one ring inside the disk, from an entry to an exit.
struct Chain {
    points: Vec<Point>,
    entry: f64,
    exit: f64,
}

struct Disk {
    o: Point,
    r: f64,
}

impl Disk {
    fn inside(&self, p: Point) -> bool {
        p.dist2(self.o) < self.r * self.r
    }

    fn angle(&self, p: Point) -> f64 {
        (p.y - self.o.y).atan2(p.x - self.o.x).rem_euclid(TAU)
    }

    /// Parameters in (0, 1) where segment `ab` meets the circle.
    fn crossings(&self, a: Point, b: Point) -> Vec<f64> {
        let d = b - a;
        let f = a - self.o;
        let qa = d.norm2();
        let qb = 2.0 * f.dot(d);
        let qc = f.norm2() - self.r * self.r;
        let disc = qb * qb - 4.0 * qa * qc;
        if qa == 0.0 || disc <= 0.0 {
            return Vec::new();
        }
        let s = disc.sqrt();
        // Numerically stable pair of roots.
        let q = -0.5 * (qb + qb.signum() * s);
        let (mut t1, mut t2) = (q / qa, if q != 0.0 { qc / q } else { -qb / (2.0 * qa) });
        if t1 > t2 {
            std::mem::swap(&mut t1, &mut t2);
        }
        [t1, t2].into_iter().filter(|t| (0.0..=1.0).contains(t)).collect()
    }
}

fn loop_area(pieces: &[Piece], disk: &Disk) -> f64 {
    pieces
        .iter()
        .map(|p| match *p {
            Piece::Line(a, b) => 0.5 * (a - disk.o).cross(b - disk.o),
            Piece::Arc { sweep, .. } => 0.5 * disk.r * disk.r * sweep,
        })
        .sum()
}

/// Ray casting towards +x against lines and arcs.
fn loop_contains(pieces: &[Piece], disk: &Disk, p: Point) -> bool {
    let mut inside = false;
    for piece in pieces {
        match *piece {
            Piece::Line(a, b) => {
                if (a.y > p.y) != (b.y > p.y) {
                    let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                    if p.x < x {
                        inside = !inside;
                    }
                }
            }
            Piece::Arc { from, sweep } => {
                let dy = p.y - disk.o.y;
                if dy.abs() >= disk.r {
                    continue;
                }
                let dx = (disk.r * disk.r - dy * dy).sqrt();
                for x in [disk.o.x + dx, disk.o.x - dx] {
                    if x <= p.x {
                        continue;
                    }
                    let phi = dy.atan2(x - disk.o.x).rem_euclid(TAU);
                    let rel = (phi - from).rem_euclid(TAU);
                    if rel > 0.0 && rel < sweep {
                        inside = !inside;
                    }
                }
            }
        }
    }
    inside
}

fn probe(piece: &Piece, disk: &Disk) -> Point {
    match *piece {
        Piece::Line(a, b) => a.midpoint(b),
        Piece::Arc { from, sweep } => disk.o + Point::from_polar(disk.r, from + 0.5 * sweep),
    }
}

/// Closed boundary loops of `D(center, radius) ∩ poly`, each with its signed area.
fn loops(poly: &Polygon, disk: &Disk) -> Vec<(Vec<Piece>, f64)> {
    let mut chains: Vec<Chain> = Vec::new();
    let mut out: Vec<Vec<Piece>> = Vec::new();
    let mut any_crossing = false;

    for ring in poly.rings() {
        let n = ring.len();
        // Ring walk with crossing points spliced in: (point, Some(is_entry)).
        let mut walk: Vec<(Point, Option<bool>)> = Vec::new();
        for i in 0..n {
            let (a, b) = (ring.vertex(i), ring.next(i));
            walk.push((a, None));
            let ts = disk.crossings(a, b);
            match (disk.inside(a), disk.inside(b), ts.len()) {
                (true, false, _) => walk.push((a.lerp(b, *ts.last().unwrap_or(&1.0)), Some(false))),
                (false, true, _) => walk.push((a.lerp(b, *ts.first().unwrap_or(&0.0)), Some(true))),
                (false, false, 2) if ts[0] < ts[1] => {
                    walk.push((a.lerp(b, ts[0]), Some(true)));
                    walk.push((a.lerp(b, ts[1]), Some(false)));
                }
                _ => {}
            }
        }
        let entries: Vec<usize> = (0..walk.len()).filter(|&k| walk[k].1 == Some(true)).collect();
        if entries.is_empty() {
            if ring.vertices().iter().all(|&v| disk.inside(v)) {
                out.push((0..n).map(|i| Piece::Line(ring.vertex(i), ring.next(i))).collect());
            }
            continue;
        }
        any_crossing = true;
        let m = walk.len();
        for &e in &entries {
            let mut points = vec![walk[e].0];
            let mut k = (e + 1) % m;
            loop {
                points.push(walk[k].0);
                if walk[k].1 == Some(false) {
                    break;
                }
                k = (k + 1) % m;
            }
            chains.push(Chain {
                entry: disk.angle(walk[e].0),
                exit: disk.angle(walk[k].0),
                points,
            });
        }
    }

    if !any_crossing {
        let on_circle = disk.o + Point::new(disk.r, 0.0);
        if crate::geom::point_in_polygon(poly, on_circle).in_closed() {
            // Start off the +x axis so the ray from the center never hits the seam.
            out.push(vec![Piece::Arc { from: 0.5, sweep: TAU }]);
        }
    }

    let mut used = vec![false; chains.len()];
    for start in 0..chains.len() {
        if used[start] {
            continue;
        }
        let mut pieces = Vec::new();
        let mut c = start;
        loop {
            used[c] = true;
            let ch = &chains[c];
            pieces.extend(ch.points.windows(2).map(|w| Piece::Line(w[0], w[1])));
            let next = (0..chains.len())
                .min_by(|&a, &b| {
                    let da = (chains[a].entry - ch.exit).rem_euclid(TAU);
                    let db = (chains[b].entry - ch.exit).rem_euclid(TAU);
                    da.total_cmp(&db)
                })
                .expect("at least one chain");
            let sweep = (chains[next].entry - ch.exit).rem_euclid(TAU);
            if sweep > 0.0 {
                pieces.push(Piece::Arc { from: ch.exit, sweep });
            }
            if next == start || used[next] {
                break;
            }
            c = next;
        }
        out.push(pieces);
    }
    out.into_iter()
        .map(|p| {
            let a = loop_area(&p, disk);
            (p, a)
        })
        .collect()
}

/// A point just inside the domain next to `c`, used to pick the component of
/// a disk centered on the boundary: `c` itself when it is away from the
/// boundary, otherwise `c` pushed along the interior wedge bisector at a
/// vertex or along the inward normal of an edge.
fn interior_probe(poly: &Polygon, c: Point, r: f64) -> Point {
    let tol = 1e-9;
    let step = 1e-7 * r;
    for ring in poly.rings() {
        for i in 0..ring.len() {
            let w = ring.vertex(i);
            if w.dist(c) <= tol {
                let (out, back) = (ring.next(i) - w, ring.prev(i) - w);
                let angle = out.cross(back).atan2(out.dot(back)).rem_euclid(TAU);
                let u = out * (1.0 / out.norm());
                return w + Point::from_polar(step, u.y.atan2(u.x) + 0.5 * angle);
            }
        }
    }
    for ring in poly.rings() {
        for (a, b) in ring.edges() {
            if crate::geom::point_segment_distance(c, a, b) <= tol {
                let d = (b - a) * (1.0 / a.dist(b));
                return c + d.perp() * step;
            }
        }
    }
    c
}

/// Area of the connected component of `D(center, radius) ∩ poly` that
/// contains `center`, or zero when the center is not in the polygon.
pub fn clipped_component_area(poly: &Polygon, center: Point, radius: f64) -> f64 {
    let disk = Disk { o: center, r: radius };
    let loops = loops(poly, &disk);
    let center = interior_probe(poly, center, radius);
    let outer = loops
        .iter()
        .enumerate()
        .filter(|(_, (p, a))| *a > 0.0 && loop_contains(p, &disk, center))
        .min_by(|x, y| x.1 .1.total_cmp(&y.1 .1));
    let Some((oi, (_, outer_area))) = outer else {
        return 0.0;
    };
    let mut area = *outer_area;
    for (hi, (hp, ha)) in loops.iter().enumerate() {
        if *ha >= 0.0 || hi == oi {
            continue;
        }
        let q = probe(&hp[0], &disk);
        // A hole belongs to the smallest positive loop around it.
        let owner = loops
            .iter()
            .enumerate()
            .filter(|(_, (p, a))| *a > 0.0 && loop_contains(p, &disk, q))
            .min_by(|x, y| x.1 .1.total_cmp(&y.1 .1))
            .map(|(k, _)| k);
        if owner == Some(oi) {
            area += ha;
        }
    }
    area
}

/// Area of `D(center, radius) ∩ poly`, all components.
pub fn clipped_area(poly: &Polygon, center: Point, radius: f64) -> f64 {
    let disk = Disk { o: center, r: radius };
    loops(poly, &disk).iter().map(|(_, a)| a).sum()
}
