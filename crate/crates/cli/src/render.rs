//! Minimal SVG writer for polygons, paths, point sets, circles and grids.

use std::fmt::Write;

use geofat::{Point, Polygon};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Style {
    pub stroke: String,
    pub fill: String,
    /// Stroke width as a fraction of the larger viewBox side.
    pub width: f64,
}

impl Style {
    pub fn new(stroke: &str, fill: &str, width: f64) -> Self {
        Style { stroke: stroke.into(), fill: fill.into(), width }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Polygon { polygon: Polygon },
    Path { points: Vec<Point> },
    Points { points: Vec<Point>, radius: f64 },
    Circles { circles: Vec<(Point, f64)> },
    Grid { origin: Point, pitch: f64, nx: usize, ny: usize },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Layer {
    pub payload: Payload,
    pub style: Style,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Scene {
    pub layers: Vec<Layer>,
}

impl Scene {
    pub fn push(&mut self, payload: Payload, style: Style) {
        self.layers.push(Layer { payload, style });
    }

    fn extent(&self, polygons_only: bool) -> Option<(Point, Point)> {
        let mut pts: Vec<Point> = Vec::new();
        for l in &self.layers {
            match &l.payload {
                Payload::Polygon { polygon } => pts.extend(polygon.vertices()),
                _ if polygons_only => {}
                Payload::Path { points } | Payload::Points { points, .. } => pts.extend(points),
                Payload::Circles { circles } => {
                    for &(c, r) in circles {
                        pts.push(c - Point::new(r, r));
                        pts.push(c + Point::new(r, r));
                    }
                }
                Payload::Grid { origin, pitch, nx, ny } => {
                    pts.push(*origin);
                    pts.push(*origin + Point::new(*nx as f64 * pitch, *ny as f64 * pitch));
                }
            }
        }
        let first = *pts.first()?;
        Some(pts.iter().fold((first, first), |(lo, hi), p| {
            (Point::new(lo.x.min(p.x), lo.y.min(p.y)), Point::new(hi.x.max(p.x), hi.y.max(p.y)))
        }))
    }
}

/// Six significant digits, shortest form.
fn num(v: f64) -> String {
    let rounded: f64 = format!("{v:.5e}").parse().expect("formatted float parses");
    format!("{}", rounded + 0.0)
}

/// SVG y grows downwards.
fn xy(p: Point) -> String {
    format!("{},{}", num(p.x), num(-p.y))
}

fn ring_path(points: &[Point], close: bool, out: &mut String) {
    for (k, &p) in points.iter().enumerate() {
        let _ = write!(out, "{}{} ", if k == 0 { "M" } else { "L" }, xy(p));
    }
    if close {
        out.push('Z');
    }
}

/// SVG 1.1 document with one top-level group per layer, in order. The
/// viewBox is the bounding box of the polygon layers (of everything when
/// there are none) padded by 5% on every side.
pub fn render(scene: &Scene) -> Result<String, String> {
    let (lo, hi) = scene
        .extent(true)
        .or_else(|| scene.extent(false))
        .ok_or_else(|| "nothing to render".to_string())?;
    if scene.layers.iter().any(|l| !finite(&l.payload)) {
        return Err("scene contains non-finite coordinates".into());
    }
    let (w, h) = ((hi.x - lo.x).max(1e-12), (hi.y - lo.y).max(1e-12));
    let pad = 0.05 * w.max(h);
    let (vx, vy, vw, vh) = (lo.x - pad, -hi.y - pad, w + 2.0 * pad, h + 2.0 * pad);
    let unit = vw.max(vh);
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        num(vx),
        num(vy),
        num(vw),
        num(vh)
    );
    for layer in &scene.layers {
        let st = &layer.style;
        let _ = writeln!(
            s,
            "<g stroke=\"{}\" fill=\"{}\" stroke-width=\"{}\">",
            st.stroke,
            st.fill,
            num(st.width * unit)
        );
        match &layer.payload {
            Payload::Polygon { polygon } => {
                let mut d = String::new();
                for ring in polygon.rings() {
                    ring_path(ring.vertices(), true, &mut d);
                    d.push(' ');
                }
                let _ = writeln!(s, "<path fill-rule=\"evenodd\" d=\"{}\"/>", d.trim_end());
            }
            Payload::Path { points } => {
                let mut d = String::new();
                ring_path(points, false, &mut d);
                let _ = writeln!(s, "<path fill=\"none\" d=\"{}\"/>", d.trim_end());
            }
            Payload::Points { points, radius } => {
                for p in points {
                    let _ = writeln!(s, "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>", num(p.x), num(-p.y), num(radius * unit));
                }
            }
            Payload::Circles { circles } => {
                for (c, r) in circles {
                    let _ = writeln!(s, "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>", num(c.x), num(-c.y), num(*r));
                }
            }
            Payload::Grid { origin, pitch, nx, ny } => {
                let mut d = String::new();
                let (x1, y1) = (origin.x + *nx as f64 * pitch, origin.y + *ny as f64 * pitch);
                for i in 0..=*nx {
                    let x = origin.x + i as f64 * pitch;
                    let _ = write!(d, "M{} L{} ", xy(Point::new(x, origin.y)), xy(Point::new(x, y1)));
                }
                for j in 0..=*ny {
                    let y = origin.y + j as f64 * pitch;
                    let _ = write!(d, "M{} L{} ", xy(Point::new(origin.x, y)), xy(Point::new(x1, y)));
                }
                let _ = writeln!(s, "<path fill=\"none\" d=\"{}\"/>", d.trim_end());
            }
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn finite(p: &Payload) -> bool {
    match p {
        Payload::Polygon { polygon } => polygon.vertices().all(|v| v.is_finite()),
        Payload::Path { points } | Payload::Points { points, .. } => points.iter().all(|v| v.is_finite()),
        Payload::Circles { circles } => circles.iter().all(|(c, r)| c.is_finite() && r.is_finite()),
        Payload::Grid { origin, pitch, .. } => origin.is_finite() && pitch.is_finite(),
    }
}
