//! Comb, random convex and star-shaped test polygons.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::MarkedPolygon;
use crate::{Error, Point, Polygon, Result};

/// Disk-like body of radius 1/2 centered at the origin with `n_teeth` thin
/// triangular spikes. Each spike has a base chord of width `tooth_width` on
/// the body circle and its tip at radius `1/2 + tooth_depth`.
pub fn gen_comb(n_teeth: usize, tooth_width: f64, tooth_depth: f64) -> Result<MarkedPolygon> {
    const BODY: f64 = 0.5;
    if n_teeth < 2 {
        return Err(Error::InvalidParameter(format!("comb needs at least 2 teeth, got {n_teeth}")));
    }
    if !(tooth_width > 0.0 && tooth_depth > 0.0 && tooth_depth.is_finite()) {
        return Err(Error::InvalidParameter("tooth width and depth must be positive".into()));
    }
    let spacing = TAU / n_teeth as f64;
    if tooth_width >= 2.0 * BODY {
        return Err(Error::InvalidParameter(format!("tooth width {tooth_width} exceeds the body")));
    }
    let half = (tooth_width / (2.0 * BODY)).asin();
    if 2.0 * half > 0.8 * spacing {
        return Err(Error::InvalidParameter(format!(
            "{n_teeth} teeth of width {tooth_width} do not fit around the body"
        )));
    }
    // Body vertices between spikes, enough to keep the body round.
    let between = ((spacing - 2.0 * half) / (PI / 16.0)).ceil().max(1.0) as usize;
    let mut ring = Vec::new();
    let mut marks = BTreeMap::new();
    marks.insert("center".to_string(), Point::new(0.0, 0.0));
    for t in 0..n_teeth {
        let theta = t as f64 * spacing;
        ring.push(Point::from_polar(BODY, theta - half));
        let tip = Point::from_polar(BODY + tooth_depth, theta);
        ring.push(tip);
        marks.insert(format!("tip_{}", t + 1), tip);
        ring.push(Point::from_polar(BODY, theta + half));
        let gap = spacing - 2.0 * half;
        for b in 1..=between {
            let phi = theta + half + gap * b as f64 / (between + 1) as f64;
            ring.push(Point::from_polar(BODY, phi));
        }
    }
    MarkedPolygon::new(Polygon::simple(ring), marks)
}

/// Random convex polygon with `n` vertices (Valtr's method), scaled to fit
/// the unit square.
pub fn gen_random_convex(n: usize, seed: u64) -> Result<Polygon> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("polygon needs at least 3 vertices, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chains = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        v.sort_by(f64::total_cmp);
        let (lo, hi) = (v[0], v[n - 1]);
        let (mut last_a, mut last_b) = (lo, lo);
        let mut out = Vec::with_capacity(n);
        for &x in &v[1..n - 1] {
            if rng.gen::<bool>() {
                out.push(x - last_a);
                last_a = x;
            } else {
                out.push(last_b - x);
                last_b = x;
            }
        }
        out.push(hi - last_a);
        out.push(last_b - hi);
        out
    };
    let xs = chains(&mut rng);
    let mut ys = chains(&mut rng);
    ys.shuffle(&mut rng);
    let mut vecs: Vec<Point> = xs.into_iter().zip(ys).map(|(x, y)| Point::new(x, y)).collect();
    vecs.sort_by(|a, b| a.y.atan2(a.x).total_cmp(&b.y.atan2(b.x)));
    let mut pts = Vec::with_capacity(n);
    let mut cur = Point::new(0.0, 0.0);
    for v in vecs {
        pts.push(cur);
        cur = cur + v;
    }
    let (mut lo, mut hi) = (pts[0], pts[0]);
    for p in &pts {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let s = 1.0 / (hi.x - lo.x).max(hi.y - lo.y);
    Ok(Polygon::simple(pts.into_iter().map(|p| (p - lo) * s).collect()))
}

/// Star-shaped polygon around (1/2, 1/2) whose radius follows a few random
/// low harmonics; the ratio of largest to smallest radius is at most 1.5.
pub fn gen_fat_blob(n: usize, seed: u64) -> Result<Polygon> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("polygon needs at least 3 vertices, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let harmonics: Vec<(f64, f64)> = (1..=3)
        .map(|k| (rng.gen_range(-1.0..1.0) / k as f64, rng.gen_range(0.0..TAU)))
        .collect();
    let total: f64 = harmonics.iter().map(|h| h.0.abs()).sum();
    let gain = if total > 0.0 { 0.2 / total } else { 0.0 };
    let center = Point::new(0.5, 0.5);
    let pts = (0..n)
        .map(|i| {
            let theta = TAU * i as f64 / n as f64;
            let wobble: f64 = harmonics
                .iter()
                .enumerate()
                .map(|(k, &(a, phase))| a * ((k + 1) as f64 * theta + phase).cos())
                .sum();
            center + Point::from_polar(0.4 * (1.0 + gain * wobble), theta)
        })
        .collect();
    Ok(Polygon::simple(pts))
}
