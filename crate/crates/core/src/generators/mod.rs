//! Deterministic polygon families: the Hilbert-corridor polygons, their
//! chained variant, combs, random convex polygons and fat blobs.

mod hilbert;
mod shapes;
mod trace;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::geom::{point_in_polygon, validate};
use crate::{Error, Point, Polygon, Result};

pub use hilbert::{gen_pm_closed, Opening};
pub use shapes::{gen_comb, gen_fat_blob, gen_random_convex};
pub use trace::{trace_free_space, Rect};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub m: u32,
    pub corridor_epsilon: f64,
}

impl FamilyParams {
    pub fn new(m: u32, corridor_epsilon: f64) -> Result<Self> {
        let p = FamilyParams { m, corridor_epsilon };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        if self.m < 1 || self.m > 10 {
            return Err(Error::InvalidParameter(format!("depth m must be in 1..=10, got {}", self.m)));
        }
        let limit = f64::powi(2.0, -(self.m as i32 + 3));
        if !(self.corridor_epsilon > 0.0 && self.corridor_epsilon < limit) {
            return Err(Error::InvalidParameter(format!(
                "corridor epsilon must be in (0, {limit}) for m = {}, got {}",
                self.m, self.corridor_epsilon
            )));
        }
        Ok(())
    }
}

/// A polygon with named points of interest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkedPolygon {
    pub polygon: Polygon,
    pub marks: BTreeMap<String, Point>,
}

impl MarkedPolygon {
    pub fn new(polygon: Polygon, marks: BTreeMap<String, Point>) -> Result<Self> {
        let report = validate(&polygon);
        if !report.ok {
            return Err(Error::InvalidPolygon(report.summary()));
        }
        if let Some((name, _)) = marks.iter().find(|(_, &p)| !point_in_polygon(&polygon, p).in_closed()) {
            return Err(Error::Degenerate(format!("mark {name} lies outside the polygon")));
        }
        Ok(MarkedPolygon { polygon, marks })
    }

    /// Mark by name; panics if absent.
    pub fn mark(&self, name: &str) -> Point {
        self.marks[name]
    }
}

/// The basic corridor polygon: unit square minus three walls of width `eps`.
pub fn gen_p1(eps: f64) -> Result<MarkedPolygon> {
    gen_pm(1, eps)
}

/// Depth-`m` corridor polygon; the shortest path from (0,0) to (1,0) follows
/// the order-`m` Hilbert curve.
pub fn gen_pm(m: u32, eps: f64) -> Result<MarkedPolygon> {
    hilbert::pm(FamilyParams { m, corridor_epsilon: eps })
}

/// `2^m` corridor polygons of side `2^-m` in a row above the equilateral
/// triangle `c u v`, each opening at its lower-left corner towards the triangle.
/// Requires `eps < 2^-(2m+3)` so the walls fit the scaled copies.
pub fn gen_pstar(m: u32, eps: f64) -> Result<MarkedPolygon> {
    hilbert::pstar(FamilyParams { m, corridor_epsilon: eps })
}

#[cfg(test)]
mod tests;
