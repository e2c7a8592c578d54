use serde::{Deserialize, Serialize};

use super::GeodesicEngine;
use crate::geom::{convex_hull, point_segment_distance};
use crate::{Error, Point, Result};

/// Relative convex hull of a point set: the Euclidean hull with every edge
/// replaced by the geodesic between its endpoints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelativeHull {
    /// Closed polyline, first point not repeated. A single point for one
    /// input point; a path followed by its reverse for collinear input.
    pub boundary: Vec<Point>,
    pub perimeter: f64,
    /// Euclidean hull vertices of the input, counterclockwise.
    pub corners: Vec<Point>,
    /// Arc-length position of each corner along `boundary`.
    pub corner_offsets: Vec<f64>,
}

impl RelativeHull {
    pub fn is_degenerate(&self) -> bool {
        self.corners.len() < 3
    }

    /// Closed-region membership: on the boundary within `tol`, or enclosed by it.
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        let n = self.boundary.len();
        if n == 1 {
            return self.boundary[0].dist(p) <= tol;
        }
        let mut inside = false;
        for i in 0..n {
            let a = self.boundary[i];
            let b = self.boundary[(i + 1) % n];
            if point_segment_distance(p, a, b) <= tol {
                return true;
            }
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if p.x < x {
                    inside = !inside;
                }
            }
        }
        inside
    }
}

pub fn relative_convex_hull(engine: &GeodesicEngine, points: &[Point]) -> Result<RelativeHull> {
    if points.is_empty() {
        return Err(Error::EmptyInput("relative_convex_hull needs at least one point"));
    }
    for &p in points {
        engine.locate(p)?;
    }
    let corners = convex_hull(points);
    if corners.len() == 1 {
        return Ok(RelativeHull {
            boundary: corners.clone(),
            perimeter: 0.0,
            corners,
            corner_offsets: vec![0.0],
        });
    }
    if corners.len() == 2 {
        let path = engine.path(corners[0], corners[1])?;
        let w = &path.waypoints;
        let mut boundary = w.clone();
        boundary.extend(w[1..w.len() - 1].iter().rev());
        return Ok(RelativeHull {
            boundary,
            perimeter: 2.0 * path.length,
            corners,
            corner_offsets: vec![0.0, path.length],
        });
    }
    let mut boundary = Vec::new();
    let mut offsets = Vec::with_capacity(corners.len());
    let mut perimeter = 0.0;
    for i in 0..corners.len() {
        let path = engine.path(corners[i], corners[(i + 1) % corners.len()])?;
        offsets.push(perimeter);
        perimeter += path.length;
        boundary.extend_from_slice(&path.waypoints[..path.waypoints.len() - 1]);
    }
    Ok(RelativeHull { boundary, perimeter, corners, corner_offsets: offsets })
}
