//! JSON wire formats for polygons, point lists and marks.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Point, Polygon, Ring};
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
struct PolygonDoc {
    outer: Vec<Point<f64>>,
    #[serde(default)]
    holes: Vec<Vec<Point<f64>>>,
}

#[derive(Serialize, Deserialize)]
struct MarksDoc {
    marks: BTreeMap<String, Point<f64>>,
}

/// Parses a polygon and normalizes ring orientation, logging a warning for
/// every ring that was flipped.
pub fn polygon_from_json(text: &str) -> Result<Polygon<f64>> {
    let doc: PolygonDoc = serde_json::from_str(text)?;
    let mut poly = Polygon::new(
        Ring::new(doc.outer),
        doc.holes.into_iter().map(Ring::new).collect(),
    );
    if poly.vertices().any(|p| !p.is_finite()) {
        return Err(Error::InvalidPolygon("non-finite coordinate".into()));
    }
    for note in poly.normalize_orientation() {
        log::warn!("{note}");
    }
    Ok(poly)
}

pub fn polygon_to_json(poly: &Polygon<f64>) -> String {
    let doc = PolygonDoc {
        outer: poly.outer.vertices().to_vec(),
        holes: poly.holes.iter().map(|h| h.vertices().to_vec()).collect(),
    };
    serde_json::to_string(&doc).expect("polygon serializes")
}

pub fn read_polygon(path: impl AsRef<Path>) -> Result<Polygon<f64>> {
    polygon_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_polygon(path: impl AsRef<Path>, poly: &Polygon<f64>) -> Result<()> {
    std::fs::write(path, polygon_to_json(poly))?;
    Ok(())
}

/// Point lists are plain `[[x,y],...]` arrays.
pub fn points_from_json(text: &str) -> Result<Vec<Point<f64>>> {
    let pts: Vec<Point<f64>> = serde_json::from_str(text)?;
    if pts.iter().any(|p| !p.is_finite()) {
        return Err(Error::InvalidQuery("non-finite coordinate in point list".into()));
    }
    Ok(pts)
}

pub fn points_to_json(points: &[Point<f64>]) -> String {
    serde_json::to_string(points).expect("points serialize")
}

pub fn marks_from_json(text: &str) -> Result<BTreeMap<String, Point<f64>>> {
    Ok(serde_json::from_str::<MarksDoc>(text)?.marks)
}

pub fn marks_to_json(marks: &BTreeMap<String, Point<f64>>) -> String {
    serde_json::to_string(&MarksDoc { marks: marks.clone() }).expect("marks serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn round_trip_is_value_identical() {
        let text = r#"{"outer":[[0,0],[1,0],[1,1],[0,1]],"holes":[[[0.25,0.25],[0.25,0.75],[0.75,0.75],[0.75,0.25]]]}"#;
        let p = polygon_from_json(text).unwrap();
        let again = polygon_from_json(&polygon_to_json(&p)).unwrap();
        assert_eq!(p, again);
        assert_eq!(polygon_to_json(&p), polygon_to_json(&again));
        assert_eq!(p.area(), 0.75);
    }

    #[test]
    fn orientation_is_fixed_on_load() {
        let p = polygon_from_json(r#"{"outer":[[0,0],[0,1],[1,1],[1,0]]}"#).unwrap();
        assert!(p.outer.is_ccw());
    }

    #[test]
    fn shortest_round_trip_numbers() {
        let p = polygon_from_json(r#"{"outer":[[0.1,0],[1,0],[0.3333333333333333,1]]}"#).unwrap();
        assert!(polygon_to_json(&p).contains("0.3333333333333333"));
        assert!(polygon_to_json(&p).contains("0.1"));
    }

    #[test]
    fn bad_input_is_rejected() {
        assert!(polygon_from_json("{\"outer\": 3}").is_err());
        assert!(points_from_json("[[1,2],[3]]").is_err());
    }

    #[test]
    fn marks_round_trip() {
        let mut m = BTreeMap::new();
        m.insert("start".to_string(), Point::new(0.0, 0.0));
        m.insert("end".to_string(), Point::new(1.0, 0.0));
        assert_eq!(marks_from_json(&marks_to_json(&m)).unwrap(), m);
    }

    proptest! {
        // Needs exact decimal parsing; the fast default parser can be one ulp off.
        #[test]
        fn every_coordinate_survives_text(xs in prop::collection::vec(-1e6..1e6f64, 2..40)) {
            let pts: Vec<Point<f64>> = xs.chunks_exact(2).map(|c| Point::new(c[0], c[1])).collect();
            let text = points_to_json(&pts);
            prop_assert_eq!(points_from_json(&text).unwrap(), pts);
        }
    }
}
