//! Geodesic metric toolkit for fat polygons.
//!
//! The geometry layer ([`geom`]) is generic over the coordinate type; the
//! geodesic engine and everything built on it run in `f64` through the
//! aliases below.

pub mod doubling;
pub mod fatness;
pub mod generators;
pub mod geodesic;
pub mod geom;
pub mod oracle;
pub mod proximity;

pub type Point = geom::Point<f64>;
pub type Ring = geom::Ring<f64>;
pub type Polygon = geom::Polygon<f64>;
pub type ValidationReport = geom::ValidationReport<f64>;

pub use geom::{Location, Orientation};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("no path between ({}, {}) and ({}, {})", .0.x, .0.y, .1.x, .1.y)]
    Unreachable(Point, Point),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidPolygon(_) => "invalid_polygon",
            Error::InvalidQuery(_) => "invalid_query",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::EmptyInput(_) => "empty_input",
            Error::Unreachable(..) => "unreachable",
            Error::Degenerate(_) => "degenerate",
            Error::Json(_) => "json",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
