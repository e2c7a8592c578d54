//! Planar primitives shared by every other module.
//!
//! Everything here is generic over [`Scalar`], so the predicates can be run
//! in `f32` as well as `f64`. The rest of the crate works with the `f64`
//! aliases exported from the crate root.

mod hull;
pub mod io;
mod polygon;
mod segment;

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Float, FromPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use hull::{convex_hull, euclidean_diameter};
pub use polygon::{
    point_in_polygon, validate, Defect, DefectKind, Location, Polygon, Ring, RingRef,
    ValidationReport,
};
pub use segment::{segment_in_polygon, segment_in_polygon_unchecked, wedge_allows};

#[allow(unused_imports)]
pub(crate) use segment::segment_clear;

/// Coordinate type accepted by the geometry layer.
pub trait Scalar:
    Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Collinearity threshold on the normalized cross product.
    fn orient_tol() -> Self;
    /// Distance below which a point counts as lying on the boundary.
    fn boundary_tol() -> Self;
    /// Coordinates must lie in `[-coord_limit, coord_limit]`.
    fn coord_limit() -> Self;

    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }
}

impl Scalar for f64 {
    fn orient_tol() -> Self {
        1e-12
    }
    fn boundary_tol() -> Self {
        1e-9
    }
    fn coord_limit() -> Self {
        1e6
    }
}

impl Scalar for f32 {
    fn orient_tol() -> Self {
        1e-6
    }
    fn boundary_tol() -> Self {
        1e-5
    }
    fn coord_limit() -> Self {
        1e6
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point<S> {
    pub const fn new(x: S, y: S) -> Self {
        Point { x, y }
    }

    pub fn dot(self, o: Self) -> S {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 2D cross product.
    pub fn cross(self, o: Self) -> S {
        self.x * o.y - self.y * o.x
    }

    pub fn norm2(self) -> S {
        self.dot(self)
    }

    pub fn norm(self) -> S {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Self) -> S {
        (self - o).norm()
    }

    pub fn dist2(self, o: Self) -> S {
        (self - o).norm2()
    }

    pub fn lerp(self, o: Self, t: S) -> Self {
        self + (o - self) * t
    }

    pub fn midpoint(self, o: Self) -> Self {
        self.lerp(o, S::lit(0.5))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Counterclockwise rotation by a quarter turn.
    pub fn perp(self) -> Self {
        Point::new(-self.y, self.x)
    }

    pub fn from_polar(r: S, theta: S) -> Self {
        Point::new(r * theta.cos(), r * theta.sin())
    }

    /// Lexicographic order on `(x, y)`; NaN never occurs for valid points.
    pub fn lex_cmp(&self, o: &Self) -> Ordering {
        self.x
            .partial_cmp(&o.x)
            .unwrap_or(Ordering::Equal)
            .then(self.y.partial_cmp(&o.y).unwrap_or(Ordering::Equal))
    }

    pub fn cast<T: Scalar>(self) -> Point<T> {
        Point::new(
            T::from_f64(self.x.to_f64().unwrap()).unwrap(),
            T::from_f64(self.y.to_f64().unwrap()).unwrap(),
        )
    }
}

impl<S: Scalar> Add for Point<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl<S: Scalar> Sub for Point<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl<S: Scalar> Mul<S> for Point<S> {
    type Output = Self;
    fn mul(self, k: S) -> Self {
        Point::new(self.x * k, self.y * k)
    }
}

impl<S: Scalar> Neg for Point<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Point::new(-self.x, -self.y)
    }
}

impl<S: Serialize> Serialize for Point<S> {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        (&self.x, &self.y).serialize(s)
    }
}

impl<'de, S: Deserialize<'de>> Deserialize<'de> for Point<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[S; 2]>::deserialize(d)?;
        Ok(Point { x, y })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "ccw")]
    CounterClockwise,
    #[serde(rename = "cw")]
    Clockwise,
    #[serde(rename = "collinear")]
    Collinear,
}

impl Orientation {
    pub fn reverse(self) -> Self {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Sine of the angle at `p` from `q` to `r`, or zero when either leg is degenerate.
pub fn normalized_cross<S: Scalar>(p: Point<S>, q: Point<S>, r: Point<S>) -> S {
    let u = q - p;
    let v = r - p;
    let scale = u.norm() * v.norm();
    if scale == S::zero() {
        return S::zero();
    }
    u.cross(v) / scale
}

/// Sign of `(q - p) x (r - p)`, with `|sin| <= orient_tol` treated as collinear.
pub fn orientation<S: Scalar>(p: Point<S>, q: Point<S>, r: Point<S>) -> Orientation {
    let s = normalized_cross(p, q, r);
    if s.abs() <= S::orient_tol() {
        Orientation::Collinear
    } else if s > S::zero() {
        Orientation::CounterClockwise
    } else {
        Orientation::Clockwise
    }
}

/// Distance from `p` to the closed segment `ab`.
pub fn point_segment_distance<S: Scalar>(p: Point<S>, a: Point<S>, b: Point<S>) -> S {
    let d = b - a;
    let len2 = d.norm2();
    if len2 == S::zero() {
        return p.dist(a);
    }
    let t = ((p - a).dot(d) / len2).max(S::zero()).min(S::one());
    p.dist(a + d * t)
}

/// Closed-segment intersection test (touching counts).
pub fn segments_intersect<S: Scalar>(a: Point<S>, b: Point<S>, c: Point<S>, d: Point<S>) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if strictly_opposite(o1, o2) && strictly_opposite(o3, o4) {
        return true;
    }
    on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d)
}

pub(crate) fn strictly_opposite(a: Orientation, b: Orientation) -> bool {
    a != Orientation::Collinear && b != Orientation::Collinear && a != b
}

/// `p` collinear-ish with `ab` and within its bounding range.
pub(crate) fn on_segment<S: Scalar>(p: Point<S>, a: Point<S>, b: Point<S>) -> bool {
    point_segment_distance(p, a, b) <= S::boundary_tol()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type P = Point<f64>;

    #[test]
    fn orientation_basics() {
        let o = P::new(0.0, 0.0);
        assert_eq!(orientation(o, P::new(1.0, 0.0), P::new(0.0, 1.0)), Orientation::CounterClockwise);
        assert_eq!(orientation(o, P::new(1.0, 0.0), P::new(2.0, 0.0)), Orientation::Collinear);
        assert_eq!(orientation(o, P::new(0.0, 1.0), P::new(1.0, 1.0)), Orientation::Clockwise);
    }

    #[test]
    fn orientation_in_f32() {
        let o = Point::<f32>::new(0.0, 0.0);
        assert_eq!(
            orientation(o, Point::new(1.0, 0.0), Point::new(0.0, 1.0)),
            Orientation::CounterClockwise
        );
        assert_eq!(
            orientation(o, Point::new(1.0, 1.0), Point::new(3.0, 3.0)),
            Orientation::Collinear
        );
    }

    #[test]
    fn degenerate_legs_are_collinear() {
        let p = P::new(0.3, 0.3);
        assert_eq!(orientation(p, p, P::new(1.0, 2.0)), Orientation::Collinear);
    }

    #[test]
    fn crossing_segments() {
        let (a, b) = (P::new(0.0, 0.0), P::new(1.0, 1.0));
        assert!(segments_intersect(a, b, P::new(0.0, 1.0), P::new(1.0, 0.0)));
        assert!(segments_intersect(a, b, P::new(1.0, 1.0), P::new(2.0, 0.0)));
        assert!(!segments_intersect(a, b, P::new(0.0, 1.0), P::new(0.2, 0.9)));
    }

    fn coord() -> impl Strategy<Value = f64> {
        -100.0..100.0f64
    }

    proptest! {
        #[test]
        fn orientation_antisymmetric(ax in coord(), ay in coord(), bx in coord(), by in coord(), cx in coord(), cy in coord()) {
            let (p, q, r) = (P::new(ax, ay), P::new(bx, by), P::new(cx, cy));
            prop_assert_eq!(orientation(p, q, r), orientation(p, r, q).reverse());
        }
    }
}
