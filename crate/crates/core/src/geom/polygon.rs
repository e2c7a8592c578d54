use serde::{Deserialize, Serialize};

use super::{
    normalized_cross, on_segment, orientation, point_segment_distance, segments_intersect,
    Orientation, Point, Scalar,
};

/// Closed vertex loop; the first vertex is not repeated at the end.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ring<S> {
    vertices: Vec<Point<S>>,
}

impl<S: Scalar> Ring<S> {
    pub fn new(vertices: Vec<Point<S>>) -> Self {
        Ring { vertices }
    }

    pub fn vertices(&self) -> &[Point<S>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point<S> {
        let n = self.vertices.len();
        self.vertices[i % n]
    }

    pub fn prev(&self, i: usize) -> Point<S> {
        let n = self.vertices.len();
        self.vertices[(i + n - 1) % n]
    }

    pub fn next(&self, i: usize) -> Point<S> {
        self.vertex(i + 1)
    }

    /// Directed edges `(v[i], v[i+1])`, wrapping around.
    pub fn edges(&self) -> impl Iterator<Item = (Point<S>, Point<S>)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Shoelace area, positive for counterclockwise rings.
    pub fn signed_area(&self) -> S {
        if self.vertices.len() < 3 {
            return S::zero();
        }
        let o = self.vertices[0];
        let twice = self
            .edges()
            .fold(S::zero(), |acc, (a, b)| acc + (a - o).cross(b - o));
        twice * S::lit(0.5)
    }

    pub fn area(&self) -> S {
        self.signed_area().abs()
    }

    pub fn length(&self) -> S {
        self.edges().fold(S::zero(), |acc, (a, b)| acc + a.dist(b))
    }

    pub fn is_ccw(&self) -> bool {
        self.signed_area() > S::zero()
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Ring { vertices: v }
    }

    /// Crossing-number parity test; boundary points give an arbitrary answer.
    pub(crate) fn winds_around(&self, p: Point<S>) -> bool {
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if p.x < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    pub fn map(&self, f: impl Fn(Point<S>) -> Point<S>) -> Self {
        Ring::new(self.vertices.iter().copied().map(f).collect())
    }
}

/// Polygonal domain: counterclockwise outer ring and clockwise holes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polygon<S> {
    pub outer: Ring<S>,
    #[serde(default = "Vec::new")]
    pub holes: Vec<Ring<S>>,
}

impl<S: Scalar> Polygon<S> {
    pub fn new(outer: Ring<S>, holes: Vec<Ring<S>>) -> Self {
        Polygon { outer, holes }
    }

    pub fn simple(outer: Vec<Point<S>>) -> Self {
        Polygon::new(Ring::new(outer), Vec::new())
    }

    /// Ring 0 is the outer ring, ring `k > 0` is hole `k - 1`.
    pub fn ring(&self, k: usize) -> &Ring<S> {
        if k == 0 {
            &self.outer
        } else {
            &self.holes[k - 1]
        }
    }

    pub fn n_rings(&self) -> usize {
        1 + self.holes.len()
    }

    pub fn rings(&self) -> impl Iterator<Item = &Ring<S>> {
        std::iter::once(&self.outer).chain(self.holes.iter())
    }

    pub fn n_vertices(&self) -> usize {
        self.rings().map(Ring::len).sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Point<S>> + '_ {
        self.rings().flat_map(|r| r.vertices().iter().copied())
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point<S>, Point<S>)> + '_ {
        self.rings().flat_map(|r| r.edges())
    }

    /// Outer area minus hole areas.
    pub fn area(&self) -> S {
        self.holes
            .iter()
            .fold(self.outer.area(), |acc, h| acc - h.area())
    }

    /// Total boundary length, holes included.
    pub fn perimeter(&self) -> S {
        self.rings().fold(S::zero(), |acc, r| acc + r.length())
    }

    pub fn bbox(&self) -> (Point<S>, Point<S>) {
        let mut lo = Point::new(S::infinity(), S::infinity());
        let mut hi = Point::new(S::neg_infinity(), S::neg_infinity());
        for v in self.outer.vertices() {
            lo = Point::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Point::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        (lo, hi)
    }

    /// Forces the outer ring counterclockwise and holes clockwise.
    /// Returns a note for every ring that had to be flipped.
    pub fn normalize_orientation(&mut self) -> Vec<String> {
        let mut notes = Vec::new();
        if self.outer.signed_area() < S::zero() {
            self.outer = self.outer.reversed();
            notes.push("outer ring was clockwise; reversed".to_string());
        }
        for (i, h) in self.holes.iter_mut().enumerate() {
            if h.signed_area() > S::zero() {
                *h = h.reversed();
                notes.push(format!("hole {i} was counterclockwise; reversed"));
            }
        }
        notes
    }

    pub fn map(&self, f: impl Fn(Point<S>) -> Point<S> + Copy) -> Self {
        Polygon::new(self.outer.map(f), self.holes.iter().map(|h| h.map(f)).collect())
    }

    /// Whether vertex `i` of ring `k` is reflex as seen from the domain.
    pub fn is_reflex(&self, k: usize, i: usize) -> bool {
        let r = self.ring(k);
        orientation(r.prev(i), r.vertex(i), r.next(i)) == Orientation::Clockwise
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

impl Location {
    /// Inside or on the boundary.
    pub fn in_closed(self) -> bool {
        self != Location::Outside
    }
}

/// Crossing-number classification with holes excluded and a boundary band
/// of width `S::boundary_tol()`.
pub fn point_in_polygon<S: Scalar>(poly: &Polygon<S>, p: Point<S>) -> Location {
    let tol = S::boundary_tol();
    if poly
        .edges()
        .any(|(a, b)| point_segment_distance(p, a, b) <= tol)
    {
        return Location::Boundary;
    }
    if !poly.outer.winds_around(p) {
        return Location::Outside;
    }
    if poly.holes.iter().any(|h| h.winds_around(p)) {
        return Location::Outside;
    }
    Location::Inside
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RingRef {
    Outer,
    Hole(usize),
}

impl RingRef {
    fn from_index(k: usize) -> Self {
        if k == 0 {
            RingRef::Outer
        } else {
            RingRef::Hole(k - 1)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DefectKind {
    TooFewVertices,
    NonFiniteCoordinate,
    CoordinateOutOfRange,
    RepeatedVertex,
    CollinearVertices,
    ZeroArea,
    OuterOrientation,
    HoleOrientation,
    SelfIntersection,
    HoleOutsideOuter,
    NestedHoles,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Defect<S> {
    pub kind: DefectKind,
    pub ring: RingRef,
    /// Vertex index within the ring, when the defect is tied to a vertex.
    pub vertex: Option<usize>,
    pub at: Option<Point<S>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport<S> {
    pub ok: bool,
    pub defects: Vec<Defect<S>>,
}

impl<S: Scalar> ValidationReport<S> {
    pub fn has(&self, kind: DefectKind) -> bool {
        self.defects.iter().any(|d| d.kind == kind)
    }

    pub fn summary(&self) -> String {
        let mut kinds: Vec<String> = self.defects.iter().map(|d| format!("{:?}", d.kind)).collect();
        kinds.dedup();
        kinds.join(", ")
    }
}

/// Checks every ring and polygon invariant and reports all defects found.
pub fn validate<S: Scalar>(poly: &Polygon<S>) -> ValidationReport<S> {
    let mut defects = Vec::new();
    let mut push = |kind, ring: usize, vertex: Option<usize>, at: Option<Point<S>>| {
        defects.push(Defect {
            kind,
            ring: RingRef::from_index(ring),
            vertex,
            at,
        })
    };

    let mut rings_sound = true;
    for (k, ring) in poly.rings().enumerate() {
        let n = ring.len();
        if n < 3 {
            push(DefectKind::TooFewVertices, k, None, None);
            rings_sound = false;
            continue;
        }
        let mut finite = true;
        for (i, v) in ring.vertices().iter().enumerate() {
            if !v.is_finite() {
                push(DefectKind::NonFiniteCoordinate, k, Some(i), None);
                finite = false;
            } else if v.x.abs() > S::coord_limit() || v.y.abs() > S::coord_limit() {
                push(DefectKind::CoordinateOutOfRange, k, Some(i), Some(*v));
            }
        }
        if !finite {
            rings_sound = false;
            continue;
        }
        for i in 0..n {
            let (p, v, q) = (ring.prev(i), ring.vertex(i), ring.next(i));
            if v == q {
                push(DefectKind::RepeatedVertex, k, Some(i), Some(v));
                rings_sound = false;
            } else if p != v && normalized_cross(p, v, q).abs() <= S::orient_tol() {
                push(DefectKind::CollinearVertices, k, Some(i), Some(v));
            }
        }
        let area = ring.signed_area();
        if area == S::zero() {
            push(DefectKind::ZeroArea, k, None, None);
        } else if k == 0 && area < S::zero() {
            push(DefectKind::OuterOrientation, k, None, None);
        } else if k > 0 && area > S::zero() {
            push(DefectKind::HoleOrientation, k, None, None);
        }
    }

    if rings_sound {
        for (k, i, at) in self_intersections(poly) {
            push(DefectKind::SelfIntersection, k, Some(i), Some(at));
        }
        for (h, hole) in poly.holes.iter().enumerate() {
            let v = hole.vertex(0);
            if !poly.outer.winds_around(v) {
                push(DefectKind::HoleOutsideOuter, h + 1, Some(0), Some(v));
            }
            for (g, other) in poly.holes.iter().enumerate() {
                if g != h && other.winds_around(v) {
                    push(DefectKind::NestedHoles, h + 1, Some(0), Some(v));
                }
            }
        }
    }

    ValidationReport {
        ok: defects.is_empty(),
        defects,
    }
}

struct EdgeRec<S> {
    ring: usize,
    index: usize,
    a: Point<S>,
    b: Point<S>,
    xmin: S,
    xmax: S,
}

/// Pairs of boundary edges that touch or cross other than at their shared
/// vertex. Sweep over edges sorted by `xmin`.
fn self_intersections<S: Scalar>(poly: &Polygon<S>) -> Vec<(usize, usize, Point<S>)> {
    let tol = S::boundary_tol();
    let mut edges: Vec<EdgeRec<S>> = Vec::new();
    for (k, ring) in poly.rings().enumerate() {
        for (i, (a, b)) in ring.edges().enumerate() {
            edges.push(EdgeRec {
                ring: k,
                index: i,
                a,
                b,
                xmin: a.x.min(b.x),
                xmax: a.x.max(b.x),
            });
        }
    }
    edges.sort_by(|e, f| e.xmin.partial_cmp(&f.xmin).unwrap());

    let mut found = Vec::new();
    for (s, e) in edges.iter().enumerate() {
        let (ylo, yhi) = (e.a.y.min(e.b.y), e.a.y.max(e.b.y));
        for f in &edges[s + 1..] {
            if f.xmin > e.xmax + tol {
                break;
            }
            if f.a.y.min(f.b.y) > yhi + tol || f.a.y.max(f.b.y) < ylo - tol {
                continue;
            }
            let n = poly.ring(e.ring).len();
            let adjacent = e.ring == f.ring
                && (f.index == (e.index + 1) % n || e.index == (f.index + 1) % n);
            if adjacent {
                // Consecutive edges may only share their common vertex; a fold-back
                // shows up as the far endpoint of one lying on the other.
                let (shared, e_far, f_far) = if f.index == (e.index + 1) % n {
                    (e.b, e.a, f.b)
                } else {
                    (e.a, e.b, f.a)
                };
                let folds = orientation(e_far, shared, f_far) == Orientation::Collinear
                    && (f_far - shared).dot(e_far - shared) > S::zero();
                if folds && n > 3 {
                    found.push((e.ring, e.index, shared));
                }
                continue;
            }
            if segments_intersect(e.a, e.b, f.a, f.b) {
                let at = if on_segment(f.a, e.a, e.b) {
                    f.a
                } else if on_segment(f.b, e.a, e.b) {
                    f.b
                } else {
                    e.a.midpoint(e.b)
                };
                found.push((e.ring, e.index, at));
            }
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Point<f64>;

    fn unit_square() -> Polygon<f64> {
        Polygon::simple(vec![
            P::new(0.0, 0.0),
            P::new(1.0, 0.0),
            P::new(1.0, 1.0),
            P::new(0.0, 1.0),
        ])
    }

    fn square_with_hole() -> Polygon<f64> {
        let hole = Ring::new(vec![
            P::new(0.25, 0.25),
            P::new(0.25, 0.75),
            P::new(0.75, 0.75),
            P::new(0.75, 0.25),
        ]);
        Polygon::new(unit_square().outer, vec![hole])
    }

    #[test]
    fn unit_square_is_valid() {
        let r = validate(&unit_square());
        assert!(r.ok, "{:?}", r.defects);
    }

    #[test]
    fn clockwise_outer_is_reported() {
        let p = Polygon::new(unit_square().outer.reversed(), vec![]);
        let r = validate(&p);
        assert!(!r.ok);
        assert!(r.has(DefectKind::OuterOrientation));
    }

    #[test]
    fn bowtie_self_intersects() {
        let p = Polygon::simple(vec![
            P::new(0.0, 0.0),
            P::new(1.0, 1.0),
            P::new(1.0, 0.0),
            P::new(0.0, 1.0),
        ]);
        let r = validate(&p);
        assert!(r.has(DefectKind::SelfIntersection));
    }

    #[test]
    fn reports_all_defects() {
        // Clockwise bowtie with a repeated vertex: several defects at once.
        let p = Polygon::simple(vec![
            P::new(0.0, 0.0),
            P::new(0.0, 1.0),
            P::new(0.0, 1.0),
            P::new(1.0, 0.0),
            P::new(1.0, 1.0),
        ]);
        let r = validate(&p);
        assert!(r.has(DefectKind::RepeatedVertex));
        assert!(!r.defects.is_empty());
        let mut q = unit_square();
        q.holes.push(Ring::new(vec![P::new(2.0, 2.0), P::new(2.0, 3.0), P::new(3.0, 3.0)]));
        q.holes.push(Ring::new(vec![P::new(0.2, 0.2), P::new(0.4, 0.4), P::new(0.2, 0.6)]));
        let r = validate(&q);
        assert!(r.has(DefectKind::HoleOutsideOuter));
        assert!(r.has(DefectKind::HoleOrientation));
    }

    #[test]
    fn collinear_and_repeated_vertices_rejected() {
        let p = Polygon::simple(vec![
            P::new(0.0, 0.0),
            P::new(0.5, 0.0),
            P::new(1.0, 0.0),
            P::new(1.0, 1.0),
        ]);
        assert!(validate(&p).has(DefectKind::CollinearVertices));
    }

    #[test]
    fn classification() {
        let sq = unit_square();
        assert_eq!(point_in_polygon(&sq, P::new(0.5, 0.5)), Location::Inside);
        assert_eq!(point_in_polygon(&sq, P::new(0.5, 0.0)), Location::Boundary);
        assert_eq!(point_in_polygon(&sq, P::new(1.5, 0.5)), Location::Outside);
        let holed = square_with_hole();
        assert!(validate(&holed).ok);
        assert_eq!(point_in_polygon(&holed, P::new(0.5, 0.5)), Location::Outside);
        assert_eq!(point_in_polygon(&holed, P::new(0.25, 0.5)), Location::Boundary);
        assert_eq!(point_in_polygon(&holed, P::new(0.1, 0.5)), Location::Inside);
    }

    #[test]
    fn lengths_and_areas() {
        assert_eq!(unit_square().outer.length(), 4.0);
        assert_eq!(unit_square().area(), 1.0);
        assert_eq!(square_with_hole().area(), 0.75);
        let tri = Polygon::simple(vec![P::new(0.0, 0.0), P::new(3.0, 0.0), P::new(0.0, 4.0)]);
        assert_eq!(tri.outer.length(), 12.0);
        assert_eq!(tri.area(), 6.0);
    }

    #[test]
    fn normalization_flips_rings() {
        let mut p = Polygon::new(
            unit_square().outer.reversed(),
            vec![square_with_hole().holes[0].reversed()],
        );
        let notes = p.normalize_orientation();
        assert_eq!(notes.len(), 2);
        assert!(validate(&p).ok);
    }

    #[test]
    fn reflex_vertices_of_l_shape() {
        let l = Polygon::simple(vec![
            P::new(0.0, 0.0),
            P::new(2.0, 0.0),
            P::new(2.0, 1.0),
            P::new(1.0, 1.0),
            P::new(1.0, 2.0),
            P::new(0.0, 2.0),
        ]);
        let reflex: Vec<usize> = (0..6).filter(|&i| l.is_reflex(0, i)).collect();
        assert_eq!(reflex, vec![3]);
        // Every corner of a hole juts into the domain.
        let h = square_with_hole();
        assert!((0..4).all(|i| h.is_reflex(1, i)));
    }
}
