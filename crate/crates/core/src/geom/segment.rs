use super::{
    normalized_cross, orientation, point_in_polygon, strictly_opposite, Orientation, Point,
    Polygon, Ring, Scalar,
};
use crate::Error;

/// Whether direction `d` leaves vertex `i` of `ring` into the closed domain.
///
/// The domain lies to the left of every directed edge, so the admissible
/// wedge at a vertex is swept counterclockwise from the outgoing edge to the
/// reversed incoming edge. Directions along either edge are admissible.
pub fn wedge_allows<S: Scalar>(ring: &Ring<S>, i: usize, d: Point<S>) -> bool {
    let w = ring.vertex(i);
    let out = ring.next(i) - w;
    let back = ring.prev(i) - w;
    let tol = S::orient_tol();
    let zero = Point::new(S::zero(), S::zero());
    let sin = |u: Point<S>, v: Point<S>| normalized_cross(zero, u, v);
    let turn = normalized_cross(ring.prev(i), w, ring.next(i));
    if turn > tol {
        sin(out, d) >= -tol && sin(d, back) >= -tol
    } else if turn < -tol {
        !(sin(back, d) > tol && sin(d, out) > tol)
    } else {
        sin(out, d) >= -tol
    }
}

/// Core of the visibility test: `a` and `b` are assumed to lie in the closed
/// domain; `edges` yields `(ring, edge index)` candidates that cover every
/// edge the segment could touch. Duplicated candidates are harmless.
pub(crate) fn segment_clear<S, I>(poly: &Polygon<S>, a: Point<S>, b: Point<S>, edges: I) -> bool
where
    S: Scalar,
    I: IntoIterator<Item = (usize, usize)>,
{
    let tol = S::boundary_tol();
    let d = b - a;
    let len2 = d.norm2();
    if d.norm() <= tol {
        return true;
    }
    for (k, i) in edges {
        let ring = poly.ring(k);
        let n = ring.len();
        let j = (i + 1) % n;
        let c = ring.vertex(i);
        let e = ring.vertex(j);

        let mut a_at_vertex = false;
        let mut b_at_vertex = false;
        for (vi, w) in [(i, c), (j, e)] {
            if w.dist(a) <= tol {
                a_at_vertex = true;
                if !wedge_allows(ring, vi, d) {
                    return false;
                }
            } else if w.dist(b) <= tol {
                b_at_vertex = true;
                if !wedge_allows(ring, vi, -d) {
                    return false;
                }
            } else if orientation(a, b, w) == Orientation::Collinear {
                let t = (w - a).dot(d) / len2;
                if t > S::zero()
                    && t < S::one()
                    && (!wedge_allows(ring, vi, d) || !wedge_allows(ring, vi, -d))
                {
                    return false;
                }
            }
        }

        let o1 = orientation(a, b, c);
        let o2 = orientation(a, b, e);
        if !strictly_opposite(o1, o2) {
            continue;
        }
        let o3 = orientation(c, e, a);
        let o4 = orientation(c, e, b);
        if strictly_opposite(o3, o4) {
            return false;
        }
        // An endpoint sits on the interior of this edge: the segment must
        // leave towards the domain side.
        let along = e - c;
        if o3 == Orientation::Collinear && !a_at_vertex && along.cross(d) <= S::zero() {
            return false;
        }
        if o4 == Orientation::Collinear && !b_at_vertex && along.cross(-d) <= S::zero() {
            return false;
        }
    }
    true
}

fn all_edges<S: Scalar>(poly: &Polygon<S>) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..poly.n_rings()).flat_map(move |k| (0..poly.ring(k).len()).map(move |i| (k, i)))
}

/// Whether the closed segment `ab` stays inside the closed polygon.
///
/// Fails with [`Error::InvalidQuery`] when an endpoint lies outside.
pub fn segment_in_polygon<S: Scalar>(
    poly: &Polygon<S>,
    a: Point<S>,
    b: Point<S>,
) -> Result<bool, Error> {
    for p in [a, b] {
        if !point_in_polygon(poly, p).in_closed() {
            return Err(Error::InvalidQuery(format!(
                "segment endpoint ({}, {}) is outside the polygon",
                p.x, p.y
            )));
        }
    }
    Ok(segment_clear(poly, a, b, all_edges(poly)))
}

/// As [`segment_in_polygon`] without the endpoint membership check.
pub fn segment_in_polygon_unchecked<S: Scalar>(poly: &Polygon<S>, a: Point<S>, b: Point<S>) -> bool {
    segment_clear(poly, a, b, all_edges(poly))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type P = Point<f64>;

    fn square() -> Polygon<f64> {
        Polygon::simple(vec![P::new(0.0, 0.0), P::new(1.0, 0.0), P::new(1.0, 1.0), P::new(0.0, 1.0)])
    }

    fn l_shape() -> Polygon<f64> {
        Polygon::simple(vec![
            P::new(0.0, 0.0),
            P::new(2.0, 0.0),
            P::new(2.0, 1.0),
            P::new(1.0, 1.0),
            P::new(1.0, 2.0),
            P::new(0.0, 2.0),
        ])
    }

    fn holed() -> Polygon<f64> {
        Polygon::new(
            square().outer,
            vec![Ring::new(vec![
                P::new(0.25, 0.25),
                P::new(0.25, 0.75),
                P::new(0.75, 0.75),
                P::new(0.75, 0.25),
            ])],
        )
    }

    #[test]
    fn diagonal_of_square() {
        assert!(segment_in_polygon(&square(), P::new(0.1, 0.1), P::new(0.9, 0.9)).unwrap());
    }

    #[test]
    fn l_shape_blocked_by_reflex_corner() {
        let l = l_shape();
        assert!(!segment_in_polygon(&l, P::new(0.6, 1.5), P::new(1.5, 0.6)).unwrap());
        // Passes below the corner, so it stays inside.
        assert!(segment_in_polygon(&l, P::new(0.4, 1.5), P::new(1.5, 0.4)).unwrap());
        // Exactly through the corner: grazing a reflex vertex is allowed.
        assert!(segment_in_polygon(&l, P::new(0.5, 1.5), P::new(1.5, 0.5)).unwrap());
        assert!(segment_in_polygon(&l, P::new(0.5, 0.5), P::new(1.5, 0.5)).unwrap());
    }

    #[test]
    fn through_hole_is_blocked() {
        let h = holed();
        assert!(!segment_in_polygon(&h, P::new(0.1, 0.5), P::new(0.9, 0.5)).unwrap());
        assert!(segment_in_polygon(&h, P::new(0.1, 0.1), P::new(0.9, 0.1)).unwrap());
        // Diagonal touching the hole only at its corners.
        assert!(!segment_in_polygon(&h, P::new(0.0, 0.0), P::new(1.0, 1.0)).unwrap());
    }

    #[test]
    fn vertex_to_vertex_cases() {
        let l = l_shape();
        // Along the boundary.
        assert!(segment_in_polygon(&l, P::new(0.0, 0.0), P::new(2.0, 0.0)).unwrap());
        // Exterior chord between two vertices.
        assert!(!segment_in_polygon(&l, P::new(2.0, 1.0), P::new(1.0, 2.0)).unwrap());
        assert!(segment_in_polygon(&l, P::new(0.0, 0.0), P::new(1.0, 1.0)).unwrap());
        assert!(segment_in_polygon(&l, P::new(2.0, 1.0), P::new(0.0, 1.0)).unwrap());
        // Past a convex corner along an edge's extension leaves the square.
        let s = square();
        assert!(!segment_clear(&s, P::new(0.5, 0.0), P::new(1.5, 0.0), all_edges(&s)));
    }

    #[test]
    fn boundary_points_must_head_inward() {
        let s = square();
        assert!(segment_in_polygon(&s, P::new(0.5, 0.0), P::new(0.5, 1.0)).unwrap());
        assert!(segment_in_polygon(&s, P::new(0.5, 0.0), P::new(0.9, 0.0)).unwrap());
    }

    #[test]
    fn outside_endpoint_is_an_error() {
        assert!(segment_in_polygon(&square(), P::new(0.5, 0.5), P::new(2.0, 0.5)).is_err());
    }

    proptest! {
        #[test]
        fn symmetric_in_endpoints(ax in 0.0..2.0f64, ay in 0.0..2.0f64, bx in 0.0..2.0f64, by in 0.0..2.0f64) {
            let l = l_shape();
            let (a, b) = (P::new(ax, ay), P::new(bx, by));
            prop_assume!(point_in_polygon(&l, a).in_closed() && point_in_polygon(&l, b).in_closed());
            prop_assert_eq!(
                segment_in_polygon(&l, a, b).unwrap(),
                segment_in_polygon(&l, b, a).unwrap()
            );
        }

        #[test]
        fn agrees_with_dense_midpoint_sampling(ax in 0.0..2.0f64, ay in 0.0..2.0f64, bx in 0.0..2.0f64, by in 0.0..2.0f64) {
            let l = l_shape();
            let (a, b) = (P::new(ax, ay), P::new(bx, by));
            prop_assume!(point_in_polygon(&l, a).in_closed() && point_in_polygon(&l, b).in_closed());
            let sampled = (1..200).all(|k| point_in_polygon(&l, a.lerp(b, k as f64 / 200.0)).in_closed());
            let exact = segment_in_polygon(&l, a, b).unwrap();
            // Sampling can miss a sliver near the corner, never the other way round.
            if exact {
                prop_assert!(sampled);
            }
        }
    }
}
