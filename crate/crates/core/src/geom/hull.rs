use super::{orientation, Orientation, Point, Scalar};
use crate::Error;

/// Andrew's monotone chain. Returns the strictly convex hull in
/// counterclockwise order starting from the lexicographically smallest point.
/// Duplicate and collinear points are dropped; one or two points come back as-is.
pub fn convex_hull<S: Scalar>(points: &[Point<S>]) -> Vec<Point<S>> {
    let mut pts: Vec<Point<S>> = points.to_vec();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup_by(|a, b| a.dist(*b) <= S::boundary_tol());
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point<S>> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2
            && orientation(lower[lower.len() - 2], lower[lower.len() - 1], p)
                != Orientation::CounterClockwise
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point<S>> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && orientation(upper[upper.len() - 2], upper[upper.len() - 1], p)
                != Orientation::CounterClockwise
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0].dist(lower[1]) <= S::boundary_tol() {
        lower.truncate(1);
    }
    lower
}

/// Maximum pairwise Euclidean distance.
pub fn euclidean_diameter<S: Scalar>(points: &[Point<S>]) -> Result<S, Error> {
    if points.is_empty() {
        return Err(Error::EmptyInput("euclidean_diameter needs at least one point"));
    }
    let hull = convex_hull(points);
    let mut best = S::zero();
    for (i, &p) in hull.iter().enumerate() {
        for &q in &hull[i + 1..] {
            best = best.max(p.dist(q));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type P = Point<f64>;

    #[test]
    fn square_hull_and_diameter() {
        let pts = vec![
            P::new(0.0, 0.0),
            P::new(1.0, 0.0),
            P::new(0.5, 0.5),
            P::new(1.0, 1.0),
            P::new(0.0, 1.0),
            P::new(0.5, 0.0),
        ];
        let h = convex_hull(&pts);
        assert_eq!(h.len(), 4);
        assert_eq!(euclidean_diameter(&pts).unwrap(), 2f64.sqrt());
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(euclidean_diameter(&[P::new(3.0, 4.0)]).unwrap(), 0.0);
        assert!(euclidean_diameter::<f64>(&[]).is_err());
        let line = [P::new(0.0, 0.0), P::new(1.0, 1.0), P::new(2.0, 2.0)];
        assert_eq!(convex_hull(&line).len(), 2);
    }

    #[test]
    fn works_in_f32() {
        let pts = [Point::<f32>::new(0.0, 0.0), Point::new(3.0, 4.0), Point::new(1.0, 1.0)];
        assert_eq!(euclidean_diameter(&pts).unwrap(), 5.0f32);
    }

    proptest! {
        #[test]
        fn diameter_matches_brute_force(coords in prop::collection::vec((-50.0..50.0f64, -50.0..50.0f64), 1..120)) {
            let pts: Vec<P> = coords.into_iter().map(|(x, y)| P::new(x, y)).collect();
            let mut brute = 0.0f64;
            for p in &pts {
                for q in &pts {
                    brute = brute.max(p.dist(*q));
                }
            }
            prop_assert_eq!(euclidean_diameter(&pts).unwrap(), brute);
        }
    }
}
