use super::*;
use crate::geodesic::{build_engine, geodesic_distance};
use crate::geom::{euclidean_diameter, orientation, Location, Orientation};

fn diameter(p: &Polygon) -> f64 {
    euclidean_diameter(&p.vertices().collect::<Vec<_>>()).unwrap()
}

#[test]
fn p1_shape() {
    let p = gen_p1(0.01).unwrap();
    assert!(validate(&p.polygon).ok);
    assert!(p.polygon.holes.is_empty());
    assert_eq!(p.polygon.n_vertices(), 16);
    assert_eq!(p.mark("start"), Point::new(0.0, 0.0));
    assert_eq!(p.mark("end"), Point::new(1.0, 0.0));
    assert!((diameter(&p.polygon) - 2f64.sqrt()).abs() < 1e-12);
    assert!(gen_p1(1.0 / 16.0).is_err());
    assert!(gen_p1(0.0).is_err());
}

#[test]
fn p1_corridor_length() {
    let coarse = gen_p1(0.01).unwrap();
    let fine = gen_p1(0.001).unwrap();
    let d = |mp: &MarkedPolygon| {
        let e = build_engine(&mp.polygon).unwrap();
        geodesic_distance(&e, mp.mark("start"), mp.mark("end")).unwrap()
    };
    let (dc, df) = (d(&coarse), d(&fine));
    assert!((1.9..=2.0).contains(&dc), "{dc}");
    assert!((2.0 - df).abs() < (2.0 - dc).abs());
}

#[test]
fn pm_vertex_growth_and_diameter() {
    let counts: Vec<usize> = (1..=4).map(|m| gen_pm(m, 1e-4).unwrap().polygon.n_vertices()).collect();
    for w in counts.windows(2) {
        let ratio = w[1] as f64 / w[0] as f64;
        assert!((3.5..=4.5).contains(&ratio), "{counts:?}");
    }
    for m in 1..=3 {
        let a = gen_pm(m, 1e-4).unwrap();
        let b = gen_pm(m, 1e-2 / f64::powi(2.0, m as i32)).unwrap();
        assert_eq!(a.polygon.n_vertices(), b.polygon.n_vertices());
        assert!((diameter(&a.polygon) - 2f64.sqrt()).abs() < 1e-12);
        assert!(a.polygon.holes.is_empty());
    }
}

#[test]
fn pm_two_corridor_length() {
    let p = gen_pm(2, 1e-3).unwrap();
    let e = build_engine(&p.polygon).unwrap();
    let d = geodesic_distance(&e, p.mark("start"), p.mark("end")).unwrap();
    assert!((d - 4.0).abs() / 4.0 <= 0.05, "{d}");
}

#[test]
fn every_opening_is_needed() {
    for m in 1..=3 {
        for o in [Opening::West, Opening::Center, Opening::East] {
            let comps = gen_pm_closed(m, 1e-3, &[o]).unwrap();
            assert!(comps.len() >= 2, "m={m} {o:?}");
            let start = Point::new(0.0, 0.0);
            let end = Point::new(1.0, 0.0);
            let own = comps
                .iter()
                .find(|c| point_in_polygon(c, start).in_closed())
                .expect("start is free");
            assert_eq!(point_in_polygon(own, end), Location::Outside);
            let e = build_engine(own).unwrap();
            assert!(geodesic_distance(&e, start, end).is_err());
        }
        assert_eq!(gen_pm_closed(m, 1e-3, &[]).unwrap().len(), 1);
    }
}

#[test]
fn pstar_shape() {
    let mut counts = Vec::new();
    for m in 1..=3 {
        let p = gen_pstar(m, 1e-4).unwrap();
        let (u, v, c) = (p.mark("u"), p.mark("v"), p.mark("c"));
        assert_eq!(u.dist(v), 1.0);
        assert_eq!(c, Point::new(0.5, -(3f64.sqrt()) / 2.0));
        assert!((c.dist(u) - 1.0).abs() < 1e-15 && (c.dist(v) - 1.0).abs() < 1e-15);
        assert_eq!(p.marks.keys().filter(|k| k.starts_with("p_")).count(), 1 << m);
        counts.push(p.polygon.n_vertices());
    }
    for w in counts.windows(2) {
        let ratio = w[1] as f64 / w[0] as f64;
        assert!((7.0..=9.0).contains(&ratio), "{counts:?}");
    }
    assert!(gen_pstar(2, 0.01).is_err());
}

#[test]
fn pstar_far_points_are_far_apart() {
    for m in 1..=2 {
        let p = gen_pstar(m, 1e-4).unwrap();
        let e = build_engine(&p.polygon).unwrap();
        let k = 1 << m;
        for i in 1..=k {
            for j in (i + 1)..=k {
                let d = geodesic_distance(&e, p.mark(&format!("p_{i}")), p.mark(&format!("p_{j}"))).unwrap();
                assert!(d > 2.0 * 0.95, "m={m} p_{i} p_{j}: {d}");
            }
        }
    }
}

#[test]
fn comb_shapes() {
    let two = gen_comb(2, 0.1, 0.3).unwrap();
    assert!(validate(&two.polygon).ok);
    let per: Vec<f64> = [8, 16, 32]
        .iter()
        .map(|&n| gen_comb(n, 0.01, 0.45).unwrap().polygon.perimeter())
        .collect();
    assert!(per[1] > per[0] && per[2] > per[1]);
    // Each spike adds roughly two tooth lengths.
    assert!(((per[2] - per[1]) / 16.0 - 0.9).abs() < 0.05);
    let c = gen_comb(8, 0.05, 0.45).unwrap();
    assert_eq!(c.marks.len(), 9);
    assert!((c.mark("tip_3").dist(c.mark("center")) - 0.95).abs() < 1e-12);
    assert!(gen_comb(1, 0.1, 0.1).is_err());
    assert!(gen_comb(64, 0.2, 0.1).is_err());
}

#[test]
fn random_convex_polygons() {
    let t = gen_random_convex(3, 7).unwrap();
    assert_eq!(t.n_vertices(), 3);
    assert!(validate(&t).ok);
    for seed in 0..50 {
        let p = gen_random_convex(12, seed).unwrap();
        assert!(validate(&p).ok, "seed {seed}");
        let r = &p.outer;
        for i in 0..r.len() {
            assert_eq!(orientation(r.prev(i), r.vertex(i), r.next(i)), Orientation::CounterClockwise);
        }
        assert_eq!(p, gen_random_convex(12, seed).unwrap());
    }
    assert_ne!(gen_random_convex(12, 1).unwrap(), gen_random_convex(12, 2).unwrap());
}

#[test]
fn fat_blobs() {
    for seed in 0..50 {
        let p = gen_fat_blob(64, seed).unwrap();
        assert!(validate(&p).ok, "seed {seed}");
        let radii: Vec<f64> = p.vertices().map(|v| v.dist(Point::new(0.5, 0.5))).collect();
        let max = radii.iter().cloned().fold(0.0, f64::max);
        let min = radii.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(max / min <= 1.5 + 1e-12);
        assert_eq!(p, gen_fat_blob(64, seed).unwrap());
    }
}

