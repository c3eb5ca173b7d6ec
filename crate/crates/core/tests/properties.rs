mod common;

use std::f64::consts::PI;

use proptest::prelude::*;
use relcheb::chebyshev::{delta, delta_brute, delta_triangle, edge_min_mu, mu};
use relcheb::extremal::{
    build_u_n, lambda, random_half_disk_polygon, ratio_report, Bound, CURVE_UPPER,
};
use relcheb::geom::{convex_hull, ConvexPolygon, Point};
use relcheb::rng::stream_rng;

use common::{exhaustive_delta, far, random_polygon, sorted_sides, triangle_from_angles};

fn polygon() -> impl Strategy<Value = ConvexPolygon> {
    (2usize..=12, any::<u64>()).prop_map(|(n, seed)| random_polygon(n, seed, 0))
}

fn isometry() -> impl Strategy<Value = (f64, f64, f64, bool)> {
    (0.0..2.0 * PI, -10.0..10.0f64, -10.0..10.0f64, any::<bool>())
}

fn apply(poly: &ConvexPolygon, (theta, dx, dy, flip): (f64, f64, f64, bool)) -> ConvexPolygon {
    let (c, s) = (theta.cos(), theta.sin());
    poly.map_points(|p| {
        let y = if flip { -p.y } else { p.y };
        Point::new(c * p.x - s * y + dx, s * p.x + c * y + dy)
    })
    .unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn perimeter_and_delta_survive_isometry(p in polygon(), g in isometry()) {
        let q = apply(&p, g);
        prop_assert!(rel(p.perimeter(), q.perimeter()) < 1e-12);
        prop_assert!(rel(delta(&p).radius, delta(&q).radius) < 1e-9);
    }

    #[test]
    fn perimeter_and_delta_scale(p in polygon(), s in 1e-3..1e3f64) {
        let q = p.scaled(s).unwrap();
        prop_assert!(rel(s * p.perimeter(), q.perimeter()) < 1e-12);
        prop_assert!(rel(s * delta(&p).radius, delta(&q).radius) < 1e-9);
    }

    #[test]
    fn nested_polygon_has_smaller_perimeter(p in polygon(), seed in any::<u64>(), k in 2usize..10) {
        // Convex combinations of the vertices of p stay inside p.
        use rand::Rng;
        let mut rng = stream_rng(seed, 1);
        let inner: Vec<Point> = (0..k)
            .map(|_| {
                let w: Vec<f64> = (0..p.len()).map(|_| rng.random_range(0.0..1.0f64).powi(4)).collect();
                let total: f64 = w.iter().sum();
                p.vertices().iter().zip(&w).fold(Point::ORIGIN, |acc, (&v, &wi)| acc + v * (wi / total))
            })
            .collect();
        if let Ok(q) = convex_hull(&inner) {
            prop_assert!(q.perimeter() <= p.perimeter() + 1e-9);
        }
    }

    #[test]
    fn diameter_at_most_half_perimeter(p in polygon()) {
        prop_assert!(p.diameter().0 <= p.perimeter() / 2.0 * (1.0 + 1e-12));
    }

    #[test]
    fn radius_between_half_diameter_and_diameter(p in polygon()) {
        let d = p.diameter().0;
        let r = delta(&p).radius;
        prop_assert!(r >= d / 2.0 * (1.0 - 1e-12));
        prop_assert!(r <= d * (1.0 + 1e-12));
    }

    #[test]
    fn extremal_points_attain_radius(p in polygon()) {
        let p = p.normalized();
        let res = delta(&p);
        prop_assert!(!res.extremal_points.is_empty());
        for e in &res.extremal_points {
            let m = mu(&p, e.point).unwrap();
            prop_assert!((m.value - res.radius).abs() < 1e-9);
            prop_assert!(!e.footpoints.is_empty());
            for &f in &e.footpoints {
                prop_assert!((e.point.dist(p.vertex(f)) - res.radius).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn mu_dominates_every_vertex(p in polygon(), edge in any::<prop::sample::Index>(), t in 0.0..=1.0f64) {
        let i = edge.index(p.num_edges());
        let x = p.edge_point(i, t).unwrap();
        let m = mu(&p, x).unwrap();
        prop_assert!(rel(m.value, far(&p, x)) < 1e-12);
        for &f in &m.footpoints {
            prop_assert!(rel(x.dist(p.vertex(f)), m.value) < 1e-9);
        }
    }

    #[test]
    fn delta_matches_exhaustive_candidates(p in polygon()) {
        let fast = delta(&p).radius;
        let slow = exhaustive_delta(&p);
        prop_assert!((fast - slow).abs() <= 1e-12 * p.diameter().0, "{} vs {}", fast, slow);
    }

    #[test]
    fn edge_minimum_matches_candidates(p in polygon(), edge in any::<prop::sample::Index>()) {
        let i = edge.index(p.num_edges());
        let got = edge_min_mu(&p, i);
        let (a, b) = p.edge(i);
        let want = common::edge_candidates(&p, i)
            .into_iter()
            .map(|t| far(&p, a.lerp(b, t)))
            .fold(f64::INFINITY, f64::min);
        prop_assert!((got.value - want).abs() <= 1e-12 * p.diameter().0);
        prop_assert!((far(&p, a.lerp(b, got.t)) - got.value).abs() <= 1e-12 * p.diameter().0);
    }

    #[test]
    fn sampling_oracle_brackets_delta(p in polygon()) {
        let samples = 2000;
        let r = delta(&p).radius;
        let brute = delta_brute(&p, samples);
        prop_assert!(brute >= r - 1e-12);
        prop_assert!(brute - r <= 2.0 * p.max_edge_length() / samples as f64 + 1e-12);
    }

    #[test]
    fn triangle_formula_matches_general_algorithm(alpha in 0.05..2.9f64, frac in 0.0..1.0f64) {
        // Every angle stays at least 0.02 rad.
        let rest = PI - alpha;
        let beta = (0.02 + frac * (rest - 0.04)).min(rest - 0.02);
        let tri = triangle_from_angles(alpha, beta);
        let (a, b, c) = sorted_sides(&tri);
        let closed = delta_triangle(a, b, c).unwrap();
        prop_assert!((closed - delta(&tri).radius).abs() < 1e-9);
    }

    #[test]
    fn half_disk_polygons_have_unique_center(n in 3usize..20, r in 0.1..10.0f64, seed in any::<u64>()) {
        let p = random_half_disk_polygon(n, r, &mut stream_rng(seed, 0));
        let res = delta(&p);
        prop_assert!(rel(res.radius, r) < 1e-9);
        prop_assert_eq!(res.extremal_points.len(), 1);
        prop_assert!(res.extremal_points[0].point.norm() < 1e-9 * r);
    }

    #[test]
    fn ratio_report_is_consistent(p in polygon()) {
        let rep = ratio_report(&p, Bound::CurveUpper).unwrap();
        prop_assert!(rel(rep.ratio, rep.perimeter / rep.radius) < 1e-12);
        prop_assert_eq!(rep.satisfied, rep.ratio <= CURVE_UPPER);
        prop_assert!(rep.slack >= -1e-9);
        let n = p.len();
        let ngon = ratio_report(&p, Bound::NgonUpper(n)).unwrap();
        prop_assert!(ngon.slack >= -1e-9);
    }

    #[test]
    fn u_n_attains_lambda(n in 2usize..40, r in 0.01..100.0f64) {
        let u = build_u_n(n, r).unwrap();
        prop_assert!(rel(u.perimeter(), lambda(n).unwrap() * r) < 1e-12);
        let res = delta(&u);
        prop_assert!(rel(res.radius, r) < 1e-9);
        prop_assert_eq!(res.extremal_points.len(), 1);
    }
}

#[test]
fn lambda_increases_toward_curve_bound() {
    let mut prev = lambda(2).unwrap();
    for n in 3..=2000 {
        let l = lambda(n).unwrap();
        assert!(l > prev, "lambda({n}) = {l} not above {prev}");
        assert!(l < CURVE_UPPER);
        prev = l;
    }
}
