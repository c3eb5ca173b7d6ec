#![allow(dead_code)]

use relcheb::extremal::random_convex_polygon;
use relcheb::geom::{ConvexPolygon, Point};
use relcheb::rng::stream_rng;

/// Farthest vertex distance, computed directly.
pub fn far(poly: &ConvexPolygon, x: Point) -> f64 {
    poly.vertices()
        .iter()
        .map(|v| v.dist(x))
        .fold(0.0, f64::max)
}

/// Every parameter on edge `i` where the per-edge minimum of the farthest
/// distance can sit: both endpoints, the foot of every vertex, and every
/// crossing of the edge with a bisector of two vertices.
pub fn edge_candidates(poly: &ConvexPolygon, i: usize) -> Vec<f64> {
    let (a, b) = poly.edge(i);
    let d = b - a;
    let len2 = d.norm_sq();
    let mut ts = vec![0.0, 1.0];
    let vs = poly.vertices();
    for &v in vs {
        ts.push((v - a).dot(d) / len2);
    }
    for (j, &p) in vs.iter().enumerate() {
        for &q in &vs[j + 1..] {
            // |a + t d - p|² = |a + t d - q|²  ⇔  2t d·(q - p) = |q - a|² - |p - a|²
            let den = 2.0 * d.dot(q - p);
            if den.abs() > 1e-300 {
                ts.push(((q - a).norm_sq() - (p - a).norm_sq()) / den);
            }
        }
    }
    ts.into_iter().filter(|t| (0.0..=1.0).contains(t)).collect()
}

/// δ by evaluating the farthest distance at every candidate of every edge.
pub fn exhaustive_delta(poly: &ConvexPolygon) -> f64 {
    (0..poly.num_edges())
        .flat_map(|i| {
            let (a, b) = poly.edge(i);
            edge_candidates(poly, i)
                .into_iter()
                .map(move |t| a.lerp(b, t))
        })
        .map(|x| far(poly, x))
        .fold(f64::INFINITY, f64::min)
}

pub fn random_polygon(n: usize, seed: u64, stream: u64) -> ConvexPolygon {
    random_convex_polygon(n, &mut stream_rng(seed, stream))
}

/// Triangle side lengths sorted `a ≥ b ≥ c`.
pub fn sorted_sides(tri: &ConvexPolygon) -> (f64, f64, f64) {
    let mut s: Vec<f64> = (0..3).map(|i| tri.edge_length(i)).collect();
    s.sort_by(|x, y| y.total_cmp(x));
    (s[0], s[1], s[2])
}

/// Triangle with the given angles (radians), largest side 1.
pub fn triangle_from_angles(alpha: f64, beta: f64) -> ConvexPolygon {
    let gamma = std::f64::consts::PI - alpha - beta;
    let k = 1.0 / alpha.sin().max(beta.sin()).max(gamma.sin());
    let c = k * gamma.sin();
    let b = k * beta.sin();
    // Side c on the x-axis; the third vertex at distance b from the origin.
    ConvexPolygon::new(vec![
        Point::new(0.0, 0.0),
        Point::new(c, 0.0),
        Point::new(b * alpha.cos(), b * alpha.sin()),
    ])
    .expect("valid triangle")
}

/// Symmetric Hausdorff distance between two vertex sets.
pub fn vertex_hausdorff(p: &[Point], q: &[Point]) -> f64 {
    let one_way = |from: &[Point], to: &[Point]| {
        from.iter()
            .map(|a| to.iter().map(|b| a.dist(*b)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(p, q).max(one_way(q, p))
}

/// Vertex-set Hausdorff distance after scaling both polygons to unit
/// diameter, placing each diameter pair at `(±1/2, 0)` and trying the
/// reflections that keep that pair in place.
pub fn aligned_hausdorff(p: &ConvexPolygon, q: &ConvexPolygon) -> f64 {
    let a = p.normalized();
    let b = q.normalized();
    let flips: [(f64, f64); 4] = [(1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)];
    flips
        .iter()
        .map(|&(sx, sy)| {
            let moved: Vec<Point> = a
                .vertices()
                .iter()
                .map(|v| Point::new(sx * v.x, sy * v.y))
                .collect();
            vertex_hausdorff(&moved, b.vertices())
        })
        .fold(f64::INFINITY, f64::min)
}
