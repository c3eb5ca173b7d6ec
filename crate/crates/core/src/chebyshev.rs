//! Farthest-distance function μ and the relative Chebyshev radius δ.
//!
//! For a point `x` on the boundary of a polygon, μ(x) is the largest distance
//! from `x` to the curve, always attained at a vertex. δ is the minimum of μ
//! over the boundary: the radius of the smallest disk that covers the polygon
//! and has its center on the polygon's own boundary.
//!
//! Along an edge `x(t) = a + t (b - a)` every squared vertex distance is a
//! quadratic in `t` with the same leading coefficient `|b - a|²`, so μ² is that
//! common parabola plus the upper envelope of one line per vertex. The minimum
//! over `[0, 1]` sits at an edge endpoint, at a breakpoint of the envelope (a
//! perpendicular bisector of two vertices crossing the edge) or at the
//! projection of the active vertex onto the edge. [`edge_min_mu`] walks the
//! envelope from `t = 0` and evaluates μ at exactly those candidates.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use serde::Serialize;
use thiserror::Error;

use crate::geom::{ConvexPolygon, Point};

/// Relative tolerance (times the diameter) for ties, boundary membership and
/// deduplication of extremal points.
pub const TIE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChebyshevError {
    #[error("point {0} is not on the polygon boundary")]
    PointNotOnBoundary(Point),
    #[error("side lengths ({0}, {1}, {2}) do not form a nondegenerate triangle")]
    DegenerateTriangle(f64, f64, f64),
}

/// Value of μ at a boundary point with the vertices attaining it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MuResult {
    pub value: f64,
    pub footpoints: Vec<usize>,
    pub query_point: Point,
}

/// A point where μ reaches δ, with the vertices ending its distinguished
/// chords.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalPoint {
    pub edge: usize,
    pub t: f64,
    pub point: Point,
    pub footpoints: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChebyshevResult {
    pub radius: f64,
    pub extremal_points: Vec<ExtremalPoint>,
}

/// Minimizer of μ restricted to one closed edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeMinimum {
    pub t: f64,
    pub value: f64,
}

fn max_dist_sq(poly: &ConvexPolygon, x: Point) -> f64 {
    poly.vertices()
        .iter()
        .map(|&v| x.dist_sq(v))
        .fold(0.0, f64::max)
}

fn footpoints_of(poly: &ConvexPolygon, x: Point, value: f64) -> Vec<usize> {
    let tol = TIE_EPS * poly.diameter().0;
    poly.vertices()
        .iter()
        .enumerate()
        .filter(|(_, &v)| x.dist(v) >= value - tol)
        .map(|(i, _)| i)
        .collect()
}

/// μ(x) for a point on the boundary of `poly`.
///
/// Footpoints are every vertex within `TIE_EPS · diameter` of the maximum.
pub fn mu(poly: &ConvexPolygon, x: Point) -> Result<MuResult, ChebyshevError> {
    if !x.is_finite() || poly.boundary_distance(x) > TIE_EPS * poly.diameter().0 {
        return Err(ChebyshevError::PointNotOnBoundary(x));
    }
    let value = max_dist_sq(poly, x).sqrt();
    Ok(MuResult {
        value,
        footpoints: footpoints_of(poly, x, value),
        query_point: x,
    })
}

/// Global minimizer of μ on edge `edge_index` (vertex `i` to vertex `i + 1`).
///
/// # Panics
///
/// Panics if `edge_index >= poly.num_edges()`.
pub fn edge_min_mu(poly: &ConvexPolygon, edge_index: usize) -> EdgeMinimum {
    assert!(
        edge_index < poly.num_edges(),
        "edge index {edge_index} out of range"
    );
    let (a, b) = poly.edge(edge_index);
    let dir = b - a;
    let len_sq = dir.norm_sq();

    // |x(t) - v|² = len_sq·t² + slope·t + intercept
    let lines: Vec<(f64, f64)> = poly
        .vertices()
        .iter()
        .map(|&v| {
            let w = v - a;
            (w.norm_sq(), -2.0 * w.dot(dir))
        })
        .collect();

    let mut active = 0;
    for (i, &(c, m)) in lines.iter().enumerate() {
        let (ca, ma) = lines[active];
        if c > ca || (c == ca && m > ma) {
            active = i;
        }
    }

    let mut candidates = vec![0.0, 1.0];
    let mut t_start = 0.0;
    loop {
        let (ca, ma) = lines[active];
        let mut next: Option<(f64, usize)> = None;
        for (u, &(cu, mu_)) in lines.iter().enumerate() {
            if mu_ <= ma {
                continue;
            }
            let t = ((ca - cu) / (mu_ - ma)).max(t_start);
            let better = match next {
                None => true,
                Some((tn, un)) => t < tn || (t == tn && mu_ > lines[un].1),
            };
            if better {
                next = Some((t, u));
            }
        }
        let t_end = next.map_or(1.0, |(t, _)| t.min(1.0));
        candidates.push((-ma / (2.0 * len_sq)).clamp(t_start, t_end));
        candidates.push(t_end);
        match next {
            Some((t, u)) if t < 1.0 => {
                t_start = t;
                active = u;
            }
            _ => break,
        }
    }

    let mut best = EdgeMinimum {
        t: 0.0,
        value: f64::INFINITY,
    };
    for t in candidates {
        let value = max_dist_sq(poly, a.lerp(b, t)).sqrt();
        if value < best.value || (value == best.value && t < best.t) {
            best = EdgeMinimum { t, value };
        }
    }
    best
}

/// Relative Chebyshev radius of the boundary of `poly` with every extremal
/// point (deduplicated, within `TIE_EPS · diameter` of the minimum).
pub fn delta(poly: &ConvexPolygon) -> ChebyshevResult {
    let diam = poly.diameter().0;
    let tol = TIE_EPS * diam;
    let minima: Vec<EdgeMinimum> = (0..poly.num_edges())
        .map(|i| edge_min_mu(poly, i))
        .collect();
    let radius = minima.iter().map(|m| m.value).fold(f64::INFINITY, f64::min);

    let mut extremal_points: Vec<ExtremalPoint> = Vec::new();
    for (edge, m) in minima.iter().enumerate() {
        if m.value > radius + tol {
            continue;
        }
        let (a, b) = poly.edge(edge);
        let point = a.lerp(b, m.t);
        if extremal_points.iter().any(|e| e.point.dist(point) < tol) {
            continue;
        }
        extremal_points.push(ExtremalPoint {
            edge,
            t: m.t,
            point,
            footpoints: footpoints_of(poly, point, m.value),
        });
    }
    ChebyshevResult {
        radius,
        extremal_points,
    }
}

/// Upper bound on δ from a uniform grid of `samples_per_edge + 1` points per
/// edge, endpoints included. Since μ is 1-Lipschitz the overestimate is at
/// most half the grid spacing.
///
/// # Panics
///
/// Panics if `samples_per_edge < 2`.
pub fn delta_brute(poly: &ConvexPolygon, samples_per_edge: usize) -> f64 {
    assert!(samples_per_edge >= 2, "need at least 2 samples per edge");
    let mut best = f64::INFINITY;
    for i in 0..poly.num_edges() {
        let (a, b) = poly.edge(i);
        for k in 0..=samples_per_edge {
            let x = a.lerp(b, k as f64 / samples_per_edge as f64);
            best = best.min(max_dist_sq(poly, x));
        }
    }
    best.sqrt()
}

/// Which closed-form branch gave a triangle's δ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TriangleCase {
    /// Largest angle at least π/2: half the longest side.
    HalfDiameter,
    /// Smallest angle at least π/4: altitude onto the longest side.
    Altitude,
    /// Remaining acute triangles: `b / (2 cos γ)`.
    IsoscelesChord,
}

impl TriangleCase {
    pub fn label(self) -> &'static str {
        match self {
            TriangleCase::HalfDiameter => "alpha ≥ π/2 (half-diameter)",
            TriangleCase::Altitude => "γ ≥ π/4 (altitude)",
            TriangleCase::IsoscelesChord => "γ ≤ π/4, α ≤ π/2 (isoceles chord)",
        }
    }
}

/// δ of a triangle from its side lengths, with the branch used.
///
/// Sides may come in any order. With `a ≥ b ≥ c` and opposite angles
/// `α ≥ β ≥ γ`:
///
/// * `α ≥ π/2`: `a / 2`
/// * `γ ≥ π/4`: `b sin γ`
/// * otherwise: `b / (2 cos γ)`
///
/// Adjacent branches agree on their shared boundary, so the angle tests use
/// plain float comparisons.
pub fn delta_triangle_case(a: f64, b: f64, c: f64) -> Result<(f64, TriangleCase), ChebyshevError> {
    let mut s = [a, b, c];
    if s.iter().any(|x| !x.is_finite() || *x <= 0.0) {
        return Err(ChebyshevError::DegenerateTriangle(a, b, c));
    }
    s.sort_by(|x, y| y.total_cmp(x));
    let [a, b, c] = s;
    if b + c <= a {
        return Err(ChebyshevError::DegenerateTriangle(a, b, c));
    }
    let alpha = ((b * b + c * c - a * a) / (2.0 * b * c))
        .clamp(-1.0, 1.0)
        .acos();
    let gamma = ((a * a + b * b - c * c) / (2.0 * a * b))
        .clamp(-1.0, 1.0)
        .acos();
    Ok(if alpha >= FRAC_PI_2 {
        (a / 2.0, TriangleCase::HalfDiameter)
    } else if gamma >= FRAC_PI_4 {
        (b * gamma.sin(), TriangleCase::Altitude)
    } else {
        (b / (2.0 * gamma.cos()), TriangleCase::IsoscelesChord)
    })
}

pub fn delta_triangle(a: f64, b: f64, c: f64) -> Result<f64, ChebyshevError> {
    delta_triangle_case(a, b, c).map(|(d, _)| d)
}
