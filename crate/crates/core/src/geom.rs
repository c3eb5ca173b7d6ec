//! Points and validated convex polygons.
//!
//! A [`ConvexPolygon`] stands for the closed convex curve bounding the convex
//! hull of its vertices. Vertices are stored counterclockwise. Two-vertex
//! polygons are segments; their perimeter counts the segment twice so that the
//! perimeter stays continuous under Hausdorff limits of flattening polygons.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance for duplicate and collinearity checks, applied after
/// scaling the polygon to unit diameter.
pub const VALIDATION_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("polygon needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {0} coincides with its successor")]
    DuplicateVertex(usize),
    #[error("vertices are not in strictly convex position at vertex {0}")]
    NotConvex(usize),
    #[error("vertex {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("edge index {index} out of range for a polygon with {edges} edges")]
    IndexOutOfRange { index: usize, edges: usize },
    #[error("edge parameter {0} outside [0, 1]")]
    ParameterOutOfRange(f64),
}

/// A point of the Euclidean plane.
///
/// Serialized as a two-element array `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    /// # Panics
    ///
    /// Panics if either coordinate is NaN or infinite. Use [`Point::try_new`]
    /// for untrusted input.
    pub fn new(x: f64, y: f64) -> Self {
        assert!(
            x.is_finite() && y.is_finite(),
            "non-finite point ({x}, {y})"
        );
        Point { x, y }
    }

    pub fn try_new(x: f64, y: f64) -> Option<Self> {
        (x.is_finite() && y.is_finite()).then_some(Point { x, y })
    }

    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn dist_sq(self, other: Point) -> f64 {
        (self - other).norm_sq()
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        Point {
            x: self.x + t * (other.x - self.x),
            y: self.y + t * (other.y - self.y),
        }
    }

    pub fn midpoint(self, other: Point) -> Point {
        self.lerp(other, 0.5)
    }

    /// Counterclockwise rotation by a quarter turn.
    pub fn perp(self) -> Point {
        Point {
            x: -self.y,
            y: self.x,
        }
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point {
            x: self.x + o.x,
            y: self.y + o.y,
        }
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point {
            x: self.x - o.x,
            y: self.y - o.y,
        }
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point {
            x: self.x * s,
            y: self.y * s,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Largest pairwise distance and the lexicographically smallest index pair
/// achieving it.
fn max_pair(points: &[Point]) -> (f64, (usize, usize)) {
    let mut best = (f64::NEG_INFINITY, (0, 0));
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = points[i].dist(points[j]);
            if d > best.0 {
                best = (d, (i, j));
            }
        }
    }
    best
}

/// A validated convex polygon with at least two vertices, stored
/// counterclockwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolygonJson", into = "PolygonJson")]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

/// Wire form: `{"vertices": [[x, y], ...]}`.
#[derive(Serialize, Deserialize)]
struct PolygonJson {
    vertices: Vec<Point>,
}

impl TryFrom<PolygonJson> for ConvexPolygon {
    type Error = GeomError;
    fn try_from(raw: PolygonJson) -> Result<Self, GeomError> {
        ConvexPolygon::new(raw.vertices)
    }
}

impl From<ConvexPolygon> for PolygonJson {
    fn from(p: ConvexPolygon) -> Self {
        PolygonJson {
            vertices: p.vertices,
        }
    }
}

impl ConvexPolygon {
    /// Validates `points` as the vertex cycle of a convex polygon.
    ///
    /// Clockwise input is reversed in place of the cycle while keeping the
    /// first vertex at index 0. Rejects coincident consecutive vertices,
    /// collinear or reflex triples and cycles that wind more than once.
    pub fn new(points: Vec<Point>) -> Result<Self, GeomError> {
        let n = points.len();
        if n < 2 {
            return Err(GeomError::TooFewVertices(n));
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(GeomError::NonFinite(i));
        }
        let (diam, _) = max_pair(&points);
        if diam <= 0.0 {
            return Err(GeomError::DuplicateVertex(0));
        }
        for i in 0..n {
            let j = (i + 1) % n;
            if points[i].dist(points[j]) <= VALIDATION_EPS * diam {
                return Err(GeomError::DuplicateVertex(i));
            }
        }
        if n == 2 {
            return Ok(ConvexPolygon { vertices: points });
        }

        let mut vertices = points;
        if signed_area(&vertices) < 0.0 {
            vertices[1..].reverse();
        }
        let scale = diam * diam;
        let mut turning = 0.0;
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let (u, v) = (b - a, c - b);
            let cross = u.cross(v);
            if cross / scale <= VALIDATION_EPS {
                return Err(GeomError::NotConvex((i + 1) % n));
            }
            turning += cross.atan2(u.dot(v));
        }
        // Left turns everywhere but winding twice or more (a star polygon).
        if (turning - TAU).abs() > 1e-6 {
            return Err(GeomError::NotConvex(0));
        }
        Ok(ConvexPolygon { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i]
    }

    /// Number of edges. A segment has two: there and back.
    pub fn num_edges(&self) -> usize {
        self.vertices.len()
    }

    /// Endpoints of edge `i`, which runs from vertex `i` to vertex `i + 1`
    /// (cyclically).
    pub fn edge(&self, i: usize) -> (Point, Point) {
        let n = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    pub fn edge_length(&self, i: usize) -> f64 {
        let (a, b) = self.edge(i);
        a.dist(b)
    }

    pub fn max_edge_length(&self) -> f64 {
        (0..self.num_edges())
            .map(|i| self.edge_length(i))
            .fold(0.0, f64::max)
    }

    pub fn perimeter(&self) -> f64 {
        // For n = 2 the two edges are the same segment, giving twice its length.
        (0..self.num_edges()).map(|i| self.edge_length(i)).sum()
    }

    /// Diameter together with the lexicographically smallest vertex pair
    /// attaining it.
    pub fn diameter(&self) -> (f64, (usize, usize)) {
        max_pair(&self.vertices)
    }

    pub fn edge_point(&self, edge_index: usize, t: f64) -> Result<Point, GeomError> {
        if edge_index >= self.num_edges() {
            return Err(GeomError::IndexOutOfRange {
                index: edge_index,
                edges: self.num_edges(),
            });
        }
        if !(0.0..=1.0).contains(&t) {
            return Err(GeomError::ParameterOutOfRange(t));
        }
        let (a, b) = self.edge(edge_index);
        Ok(a.lerp(b, t))
    }

    /// Distance from `p` to the nearest point of the boundary.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        (0..self.num_edges())
            .map(|i| {
                let (a, b) = self.edge(i);
                let d = b - a;
                let t = ((p - a).dot(d) / d.norm_sq()).clamp(0.0, 1.0);
                p.dist(a.lerp(b, t))
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Applies `f` to every vertex and revalidates.
    pub fn map_points(&self, f: impl Fn(Point) -> Point) -> Result<Self, GeomError> {
        ConvexPolygon::new(self.vertices.iter().map(|&p| f(p)).collect())
    }

    pub fn scaled(&self, s: f64) -> Result<Self, GeomError> {
        self.map_points(|p| p * s)
    }

    /// Similar copy with unit diameter, the diameter pair at `(-1/2, 0)` and
    /// `(1/2, 0)` and the remaining vertices mostly in the upper half-plane.
    pub fn normalized(&self) -> Self {
        let (d, (i, j)) = self.diameter();
        let (p, q) = (self.vertices[i], self.vertices[j]);
        let mid = p.midpoint(q);
        let u = (q - p) * (1.0 / d);
        let map = |v: Point, flip: f64| {
            let w = (v - mid) * (1.0 / d);
            Point {
                x: w.dot(u),
                y: flip * u.cross(w),
            }
        };
        let upper: f64 = self.vertices.iter().map(|&v| map(v, 1.0).y).sum();
        let flip = if upper < 0.0 { -1.0 } else { 1.0 };
        let pts: Vec<Point> = self.vertices.iter().map(|&v| map(v, flip)).collect();
        // A similarity of a valid polygon stays valid up to rounding.
        ConvexPolygon::new(pts).unwrap_or_else(|_| self.clone())
    }
}

/// Shoelace signed area, positive for counterclockwise cycles.
pub fn signed_area(points: &[Point]) -> f64 {
    let n = points.len();
    0.5 * (0..n)
        .map(|i| points[i].cross(points[(i + 1) % n]))
        .sum::<f64>()
}

/// Convex hull by Andrew's monotone chain, dropping points that are collinear
/// within [`VALIDATION_EPS`]. The result starts at the lowest-leftmost point.
pub fn convex_hull(points: &[Point]) -> Result<ConvexPolygon, GeomError> {
    if let Some(i) = points.iter().position(|p| !p.is_finite()) {
        return Err(GeomError::NonFinite(i));
    }
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 2 {
        return Err(GeomError::TooFewVertices(pts.len()));
    }
    let (diam, _) = max_pair(&pts);
    let tol = VALIDATION_EPS * diam * diam;
    let keep = |hull: &Vec<Point>, p: Point| {
        let k = hull.len();
        k < 2 || (hull[k - 1] - hull[k - 2]).cross(p - hull[k - 1]) > tol
    };
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while !keep(&hull, p) {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && !keep(&hull, p) {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    ConvexPolygon::new(hull)
}
