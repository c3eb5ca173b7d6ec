//! Extremal figures and perimeter-to-δ bounds.
//!
//! Sharp bounds on `L / δ` (perimeter over relative Chebyshev radius):
//!
//! | bound | value | figures attaining it |
//! |---|---|---|
//! | triangles, lower | `2√3` | equilateral triangles |
//! | n-gons, upper | `λₙ = 2(1 + (n−1) sin(π / (2(n−1))))` | `Uₙ` |
//! | convex curves, upper | `2 + π` | half-disk boundaries |
//! | quadrangles, lower (conjectured) | `(4/3)√(2√3 + 3)` | magic kites |

use std::f64::consts::PI;
use std::fmt;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::chebyshev::delta;
use crate::geom::{convex_hull, ConvexPolygon, Point};

pub const TRIANGLE_LOWER: f64 = 3.464_101_615_137_754_4; // 2√3
pub const CURVE_UPPER: f64 = 2.0 + PI;

/// Slack magnitude under which a report is flagged as an equality case.
pub const EQUALITY_EPS: f64 = 1e-9;

pub fn quadrangle_conjecture_bound() -> f64 {
    4.0 / 3.0 * (2.0 * 3f64.sqrt() + 3.0).sqrt()
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtremalError {
    #[error("vertex count {0} out of range (need at least 2)")]
    NOutOfRange(usize),
    #[error("radius must be positive and finite, got {0}")]
    NonPositiveRadius(f64),
    #[error("bound {bound} does not apply to a polygon with {vertices} vertices")]
    BoundNotApplicable { bound: Bound, vertices: usize },
}

/// `λₙ`, the sharp constant in `L ≤ λₙ·δ` for convex polygons with at most
/// `n` vertices. Increases strictly towards `2 + π`.
pub fn lambda(n: usize) -> Result<f64, ExtremalError> {
    if n < 2 {
        return Err(ExtremalError::NOutOfRange(n));
    }
    let k = (n - 1) as f64;
    Ok(2.0 * (1.0 + k * (PI / (2.0 * k)).sin()))
}

/// `Uₙ` of radius `r`: the diameter `[(-r, 0), (r, 0)]` closed by half of a
/// regular `2(n−1)`-gon inscribed in the upper half-circle.
///
/// Listed counterclockwise from `(r, 0)`. For `n = 2` this is the bare
/// segment, listed from `(-r, 0)`.
pub fn build_u_n(n: usize, r: f64) -> Result<ConvexPolygon, ExtremalError> {
    if n < 2 {
        return Err(ExtremalError::NOutOfRange(n));
    }
    if !(r.is_finite() && r > 0.0) {
        return Err(ExtremalError::NonPositiveRadius(r));
    }
    let mut pts = Vec::with_capacity(n);
    if n == 2 {
        pts.push(Point::new(-r, 0.0));
        pts.push(Point::new(r, 0.0));
    } else {
        let step = PI / (n - 1) as f64;
        pts.push(Point::new(r, 0.0));
        for k in 1..n - 1 {
            let a = k as f64 * step;
            pts.push(Point::new(r * a.cos(), r * a.sin()));
        }
        pts.push(Point::new(-r, 0.0));
    }
    Ok(ConvexPolygon::new(pts).expect("Uₙ is strictly convex"))
}

/// Half-disk of radius `r` with its arc replaced by `m` equal chords.
pub fn half_disk_polyline(r: f64, m: usize) -> Result<ConvexPolygon, ExtremalError> {
    if m < 2 {
        return Err(ExtremalError::NOutOfRange(m + 1));
    }
    build_u_n(m + 1, r)
}

/// The magic kite, conjectured to minimize `L / δ` among convex quadrangles.
pub fn magic_kite() -> ConvexPolygon {
    let s3 = 3f64.sqrt();
    let top = s3 / 3.0 * (2.0 * s3 + 3.0).sqrt();
    let bottom = -(2.0 * s3 - 3.0).sqrt() / 3.0;
    ConvexPolygon::new(vec![
        Point::new(-1.0, 0.0),
        Point::new(0.0, bottom),
        Point::new(1.0, 0.0),
        Point::new(0.0, top),
    ])
    .expect("magic kite is convex")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Bound {
    /// `L ≥ 2√3·δ` for triangles.
    TriangleLower,
    /// `L ≤ λₙ·δ` for polygons with at most `n` vertices.
    NgonUpper(usize),
    /// `L ≤ (2 + π)·δ` for every convex curve.
    CurveUpper,
    /// Conjectured `L ≥ (4/3)√(2√3 + 3)·δ` for quadrangles.
    QuadrangleConjecture,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::TriangleLower => write!(f, "triangle lower bound 2√3"),
            Bound::NgonUpper(n) => write!(f, "{n}-gon upper bound λ_{n}"),
            Bound::CurveUpper => write!(f, "convex curve upper bound 2+π"),
            Bound::QuadrangleConjecture => write!(f, "quadrangle conjecture (4/3)√(2√3+3)"),
        }
    }
}

impl Bound {
    pub fn value(self) -> f64 {
        match self {
            Bound::TriangleLower => TRIANGLE_LOWER,
            Bound::NgonUpper(n) => lambda(n).unwrap_or(f64::NAN),
            Bound::CurveUpper => CURVE_UPPER,
            Bound::QuadrangleConjecture => quadrangle_conjecture_bound(),
        }
    }

    pub fn is_lower(self) -> bool {
        matches!(self, Bound::TriangleLower | Bound::QuadrangleConjecture)
    }

    pub fn is_conjecture(self) -> bool {
        matches!(self, Bound::QuadrangleConjecture)
    }

    pub fn applies_to(self, vertices: usize) -> bool {
        match self {
            Bound::TriangleLower => vertices == 3,
            Bound::NgonUpper(n) => n >= 2 && vertices <= n,
            Bound::CurveUpper => true,
            Bound::QuadrangleConjecture => vertices == 4,
        }
    }
}

/// `L / δ` of a polygon measured against one of the bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport {
    pub polygon: ConvexPolygon,
    pub perimeter: f64,
    pub radius: f64,
    pub ratio: f64,
    pub bound: Bound,
    pub bound_value: f64,
    /// Raw comparison, no tolerance.
    pub satisfied: bool,
    /// Distance to the bound on its allowed side; negative when violated.
    pub slack: f64,
    /// `|slack| ≤ EQUALITY_EPS`.
    pub equality: bool,
}

impl RatioReport {
    pub fn status(&self) -> &'static str {
        match (self.bound.is_conjecture(), self.equality, self.satisfied) {
            (true, true, _) => "conjectural equality",
            (true, false, true) => "consistent with conjecture",
            (true, false, false) => "below conjectured value (conjectural)",
            (false, true, _) => "equality (extremal figure)",
            (false, false, true) => "satisfied",
            (false, false, false) => "violated",
        }
    }
}

pub fn ratio_report(poly: &ConvexPolygon, bound: Bound) -> Result<RatioReport, ExtremalError> {
    if !bound.applies_to(poly.len()) {
        return Err(ExtremalError::BoundNotApplicable {
            bound,
            vertices: poly.len(),
        });
    }
    let perimeter = poly.perimeter();
    let radius = delta(poly).radius;
    let ratio = perimeter / radius;
    let bound_value = bound.value();
    let (satisfied, slack) = if bound.is_lower() {
        (ratio >= bound_value, ratio - bound_value)
    } else {
        (ratio <= bound_value, bound_value - ratio)
    };
    Ok(RatioReport {
        polygon: poly.clone(),
        perimeter,
        radius,
        ratio,
        bound,
        bound_value,
        satisfied,
        slack,
        equality: slack.abs() <= EQUALITY_EPS,
    })
}

/// Random convex polygon with exactly `n` vertices, scaled to unit diameter.
///
/// Points at sorted uniform angles on a star with radii in `[1 - jitter, 1]`
/// are hulled; draws whose hull loses vertices are rejected, halving the
/// jitter after every 16 rejections. The accepted hull gets a random
/// anisotropic stretch (aspect in `[0.05, 1]`, log-uniform) so thin shapes
/// show up as often as round ones. `n = 2` gives a random segment.
///
/// # Panics
///
/// Panics if `n < 2`.
pub fn random_convex_polygon<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ConvexPolygon {
    assert!(n >= 2, "need at least 2 vertices");
    if n == 2 {
        let a = rng.random_range(0.0..std::f64::consts::TAU);
        return ConvexPolygon::new(vec![Point::new(0.0, 0.0), Point::new(a.cos(), a.sin())])
            .expect("unit segment");
    }
    let mut jitter: f64 = rng.random_range(0.0..1.0);
    let mut attempts = 0usize;
    loop {
        attempts += 1;
        if attempts.is_multiple_of(16) {
            jitter *= 0.5;
        }
        let mut angles: Vec<f64> = (0..n)
            .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
            .collect();
        angles.sort_by(f64::total_cmp);
        let pts: Vec<Point> = angles
            .iter()
            .map(|&a| {
                let r = 1.0 - jitter * rng.random_range(0.0..1.0);
                Point::new(r * a.cos(), r * a.sin())
            })
            .collect();
        let aspect = (rng.random_range(0.05f64.ln()..=0.0)).exp();
        let tilt = rng.random_range(0.0..PI);
        let Ok(hull) = convex_hull(&pts) else {
            continue;
        };
        if hull.len() != n {
            continue;
        }
        let (c, s) = (tilt.cos(), tilt.sin());
        let stretched = hull.map_points(|p| {
            let q = Point::new(c * p.x + s * p.y, -s * p.x + c * p.y);
            Point::new(q.x, aspect * q.y)
        });
        if let Ok(poly) = stretched {
            return poly.normalized();
        }
    }
}

/// Random polygon inscribed in the upper half-disk of radius `r` whose base
/// `[(-r, 0), (r, 0)]` is a side; `n - 2` vertices on the arc.
pub fn random_half_disk_polygon<R: Rng + ?Sized>(n: usize, r: f64, rng: &mut R) -> ConvexPolygon {
    assert!(n >= 3, "need at least 3 vertices");
    loop {
        let mut angles: Vec<f64> = (0..n - 2).map(|_| rng.random_range(0.0..PI)).collect();
        angles.sort_by(f64::total_cmp);
        let mut pts = vec![Point::new(r, 0.0)];
        pts.extend(angles.iter().map(|&a| Point::new(r * a.cos(), r * a.sin())));
        pts.push(Point::new(-r, 0.0));
        if let Ok(p) = ConvexPolygon::new(pts) {
            return p;
        }
    }
}
