//! SVG figure of a polygon with its covering disks and distinguished chords.

use std::fmt::Write;

use crate::chebyshev::ChebyshevResult;
use crate::geom::{ConvexPolygon, Point};

/// Everything drawn in one figure. `y` points up in scene coordinates.
#[derive(Debug, Clone)]
pub struct SvgScene<'a> {
    pub polygon: &'a ConvexPolygon,
    pub result: &'a ChebyshevResult,
    pub annotation: String,
}

/// Bounding box `(min, max)` of the polygon and every covering circle,
/// grown by 5% of its extent on each side.
pub fn viewport(scene: &SvgScene<'_>) -> (Point, Point) {
    let r = scene.result.radius;
    let mut lo = Point {
        x: f64::INFINITY,
        y: f64::INFINITY,
    };
    let mut hi = Point {
        x: f64::NEG_INFINITY,
        y: f64::NEG_INFINITY,
    };
    let mut grow = |p: Point, pad: f64| {
        lo = Point {
            x: lo.x.min(p.x - pad),
            y: lo.y.min(p.y - pad),
        };
        hi = Point {
            x: hi.x.max(p.x + pad),
            y: hi.y.max(p.y + pad),
        };
    };
    for &v in scene.polygon.vertices() {
        grow(v, 0.0);
    }
    for e in &scene.result.extremal_points {
        grow(e.point, r);
    }
    let margin = 0.05 * (hi.x - lo.x).max(hi.y - lo.y);
    (
        Point {
            x: lo.x - margin,
            y: lo.y - margin,
        },
        Point {
            x: hi.x + margin,
            y: hi.y + margin,
        },
    )
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn render(scene: &SvgScene<'_>) -> String {
    let (lo, hi) = viewport(scene);
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);
    let span = w.max(h);
    let stroke = span * 0.004;
    // Flip y so the figure reads with y up.
    let tx = |p: Point| (p.x, lo.y + hi.y - p.y);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.0}" height="{:.0}" viewBox="{} {} {} {}">"#,
        600.0 * w / span,
        600.0 * h / span,
        lo.x,
        lo.y,
        w,
        h
    );
    let _ = writeln!(
        out,
        r##"  <g id="covering-circles" fill="none" stroke="#4a90d9" stroke-width="{stroke}">"##
    );
    for e in &scene.result.extremal_points {
        let (x, y) = tx(e.point);
        let _ = writeln!(
            out,
            r#"    <circle cx="{x}" cy="{y}" r="{}"/>"#,
            scene.result.radius
        );
    }
    let _ = writeln!(out, "  </g>");

    let pts: Vec<String> = scene
        .polygon
        .vertices()
        .iter()
        .map(|&p| {
            let (x, y) = tx(p);
            format!("{x},{y}")
        })
        .collect();
    let _ = writeln!(
        out,
        r##"  <polygon id="outline" points="{}" fill="#f2f2f2" stroke="black" stroke-width="{}"/>"##,
        pts.join(" "),
        2.0 * stroke
    );

    let _ = writeln!(
        out,
        r##"  <g id="chords" stroke="#d0021b" stroke-width="{stroke}" stroke-dasharray="{} {}">"##,
        4.0 * stroke,
        3.0 * stroke
    );
    for e in &scene.result.extremal_points {
        let (x1, y1) = tx(e.point);
        for &f in &e.footpoints {
            let (x2, y2) = tx(scene.polygon.vertex(f));
            let _ = writeln!(
                out,
                r#"    <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#
            );
        }
    }
    let _ = writeln!(out, "  </g>");

    let _ = writeln!(out, r##"  <g id="extremal-points" fill="#d0021b">"##);
    for e in &scene.result.extremal_points {
        let (x, y) = tx(e.point);
        let _ = writeln!(
            out,
            r#"    <circle cx="{x}" cy="{y}" r="{}"/>"#,
            3.0 * stroke
        );
    }
    let _ = writeln!(out, "  </g>");

    let _ = writeln!(
        out,
        r#"  <text id="annotation" x="{}" y="{}" font-family="sans-serif" font-size="{}">{}</text>"#,
        lo.x + 0.02 * span,
        lo.y + 0.05 * span,
        0.035 * span,
        escape(&scene.annotation)
    );
    out.push_str("</svg>\n");
    out
}
