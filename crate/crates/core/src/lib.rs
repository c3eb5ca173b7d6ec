//! Relative Chebyshev radius of convex polygons.
//!
//! The relative Chebyshev radius δ of a closed curve is the smallest radius of
//! a disk that covers the curve and is centered on the curve itself. This
//! crate computes δ exactly for convex polygons, builds the figures that are
//! extremal for perimeter-to-δ bounds, checks those bounds on random
//! polygons, and runs seeded searches on related open problems.
//!
//! ```
//! use relcheb::{chebyshev::delta, geom::{ConvexPolygon, Point}};
//!
//! let square = ConvexPolygon::new(vec![
//!     Point::new(0.0, 0.0),
//!     Point::new(1.0, 0.0),
//!     Point::new(1.0, 1.0),
//!     Point::new(0.0, 1.0),
//! ])
//! .unwrap();
//! let r = delta(&square);
//! assert!((r.radius - 5f64.sqrt() / 2.0).abs() < 1e-15);
//! assert_eq!(r.extremal_points.len(), 4);
//! ```

pub mod chebyshev;
pub mod cli;
pub mod extremal;
pub mod geom;
pub mod nelder_mead;
pub mod rng;
pub mod search;
pub mod svg;
