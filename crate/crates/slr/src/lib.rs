//! Exact-arithmetic toolkit for square-to-linear ratios of plane curves.
//!
//! The square-to-linear ratio (SLR) of a curve `f: [0,1] -> R^2` is the
//! supremum over parameter pairs `t1 < t2` of
//! `|f(t1) - f(t2)|^2 / (t2 - t1)`. This crate computes certified two-sided
//! bounds on the SLR of self-similar square-filling curves, searches for
//! chain certificates that lower-bound it, verifies the quadratic-form case
//! minima behind the universal lower bounds, and explores the discrete
//! analogue on m x n lattice orderings. All geometry is exact rational
//! arithmetic; floating point appears only in clearly labeled convenience
//! fields and SVG plots.

pub mod cases;
pub mod catalog;
pub mod certificate;
pub mod checks;
pub mod curve;
pub mod engine;
pub mod geometry;
pub mod lattice;
pub mod rational;
pub mod report;
pub mod selfsimilar;
pub mod svg;

pub use catalog::catalog;
pub use curve::{ParamSample, PolylineCurve, VisitMoments};
pub use geometry::{AffineMap, Disk, Point2, Rect};
pub use rational::{parse_rational, Rational};
pub use selfsimilar::{load_curve_spec, SelfSimilarCurveSpec};
