//! Minimal SVG plots: curve polylines with highlighted witness points, and
//! lattice orderings drawn as numbered paths. Coordinates are approximate;
//! exactness lives in the JSON reports, not the pictures.

use crate::curve::PolylineCurve;
use crate::geometry::Point2;
use crate::lattice::GridOrdering;
use crate::rational::approx_f64;
use std::fmt::Write;

const SIZE: f64 = 640.0;
const MARGIN: f64 = 40.0;

fn map_unit(x: f64, y: f64) -> (f64, f64) {
    let span = SIZE - 2.0 * MARGIN;
    (MARGIN + x * span, MARGIN + (1.0 - y) * span)
}

/// Curve polyline with one circle marker per highlighted point.
pub fn curve_svg(curve: &PolylineCurve, markers: &[Point2]) -> String {
    let mut pts = String::new();
    for s in curve.samples() {
        let (x, y) = map_unit(approx_f64(&s.point.x), approx_f64(&s.point.y));
        let _ = write!(pts, "{x:.2},{y:.2} ");
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(
        out,
        "  <rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#999\"/>",
        SIZE - 2.0 * MARGIN,
        SIZE - 2.0 * MARGIN
    );
    let _ = writeln!(
        out,
        "  <polyline points=\"{}\" fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.2\"/>",
        pts.trim_end()
    );
    for m in markers {
        let (x, y) = map_unit(approx_f64(&m.x), approx_f64(&m.y));
        let _ = writeln!(
            out,
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"5\" fill=\"#d62828\" stroke=\"none\"/>"
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Lattice ordering as a numbered path; one marker per lattice point.
pub fn lattice_svg(ordering: &GridOrdering) -> String {
    let rows = ordering.rows() as f64;
    let cols = ordering.cols() as f64;
    let to_xy = |r: u32, c: u32| -> (f64, f64) {
        let x = if cols > 1.0 { c as f64 / (cols - 1.0) } else { 0.5 };
        let y = if rows > 1.0 { r as f64 / (rows - 1.0) } else { 0.5 };
        map_unit(x, y)
    };
    let mut pts = String::new();
    for &(r, c) in ordering.order() {
        let (x, y) = to_xy(r, c);
        let _ = write!(pts, "{x:.2},{y:.2} ");
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(
        out,
        "  <polyline points=\"{}\" fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.5\"/>",
        pts.trim_end()
    );
    for (i, &(r, c)) in ordering.order().iter().enumerate() {
        let (x, y) = to_xy(r, c);
        let _ = writeln!(
            out,
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"9\" fill=\"#fff\" stroke=\"#333\"/>"
        );
        let _ = writeln!(
            out,
            "  <text x=\"{x:.2}\" y=\"{:.2}\" font-size=\"10\" text-anchor=\"middle\">{i}</text>",
            y + 3.5
        );
    }
    out.push_str("</svg>\n");
    out
}
