//! Containment and antipode predicates on sampled curves.
//!
//! When the maximum pair ratio of a curve segment is achieved by its
//! endpoints, the segment's image lies in the disk whose diameter joins the
//! endpoint images; [`circle_containment_check`] reports the samples that
//! land outside. For a curve onto a centrally symmetric set, some boundary
//! point's visit interval brackets a visit of its antipode;
//! [`antipode_pair_find`] searches a sampled curve for such a witness.

use crate::curve::PolylineCurve;
use crate::geometry::{Disk, Point2};
use crate::rational::{rat, rat_int, Rational};
use crate::selfsimilar::SelfSimilarCurveSpec;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("segment endpoints must satisfy a_idx < b_idx")]
    BadIndexOrder,
    #[error("sample index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("point ({0}, {1}) is not on the unit-square boundary")]
    NotOnBoundary(Rational, Rational),
    #[error("boundary point ({0}, {1}) has no curve sample within tolerance; curve is under-sampled")]
    BoundaryPointUncovered(Rational, Rational),
    #[error("no antipode witness found at this tolerance; curve is under-sampled")]
    NoWitnessFound,
}

/// A sample strictly outside the diameter disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub index: usize,
    pub t: Rational,
    pub point: Point2,
    pub dist_sq: Rational,
    pub radius_sq: Rational,
}

/// A sample exactly on the boundary circle, with the two sub-pair ratios it
/// induces against the segment endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryTouch {
    pub index: usize,
    pub ratio_to_start: Rational,
    pub ratio_to_end: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentReport {
    pub disk: Disk,
    pub violations: Vec<Violation>,
    pub boundary_touches: Vec<BoundaryTouch>,
}

/// Checks every sample strictly between `a_idx` and `b_idx` against the disk
/// whose diameter joins the two endpoint samples. An empty violation list
/// means containment holds.
pub fn circle_containment_check(
    curve: &PolylineCurve,
    a_idx: usize,
    b_idx: usize,
) -> Result<ContainmentReport, CheckError> {
    if a_idx >= b_idx {
        return Err(CheckError::BadIndexOrder);
    }
    let samples = curve.samples();
    if b_idx >= samples.len() {
        return Err(CheckError::IndexOutOfRange(b_idx));
    }
    let a = &samples[a_idx];
    let b = &samples[b_idx];
    let disk = Disk::with_diameter(&a.point, &b.point);
    let mut violations = Vec::new();
    let mut boundary_touches = Vec::new();
    for (index, s) in samples.iter().enumerate().take(b_idx).skip(a_idx + 1) {
        let dist_sq = s.point.dist_sq(&disk.center);
        if dist_sq > disk.radius_sq {
            violations.push(Violation {
                index,
                t: s.t.clone(),
                point: s.point.clone(),
                dist_sq,
                radius_sq: disk.radius_sq.clone(),
            });
        } else if dist_sq == disk.radius_sq {
            boundary_touches.push(BoundaryTouch {
                index,
                ratio_to_start: a.point.dist_sq(&s.point) / (&s.t - &a.t),
                ratio_to_end: s.point.dist_sq(&b.point) / (&b.t - &s.t),
            });
        }
    }
    Ok(ContainmentReport { disk, violations, boundary_touches })
}

/// A boundary point whose visit interval brackets a visit of its antipode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntipodeWitness {
    pub boundary_point: Point2,
    pub antipode: Point2,
    pub e_first: Rational,
    pub f_time: Rational,
    pub e_last: Rational,
}

/// Scans boundary points in order, pairing each with its antipode through
/// `center`, and returns the first point whose visit interval contains a
/// visit time of the antipode. Every boundary point must be covered by some
/// sample within `tol`; for a genuinely onto curve a witness exists, so
/// failure here signals under-sampling rather than absence.
pub fn antipode_pair_find(
    curve: &PolylineCurve,
    boundary: &[Point2],
    center: &Point2,
    tol: &Rational,
) -> Result<AntipodeWitness, CheckError> {
    for q in boundary {
        if curve.visit_times(q, tol).is_empty() {
            return Err(CheckError::BoundaryPointUncovered(q.x.clone(), q.y.clone()));
        }
    }
    for q in boundary {
        let visits = curve.visit_times(q, tol);
        let first = visits.first().expect("coverage checked").clone();
        let last = visits.last().expect("coverage checked").clone();
        let antipode = q.reflect_through(center);
        let f_time = curve
            .visit_times(&antipode, tol)
            .into_iter()
            .find(|t| *t >= first && *t <= last);
        if let Some(f_time) = f_time {
            return Ok(AntipodeWitness {
                boundary_point: q.clone(),
                antipode,
                e_first: first,
                f_time,
                e_last: last,
            });
        }
    }
    Err(CheckError::NoWitnessFound)
}

/// True when the spec's entry and exit points lie on opposite closed sides
/// of the unit square (corners belong to both of their sides).
pub fn opposite_sides_check(spec: &SelfSimilarCurveSpec) -> Result<bool, CheckError> {
    opposite_sides_of_points(spec.entry(), spec.exit())
}

/// The same predicate on raw endpoint candidates.
pub fn opposite_sides_of_points(entry: &Point2, exit: &Point2) -> Result<bool, CheckError> {
    let entry = sides_of(entry)?;
    let exit = sides_of(exit)?;
    Ok((entry.left && exit.right)
        || (entry.right && exit.left)
        || (entry.bottom && exit.top)
        || (entry.top && exit.bottom))
}

struct SideSet {
    left: bool,
    right: bool,
    bottom: bool,
    top: bool,
}

fn sides_of(p: &Point2) -> Result<SideSet, CheckError> {
    let zero = Rational::zero();
    let one = rat_int(1);
    let inside = p.x >= zero && p.x <= one && p.y >= zero && p.y <= one;
    let sides = SideSet {
        left: p.x == zero,
        right: p.x == one,
        bottom: p.y == zero,
        top: p.y == one,
    };
    if !inside || !(sides.left || sides.right || sides.bottom || sides.top) {
        return Err(CheckError::NotOnBoundary(p.x.clone(), p.y.clone()));
    }
    Ok(sides)
}

/// Ordered loop of boundary points of the unit square with `steps` points
/// per side, centrally symmetric about (1/2, 1/2).
pub fn unit_square_boundary(steps: u32) -> Vec<Point2> {
    let s = steps as i64;
    let mut out = Vec::with_capacity(4 * steps as usize);
    for k in 0..s {
        out.push(Point2::new(rat(k, s), rat_int(0)));
    }
    for k in 0..s {
        out.push(Point2::new(rat_int(1), rat(k, s)));
    }
    for k in 0..s {
        out.push(Point2::new(rat(s - k, s), rat_int(1)));
    }
    for k in 0..s {
        out.push(Point2::new(rat_int(0), rat(s - k, s)));
    }
    out
}
