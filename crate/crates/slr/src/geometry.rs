//! Exact plane geometry: points, axis-aligned boxes, disks and affine maps.

use crate::rational::{rat_int, Rational};
use num_traits::{Signed, Zero};

/// A point of the plane with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    /// Squared Euclidean distance to `other`.
    pub fn dist_sq(&self, other: &Point2) -> Rational {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }

    pub fn midpoint(&self, other: &Point2) -> Point2 {
        let half = Rational::new(1.into(), 2.into());
        Point2::new((&self.x + &other.x) * &half, (&self.y + &other.y) * &half)
    }

    /// Central reflection through `center`: `2c - p`.
    pub fn reflect_through(&self, center: &Point2) -> Point2 {
        let two = rat_int(2);
        Point2::new(&two * &center.x - &self.x, &two * &center.y - &self.y)
    }
}

/// Closed axis-aligned rectangle, also used as an optimization domain box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rect {
    pub x_lo: Rational,
    pub x_hi: Rational,
    pub y_lo: Rational,
    pub y_hi: Rational,
}

impl Rect {
    pub fn new(x_lo: Rational, x_hi: Rational, y_lo: Rational, y_hi: Rational) -> Self {
        assert!(x_lo <= x_hi && y_lo <= y_hi, "empty rectangle");
        Rect { x_lo, x_hi, y_lo, y_hi }
    }

    pub fn unit_square() -> Self {
        Rect::new(rat_int(0), rat_int(1), rat_int(0), rat_int(1))
    }

    /// Smallest rectangle containing every point of the iterator.
    ///
    /// Panics on an empty iterator.
    pub fn hull<'a>(points: impl IntoIterator<Item = &'a Point2>) -> Self {
        let mut it = points.into_iter();
        let first = it.next().expect("hull of empty point set");
        let mut r = Rect {
            x_lo: first.x.clone(),
            x_hi: first.x.clone(),
            y_lo: first.y.clone(),
            y_hi: first.y.clone(),
        };
        for p in it {
            if p.x < r.x_lo {
                r.x_lo = p.x.clone();
            }
            if p.x > r.x_hi {
                r.x_hi = p.x.clone();
            }
            if p.y < r.y_lo {
                r.y_lo = p.y.clone();
            }
            if p.y > r.y_hi {
                r.y_hi = p.y.clone();
            }
        }
        r
    }

    pub fn contains(&self, p: &Point2) -> bool {
        p.x >= self.x_lo && p.x <= self.x_hi && p.y >= self.y_lo && p.y <= self.y_hi
    }

    pub fn area(&self) -> Rational {
        (&self.x_hi - &self.x_lo) * (&self.y_hi - &self.y_lo)
    }

    pub fn diameter_sq(&self) -> Rational {
        let dx = &self.x_hi - &self.x_lo;
        let dy = &self.y_hi - &self.y_lo;
        &dx * &dx + &dy * &dy
    }

    /// True if the open interiors overlap.
    pub fn interiors_overlap(&self, other: &Rect) -> bool {
        self.x_lo < other.x_hi
            && other.x_lo < self.x_hi
            && self.y_lo < other.y_hi
            && other.y_lo < self.y_hi
    }

    /// Largest squared distance between a point of `self` and a point of
    /// `other` (attained on a pair of corners).
    pub fn max_dist_sq(&self, other: &Rect) -> Rational {
        let dx = max_axis_gap(&self.x_lo, &self.x_hi, &other.x_lo, &other.x_hi);
        let dy = max_axis_gap(&self.y_lo, &self.y_hi, &other.y_lo, &other.y_hi);
        &dx * &dx + &dy * &dy
    }
}

fn max_axis_gap(a_lo: &Rational, a_hi: &Rational, b_lo: &Rational, b_hi: &Rational) -> Rational {
    let left = a_hi - b_lo;
    let right = b_hi - a_lo;
    if left >= right {
        left
    } else {
        right
    }
}

/// Closed disk stored via its squared radius so membership stays exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disk {
    pub center: Point2,
    pub radius_sq: Rational,
}

impl Disk {
    /// Disk whose diameter is the segment `[a, b]`.
    pub fn with_diameter(a: &Point2, b: &Point2) -> Self {
        let center = a.midpoint(b);
        let radius_sq = a.dist_sq(b) / rat_int(4);
        Disk { center, radius_sq }
    }

    pub fn contains(&self, p: &Point2) -> bool {
        p.dist_sq(&self.center) <= self.radius_sq
    }

    pub fn strictly_outside(&self, p: &Point2) -> bool {
        p.dist_sq(&self.center) > self.radius_sq
    }

    pub fn on_boundary(&self, p: &Point2) -> bool {
        p.dist_sq(&self.center) == self.radius_sq
    }
}

/// Affine map `p -> M p + t` with exact rational entries.
///
/// `matrix` is row-major: the image of `(x, y)` is
/// `(m00 x + m01 y + t0, m10 x + m11 y + t1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: [[Rational; 2]; 2],
    pub translation: [Rational; 2],
}

impl AffineMap {
    pub fn new(matrix: [[Rational; 2]; 2], translation: [Rational; 2]) -> Self {
        AffineMap { matrix, translation }
    }

    pub fn identity() -> Self {
        AffineMap::new(
            [[rat_int(1), rat_int(0)], [rat_int(0), rat_int(1)]],
            [rat_int(0), rat_int(0)],
        )
    }

    pub fn apply(&self, p: &Point2) -> Point2 {
        Point2::new(
            &self.matrix[0][0] * &p.x + &self.matrix[0][1] * &p.y + &self.translation[0],
            &self.matrix[1][0] * &p.x + &self.matrix[1][1] * &p.y + &self.translation[1],
        )
    }

    /// `self ∘ inner`: applies `inner` first.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        let m = &self.matrix;
        let n = &inner.matrix;
        let matrix = [
            [
                &m[0][0] * &n[0][0] + &m[0][1] * &n[1][0],
                &m[0][0] * &n[0][1] + &m[0][1] * &n[1][1],
            ],
            [
                &m[1][0] * &n[0][0] + &m[1][1] * &n[1][0],
                &m[1][0] * &n[0][1] + &m[1][1] * &n[1][1],
            ],
        ];
        let translation = [
            &m[0][0] * &inner.translation[0] + &m[0][1] * &inner.translation[1] + &self.translation[0],
            &m[1][0] * &inner.translation[0] + &m[1][1] * &inner.translation[1] + &self.translation[1],
        ];
        AffineMap { matrix, translation }
    }

    /// Squared similarity ratio, or `None` if the linear part is not a
    /// similarity (orthogonal columns of equal norm, reflections allowed).
    pub fn similarity_ratio_sq(&self) -> Option<Rational> {
        let m = &self.matrix;
        let col0 = &m[0][0] * &m[0][0] + &m[1][0] * &m[1][0];
        let col1 = &m[0][1] * &m[0][1] + &m[1][1] * &m[1][1];
        let dot = &m[0][0] * &m[0][1] + &m[1][0] * &m[1][1];
        if col0 == col1 && dot.is_zero() {
            Some(col0)
        } else {
            None
        }
    }

    pub fn det_abs(&self) -> Rational {
        let m = &self.matrix;
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        det.abs()
    }

    /// True if the image of an axis-aligned rectangle is again an
    /// axis-aligned rectangle with positive area.
    pub fn is_axis_aligned_nondegenerate(&self) -> bool {
        let m = &self.matrix;
        let diag = !m[0][0].is_zero() && !m[1][1].is_zero() && m[0][1].is_zero() && m[1][0].is_zero();
        let anti = m[0][0].is_zero() && m[1][1].is_zero() && !m[0][1].is_zero() && !m[1][0].is_zero();
        diag || anti
    }

    /// Bounding box of the image of the unit square.
    pub fn image_rect(&self) -> Rect {
        let corners = [
            self.apply(&Point2::new(rat_int(0), rat_int(0))),
            self.apply(&Point2::new(rat_int(1), rat_int(0))),
            self.apply(&Point2::new(rat_int(0), rat_int(1))),
            self.apply(&Point2::new(rat_int(1), rat_int(1))),
        ];
        Rect::hull(corners.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(x: (i64, i64), y: (i64, i64)) -> Point2 {
        Point2::new(rat(x.0, x.1), rat(y.0, y.1))
    }

    #[test]
    fn dist_sq_is_exact() {
        let a = p((0, 1), (0, 1));
        let b = p((1, 1), (1, 1));
        assert_eq!(a.dist_sq(&b), rat_int(2));
        assert_eq!(a.dist_sq(&a), rat_int(0));
    }

    #[test]
    fn reflect_through_center() {
        let c = p((1, 2), (1, 2));
        let q = p((1, 4), (0, 1));
        assert_eq!(q.reflect_through(&c), p((3, 4), (1, 1)));
    }

    #[test]
    fn max_dist_between_rects_uses_farthest_corners() {
        let a = Rect::new(rat_int(0), rat(1, 2), rat_int(0), rat(1, 2));
        let b = Rect::new(rat(1, 2), rat_int(1), rat(1, 2), rat_int(1));
        assert_eq!(a.max_dist_sq(&b), rat_int(2));
        assert_eq!(a.max_dist_sq(&a), rat(1, 2));
    }

    #[test]
    fn compose_matches_nested_apply() {
        let f = AffineMap::new(
            [[rat(0, 1), rat(1, 2)], [rat(1, 2), rat(0, 1)]],
            [rat(1, 4), rat(0, 1)],
        );
        let g = AffineMap::new(
            [[rat(-1, 2), rat(0, 1)], [rat(0, 1), rat(-1, 2)]],
            [rat(1, 1), rat(2, 3)],
        );
        let q = p((1, 3), (2, 5));
        assert_eq!(f.compose(&g).apply(&q), f.apply(&g.apply(&q)));
    }

    #[test]
    fn similarity_detection() {
        let transpose = AffineMap::new(
            [[rat(0, 1), rat(1, 2)], [rat(1, 2), rat(0, 1)]],
            [rat(0, 1), rat(0, 1)],
        );
        assert_eq!(transpose.similarity_ratio_sq(), Some(rat(1, 4)));
        let shear = AffineMap::new(
            [[rat(1, 1), rat(1, 2)], [rat(0, 1), rat(1, 1)]],
            [rat(0, 1), rat(0, 1)],
        );
        assert_eq!(shear.similarity_ratio_sq(), None);
    }

    #[test]
    fn disk_with_diameter_contains_endpoints_on_boundary() {
        let a = p((0, 1), (0, 1));
        let b = p((1, 1), (0, 1));
        let d = Disk::with_diameter(&a, &b);
        assert!(d.on_boundary(&a) && d.on_boundary(&b));
        assert!(d.contains(&p((1, 2), (1, 2))));
        assert!(d.strictly_outside(&p((1, 1), (1, 1))));
    }
}
