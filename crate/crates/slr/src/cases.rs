//! Symbolic chain configurations whose squared-length sums are convex
//! quadratic forms in two free coordinates, with exact box minimization.
//!
//! The built-in case set covers the chain configurations behind the
//! universal SLR lower bounds: a one-variable configuration with minimum 4,
//! a pre-case with minimum 11/3, and six two-variable sub-cases with minima
//! 11/3, 29/8 and 31/8. Each case stores its chain geometrically; the
//! quadratic form is always re-derived by expansion and, where a
//! transcribed form is recorded, compared against it coefficient by
//! coefficient.

use crate::geometry::Rect;
use crate::rational::{rat, rat_int, Rational};
use num_traits::{Signed, Zero};

/// Affine expression `c0 + cx*x + cy*y` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineExpr {
    pub c0: Rational,
    pub cx: Rational,
    pub cy: Rational,
}

impl AffineExpr {
    pub fn constant(c0: Rational) -> Self {
        AffineExpr { c0, cx: Rational::zero(), cy: Rational::zero() }
    }

    pub fn new(c0: Rational, cx: Rational, cy: Rational) -> Self {
        AffineExpr { c0, cx, cy }
    }

    fn sub(&self, other: &AffineExpr) -> AffineExpr {
        AffineExpr {
            c0: &self.c0 - &other.c0,
            cx: &self.cx - &other.cx,
            cy: &self.cy - &other.cy,
        }
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        &self.c0 + &self.cx * x + &self.cy * y
    }
}

/// Plane point whose coordinates are affine expressions in `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicPoint {
    pub x: AffineExpr,
    pub y: AffineExpr,
}

impl SymbolicPoint {
    pub fn fixed(x: Rational, y: Rational) -> Self {
        SymbolicPoint { x: AffineExpr::constant(x), y: AffineExpr::constant(y) }
    }

    pub fn new(x: AffineExpr, y: AffineExpr) -> Self {
        SymbolicPoint { x, y }
    }
}

/// `qxx x^2 + qxy xy + qyy y^2 + qx x + qy y + q0`, exact.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuadraticForm {
    pub qxx: Rational,
    pub qxy: Rational,
    pub qyy: Rational,
    pub qx: Rational,
    pub qy: Rational,
    pub q0: Rational,
}

impl QuadraticForm {
    pub fn zero() -> Self {
        QuadraticForm::default()
    }

    pub fn constant(c: Rational) -> Self {
        QuadraticForm { q0: c, ..Default::default() }
    }

    /// The square of an affine expression.
    pub fn square_of(e: &AffineExpr) -> Self {
        let two = rat_int(2);
        QuadraticForm {
            qxx: &e.cx * &e.cx,
            qxy: &two * &e.cx * &e.cy,
            qyy: &e.cy * &e.cy,
            qx: &two * &e.c0 * &e.cx,
            qy: &two * &e.c0 * &e.cy,
            q0: &e.c0 * &e.c0,
        }
    }

    pub fn add(&self, other: &QuadraticForm) -> Self {
        QuadraticForm {
            qxx: &self.qxx + &other.qxx,
            qxy: &self.qxy + &other.qxy,
            qyy: &self.qyy + &other.qyy,
            qx: &self.qx + &other.qx,
            qy: &self.qy + &other.qy,
            q0: &self.q0 + &other.q0,
        }
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        &self.qxx * x * x
            + &self.qxy * x * y
            + &self.qyy * y * y
            + &self.qx * x
            + &self.qy * y
            + &self.q0
    }

    /// Convexity test: the Hessian `[[2qxx, qxy], [qxy, 2qyy]]` must be
    /// positive semidefinite.
    pub fn is_convex(&self) -> bool {
        !self.qxx.is_negative()
            && !self.qyy.is_negative()
            && !(rat_int(4) * &self.qxx * &self.qyy - &self.qxy * &self.qxy).is_negative()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CaseError {
    #[error("a symbolic chain needs at least two points")]
    ChainTooShort,
    #[error("form is not convex; box minimization rejected")]
    NonConvex,
}

/// Sum of squared link lengths of a symbolic chain, expanded exactly.
pub fn expand_chain(chain: &[SymbolicPoint]) -> Result<QuadraticForm, CaseError> {
    if chain.len() < 2 {
        return Err(CaseError::ChainTooShort);
    }
    let mut total = QuadraticForm::zero();
    for pair in chain.windows(2) {
        let dx = pair[1].x.sub(&pair[0].x);
        let dy = pair[1].y.sub(&pair[0].y);
        total = total.add(&QuadraticForm::square_of(&dx));
        total = total.add(&QuadraticForm::square_of(&dy));
    }
    Ok(total)
}

/// Exact global minimum of a convex quadratic form over a closed box.
///
/// Uses the unconstrained critical point when the Hessian is definite and it
/// falls inside the box; otherwise scans the four edges, each a 1-D convex
/// quadratic with a closed-form clamped minimizer.
pub fn minimize_form(
    form: &QuadraticForm,
    domain: &Rect,
) -> Result<((Rational, Rational), Rational), CaseError> {
    if !form.is_convex() {
        return Err(CaseError::NonConvex);
    }
    let det = rat_int(4) * &form.qxx * &form.qyy - &form.qxy * &form.qxy;
    if det.is_positive() {
        let x = (&form.qxy * &form.qy - rat_int(2) * &form.qyy * &form.qx) / &det;
        let y = (&form.qxy * &form.qx - rat_int(2) * &form.qxx * &form.qy) / &det;
        let critical = crate::geometry::Point2::new(x.clone(), y.clone());
        if domain.contains(&critical) {
            let value = form.eval(&x, &y);
            return Ok(((x, y), value));
        }
    }
    // Edge scan: bottom, top, left, right; first strict minimum wins.
    let mut best: Option<((Rational, Rational), Rational)> = None;
    let horizontal = [&domain.y_lo, &domain.y_hi];
    for y in horizontal {
        let a = form.qxx.clone();
        let b = &form.qxy * y + &form.qx;
        let c = &form.qyy * y * y + &form.qy * y + &form.q0;
        let (x, value) = minimize_1d(&a, &b, &c, &domain.x_lo, &domain.x_hi);
        consider(&mut best, (x, y.clone()), value);
    }
    let vertical = [&domain.x_lo, &domain.x_hi];
    for x in vertical {
        let a = form.qyy.clone();
        let b = &form.qxy * x + &form.qy;
        let c = &form.qxx * x * x + &form.qx * x + &form.q0;
        let (y, value) = minimize_1d(&a, &b, &c, &domain.y_lo, &domain.y_hi);
        consider(&mut best, (x.clone(), y), value);
    }
    Ok(best.expect("box has four edges"))
}

fn consider(
    best: &mut Option<((Rational, Rational), Rational)>,
    argmin: (Rational, Rational),
    value: Rational,
) {
    match best {
        Some((_, v)) if *v <= value => {}
        _ => *best = Some((argmin, value)),
    }
}

/// Minimum of `a s^2 + b s + c` over `[lo, hi]` for `a >= 0`.
fn minimize_1d(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    lo: &Rational,
    hi: &Rational,
) -> (Rational, Rational) {
    let s = if a.is_positive() {
        let vertex = -b / (rat_int(2) * a);
        if vertex < *lo {
            lo.clone()
        } else if vertex > *hi {
            hi.clone()
        } else {
            vertex
        }
    } else if b.is_positive() {
        lo.clone()
    } else if b.is_negative() {
        hi.clone()
    } else {
        lo.clone()
    };
    let value = a * &s * &s + b * &s + c;
    (s, value)
}

/// Expected outcome of a case: an exact minimum with its minimizer, or a
/// lower-bound-only check when no minimizer is recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpectedMin {
    Exact { min: Rational, argmin: (Rational, Rational) },
    AtLeast { bound: Rational },
}

/// A named chain configuration with its domain and expected minimum.
#[derive(Debug, Clone)]
pub struct QuadraticFormCase {
    pub name: &'static str,
    pub chain: Vec<SymbolicPoint>,
    pub domain: Rect,
    pub expected: ExpectedMin,
    /// Transcription of the published form, when one exists, for the
    /// re-derivation check. Built term by term from the printed summands.
    pub printed_form: Option<QuadraticForm>,
    /// True for sub-cases whose labels were normalized to a/b/c order.
    pub label_normalized: bool,
}

// Square corners: A bottom-left, B top-left, C top-right, D bottom-right.
fn corner_a() -> SymbolicPoint {
    SymbolicPoint::fixed(rat_int(0), rat_int(0))
}
fn corner_b() -> SymbolicPoint {
    SymbolicPoint::fixed(rat_int(0), rat_int(1))
}
fn corner_c() -> SymbolicPoint {
    SymbolicPoint::fixed(rat_int(1), rat_int(1))
}
fn corner_d() -> SymbolicPoint {
    SymbolicPoint::fixed(rat_int(1), rat_int(0))
}

/// Bottom-side point shifted left of the side's center by `x`: `(1/2 - x, 0)`.
fn point_e() -> SymbolicPoint {
    SymbolicPoint::new(
        AffineExpr::new(rat(1, 2), rat_int(-1), rat_int(0)),
        AffineExpr::constant(rat_int(0)),
    )
}

/// Mid-vertical point at height `y`: `(1/2, y)`.
fn point_g() -> SymbolicPoint {
    SymbolicPoint::new(
        AffineExpr::constant(rat(1, 2)),
        AffineExpr::new(rat_int(0), rat_int(0), rat_int(1)),
    )
}

/// Bottom-side point at distance `x` from the left corner: `(x, 0)`.
fn point_o() -> SymbolicPoint {
    SymbolicPoint::new(
        AffineExpr::new(rat_int(0), rat_int(1), rat_int(0)),
        AffineExpr::constant(rat_int(0)),
    )
}

fn two_var_domain() -> Rect {
    Rect::new(rat(-1, 2), rat(1, 2), rat_int(0), rat_int(1))
}

fn x_only_domain(lo: Rational, hi: Rational) -> Rect {
    Rect::new(lo, hi, rat_int(0), rat_int(0))
}

fn sq(c0: (i64, i64), cx: i64, cy: i64) -> QuadraticForm {
    QuadraticForm::square_of(&AffineExpr::new(rat(c0.0, c0.1), rat_int(cx), rat_int(cy)))
}

/// The full built-in case set, chains stored geometrically.
pub fn builtin_cases() -> Vec<QuadraticFormCase> {
    let (a, b, c, d, e, g, o) = (
        corner_a(),
        corner_b(),
        corner_c(),
        corner_d(),
        point_e(),
        point_g(),
        point_o(),
    );
    let const_form = |v: Rational| QuadraticForm::constant(v);
    vec![
        // Double passage through a bottom-side point O at distance x from A:
        // chain A O B C O D, printed as 2x^2 + 3 + 2(1-x)^2 after dropping
        // the degenerate first/last links.
        QuadraticFormCase {
            name: "soe",
            chain: vec![a.clone(), o.clone(), b.clone(), c.clone(), o.clone(), d.clone()],
            domain: x_only_domain(rat_int(0), rat_int(1)),
            expected: ExpectedMin::Exact { min: rat_int(4), argmin: (rat(1, 2), rat_int(0)) },
            printed_form: Some(
                sq((0, 1), 1, 0)
                    .add(&sq((0, 1), 1, 0))
                    .add(&const_form(rat_int(3)))
                    .add(&sq((1, 1), -1, 0))
                    .add(&sq((1, 1), -1, 0)),
            ),
            label_normalized: false,
        },
        // Pre-case AEBCDE: 3x^2 - x + 3 3/4.
        QuadraticFormCase {
            name: "aebcde",
            chain: vec![a.clone(), e.clone(), b.clone(), c.clone(), d.clone(), e.clone()],
            domain: x_only_domain(rat(-1, 2), rat(1, 2)),
            expected: ExpectedMin::Exact { min: rat(11, 3), argmin: (rat(1, 6), rat_int(0)) },
            printed_form: Some(QuadraticForm {
                qxx: rat_int(3),
                qx: rat_int(-1),
                q0: rat(15, 4),
                ..Default::default()
            }),
            label_normalized: false,
        },
        // Sibling chains bounded below by 4 (no printed forms or minimizers).
        QuadraticFormCase {
            name: "abecde",
            chain: vec![a.clone(), b.clone(), e.clone(), c.clone(), d.clone(), e.clone()],
            domain: x_only_domain(rat(-1, 2), rat(1, 2)),
            expected: ExpectedMin::AtLeast { bound: rat_int(4) },
            printed_form: None,
            label_normalized: false,
        },
        QuadraticFormCase {
            name: "abeced",
            chain: vec![a.clone(), b.clone(), e.clone(), c.clone(), e.clone(), d.clone()],
            domain: x_only_domain(rat(-1, 2), rat(1, 2)),
            expected: ExpectedMin::AtLeast { bound: rat_int(4) },
            printed_form: None,
            label_normalized: false,
        },
        QuadraticFormCase {
            name: "aebced",
            chain: vec![a.clone(), e.clone(), b.clone(), c.clone(), e.clone(), d.clone()],
            domain: x_only_domain(rat(-1, 2), rat(1, 2)),
            expected: ExpectedMin::AtLeast { bound: rat_int(4) },
            printed_form: None,
            label_normalized: false,
        },
        // Two-variable sub-cases. 1a/1b/1c: G visited before E.
        QuadraticFormCase {
            name: "1a",
            chain: vec![g.clone(), e.clone(), a.clone(), g.clone(), b.clone(), c.clone(), d.clone(), e.clone()],
            domain: two_var_domain(),
            expected: ExpectedMin::Exact { min: rat(11, 3), argmin: (rat_int(0), rat(1, 3)) },
            printed_form: Some(
                sq((0, 1), 1, 0)
                    .add(&sq((0, 1), 0, 1))
                    .add(&sq((1, 2), -1, 0))
                    .add(&const_form(rat(1, 4)))
                    .add(&sq((0, 1), 0, 1))
                    .add(&const_form(rat(1, 4)))
                    .add(&sq((1, 1), 0, -1))
                    .add(&const_form(rat_int(2)))
                    .add(&sq((1, 2), 1, 0)),
            ),
            label_normalized: true,
        },
        QuadraticFormCase {
            name: "1b",
            chain: vec![g.clone(), e.clone(), a.clone(), b.clone(), g.clone(), c.clone(), d.clone(), e.clone()],
            domain: two_var_domain(),
            expected: ExpectedMin::Exact { min: rat(11, 3), argmin: (rat_int(0), rat(2, 3)) },
            printed_form: Some(
                sq((0, 1), 1, 0)
                    .add(&sq((0, 1), 0, 1))
                    .add(&sq((1, 2), -1, 0))
                    .add(&const_form(rat_int(1)))
                    .add(&const_form(rat(1, 4)))
                    .add(&sq((1, 1), 0, -1))
                    .add(&const_form(rat(1, 4)))
                    .add(&sq((1, 1), 0, -1))
                    .add(&const_form(rat_int(1)))
                    .add(&sq((1, 2), 1, 0)),
            ),
            label_normalized: true,
        },
        QuadraticFormCase {
            name: "1c",
            chain: vec![g.clone(), e.clone(), a.clone(), b.clone(), c.clone(), g.clone(), d.clone(), e.clone()],
            domain: two_var_domain(),
            expected: ExpectedMin::Exact { min: rat(11, 3), argmin: (rat_int(0), rat(1, 3)) },
            printed_form: Some(
                sq((0, 1), 1, 0)
                    .add(&sq((0, 1), 0, 1))
                    .add(&sq((1, 2), -1, 0))
                    .add(&const_form(rat_int(2)))
                    .add(&const_form(rat(1, 4)))
                    .add(&sq((1, 1), 0, -1))
                    .add(&const_form(rat(1, 4)))
                    .add(&sq((0, 1), 0, 1))
                    .add(&sq((1, 2), 1, 0)),
            ),
            label_normalized: true,
        },
        // 2a/2b/2c: E visited before G.
        QuadraticFormCase {
            name: "2a",
            chain: vec![e.clone(), g.clone(), a.clone(), g.clone(), b.clone(), c.clone(), d.clone(), e.clone()],
            domain: two_var_domain(),
            expected: ExpectedMin::Exact { min: rat(29, 8), argmin: (rat(-1, 4), rat(1, 4)) },
            printed_form: Some(
                sq((0, 1), 1, 0)
                    .add(&sq((0, 1), 0, 1))
                    .add(&const_form(rat(1, 2)))
                    .add(&sq((0, 1), 0, 1))
                    .add(&sq((0, 1), 0, 1))
                    .add(&const_form(rat(1, 4)))
                    .add(&sq((1, 1), 0, -1))
                    .add(&const_form(rat_int(2)))
                    .add(&sq((1, 2), 1, 0)),
            ),
            label_normalized: true,
        },
        QuadraticFormCase {
            name: "2b",
            chain: vec![e.clone(), g.clone(), a.clone(), b.clone(), g.clone(), c.clone(), d.clone(), e.clone()],
            domain: two_var_domain(),
            expected: ExpectedMin::Exact { min: rat(31, 8), argmin: (rat(-1, 4), rat(1, 2)) },
            printed_form: Some(
                sq((0, 1), 1, 0)
                    .add(&sq((0, 1), 0, 1))
                    .add(&const_form(rat(1, 4)))
                    .add(&sq((0, 1), 0, 1))
                    .add(&const_form(rat_int(1)))
                    .add(&const_form(rat(1, 2)))
                    .add(&sq((1, 1), 0, -1))
                    .add(&sq((1, 1), 0, -1))
                    .add(&const_form(rat_int(1)))
                    .add(&sq((1, 2), 1, 0)),
            ),
            label_normalized: true,
        },
        QuadraticFormCase {
            name: "2c",
            chain: vec![e.clone(), g.clone(), a, b, c, g.clone(), d, e],
            domain: two_var_domain(),
            expected: ExpectedMin::Exact { min: rat(29, 8), argmin: (rat(-1, 4), rat(1, 4)) },
            printed_form: Some(
                sq((0, 1), 1, 0)
                    .add(&sq((0, 1), 0, 1))
                    .add(&const_form(rat(1, 4)))
                    .add(&sq((0, 1), 0, 1))
                    .add(&const_form(rat_int(2)))
                    .add(&const_form(rat(1, 4)))
                    .add(&sq((1, 1), 0, -1))
                    .add(&const_form(rat(1, 4)))
                    .add(&sq((0, 1), 0, 1))
                    .add(&sq((1, 2), 1, 0)),
            ),
            label_normalized: true,
        },
    ]
}

/// Result of checking one case.
#[derive(Debug, Clone)]
pub struct CaseOutcome {
    pub name: String,
    pub chain: Vec<SymbolicPoint>,
    pub derived_form: QuadraticForm,
    pub computed_argmin: (Rational, Rational),
    pub computed_min: Rational,
    pub expected: ExpectedMin,
    /// `None` when the case has no transcribed form to compare against.
    pub form_matches_printed: Option<bool>,
    pub label_normalized: bool,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct CaseReport {
    pub outcomes: Vec<CaseOutcome>,
    pub all_pass: bool,
}

/// Expands, minimizes and judges one case.
pub fn verify_case(case: &QuadraticFormCase) -> CaseOutcome {
    let derived = expand_chain(&case.chain).expect("builtin chains have >= 2 points");
    let form_matches_printed = case.printed_form.as_ref().map(|p| *p == derived);
    let ((x, y), min) = minimize_form(&derived, &case.domain).expect("builtin forms are convex");
    let values_match = match &case.expected {
        ExpectedMin::Exact { min: want_min, argmin } => {
            min == *want_min && x == argmin.0 && y == argmin.1
        }
        ExpectedMin::AtLeast { bound } => min >= *bound,
    };
    let pass = values_match && form_matches_printed.unwrap_or(true);
    CaseOutcome {
        name: case.name.to_string(),
        chain: case.chain.clone(),
        derived_form: derived,
        computed_argmin: (x, y),
        computed_min: min,
        expected: case.expected.clone(),
        form_matches_printed,
        label_normalized: case.label_normalized,
        pass,
    }
}

/// Runs every built-in case.
pub fn verify_all_cases() -> CaseReport {
    let outcomes: Vec<CaseOutcome> = builtin_cases().iter().map(verify_case).collect();
    let all_pass = outcomes.iter().all(|o| o.pass);
    CaseReport { outcomes, all_pass }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case_by_name(name: &str) -> QuadraticFormCase {
        builtin_cases()
            .into_iter()
            .find(|c| c.name == name)
            .unwrap_or_else(|| panic!("missing case {name}"))
    }

    #[test]
    fn two_point_chain_is_a_pure_quadratic() {
        let chain = vec![
            SymbolicPoint::fixed(rat(-1, 2), rat_int(0)),
            point_e(),
        ];
        let form = expand_chain(&chain).unwrap();
        assert_eq!(form.qxx, rat_int(1));
        assert!(form.qyy.is_zero() && form.qxy.is_zero() && form.qy.is_zero());
    }

    #[test]
    fn case_2a_expands_to_the_printed_form() {
        let case = case_by_name("2a");
        let derived = expand_chain(&case.chain).unwrap();
        assert_eq!(Some(derived.clone()), case.printed_form);
        // 2x^2 + x + 4y^2 - 2y + 4 written out.
        assert_eq!(derived.qxx, rat_int(2));
        assert_eq!(derived.qx, rat_int(1));
        assert_eq!(derived.qyy, rat_int(4));
        assert_eq!(derived.qy, rat_int(-2));
        assert_eq!(derived.q0, rat_int(4));
    }

    #[test]
    fn aebcde_expands_to_three_x_squared_minus_x() {
        let case = case_by_name("aebcde");
        let derived = expand_chain(&case.chain).unwrap();
        assert_eq!(derived.qxx, rat_int(3));
        assert_eq!(derived.qx, rat_int(-1));
        assert_eq!(derived.q0, rat(15, 4));
        assert!(derived.qyy.is_zero() && derived.qxy.is_zero() && derived.qy.is_zero());
    }

    #[test]
    fn minimize_2a_and_2b() {
        let a = case_by_name("2a");
        let form = expand_chain(&a.chain).unwrap();
        let ((x, y), min) = minimize_form(&form, &a.domain).unwrap();
        assert_eq!((x, y, min), (rat(-1, 4), rat(1, 4), rat(29, 8)));

        let b = case_by_name("2b");
        let form = expand_chain(&b.chain).unwrap();
        let ((x, y), min) = minimize_form(&form, &b.domain).unwrap();
        assert_eq!((x, y, min), (rat(-1, 4), rat(1, 2), rat(31, 8)));
    }

    #[test]
    fn minimize_nonnegative_form_vanishing_inside() {
        let form = QuadraticForm {
            qxx: rat_int(1),
            qyy: rat_int(1),
            ..Default::default()
        };
        let ((x, y), min) = minimize_form(&form, &two_var_domain()).unwrap();
        assert_eq!((x, y, min), (rat_int(0), rat_int(0), rat_int(0)));
    }

    #[test]
    fn soe_minimum_is_four_at_the_midpoint() {
        let case = case_by_name("soe");
        let out = verify_case(&case);
        assert!(out.pass);
        assert_eq!(out.computed_min, rat_int(4));
        assert_eq!(out.computed_argmin.0, rat(1, 2));
    }

    #[test]
    fn non_convex_form_is_rejected() {
        let form = QuadraticForm {
            qxx: rat_int(-1),
            ..Default::default()
        };
        assert_eq!(
            minimize_form(&form, &two_var_domain()),
            Err(CaseError::NonConvex)
        );
        // Indefinite via the cross term.
        let saddle = QuadraticForm {
            qxx: rat_int(1),
            qyy: rat_int(1),
            qxy: rat_int(3),
            ..Default::default()
        };
        assert!(!saddle.is_convex());
    }

    #[test]
    fn all_builtin_cases_pass() {
        let report = verify_all_cases();
        assert!(report.all_pass, "failures: {:?}", report
            .outcomes
            .iter()
            .filter(|o| !o.pass)
            .map(|o| o.name.clone())
            .collect::<Vec<_>>());
        assert_eq!(report.outcomes.len(), 11);
    }

    #[test]
    fn perturbed_constant_term_fails_with_the_exact_gap() {
        let case = case_by_name("1a");
        let derived = expand_chain(&case.chain).unwrap();
        let perturbed = derived.add(&QuadraticForm::constant(rat(1, 100)));
        let ((_, _), min) = minimize_form(&perturbed, &case.domain).unwrap();
        match &case.expected {
            ExpectedMin::Exact { min: want, .. } => {
                assert_ne!(&min, want);
                assert_eq!(&min - want, rat(1, 100));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn interior_cases_have_matching_critical_points() {
        for name in ["1a", "1b", "1c", "2a", "2b", "2c"] {
            let case = case_by_name(name);
            let form = expand_chain(&case.chain).unwrap();
            let det = rat_int(4) * &form.qxx * &form.qyy - &form.qxy * &form.qxy;
            assert!(det.is_positive(), "{name} should be definite");
            let x = (&form.qxy * &form.qy - rat_int(2) * &form.qyy * &form.qx) / &det;
            let y = (&form.qxy * &form.qx - rat_int(2) * &form.qxx * &form.qy) / &det;
            match &case.expected {
                ExpectedMin::Exact { argmin, .. } => {
                    assert_eq!((x, y), (argmin.0.clone(), argmin.1.clone()), "{name}");
                }
                _ => unreachable!(),
            }
            assert!(case.domain.x_lo < case.domain.x_hi && case.domain.y_lo < case.domain.y_hi);
        }
    }

    #[test]
    fn random_domain_points_never_beat_the_minimum() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for case in builtin_cases() {
            let form = expand_chain(&case.chain).unwrap();
            let (_, min) = minimize_form(&form, &case.domain).unwrap();
            for _ in 0..100 {
                let den = rng.gen_range(1..200i64);
                let x_span = &case.domain.x_hi - &case.domain.x_lo;
                let y_span = &case.domain.y_hi - &case.domain.y_lo;
                let x = &case.domain.x_lo + x_span * rat(rng.gen_range(0..=den), den);
                let y = &case.domain.y_lo + y_span * rat(rng.gen_range(0..=den), den);
                assert!(form.eval(&x, &y) >= min, "{} at ({x}, {y})", case.name);
            }
        }
    }
}
