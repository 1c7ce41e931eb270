//! Self-similar square-filling curves defined by affine sub-maps and time
//! weights, with exact evaluation and refinement.

use crate::curve::{ParamSample, PolylineCurve};
use crate::geometry::{AffineMap, Point2, Rect};
use crate::rational::{format_rational, in_unit_interval, parse_rational, rat_int, Rational};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecInvariantError {
    #[error("invariant violated: spec needs at least one sub-map")]
    NoSubMaps,
    #[error("invariant violated: sub_maps and time_weights must have equal length")]
    WeightCountMismatch,
    #[error("invariant violated: time_weights must be positive (index {0})")]
    WeightNotPositive(usize),
    #[error("invariant violated: time_weights must sum to 1 exactly")]
    WeightSumNotOne,
    #[error("invariant violated: continuity fails between sub-maps {0} and {1}")]
    Discontinuity(usize, usize),
    #[error("invariant violated: first sub-map must fix the entry point")]
    EntryNotFixed,
    #[error("invariant violated: last sub-map must fix the exit point")]
    ExitNotFixed,
    #[error("invariant violated: axis-aligned cell areas must sum to 1")]
    CoverageAreaSum,
    #[error("invariant violated: axis-aligned cells {0} and {1} have overlapping interiors")]
    CoverageOverlap(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("parameter must lie in [0, 1]")]
    ParameterOutOfRange,
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("refinement would produce more than {0} samples")]
    TooManySamples(usize),
}

/// Square-filling curve given by contracting affine sub-maps traversed in
/// order, each consuming its time weight of the parameter interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfSimilarCurveSpec {
    sub_maps: Vec<AffineMap>,
    time_weights: Vec<Rational>,
    entry: Point2,
    exit: Point2,
    coverage_verified: bool,
}

const MAX_VERTICES: usize = 2_000_000;

impl SelfSimilarCurveSpec {
    pub fn new(
        sub_maps: Vec<AffineMap>,
        time_weights: Vec<Rational>,
        entry: Point2,
        exit: Point2,
    ) -> Result<Self, SpecInvariantError> {
        if sub_maps.is_empty() {
            return Err(SpecInvariantError::NoSubMaps);
        }
        if sub_maps.len() != time_weights.len() {
            return Err(SpecInvariantError::WeightCountMismatch);
        }
        let mut sum = Rational::zero();
        for (i, w) in time_weights.iter().enumerate() {
            if !w.is_positive() {
                return Err(SpecInvariantError::WeightNotPositive(i));
            }
            sum += w;
        }
        if !sum.is_one() {
            return Err(SpecInvariantError::WeightSumNotOne);
        }
        for i in 0..sub_maps.len() - 1 {
            if sub_maps[i].apply(&exit) != sub_maps[i + 1].apply(&entry) {
                return Err(SpecInvariantError::Discontinuity(i, i + 1));
            }
        }
        if sub_maps[0].apply(&entry) != entry {
            return Err(SpecInvariantError::EntryNotFixed);
        }
        if sub_maps[sub_maps.len() - 1].apply(&exit) != exit {
            return Err(SpecInvariantError::ExitNotFixed);
        }
        let coverage_verified = if sub_maps.iter().all(AffineMap::is_axis_aligned_nondegenerate) {
            let rects: Vec<Rect> = sub_maps.iter().map(AffineMap::image_rect).collect();
            let area: Rational = rects.iter().map(Rect::area).sum();
            if !area.is_one() {
                return Err(SpecInvariantError::CoverageAreaSum);
            }
            for i in 0..rects.len() {
                for j in i + 1..rects.len() {
                    if rects[i].interiors_overlap(&rects[j]) {
                        return Err(SpecInvariantError::CoverageOverlap(i, j));
                    }
                }
            }
            true
        } else {
            false
        };
        Ok(SelfSimilarCurveSpec {
            sub_maps,
            time_weights,
            entry,
            exit,
            coverage_verified,
        })
    }

    pub fn sub_maps(&self) -> &[AffineMap] {
        &self.sub_maps
    }

    pub fn time_weights(&self) -> &[Rational] {
        &self.time_weights
    }

    pub fn entry(&self) -> &Point2 {
        &self.entry
    }

    pub fn exit(&self) -> &Point2 {
        &self.exit
    }

    /// False when some sub-map image is not an axis-aligned rectangle, in
    /// which case coverage of the unit square was not checked.
    pub fn coverage_verified(&self) -> bool {
        self.coverage_verified
    }

    /// Cumulative time boundaries `0 = c_0 < c_1 < ... < c_n = 1`.
    pub fn cumulative_times(&self) -> Vec<Rational> {
        let mut cum = Vec::with_capacity(self.time_weights.len() + 1);
        cum.push(Rational::zero());
        let mut acc = Rational::zero();
        for w in &self.time_weights {
            acc += w;
            cum.push(acc.clone());
        }
        cum
    }

    /// Depth-limited evaluation of the curve at parameter `t`.
    ///
    /// Descends `depth` levels into the recursion, picking the earlier cell
    /// when `t` sits exactly on a cell boundary, then maps the entry point of
    /// the reached cell (the exit point when the residual parameter is 1, so
    /// evaluation agrees with [`Self::vertices`] at vertex times).
    pub fn eval(&self, t: &Rational, depth: u32) -> Result<Point2, EvalError> {
        if !in_unit_interval(t) {
            return Err(EvalError::ParameterOutOfRange);
        }
        if depth == 0 {
            return Err(EvalError::ZeroDepth);
        }
        let cum = self.cumulative_times();
        let mut composite = AffineMap::identity();
        let mut local = t.clone();
        for _ in 0..depth {
            let k = self.cell_index(&cum, &local);
            local = (&local - &cum[k]) / &self.time_weights[k];
            composite = composite.compose(&self.sub_maps[k]);
        }
        let base = if local.is_one() { &self.exit } else { &self.entry };
        Ok(composite.apply(base))
    }

    /// Index of the cell whose time interval contains `t`, taking the
    /// earlier cell at interior boundaries.
    fn cell_index(&self, cum: &[Rational], t: &Rational) -> usize {
        for k in 0..self.time_weights.len() {
            if *t <= cum[k + 1] {
                return k;
            }
        }
        self.time_weights.len() - 1
    }

    /// Exact polyline through the entry points of every depth-`depth` cell,
    /// closed off with the global exit point at time 1.
    pub fn vertices(&self, depth: u32) -> Result<PolylineCurve, EvalError> {
        if depth == 0 {
            return Err(EvalError::ZeroDepth);
        }
        let n = self.sub_maps.len();
        let mut count: usize = 1;
        for _ in 0..depth {
            count = count
                .checked_mul(n)
                .filter(|c| *c <= MAX_VERTICES)
                .ok_or(EvalError::TooManySamples(MAX_VERTICES))?;
        }
        let cum = self.cumulative_times();
        let mut samples = Vec::with_capacity(count + 1);
        self.collect_entries(
            depth,
            &cum,
            &AffineMap::identity(),
            &Rational::zero(),
            &Rational::one(),
            &mut samples,
        );
        samples.push(ParamSample::new(rat_int(1), self.exit.clone()));
        Ok(PolylineCurve::new(samples).expect("vertices produce a valid polyline"))
    }

    fn collect_entries(
        &self,
        depth: u32,
        cum: &[Rational],
        composite: &AffineMap,
        t_start: &Rational,
        t_scale: &Rational,
        out: &mut Vec<ParamSample>,
    ) {
        if depth == 0 {
            out.push(ParamSample::new(t_start.clone(), composite.apply(&self.entry)));
            return;
        }
        for (k, map) in self.sub_maps.iter().enumerate() {
            let child = composite.compose(map);
            let child_start = t_start + t_scale * &cum[k];
            let child_scale = t_scale * &self.time_weights[k];
            self.collect_entries(depth - 1, cum, &child, &child_start, &child_scale, out);
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SpecLoadError {
    #[error("malformed curve-spec JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed rational in curve spec: {0}")]
    Rational(#[from] crate::rational::RationalParseError),
    #[error(transparent)]
    Invariant(#[from] SpecInvariantError),
}

#[derive(Serialize, Deserialize)]
struct SubMapFile {
    matrix: [[String; 2]; 2],
    translation: [String; 2],
}

#[derive(Serialize, Deserialize)]
struct CurveSpecFile {
    sub_maps: Vec<SubMapFile>,
    time_weights: Vec<String>,
    entry: [String; 2],
    exit: [String; 2],
}

/// Parses a curve-spec JSON document, rejecting any invariant violation with
/// a message naming the failed invariant.
pub fn load_curve_spec(json: &str) -> Result<SelfSimilarCurveSpec, SpecLoadError> {
    let file: CurveSpecFile = serde_json::from_str(json)?;
    let mut sub_maps = Vec::with_capacity(file.sub_maps.len());
    for m in &file.sub_maps {
        sub_maps.push(AffineMap::new(
            [
                [parse_rational(&m.matrix[0][0])?, parse_rational(&m.matrix[0][1])?],
                [parse_rational(&m.matrix[1][0])?, parse_rational(&m.matrix[1][1])?],
            ],
            [
                parse_rational(&m.translation[0])?,
                parse_rational(&m.translation[1])?,
            ],
        ));
    }
    let mut time_weights = Vec::with_capacity(file.time_weights.len());
    for w in &file.time_weights {
        time_weights.push(parse_rational(w)?);
    }
    let entry = Point2::new(parse_rational(&file.entry[0])?, parse_rational(&file.entry[1])?);
    let exit = Point2::new(parse_rational(&file.exit[0])?, parse_rational(&file.exit[1])?);
    Ok(SelfSimilarCurveSpec::new(sub_maps, time_weights, entry, exit)?)
}

/// Serializes a spec in the curve-spec file format.
pub fn curve_spec_to_json(spec: &SelfSimilarCurveSpec) -> String {
    let file = CurveSpecFile {
        sub_maps: spec
            .sub_maps()
            .iter()
            .map(|m| SubMapFile {
                matrix: [
                    [
                        format_rational(&m.matrix[0][0]),
                        format_rational(&m.matrix[0][1]),
                    ],
                    [
                        format_rational(&m.matrix[1][0]),
                        format_rational(&m.matrix[1][1]),
                    ],
                ],
                translation: [
                    format_rational(&m.translation[0]),
                    format_rational(&m.translation[1]),
                ],
            })
            .collect(),
        time_weights: spec.time_weights().iter().map(format_rational).collect(),
        entry: [
            format_rational(&spec.entry().x),
            format_rational(&spec.entry().y),
        ],
        exit: [
            format_rational(&spec.exit().x),
            format_rational(&spec.exit().y),
        ],
    };
    serde_json::to_string_pretty(&file).expect("spec serialization cannot fail")
}
