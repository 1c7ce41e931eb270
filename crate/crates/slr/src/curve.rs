//! Sampled curves: time-parameterized polylines and visit moments.

use crate::geometry::Point2;
use crate::rational::{rat_int, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// One sample `(t, f(t))` of a curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamSample {
    pub t: Rational,
    pub point: Point2,
}

impl ParamSample {
    pub fn new(t: Rational, point: Point2) -> Self {
        ParamSample { t, point }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("invariant violated: a polyline curve needs at least two samples")]
    TooFewSamples,
    #[error("invariant violated: sample times must be strictly increasing (index {0})")]
    TimesNotIncreasing(usize),
    #[error("invariant violated: first sample time must be 0")]
    FirstTimeNotZero,
    #[error("invariant violated: last sample time must be 1")]
    LastTimeNotOne,
    #[error("invariant violated: sample time outside [0, 1] (index {0})")]
    TimeOutOfRange(usize),
    #[error("tolerance must be nonnegative")]
    NegativeTolerance,
    #[error("no sample within tolerance of the target point")]
    NotVisited,
}

/// Finite sample of a curve `[0,1] -> R^2` with strictly increasing times
/// starting at 0 and ending at 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolylineCurve {
    samples: Vec<ParamSample>,
}

impl PolylineCurve {
    pub fn new(samples: Vec<ParamSample>) -> Result<Self, CurveError> {
        if samples.len() < 2 {
            return Err(CurveError::TooFewSamples);
        }
        if !samples[0].t.is_zero() {
            return Err(CurveError::FirstTimeNotZero);
        }
        if samples[samples.len() - 1].t != rat_int(1) {
            return Err(CurveError::LastTimeNotOne);
        }
        for (i, s) in samples.iter().enumerate() {
            if s.t.is_negative() || s.t > rat_int(1) {
                return Err(CurveError::TimeOutOfRange(i));
            }
            if i > 0 && samples[i - 1].t >= s.t {
                return Err(CurveError::TimesNotIncreasing(i));
            }
        }
        Ok(PolylineCurve { samples })
    }

    pub fn samples(&self) -> &[ParamSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// First and last visit times of `target`, where a sample counts as a
    /// visit when it lies within Euclidean distance `tol`.
    pub fn first_last_moments(
        &self,
        target: &Point2,
        tol: &Rational,
    ) -> Result<VisitMoments, CurveError> {
        if tol.is_negative() {
            return Err(CurveError::NegativeTolerance);
        }
        let tol_sq = tol * tol;
        let mut first: Option<&Rational> = None;
        let mut last: Option<&Rational> = None;
        for s in &self.samples {
            if s.point.dist_sq(target) <= tol_sq {
                if first.is_none() {
                    first = Some(&s.t);
                }
                last = Some(&s.t);
            }
        }
        match (first, last) {
            (Some(f), Some(l)) => Ok(VisitMoments {
                first: f.clone(),
                last: l.clone(),
            }),
            _ => Err(CurveError::NotVisited),
        }
    }

    /// All visit times of `target` within `tol`, in increasing order.
    pub fn visit_times(&self, target: &Point2, tol: &Rational) -> Vec<Rational> {
        let tol_sq = tol * tol;
        self.samples
            .iter()
            .filter(|s| s.point.dist_sq(target) <= tol_sq)
            .map(|s| s.t.clone())
            .collect()
    }
}

/// First and last moments a curve passes through a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisitMoments {
    pub first: Rational,
    pub last: Rational,
}

/// Integer rescaling of a curve used as a fast path by the scan and chain
/// search routines. `xs[i] / coord_den` recovers the exact coordinate.
#[derive(Debug, Clone)]
pub(crate) struct ScaledCurve {
    pub xs: Vec<i64>,
    pub ys: Vec<i64>,
    pub ts: Vec<i64>,
    pub coord_den: BigInt,
    pub time_den: BigInt,
}

const MAX_COORD_SCALED: i64 = 1 << 20;
const MAX_TIME_DEN: i64 = 1 << 31;

impl ScaledCurve {
    /// Attempts the rescaling; gives up (returning `None`) when denominators
    /// or magnitudes would overflow the integer budget.
    pub fn try_from_samples(samples: &[ParamSample]) -> Option<ScaledCurve> {
        let mut coord_den = BigInt::from(1);
        let mut time_den = BigInt::from(1);
        for s in samples {
            coord_den = coord_den.lcm(s.point.x.denom());
            coord_den = coord_den.lcm(s.point.y.denom());
            time_den = time_den.lcm(s.t.denom());
        }
        if coord_den.to_i64()? > MAX_COORD_SCALED || time_den.to_i64()? > MAX_TIME_DEN {
            return None;
        }
        let mut xs = Vec::with_capacity(samples.len());
        let mut ys = Vec::with_capacity(samples.len());
        let mut ts = Vec::with_capacity(samples.len());
        for s in samples {
            xs.push(scale_to_i64(&s.point.x, &coord_den, MAX_COORD_SCALED)?);
            ys.push(scale_to_i64(&s.point.y, &coord_den, MAX_COORD_SCALED)?);
            ts.push(scale_to_i64(&s.t, &time_den, MAX_TIME_DEN)?);
        }
        Some(ScaledCurve { xs, ys, ts, coord_den, time_den })
    }

    pub fn dist_sq(&self, i: usize, j: usize) -> i64 {
        let dx = self.xs[i] - self.xs[j];
        let dy = self.ys[i] - self.ys[j];
        dx * dx + dy * dy
    }

    /// Exact ratio `dist_sq(i, j) / (t_j - t_i)` as a rational.
    pub fn ratio(&self, i: usize, j: usize) -> Rational {
        let num = BigInt::from(self.dist_sq(i, j)) * &self.time_den;
        let den = BigInt::from(self.ts[j] - self.ts[i]) * &self.coord_den * &self.coord_den;
        Rational::new(num, den)
    }
}

fn scale_to_i64(r: &Rational, den: &BigInt, cap: i64) -> Option<i64> {
    let v = (r.numer() * (den / r.denom())).to_i64()?;
    if v.abs() > cap {
        None
    } else {
        Some(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(x: (i64, i64), y: (i64, i64)) -> Point2 {
        Point2::new(rat(x.0, x.1), rat(y.0, y.1))
    }

    fn curve(samples: Vec<(Rational, Point2)>) -> Result<PolylineCurve, CurveError> {
        PolylineCurve::new(
            samples
                .into_iter()
                .map(|(t, point)| ParamSample { t, point })
                .collect(),
        )
    }

    #[test]
    fn validation_rejects_bad_time_sequences() {
        let a = p((0, 1), (0, 1));
        let b = p((1, 1), (1, 1));
        assert!(matches!(
            curve(vec![(rat(0, 1), a.clone())]),
            Err(CurveError::TooFewSamples)
        ));
        assert!(matches!(
            curve(vec![(rat(1, 4), a.clone()), (rat(1, 1), b.clone())]),
            Err(CurveError::FirstTimeNotZero)
        ));
        assert!(matches!(
            curve(vec![(rat(0, 1), a.clone()), (rat(3, 4), b.clone())]),
            Err(CurveError::LastTimeNotOne)
        ));
        assert!(matches!(
            curve(vec![
                (rat(0, 1), a.clone()),
                (rat(1, 2), b.clone()),
                (rat(1, 2), a.clone()),
                (rat(1, 1), b.clone()),
            ]),
            Err(CurveError::TimesNotIncreasing(2))
        ));
    }

    #[test]
    fn single_visit_has_equal_moments() {
        let c = curve(vec![
            (rat(0, 1), p((0, 1), (0, 1))),
            (rat(1, 2), p((1, 2), (1, 2))),
            (rat(1, 1), p((1, 1), (0, 1))),
        ])
        .unwrap();
        let m = c
            .first_last_moments(&p((0, 1), (0, 1)), &rat(0, 1))
            .unwrap();
        assert_eq!(m.first, rat(0, 1));
        assert_eq!(m.last, rat(0, 1));
    }

    #[test]
    fn huge_tolerance_covers_everything() {
        let c = curve(vec![
            (rat(0, 1), p((0, 1), (0, 1))),
            (rat(1, 3), p((1, 2), (1, 2))),
            (rat(1, 1), p((1, 1), (0, 1))),
        ])
        .unwrap();
        let m = c.first_last_moments(&p((1, 2), (0, 1)), &rat_int(10)).unwrap();
        assert_eq!(m.first, rat(0, 1));
        assert_eq!(m.last, rat(1, 1));
        assert!(m.first <= m.last);
    }

    #[test]
    fn miss_reports_not_visited() {
        let c = curve(vec![
            (rat(0, 1), p((0, 1), (0, 1))),
            (rat(1, 1), p((1, 1), (0, 1))),
        ])
        .unwrap();
        assert!(matches!(
            c.first_last_moments(&p((1, 2), (1, 1)), &rat(1, 100)),
            Err(CurveError::NotVisited)
        ));
        assert!(matches!(
            c.first_last_moments(&p((0, 1), (0, 1)), &rat(-1, 2)),
            Err(CurveError::NegativeTolerance)
        ));
    }

    #[test]
    fn scaled_curve_round_trips_ratios() {
        let c = curve(vec![
            (rat(0, 1), p((0, 1), (0, 1))),
            (rat(1, 4), p((1, 2), (0, 1))),
            (rat(1, 1), p((1, 1), (1, 1))),
        ])
        .unwrap();
        let sc = ScaledCurve::try_from_samples(c.samples()).unwrap();
        assert_eq!(sc.ratio(0, 1), rat(1, 1));
        let exact = c.samples()[2].point.dist_sq(&c.samples()[0].point)
            / (&c.samples()[2].t - &c.samples()[0].t);
        assert_eq!(sc.ratio(0, 2), exact);
    }
}
