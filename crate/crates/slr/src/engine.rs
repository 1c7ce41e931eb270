//! Exact lower bounds and convergent upper bounds on the square-to-linear
//! ratio of a curve.
//!
//! The lower bound is the maximum pair ratio over a finite vertex sample,
//! which is always a valid lower bound on the supremum. The upper bound is a
//! best-first branch and bound over pairs of recursion cells whose sub-maps
//! are similarities with `r^2 <= w`; squared distances between cell bounding
//! boxes over positive time gaps dominate every separated pair, within-cell
//! pairs reduce to scaled copies of the global supremum, and pairs hugging a
//! shared cell boundary are capped by one-sided endpoint ratio suprema
//! combined through the Cauchy-Schwarz inequality.

use crate::curve::{ParamSample, PolylineCurve, ScaledCurve};
use crate::geometry::{AffineMap, Point2, Rect};
use crate::rational::{rat_int, Rational};
use crate::selfsimilar::SelfSimilarCurveSpec;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// An exact bound (or exact value) of a square-to-linear ratio.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlrValue {
    pub value: Rational,
    pub kind: BoundKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    ExactLower,
    ExactUpper,
    Exact,
}

/// A pair of curve samples achieving a reported ratio.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPair {
    pub t1: Rational,
    pub t2: Rational,
    pub p1: Point2,
    pub p2: Point2,
    pub ratio: Rational,
}

impl WitnessPair {
    /// Recomputes the ratio from the stored pair; used by validity checks.
    pub fn recompute_ratio(&self) -> Rational {
        self.p1.dist_sq(&self.p2) / (&self.t2 - &self.t1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SlrError {
    #[error("curve needs at least two samples")]
    TooFewSamples,
    #[error("target gap must be positive")]
    NonPositiveGap,
    #[error("node budget must be positive")]
    ZeroBudget,
    #[error("sub-map {0} is not a similarity; the cell reduction does not apply")]
    NotASimilarity(usize),
    #[error("sub-map {0} has squared ratio exceeding its time weight; within-cell pairs would dominate")]
    RatioExceedsWeight(usize),
    #[error("a single non-contracting sub-map does not determine a curve")]
    DegenerateSpec,
}

/// Exact maximum of `|p_i - p_j|^2 / (t_j - t_i)` over all sample pairs,
/// a valid lower bound on the curve's square-to-linear ratio.
pub fn pairwise_slr_lower(curve: &PolylineCurve) -> Result<(SlrValue, WitnessPair), SlrError> {
    pairwise_slr_lower_threaded(curve, 1)
}

/// Same scan split across `threads` workers; the merge is an exact max with
/// index tie-breaking, so the result does not depend on the worker count.
pub fn pairwise_slr_lower_threaded(
    curve: &PolylineCurve,
    threads: usize,
) -> Result<(SlrValue, WitnessPair), SlrError> {
    let (value, i, j) = pairwise_scan(curve, threads.max(1))?;
    let samples = curve.samples();
    let witness = WitnessPair {
        t1: samples[i].t.clone(),
        t2: samples[j].t.clone(),
        p1: samples[i].point.clone(),
        p2: samples[j].point.clone(),
        ratio: value.clone(),
    };
    Ok((SlrValue { value, kind: BoundKind::ExactLower }, witness))
}

/// Pair scan returning the best ratio with its witness sample indices.
/// Prefers the lexicographically smallest `(i, j)` among ties.
pub fn pairwise_scan(
    curve: &PolylineCurve,
    threads: usize,
) -> Result<(Rational, usize, usize), SlrError> {
    let samples = curve.samples();
    if samples.len() < 2 {
        return Err(SlrError::TooFewSamples);
    }
    match ScaledCurve::try_from_samples(samples) {
        Some(scaled) => Ok(pairwise_scan_scaled(&scaled, threads)),
        None => Ok(pairwise_scan_exact(samples)),
    }
}

/// Integer fast path. Ratios are compared by cross multiplication in i128.
fn pairwise_scan_scaled(sc: &ScaledCurve, threads: usize) -> (Rational, usize, usize) {
    let n = sc.ts.len();
    // Sound cutoff for the time-gap pruning: squared diameter of the hull.
    let diam_sq = scaled_diameter_sq(sc);
    let scan_range = |lo: usize, hi: usize| -> (i64, i64, usize, usize) {
        // Best ratio as a fraction (num, den); den > 0.
        let (mut bn, mut bd, mut bi, mut bj) = (0i64, 1i64, 0usize, 1usize);
        for i in lo..hi {
            for j in (i + 1)..n {
                let dt = sc.ts[j] - sc.ts[i];
                // Once even the diameter cannot beat the incumbent, no later
                // j can either.
                if (diam_sq as i128) * (bd as i128) < (bn as i128) * (dt as i128) {
                    break;
                }
                let d2 = sc.dist_sq(i, j);
                if (d2 as i128) * (bd as i128) > (bn as i128) * (dt as i128) {
                    (bn, bd, bi, bj) = (d2, dt, i, j);
                }
            }
        }
        (bn, bd, bi, bj)
    };
    let better = |a: &(i64, i64, usize, usize), b: &(i64, i64, usize, usize)| -> bool {
        // Strictly larger ratio, or equal ratio with smaller indices.
        let lhs = (a.0 as i128) * (b.1 as i128);
        let rhs = (b.0 as i128) * (a.1 as i128);
        lhs > rhs || (lhs == rhs && (a.2, a.3) < (b.2, b.3))
    };
    let workers = threads.min(n.max(1));
    let best = if workers <= 1 {
        scan_range(0, n)
    } else {
        let chunk = n.div_ceil(workers);
        let results = std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for w in 0..workers {
                let lo = w * chunk;
                let hi = ((w + 1) * chunk).min(n);
                let scan = &scan_range;
                handles.push(scope.spawn(move || scan(lo, hi)));
            }
            handles
                .into_iter()
                .map(|h| h.join().expect("scan worker panicked"))
                .collect::<Vec<_>>()
        });
        let mut best = results[0];
        for r in &results[1..] {
            if better(r, &best) {
                best = *r;
            }
        }
        best
    };
    (sc.ratio(best.2, best.3), best.2, best.3)
}

fn scaled_diameter_sq(sc: &ScaledCurve) -> i64 {
    let (mut x_lo, mut x_hi, mut y_lo, mut y_hi) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
    for (&x, &y) in sc.xs.iter().zip(&sc.ys) {
        x_lo = x_lo.min(x);
        x_hi = x_hi.max(x);
        y_lo = y_lo.min(y);
        y_hi = y_hi.max(y);
    }
    let dx = x_hi - x_lo;
    let dy = y_hi - y_lo;
    dx * dx + dy * dy
}

/// Rational fallback for curves whose denominators defeat the integer path.
fn pairwise_scan_exact(samples: &[ParamSample]) -> (Rational, usize, usize) {
    let rects = Rect::hull(samples.iter().map(|s| &s.point));
    let diam_sq = rects.diameter_sq();
    let (mut best, mut bi, mut bj) = (Rational::zero(), 0usize, 1usize);
    let mut best_set = false;
    for i in 0..samples.len() {
        for j in (i + 1)..samples.len() {
            let dt = &samples[j].t - &samples[i].t;
            if best_set && diam_sq < &best * &dt {
                break;
            }
            let ratio = samples[i].point.dist_sq(&samples[j].point) / dt;
            if !best_set || ratio > best {
                (best, bi, bj) = (ratio, i, j);
                best_set = true;
            }
        }
    }
    (best, bi, bj)
}

/// Parameters for the two-sided bound computation.
#[derive(Debug, Clone)]
pub struct BoundsParams {
    pub target_gap: Rational,
    pub max_depth: u32,
    pub budget: u64,
    pub threads: usize,
}

impl Default for BoundsParams {
    fn default() -> Self {
        BoundsParams {
            target_gap: Rational::new(1.into(), 10.into()),
            max_depth: 6,
            budget: 2_000_000,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct UpperBoundResult {
    pub value: SlrValue,
    pub nodes_expanded: u64,
    pub converged: bool,
    /// Lower bound the gap test compared against.
    pub lower: SlrValue,
    pub lower_witness: WitnessPair,
    pub lower_depth: u32,
}

/// Sound upper bound on the square-to-linear ratio of a self-similar curve.
///
/// Requires every sub-map to be a similarity with squared ratio at most its
/// time weight. Stops when the bound comes within `target_gap` of an exact
/// pairwise lower bound or when `budget` nodes have been expanded; the
/// returned bound is valid either way, `converged` tells which happened.
pub fn slr_upper_bound(
    spec: &SelfSimilarCurveSpec,
    target_gap: &Rational,
    budget: u64,
) -> Result<UpperBoundResult, SlrError> {
    slr_upper_bound_threaded(spec, target_gap, budget, 1)
}

pub fn slr_upper_bound_threaded(
    spec: &SelfSimilarCurveSpec,
    target_gap: &Rational,
    budget: u64,
    threads: usize,
) -> Result<UpperBoundResult, SlrError> {
    if !target_gap.is_positive() {
        return Err(SlrError::NonPositiveGap);
    }
    if budget == 0 {
        return Err(SlrError::ZeroBudget);
    }
    let ratios = similarity_ratios(spec)?;
    if spec.sub_maps().len() == 1 && !ratios[0].is_zero() && ratios[0] == spec.time_weights()[0] {
        return Err(SlrError::DegenerateSpec);
    }

    let depth = default_lower_depth(spec.sub_maps().len());
    let vertices = spec
        .vertices(depth)
        .expect("internal refinement depth is bounded");
    let (lower, lower_witness) = pairwise_slr_lower_threaded(&vertices, threads)?;

    let mut nodes: u64 = 0;
    // Keep the one-sided estimates tight regardless of the requested gap so
    // the boundary cap does not inflate the final bound.
    let mut sigma_tol = target_gap / rat_int(4);
    let ceiling = Rational::new(1.into(), 128.into());
    if sigma_tol > ceiling {
        sigma_tol = ceiling;
    }
    let sup_toward_end = one_sided_sup(spec, Side::End, &vertices, &sigma_tol, budget, &mut nodes);
    let sup_toward_start =
        one_sided_sup(spec, Side::Start, &vertices, &sigma_tol, budget, &mut nodes);

    let (value, converged) = cross_pair_search(
        spec,
        &ratios,
        &sup_toward_end,
        &sup_toward_start,
        &lower.value,
        target_gap,
        budget,
        &mut nodes,
    );
    Ok(UpperBoundResult {
        value: SlrValue { value, kind: BoundKind::ExactUpper },
        nodes_expanded: nodes,
        converged,
        lower,
        lower_witness,
        lower_depth: depth,
    })
}

/// Largest depth whose vertex count stays around a thousand samples.
fn default_lower_depth(cells: usize) -> u32 {
    let mut depth = 1u32;
    let mut count = cells;
    while count * cells < 1100 {
        count *= cells;
        depth += 1;
    }
    depth
}

fn similarity_ratios(spec: &SelfSimilarCurveSpec) -> Result<Vec<Rational>, SlrError> {
    let mut out = Vec::with_capacity(spec.sub_maps().len());
    for (k, (map, w)) in spec.sub_maps().iter().zip(spec.time_weights()).enumerate() {
        let r_sq = map.similarity_ratio_sq().ok_or(SlrError::NotASimilarity(k))?;
        if &r_sq > w {
            return Err(SlrError::RatioExceedsWeight(k));
        }
        out.push(r_sq);
    }
    Ok(out)
}

#[derive(Clone, Copy)]
enum Side {
    /// Supremum of `|f(t) - f(1)|^2 / (1 - t)`.
    End,
    /// Supremum of `|f(t) - f(0)|^2 / t`.
    Start,
}

/// One cell of the recursion tree tracked by the one-sided search.
struct SideNode {
    bound: Rational,
    composite: AffineMap,
    t_start: Rational,
    t_end: Rational,
    path: Vec<u8>,
}

impl SideNode {
    fn key(&self) -> &[u8] {
        &self.path
    }
}

impl PartialEq for SideNode {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound && self.path == other.path
    }
}
impl Eq for SideNode {}
impl PartialOrd for SideNode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for SideNode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound
            .cmp(&other.bound)
            .then_with(|| other.key().cmp(self.key()))
    }
}

/// Upper estimate of the one-sided endpoint ratio supremum.
///
/// For a measure-preserving spec the supremum over the whole interval equals
/// the supremum over the region that excludes the cell touching the endpoint
/// (the excluded cell reproduces the same supremum scaled by `r^2/w <= 1`),
/// and over that region every time gap is at least the excluded cell's
/// weight, so the cell refinement terminates.
fn one_sided_sup(
    spec: &SelfSimilarCurveSpec,
    side: Side,
    vertices: &PolylineCurve,
    tol: &Rational,
    budget: u64,
    nodes: &mut u64,
) -> Rational {
    let cum = spec.cumulative_times();
    let n = spec.sub_maps().len();
    let anchor_point = match side {
        Side::End => spec.exit().clone(),
        Side::Start => spec.entry().clone(),
    };
    let anchor_rect = Rect::hull([&anchor_point]);
    let gap_of = |t_start: &Rational, t_end: &Rational| -> Rational {
        match side {
            Side::End => rat_int(1) - t_end,
            Side::Start => t_start.clone(),
        }
    };

    // Exact sampled lower reference for the stopping test.
    let mut sampled = Rational::zero();
    for s in vertices.samples() {
        let gap = match side {
            Side::End => rat_int(1) - &s.t,
            Side::Start => s.t.clone(),
        };
        if gap.is_positive() {
            let r = s.point.dist_sq(&anchor_point) / gap;
            if r > sampled {
                sampled = r;
            }
        }
    }

    let mut heap: BinaryHeap<SideNode> = BinaryHeap::new();
    for k in 0..n {
        let excluded = match side {
            Side::End => k == n - 1,
            Side::Start => k == 0,
        };
        if excluded {
            continue;
        }
        let composite = spec.sub_maps()[k].clone();
        let (t_start, t_end) = (cum[k].clone(), cum[k + 1].clone());
        let gap = gap_of(&t_start, &t_end);
        let bound = composite.image_rect().max_dist_sq(&anchor_rect) / gap;
        heap.push(SideNode { bound, composite, t_start, t_end, path: vec![k as u8] });
    }

    loop {
        let done = match heap.peek() {
            None => true,
            Some(top) => top.bound <= &sampled + tol || *nodes >= budget,
        };
        if done {
            break;
        }
        let top = heap.pop().expect("heap is nonempty");
        *nodes += 1;
        let width = &top.t_end - &top.t_start;
        for k in 0..n {
            let composite = top.composite.compose(&spec.sub_maps()[k]);
            let t_start = &top.t_start + &width * &cum[k];
            let t_end = &top.t_start + &width * &cum[k + 1];
            let gap = gap_of(&t_start, &t_end);
            let mut bound = composite.image_rect().max_dist_sq(&anchor_rect) / gap;
            if bound > top.bound {
                bound = top.bound.clone();
            }
            // Track the exact ratio at the child's own anchor-side corner so
            // the sampled reference keeps improving.
            let probe = composite.apply(match side {
                Side::End => spec.entry(),
                Side::Start => spec.exit(),
            });
            let probe_gap = match side {
                Side::End => rat_int(1) - &t_start,
                Side::Start => t_end.clone(),
            };
            if probe_gap.is_positive() {
                let r = probe.dist_sq(&anchor_point) / probe_gap;
                if r > sampled {
                    sampled = r;
                }
            }
            let mut path = top.path.clone();
            path.push(k as u8);
            heap.push(SideNode { bound, composite, t_start, t_end, path });
        }
    }
    heap.peek().map(|n| n.bound.clone()).unwrap_or(sampled)
}

/// A pair of disjoint cells: the branch-and-bound node.
struct PairNode {
    bound: Rational,
    /// A terminal node's bound is final (boundary-hugging pair).
    terminal: bool,
    a: CellSide,
    b: CellSide,
}

#[derive(Clone)]
struct CellSide {
    composite: AffineMap,
    t_start: Rational,
    t_end: Rational,
    /// Product of squared similarity ratios along the path.
    ratio_sq: Rational,
    /// Product of time weights along the path.
    weight: Rational,
    path: Vec<u8>,
}

impl PairNode {
    fn key(&self) -> (&[u8], &[u8]) {
        (&self.a.path, &self.b.path)
    }
}

impl PartialEq for PairNode {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound && self.key() == other.key()
    }
}
impl Eq for PairNode {}
impl PartialOrd for PairNode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for PairNode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound
            .cmp(&other.bound)
            .then_with(|| other.key().cmp(&self.key()))
    }
}

#[allow(clippy::too_many_arguments)]
fn cross_pair_search(
    spec: &SelfSimilarCurveSpec,
    ratios: &[Rational],
    sup_toward_end: &Rational,
    sup_toward_start: &Rational,
    lower: &Rational,
    target_gap: &Rational,
    budget: u64,
    nodes: &mut u64,
) -> (Rational, bool) {
    let cum = spec.cumulative_times();
    let n = spec.sub_maps().len();
    let threshold = lower + target_gap;

    let cell = |k: usize| -> CellSide {
        CellSide {
            composite: spec.sub_maps()[k].clone(),
            t_start: cum[k].clone(),
            t_end: cum[k + 1].clone(),
            ratio_sq: ratios[k].clone(),
            weight: spec.time_weights()[k].clone(),
            path: vec![k as u8],
        }
    };

    let mut heap: BinaryHeap<PairNode> = BinaryHeap::new();
    let mut terminal_max = Rational::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            let node = make_node(spec, ratios, cell(i), cell(j), sup_toward_end, sup_toward_start, None);
            if node.terminal {
                if node.bound > terminal_max {
                    terminal_max = node.bound.clone();
                }
            } else {
                heap.push(node);
            }
        }
    }

    loop {
        let top_bound = heap.peek().map(|t| t.bound.clone());
        let upper = match &top_bound {
            Some(b) if *b > terminal_max => b.clone(),
            _ => terminal_max.clone(),
        };
        if upper <= threshold {
            return (upper, true);
        }
        match &top_bound {
            Some(b) if *b > terminal_max => {}
            // Every live node is capped by a terminal bound; no further
            // split can move the maximum.
            _ => return (upper, false),
        }
        if *nodes >= budget {
            return (upper, false);
        }
        let top = heap.pop().expect("peeked");
        *nodes += 1;
        let gap = &top.b.t_start - &top.a.t_end;
        let split_a = if gap.is_zero() {
            // Boundary-hugging pair with a strictly contracting tail: both
            // sides must refine.
            for i in 0..n {
                for j in 0..n {
                    let child = make_node(
                        spec,
                        ratios,
                        extend(&top.a, spec, ratios, &cum, i),
                        extend(&top.b, spec, ratios, &cum, j),
                        sup_toward_end,
                        sup_toward_start,
                        Some(&top.bound),
                    );
                    if child.terminal {
                        if child.bound > terminal_max {
                            terminal_max = child.bound.clone();
                        }
                    } else {
                        heap.push(child);
                    }
                }
            }
            continue;
        } else {
            &top.a.t_end - &top.a.t_start >= &top.b.t_end - &top.b.t_start
        };
        for k in 0..n {
            let (a, b) = if split_a {
                (extend(&top.a, spec, ratios, &cum, k), top.b.clone())
            } else {
                (top.a.clone(), extend(&top.b, spec, ratios, &cum, k))
            };
            let child = make_node(spec, ratios, a, b, sup_toward_end, sup_toward_start, Some(&top.bound));
            if child.terminal {
                if child.bound > terminal_max {
                    terminal_max = child.bound.clone();
                }
            } else {
                heap.push(child);
            }
        }
    }
}

fn extend(
    side: &CellSide,
    spec: &SelfSimilarCurveSpec,
    ratios: &[Rational],
    cum: &[Rational],
    k: usize,
) -> CellSide {
    let width = &side.t_end - &side.t_start;
    let mut path = side.path.clone();
    path.push(k as u8);
    CellSide {
        composite: side.composite.compose(&spec.sub_maps()[k]),
        t_start: &side.t_start + &width * &cum[k],
        t_end: &side.t_start + &width * &cum[k + 1],
        ratio_sq: &side.ratio_sq * &ratios[k],
        weight: &side.weight * &spec.time_weights()[k],
        path,
    }
}

fn make_node(
    spec: &SelfSimilarCurveSpec,
    ratios: &[Rational],
    a: CellSide,
    b: CellSide,
    sup_toward_end: &Rational,
    sup_toward_start: &Rational,
    parent_bound: Option<&Rational>,
) -> PairNode {
    let gap = &b.t_start - &a.t_end;
    let (mut bound, terminal) = if gap.is_positive() {
        let d = a.composite.image_rect().max_dist_sq(&b.composite.image_rect());
        (d / gap, false)
    } else {
        // Pairs hugging the shared boundary moment tau: for t1 in a and
        // t2 in b, Cauchy-Schwarz gives
        //   ratio(t1, t2) <= ratio(t1, tau) + ratio(tau, t2),
        // and each one-sided term is the global one-sided supremum scaled
        // by the cell's r^2/w product.
        let hug = &a.ratio_sq / &a.weight * sup_toward_end
            + &b.ratio_sq / &b.weight * sup_toward_start;
        // Splitting only helps if a deeper hug pair contracts strictly.
        let n = spec.sub_maps().len();
        let qa = &ratios[n - 1] / &spec.time_weights()[n - 1];
        let qb = &ratios[0] / &spec.time_weights()[0];
        let contracts = qa < Rational::one() || qb < Rational::one();
        (hug, !contracts)
    };
    if let Some(p) = parent_bound {
        if &bound > p {
            bound = p.clone();
        }
    }
    PairNode { bound, terminal, a, b }
}

#[derive(Debug, Clone)]
pub struct SlrBoundsResult {
    pub lower: SlrValue,
    pub upper: SlrValue,
    pub witness: WitnessPair,
    pub converged: bool,
    pub nodes_expanded: u64,
    pub depth: u32,
}

/// Two-sided bracket: deepens the vertex-based lower bound and pairs it with
/// the branch-and-bound upper bound until the bracket closes to `target_gap`
/// or `max_depth` is reached. The lower bound never decreases with depth
/// because vertex sets are nested under refinement.
pub fn slr_bounds(
    spec: &SelfSimilarCurveSpec,
    params: &BoundsParams,
) -> Result<SlrBoundsResult, SlrError> {
    if !params.target_gap.is_positive() {
        return Err(SlrError::NonPositiveGap);
    }
    let upper = slr_upper_bound_threaded(spec, &params.target_gap, params.budget, params.threads)?;
    let mut best_lower = upper.lower.clone();
    let mut best_witness = upper.lower_witness.clone();
    let mut depth = upper.lower_depth;
    let mut converged = &upper.value.value - &best_lower.value <= params.target_gap;
    let nodes = upper.nodes_expanded;
    let mut d = upper.lower_depth;
    while !converged && d < params.max_depth {
        d += 1;
        let vertices = match spec.vertices(d) {
            Ok(v) => v,
            Err(_) => break,
        };
        let (lower, witness) = pairwise_slr_lower_threaded(&vertices, params.threads)?;
        if lower.value > best_lower.value {
            best_lower = lower;
            best_witness = witness;
            depth = d;
        }
        converged = &upper.value.value - &best_lower.value <= params.target_gap;
    }
    Ok(SlrBoundsResult {
        lower: best_lower,
        upper: upper.value,
        witness: best_witness,
        converged,
        nodes_expanded: nodes,
        depth,
    })
}
