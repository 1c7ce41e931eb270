//! Chain certificates: a time-increasing chain of curve samples certifies
//! that the curve's square-to-linear ratio is at least the chain's sum of
//! squared link lengths divided by its time span. The maximum per-link ratio
//! always dominates that quotient, with equality exactly when every link
//! realizes the maximum.

use crate::curve::{ParamSample, PolylineCurve, ScaledCurve};
use crate::rational::Rational;
use crate::selfsimilar::{EvalError, SelfSimilarCurveSpec};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("a chain needs at least two nodes")]
    TooFewNodes,
    #[error("chain times must be strictly increasing (index {0})")]
    TimesNotIncreasing(usize),
    #[error("max_nodes must be at least 2")]
    MaxNodesTooSmall,
}

/// Strictly time-increasing sequence of curve samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    nodes: Vec<ParamSample>,
}

impl Chain {
    pub fn new(nodes: Vec<ParamSample>) -> Result<Self, ChainError> {
        if nodes.len() < 2 {
            return Err(ChainError::TooFewNodes);
        }
        for i in 1..nodes.len() {
            if nodes[i - 1].t >= nodes[i].t {
                return Err(ChainError::TimesNotIncreasing(i));
            }
        }
        Ok(Chain { nodes })
    }

    pub fn nodes(&self) -> &[ParamSample] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A chain together with its exact certificate numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCertificate {
    pub chain: Chain,
    pub sum_of_squares: Rational,
    pub value: Rational,
}

/// Exact sum of squared link lengths and certificate value of a chain. Any
/// curve containing the chain has square-to-linear ratio at least `value`.
pub fn certificate_value(chain: Chain) -> ChainCertificate {
    let mut sum = Rational::zero();
    for pair in chain.nodes.windows(2) {
        sum += pair[0].point.dist_sq(&pair[1].point);
    }
    let span = &chain.nodes[chain.nodes.len() - 1].t - &chain.nodes[0].t;
    let value = &sum / span;
    ChainCertificate { chain, sum_of_squares: sum, value }
}

/// Exact maximum per-link ratio `|dp|^2 / dt` and the index of the first
/// link achieving it.
pub fn max_link_ratio(chain: &Chain) -> (Rational, usize) {
    let mut best: Option<Rational> = None;
    let mut best_idx = 0;
    for (i, pair) in chain.nodes.windows(2).enumerate() {
        let ratio = pair[0].point.dist_sq(&pair[1].point) / (&pair[1].t - &pair[0].t);
        if best.as_ref().is_none_or(|b| ratio > *b) {
            best = Some(ratio);
            best_idx = i;
        }
    }
    (best.expect("chain has at least one link"), best_idx)
}

/// Internal abstraction letting the chain search run on rescaled integers
/// when the curve allows it and on exact rationals otherwise.
trait DpCurve {
    type W: Clone;
    fn len(&self) -> usize;
    fn d2(&self, i: usize, j: usize) -> Self::W;
    fn zero(&self) -> Self::W;
    fn add(a: &Self::W, b: &Self::W) -> Self::W;
    fn gt(a: &Self::W, b: &Self::W) -> bool;
    /// `s1 / (t_j1 - t_i1) > s2 / (t_j2 - t_i2)` exactly.
    fn ratio_gt(&self, s1: &Self::W, i1: usize, j1: usize, s2: &Self::W, i2: usize, j2: usize) -> bool;
}

impl DpCurve for ScaledCurve {
    type W = i64;
    fn len(&self) -> usize {
        self.ts.len()
    }
    fn d2(&self, i: usize, j: usize) -> i64 {
        self.dist_sq(i, j)
    }
    fn zero(&self) -> i64 {
        0
    }
    fn add(a: &i64, b: &i64) -> i64 {
        a + b
    }
    fn gt(a: &i64, b: &i64) -> bool {
        a > b
    }
    fn ratio_gt(&self, s1: &i64, i1: usize, j1: usize, s2: &i64, i2: usize, j2: usize) -> bool {
        let dt1 = (self.ts[j1] - self.ts[i1]) as i128;
        let dt2 = (self.ts[j2] - self.ts[i2]) as i128;
        (*s1 as i128) * dt2 > (*s2 as i128) * dt1
    }
}

struct ExactCurve<'a>(&'a [ParamSample]);

impl DpCurve for ExactCurve<'_> {
    type W = Rational;
    fn len(&self) -> usize {
        self.0.len()
    }
    fn d2(&self, i: usize, j: usize) -> Rational {
        self.0[i].point.dist_sq(&self.0[j].point)
    }
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn add(a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn gt(a: &Rational, b: &Rational) -> bool {
        a > b
    }
    fn ratio_gt(&self, s1: &Rational, i1: usize, j1: usize, s2: &Rational, i2: usize, j2: usize) -> bool {
        let dt1 = &self.0[j1].t - &self.0[i1].t;
        let dt2 = &self.0[j2].t - &self.0[i2].t;
        s1 * dt2 > s2 * dt1
    }
}

/// Best `(sigma, end, links)` for chains starting at `start` within
/// `[start, hi]`, maximized by value. Layered: layer `m` holds the best sum
/// of squared link lengths over chains with exactly `m` links.
fn dp_best_end<C: DpCurve>(c: &C, start: usize, hi: usize, links: usize) -> Option<(C::W, usize, usize)> {
    let width = hi - start + 1;
    if width < 2 {
        return None;
    }
    let mut prev: Vec<Option<C::W>> = vec![None; width];
    prev[0] = Some(c.zero());
    let mut best: Option<(C::W, usize, usize)> = None;
    for m in 1..=links.min(width - 1) {
        let mut cur: Vec<Option<C::W>> = vec![None; width];
        for k in m..width {
            let mut bk: Option<C::W> = None;
            for (l, pl) in prev.iter().enumerate().take(k) {
                if let Some(pl) = pl {
                    let cand = C::add(pl, &c.d2(start + l, start + k));
                    if bk.as_ref().is_none_or(|b| C::gt(&cand, b)) {
                        bk = Some(cand);
                    }
                }
            }
            if let Some(s) = &bk {
                let j = start + k;
                let improves = match &best {
                    None => true,
                    Some((bs, bj, _)) => c.ratio_gt(s, start, j, bs, start, *bj),
                };
                if improves {
                    best = Some((s.clone(), j, m));
                }
            }
            cur[k] = bk;
        }
        prev = cur;
    }
    best
}

/// Re-runs the layered recursion with parent tracking and walks the winning
/// chain back from `(end, links_used)`.
fn dp_reconstruct<C: DpCurve>(
    c: &C,
    start: usize,
    hi: usize,
    end: usize,
    links_used: usize,
) -> Vec<usize> {
    let width = hi - start + 1;
    let mut sig: Vec<Vec<Option<C::W>>> = vec![vec![None; width]; links_used + 1];
    let mut par: Vec<Vec<usize>> = vec![vec![usize::MAX; width]; links_used + 1];
    sig[0][0] = Some(c.zero());
    for m in 1..=links_used {
        for k in m..width {
            let mut bk: Option<C::W> = None;
            let mut bp = usize::MAX;
            for l in 0..k {
                if let Some(pl) = &sig[m - 1][l] {
                    let cand = C::add(pl, &c.d2(start + l, start + k));
                    if bk.as_ref().is_none_or(|b| C::gt(&cand, b)) {
                        bk = Some(cand);
                        bp = l;
                    }
                }
            }
            sig[m][k] = bk;
            par[m][k] = bp;
        }
    }
    let mut indices = Vec::with_capacity(links_used + 1);
    let mut k = end - start;
    let mut m = links_used;
    indices.push(end);
    while m > 0 {
        k = par[m][k];
        indices.push(start + k);
        m -= 1;
    }
    indices.reverse();
    indices
}

const FULL_MODE_MAX_FAST: usize = 2000;
const FULL_MODE_MAX_EXACT: usize = 300;
const WINDOW_FULL_MAX: usize = 320;

/// Best chain certificate over chains whose nodes are curve samples, with at
/// most `max_nodes` nodes.
///
/// Small curves get the full search (a layered maximum-sum recursion per
/// start sample). Larger curves get a reduced search: the recursion anchored
/// at the first sample, a windowed run around the best pair-scan witness,
/// and that witness pair itself, so the result never falls below the
/// pairwise lower bound.
pub fn best_chain(curve: &PolylineCurve, max_nodes: usize) -> Result<ChainCertificate, ChainError> {
    if max_nodes < 2 {
        return Err(ChainError::MaxNodesTooSmall);
    }
    let samples = curve.samples();
    if samples.len() < 2 {
        return Err(ChainError::TooFewNodes);
    }
    let links = max_nodes - 1;
    let scaled = ScaledCurve::try_from_samples(samples);
    let candidates = match &scaled {
        Some(sc) => plan_and_run(sc, curve, links, FULL_MODE_MAX_FAST),
        None => plan_and_run(&ExactCurve(samples), curve, links, FULL_MODE_MAX_EXACT),
    };
    let mut best: Option<ChainCertificate> = None;
    for mut indices in candidates {
        strip_zero_links(&mut indices, samples);
        let nodes = indices.iter().map(|&i| samples[i].clone()).collect();
        let cert = certificate_value(Chain::new(nodes).expect("indices are increasing"));
        if best.as_ref().is_none_or(|b| cert.value > b.value) {
            best = Some(cert);
        }
    }
    Ok(best.expect("at least one candidate chain exists"))
}

fn plan_and_run<C: DpCurve>(
    c: &C,
    curve: &PolylineCurve,
    links: usize,
    full_max: usize,
) -> Vec<Vec<usize>> {
    let n = c.len();
    let mut out = Vec::new();
    if n <= full_max {
        for start in 0..n - 1 {
            if let Some((_, end, m)) = dp_best_end(c, start, n - 1, links) {
                out.push(dp_reconstruct(c, start, n - 1, end, m));
            }
        }
        return out;
    }
    // Reduced mode.
    if let Some((_, end, m)) = dp_best_end(c, 0, n - 1, links) {
        out.push(dp_reconstruct(c, 0, n - 1, end, m));
    }
    if let Ok((_, wi, wj)) = crate::engine::pairwise_scan(curve, 1) {
        out.push(vec![wi, wj]);
        if wj - wi < WINDOW_FULL_MAX {
            for start in wi..wj {
                if let Some((_, end, m)) = dp_best_end(c, start, wj, links) {
                    out.push(dp_reconstruct(c, start, wj, end, m));
                }
            }
        } else if let Some((_, end, m)) = dp_best_end(c, wi, wj, links) {
            out.push(dp_reconstruct(c, wi, wj, end, m));
        }
    }
    out
}

/// Removes nodes forming zero-length links whenever removal cannot decrease
/// the certificate value (always, for interior links; endpoint removals
/// shrink the span and can only increase it).
fn strip_zero_links(indices: &mut Vec<usize>, samples: &[ParamSample]) {
    let mut k = 0;
    while k + 1 < indices.len() {
        if indices.len() <= 2 {
            break;
        }
        if samples[indices[k]].point == samples[indices[k + 1]].point {
            if k == 0 {
                indices.remove(0);
            } else {
                indices.remove(k + 1);
            }
        } else {
            k += 1;
        }
    }
}

/// Outcome of re-checking a serialized certificate against a curve spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateCheck {
    /// Indices of chain nodes that are not vertices of the declared
    /// refinement.
    pub node_failures: Vec<usize>,
    pub sigma_matches: bool,
    pub value_matches: bool,
}

impl CertificateCheck {
    pub fn pass(&self) -> bool {
        self.node_failures.is_empty() && self.sigma_matches && self.value_matches
    }
}

/// Verifies that every chain node is a vertex of `vertices(spec, depth)` and
/// that the declared sum and value recompute exactly.
pub fn check_certificate(
    chain: &Chain,
    declared_sigma: &Rational,
    declared_value: &Rational,
    spec: &SelfSimilarCurveSpec,
    depth: u32,
) -> Result<CertificateCheck, EvalError> {
    let vertices = spec.vertices(depth)?;
    let verts = vertices.samples();
    let mut node_failures = Vec::new();
    for (i, node) in chain.nodes().iter().enumerate() {
        let found = verts
            .binary_search_by(|s| s.t.cmp(&node.t))
            .map(|idx| verts[idx].point == node.point)
            .unwrap_or(false);
        if !found {
            node_failures.push(i);
        }
    }
    let recomputed = certificate_value(chain.clone());
    Ok(CertificateCheck {
        node_failures,
        sigma_matches: recomputed.sum_of_squares == *declared_sigma,
        value_matches: recomputed.value == *declared_value,
    })
}
