//! Discrete square-to-linear ratios of lattice orderings and the search for
//! orderings minimizing them.

use crate::rational::{rat_int, Rational};
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("grid must contain at least two points")]
    GridTooSmall,
    #[error("ordering is not a bijection onto the {0}x{1} grid")]
    NotBijection(u32, u32),
}

/// A linear ordering of the points of an `rows x cols` integer lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridOrdering {
    rows: u32,
    cols: u32,
    order: Vec<(u32, u32)>,
}

impl GridOrdering {
    pub fn new(rows: u32, cols: u32, order: Vec<(u32, u32)>) -> Result<Self, LatticeError> {
        let n = (rows as usize) * (cols as usize);
        if n < 2 {
            return Err(LatticeError::GridTooSmall);
        }
        if order.len() != n {
            return Err(LatticeError::NotBijection(rows, cols));
        }
        let mut seen = vec![false; n];
        for &(r, c) in &order {
            if r >= rows || c >= cols {
                return Err(LatticeError::NotBijection(rows, cols));
            }
            let idx = (r as usize) * (cols as usize) + c as usize;
            if seen[idx] {
                return Err(LatticeError::NotBijection(rows, cols));
            }
            seen[idx] = true;
        }
        Ok(GridOrdering { rows, cols, order })
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn cols(&self) -> u32 {
        self.cols
    }

    pub fn order(&self) -> &[(u32, u32)] {
        &self.order
    }
}

/// Maximum over index pairs of squared Euclidean distance between images
/// over index gap, with a witness pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteRatio {
    pub value: Rational,
    pub witness: (usize, usize),
}

/// Exact discrete ratio of an ordering in raw lattice units.
pub fn discrete_ratio(ordering: &GridOrdering) -> DiscreteRatio {
    let pts: Vec<(i64, i64)> = ordering
        .order
        .iter()
        .map(|&(r, c)| (r as i64, c as i64))
        .collect();
    let (num, den, i, j) = max_pair_fraction(&pts);
    DiscreteRatio {
        value: Rational::new(BigInt::from(num), BigInt::from(den)),
        witness: (i, j),
    }
}

/// Best pair as an integer fraction `(dist_sq, gap)`; smallest witness wins
/// ties.
fn max_pair_fraction(pts: &[(i64, i64)]) -> (i64, i64, usize, usize) {
    let n = pts.len();
    let diam_sq = grid_diameter_sq(pts);
    let (mut bn, mut bd, mut bi, mut bj) = (0i64, 1i64, 0usize, 1usize);
    for i in 0..n {
        for j in (i + 1)..n {
            let gap = (j - i) as i64;
            if (diam_sq as i128) * (bd as i128) < (bn as i128) * (gap as i128) {
                break;
            }
            let dr = pts[i].0 - pts[j].0;
            let dc = pts[i].1 - pts[j].1;
            let d2 = dr * dr + dc * dc;
            if (d2 as i128) * (bd as i128) > (bn as i128) * (gap as i128) {
                (bn, bd, bi, bj) = (d2, gap, i, j);
            }
        }
    }
    (bn, bd, bi, bj)
}

fn grid_diameter_sq(pts: &[(i64, i64)]) -> i64 {
    let (mut r_lo, mut r_hi, mut c_lo, mut c_hi) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
    for &(r, c) in pts {
        r_lo = r_lo.min(r);
        r_hi = r_hi.max(r);
        c_lo = c_lo.min(c);
        c_hi = c_hi.max(c);
    }
    let dr = r_hi - r_lo;
    let dc = c_hi - c_lo;
    dr * dr + dc * dc
}

/// Restriction on consecutive steps of the searched orderings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MoveRule {
    /// Arbitrary bijections.
    #[default]
    Any,
    /// Consecutive points at Chebyshev distance 1.
    King,
    /// Consecutive points share a row or a column.
    Rook,
}

impl MoveRule {
    fn allows(&self, from: (u32, u32), to: (u32, u32)) -> bool {
        match self {
            MoveRule::Any => true,
            MoveRule::King => {
                let dr = from.0.abs_diff(to.0);
                let dc = from.1.abs_diff(to.1);
                dr.max(dc) == 1
            }
            MoveRule::Rook => from.0 == to.0 || from.1 == to.1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimalOrdering {
    pub best: DiscreteRatio,
    pub ordering: GridOrdering,
    /// True when the search space was exhausted within budget, making the
    /// result the exact optimum.
    pub proven: bool,
    pub nodes: u64,
}

/// Depth-first search for the ordering minimizing the discrete ratio.
///
/// Partial orderings are pruned as soon as their running maximum reaches the
/// incumbent; the first placed point ranges over one representative per
/// grid-symmetry orbit. The search is seeded with the row-serpentine
/// ordering so an incumbent always exists, even under tiny budgets.
pub fn optimal_ordering(
    rows: u32,
    cols: u32,
    budget: u64,
    rule: MoveRule,
) -> Result<OptimalOrdering, LatticeError> {
    let n = (rows as usize) * (cols as usize);
    if n < 2 {
        return Err(LatticeError::GridTooSmall);
    }
    let seed = serpentine_order(rows, cols);
    let seed_ratio = {
        let pts: Vec<(i64, i64)> = seed.iter().map(|&(r, c)| (r as i64, c as i64)).collect();
        let (num, den, _, _) = max_pair_fraction(&pts);
        (num, den)
    };

    let mut state = Search {
        rows,
        cols,
        rule,
        budget,
        nodes: 0,
        aborted: false,
        incumbent: seed_ratio,
        best_order: seed,
        order: Vec::with_capacity(n),
        used: vec![false; n],
    };

    for first in first_point_representatives(rows, cols) {
        state.place_and_descend(first, (0, 1));
        if state.aborted {
            break;
        }
    }

    let proven = !state.aborted;
    let ordering = GridOrdering::new(rows, cols, state.best_order.clone())?;
    let (num, den) = state.incumbent;
    let ratio = discrete_ratio(&ordering);
    debug_assert_eq!(ratio.value, Rational::new(BigInt::from(num), BigInt::from(den)));
    Ok(OptimalOrdering { best: ratio, ordering, proven, nodes: state.nodes })
}

fn serpentine_order(rows: u32, cols: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity((rows * cols) as usize);
    for r in 0..rows {
        if r % 2 == 0 {
            for c in 0..cols {
                out.push((r, c));
            }
        } else {
            for c in (0..cols).rev() {
                out.push((r, c));
            }
        }
    }
    out
}

/// One representative per orbit of the grid's symmetry group (8 symmetries
/// for square grids, 4 otherwise).
fn first_point_representatives(rows: u32, cols: u32) -> Vec<(u32, u32)> {
    let mut reps = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let p = (r, c);
            if canonical_point(rows, cols, p) == p {
                reps.push(p);
            }
        }
    }
    reps
}

fn canonical_point(rows: u32, cols: u32, p: (u32, u32)) -> (u32, u32) {
    let mut best = p;
    let flips = [
        (p.0, p.1),
        (rows - 1 - p.0, p.1),
        (p.0, cols - 1 - p.1),
        (rows - 1 - p.0, cols - 1 - p.1),
    ];
    for f in flips {
        if f < best {
            best = f;
        }
        if rows == cols {
            let t = (f.1, f.0);
            if t < best {
                best = t;
            }
        }
    }
    best
}

struct Search {
    rows: u32,
    cols: u32,
    rule: MoveRule,
    budget: u64,
    nodes: u64,
    aborted: bool,
    /// Best complete ratio so far as a fraction (num, den).
    incumbent: (i64, i64),
    best_order: Vec<(u32, u32)>,
    order: Vec<(u32, u32)>,
    used: Vec<bool>,
}

impl Search {
    fn place_and_descend(&mut self, p: (u32, u32), max_so_far: (i64, i64)) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let k = self.order.len();
        // Fold the new point's pairs into the running maximum.
        let mut max_here = max_so_far;
        for (i, &(r, c)) in self.order.iter().enumerate() {
            let dr = r as i64 - p.0 as i64;
            let dc = c as i64 - p.1 as i64;
            let d2 = dr * dr + dc * dc;
            let gap = (k - i) as i64;
            if (d2 as i128) * (max_here.1 as i128) > (max_here.0 as i128) * (gap as i128) {
                max_here = (d2, gap);
            }
        }
        // Prune as soon as the partial maximum reaches the incumbent.
        if (max_here.0 as i128) * (self.incumbent.1 as i128)
            >= (self.incumbent.0 as i128) * (max_here.1 as i128)
        {
            return;
        }
        self.order.push(p);
        let p_idx = self.point_index(p);
        self.used[p_idx] = true;

        if self.order.len() == self.used.len() {
            self.incumbent = max_here;
            self.best_order = self.order.clone();
        } else {
            let last = *self.order.last().expect("nonempty");
            for r in 0..self.rows {
                for c in 0..self.cols {
                    let cand = (r, c);
                    let cand_idx = self.point_index(cand);
                    if self.used[cand_idx] || !self.rule.allows(last, cand) {
                        continue;
                    }
                    self.place_and_descend(cand, max_here);
                    if self.aborted {
                        break;
                    }
                }
                if self.aborted {
                    break;
                }
            }
        }

        self.used[p_idx] = false;
        self.order.pop();
    }

    fn point_index(&self, p: (u32, u32)) -> usize {
        (p.0 as usize) * (self.cols as usize) + p.1 as usize
    }
}

/// Reporting-only normalization: the raw ratio divided by `N / (N - 1)` for
/// an `N`-point grid.
pub fn normalized_ratio(raw: &Rational, rows: u32, cols: u32) -> Rational {
    let n = (rows as i64) * (cols as i64);
    raw * rat_int(n - 1) / rat_int(n)
}
