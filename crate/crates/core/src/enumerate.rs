//! Exhaustive t-norm enumeration on small bounded psosets.
//!
//! Cells are the unordered pairs of non-top elements. Each cell starts with the values allowed
//! by neutrality and increasingness against the fixed top row (`T(x,y) ⊴ u` for every
//! `u ⊵ x` or `u ⊵ y`), tightened to `↓(x∧y)` when the meet exists. The search assigns cells
//! in a static fail-first order, forward-checks increasingness against every cell it is
//! directly comparable with, and checks associativity on each triple as soon as it is fully
//! determined. Every leaf is re-verified against the full definition.

use rayon::prelude::*;
use thiserror::Error;

use crate::relation::{hasse_of_matrix, validate_psoset, HasseDiagram, Psoset};
use crate::set::{ElementSet, MAX_ELEMENTS};
use crate::table::BinaryOpTable;
use crate::tnorm::pointwise_leq;

pub const DEFAULT_CAP: usize = 10;

const UNSET: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Stop after this many t-norms.
    pub limit: Option<usize>,
    /// Refuse carriers larger than this.
    pub cap: usize,
    /// Fan the top of the search tree out over the rayon pool.
    pub parallel: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { limit: None, cap: DEFAULT_CAP, parallel: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    /// Values tried at search nodes.
    pub nodes: u64,
    /// Values rejected because a comparable cell lost its last candidate.
    pub monotonicity_prunes: u64,
    /// Values rejected by a fully determined triple.
    pub associativity_prunes: u64,
    /// Completed tables rejected by the final check. Always zero unless propagation is broken.
    pub leaf_rejects: u64,
    /// Completed tables accepted.
    pub leaves: u64,
}

impl SearchStats {
    fn add(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.monotonicity_prunes += o.monotonicity_prunes;
        self.associativity_prunes += o.associativity_prunes;
        self.leaf_rejects += o.leaf_rejects;
        self.leaves += o.leaves;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    /// Sorted by row-major cell sequence.
    pub tnorms: Vec<BinaryOpTable>,
    /// Indices into `tnorms` of the pointwise maximal t-norms.
    pub maximal: Vec<usize>,
    /// Index of the t-norm pointwise above all others, if there is one.
    pub greatest: Option<usize>,
    pub stats: SearchStats,
    /// `false` when the search stopped at the limit.
    pub complete: bool,
}

impl EnumerationResult {
    pub fn count(&self) -> usize {
        self.tnorms.len()
    }

    pub fn position(&self, t: &BinaryOpTable) -> Option<usize> {
        self.tnorms.binary_search(t).ok()
    }

    pub fn greatest_table(&self) -> Option<&BinaryOpTable> {
        self.greatest.map(|i| &self.tnorms[i])
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("carrier has {n} elements, above the cap of {cap}")]
    CarrierTooLarge { n: usize, cap: usize },
    #[error("carrier is not bounded")]
    NotBounded,
    #[error("stopped after {} t-norms", .0.tnorms.len())]
    LimitReached(Box<EnumerationResult>),
    #[error("order diagram supports at most {max} t-norms, got {found}")]
    TooManyForDiagram { found: usize, max: usize },
}

struct Problem<'a> {
    p: &'a Psoset,
    n: usize,
    /// Non-top elements.
    free: Vec<usize>,
    cells: Vec<(usize, usize)>,
    /// Cells whose value must lie above this cell's value.
    above: Vec<Vec<usize>>,
    below: Vec<Vec<usize>>,
    initial: Vec<ElementSet>,
    order: Vec<usize>,
    base: Vec<usize>,
}

impl<'a> Problem<'a> {
    fn new(p: &'a Psoset, top: usize) -> Problem<'a> {
        let n = p.len();
        let free: Vec<usize> = (0..n).filter(|&x| x != top).collect();
        let mut cells = Vec::new();
        for (i, &x) in free.iter().enumerate() {
            for &y in &free[i..] {
                cells.push((x, y));
            }
        }
        let m = cells.len();
        let mut initial = Vec::with_capacity(m);
        for &(x, y) in &cells {
            let mut d = p.carrier();
            for u in p.up_set(x) | p.up_set(y) {
                d &= p.down_set(u);
            }
            if let Ok(Some(g)) = crate::trellis::infimum(p, ElementSet::singleton(x).with(y)) {
                d &= p.down_set(g);
            }
            initial.push(d);
        }
        // c ⊑ d when some orientation of c is componentwise ⊴ some orientation of d.
        let below_pair = |(x, z): (usize, usize), (y, t): (usize, usize)| {
            (p.leq(x, y) && p.leq(z, t)) || (p.leq(x, t) && p.leq(z, y))
        };
        let mut above = vec![Vec::new(); m];
        let mut below = vec![Vec::new(); m];
        for c in 0..m {
            for d in 0..m {
                if c != d && below_pair(cells[c], cells[d]) {
                    above[c].push(d);
                    below[d].push(c);
                }
            }
        }
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&c| (initial[c].len(), c));
        let mut base = vec![UNSET; n * n];
        for x in 0..n {
            base[x * n + top] = x;
            base[top * n + x] = x;
        }
        Problem { p, n, free, cells, above, below, initial, order, base }
    }

    #[inline]
    fn get(&self, val: &[usize], x: usize, y: usize) -> usize {
        val[x * self.n + y]
    }

    /// `false` only if the triple is fully determined and fails.
    #[inline]
    fn triple_ok(&self, val: &[usize], x: usize, y: usize, z: usize) -> bool {
        let yz = self.get(val, y, z);
        if yz == UNSET {
            return true;
        }
        let left = self.get(val, x, yz);
        if left == UNSET {
            return true;
        }
        let xy = self.get(val, x, y);
        if xy == UNSET {
            return true;
        }
        let right = self.get(val, xy, z);
        right == UNSET || left == right
    }

    /// Checks every triple that uses the freshly assigned cell `{a, b}`.
    fn associativity_ok(&self, val: &[usize], a: usize, b: usize) -> bool {
        for &x in &self.free {
            if !(self.triple_ok(val, x, a, b)
                && self.triple_ok(val, x, b, a)
                && self.triple_ok(val, a, b, x)
                && self.triple_ok(val, b, a, x))
            {
                return false;
            }
        }
        // The cell may also be the outer application of a triple.
        for &u in &self.free {
            for &w in &self.free {
                let v = self.get(val, u, w);
                if (v == a || v == b)
                    && !(self.triple_ok(val, a, u, w)
                        && self.triple_ok(val, b, u, w)
                        && self.triple_ok(val, u, w, a)
                        && self.triple_ok(val, u, w, b))
                {
                    return false;
                }
            }
        }
        true
    }

    fn is_tnorm(&self, table: &BinaryOpTable) -> bool {
        crate::trellis::associativity_violation(table).is_none()
            && crate::tnorm::increasing_witness(self.p, table).is_none()
    }
}

/// A partial assignment handed to a parallel worker: values, domains and the next level.
type Task = (Vec<usize>, Vec<ElementSet>, usize);

struct Worker<'a, 'b> {
    pr: &'b Problem<'a>,
    val: Vec<usize>,
    doms: Vec<Vec<ElementSet>>,
    found: Vec<BinaryOpTable>,
    stats: SearchStats,
    stop_after: Option<usize>,
}

impl<'a, 'b> Worker<'a, 'b> {
    fn new(pr: &'b Problem<'a>, val: Vec<usize>, dom: Vec<ElementSet>, stop_after: Option<usize>) -> Self {
        let doms = vec![dom; pr.cells.len() + 1];
        Worker { pr, val, doms, found: Vec::new(), stats: SearchStats::default(), stop_after }
    }

    fn done(&self) -> bool {
        self.stop_after.is_some_and(|k| self.found.len() >= k)
    }

    /// Propagates `cell := v` into `doms[level + 1]`; `false` on a wipe-out.
    fn propagate(&mut self, level: usize, cell: usize, v: usize) -> bool {
        let pr = self.pr;
        let p = pr.p;
        let (cur, next) = self.doms.split_at_mut(level + 1);
        let next = &mut next[0];
        next.copy_from_slice(&cur[level]);
        next[cell] = ElementSet::singleton(v);
        let (up, down) = (p.up_set(v), p.down_set(v));
        for &d in &pr.above[cell] {
            next[d] &= up;
            if next[d].is_empty() {
                return false;
            }
        }
        for &d in &pr.below[cell] {
            next[d] &= down;
            if next[d].is_empty() {
                return false;
            }
        }
        true
    }

    fn search(&mut self, level: usize, split: Option<(usize, &mut Vec<Task>)>) {
        let pr = self.pr;
        if level == pr.order.len() {
            let table = BinaryOpTable::from_cells(pr.n, self.val.clone()).expect("all cells assigned");
            if pr.is_tnorm(&table) {
                self.stats.leaves += 1;
                self.found.push(table);
            } else {
                self.stats.leaf_rejects += 1;
            }
            return;
        }
        if let Some((depth, tasks)) = split {
            if level == depth {
                tasks.push((self.val.clone(), self.doms[level].clone(), level));
                return;
            }
            return self.branch(level, Some((depth, tasks)));
        }
        self.branch(level, None)
    }

    fn branch(&mut self, level: usize, mut split: Option<(usize, &mut Vec<Task>)>) {
        let pr = self.pr;
        let cell = pr.order[level];
        let (a, b) = pr.cells[cell];
        let n = pr.n;
        for v in self.doms[level][cell] {
            if self.done() {
                return;
            }
            self.stats.nodes += 1;
            if !self.propagate(level, cell, v) {
                self.stats.monotonicity_prunes += 1;
                continue;
            }
            self.val[a * n + b] = v;
            self.val[b * n + a] = v;
            if pr.associativity_ok(&self.val, a, b) {
                match split.as_mut() {
                    Some((depth, tasks)) => self.search(level + 1, Some((*depth, &mut **tasks))),
                    None => self.search(level + 1, None),
                }
            } else {
                self.stats.associativity_prunes += 1;
            }
            self.val[a * n + b] = UNSET;
            self.val[b * n + a] = UNSET;
        }
    }
}

/// All t-norms on a bounded psoset.
pub fn enumerate(p: &Psoset, opts: &EnumerateOptions) -> Result<EnumerationResult, EnumerationError> {
    let n = p.len();
    if n > opts.cap {
        return Err(EnumerationError::CarrierTooLarge { n, cap: opts.cap });
    }
    let (_, top) = p.bounds().map_err(|_| EnumerationError::NotBounded)?;
    let pr = Problem::new(p, top);
    let mut stats = SearchStats::default();
    let mut found: Vec<BinaryOpTable>;

    if pr.initial.iter().any(|d| d.is_empty()) {
        found = Vec::new();
    } else if let Some(limit) = opts.limit {
        let mut w = Worker::new(&pr, pr.base.clone(), pr.initial.clone(), Some(limit + 1));
        w.search(0, None);
        stats = w.stats;
        found = w.found;
    } else if opts.parallel {
        // Expand the first levels serially, then search the subtrees in parallel.
        let mut product = 1usize;
        let mut depth = 0;
        while depth < pr.order.len() && product < 64 {
            product = product.saturating_mul(pr.initial[pr.order[depth]].len());
            depth += 1;
        }
        let mut tasks = Vec::new();
        let mut w = Worker::new(&pr, pr.base.clone(), pr.initial.clone(), None);
        w.search(0, Some((depth, &mut tasks)));
        stats.add(&w.stats);
        found = w.found;
        let parts: Vec<(Vec<BinaryOpTable>, SearchStats)> = tasks
            .into_par_iter()
            .map(|(val, dom, level)| {
                let mut w = Worker::new(&pr, val, dom, None);
                w.search(level, None);
                (w.found, w.stats)
            })
            .collect();
        for (f, s) in parts {
            found.extend(f);
            stats.add(&s);
        }
    } else {
        let mut w = Worker::new(&pr, pr.base.clone(), pr.initial.clone(), None);
        w.search(0, None);
        stats = w.stats;
        found = w.found;
    }

    found.sort();
    found.dedup();
    let truncated = opts.limit.is_some_and(|k| found.len() > k);
    if truncated {
        found.truncate(opts.limit.unwrap_or(0));
    }
    let (maximal, greatest) = maximal_and_greatest(p, &found);
    let result = EnumerationResult { tnorms: found, maximal, greatest, stats, complete: !truncated };
    if truncated {
        return Err(EnumerationError::LimitReached(Box::new(result)));
    }
    Ok(result)
}

fn leq(p: &Psoset, a: &BinaryOpTable, b: &BinaryOpTable) -> bool {
    pointwise_leq(p, a, b).unwrap_or(false)
}

fn maximal_and_greatest(p: &Psoset, ts: &[BinaryOpTable]) -> (Vec<usize>, Option<usize>) {
    let maximal: Vec<usize> = (0..ts.len())
        .filter(|&i| !(0..ts.len()).any(|j| j != i && leq(p, &ts[i], &ts[j])))
        .collect();
    let greatest = match maximal.as_slice() {
        [g] if ts.iter().all(|t| leq(p, t, &ts[*g])) => Some(*g),
        _ => None,
    };
    (maximal, greatest)
}

/// No enumerated t-norm lies strictly above `t`.
pub fn is_maximal(p: &Psoset, t: &BinaryOpTable, opts: &EnumerateOptions) -> Result<bool, EnumerationError> {
    let r = enumerate(p, &EnumerateOptions { limit: None, ..*opts })?;
    Ok(!r.tnorms.iter().any(|u| u != t && leq(p, t, u)))
}

/// The t-norm above all others, if there is one.
pub fn greatest(p: &Psoset, opts: &EnumerateOptions) -> Result<Option<BinaryOpTable>, EnumerationError> {
    let r = enumerate(p, &EnumerateOptions { limit: None, ..*opts })?;
    Ok(r.greatest_table().cloned())
}

/// Pointwise order among enumerated t-norms, as a psoset on `T1, T2, ...` in result order.
pub fn order_psoset(p: &Psoset, result: &EnumerationResult) -> Result<Psoset, EnumerationError> {
    let k = result.tnorms.len();
    if k > MAX_ELEMENTS {
        return Err(EnumerationError::TooManyForDiagram { found: k, max: MAX_ELEMENTS });
    }
    let names: Vec<String> = (1..=k).map(|i| format!("T{i}")).collect();
    let rel: Vec<Vec<bool>> = result
        .tnorms
        .iter()
        .map(|a| result.tnorms.iter().map(|b| leq(p, a, b)).collect())
        .collect();
    if k == 0 {
        return Err(EnumerationError::TooManyForDiagram { found: 0, max: MAX_ELEMENTS });
    }
    Ok(validate_psoset(&rel, &names).expect("pointwise order on distinct t-norms is a pseudo-order"))
}

/// Hasse-type diagram of the pointwise order among enumerated t-norms, indexed like
/// `result.tnorms`.
pub fn order_diagram(p: &Psoset, result: &EnumerationResult) -> HasseDiagram {
    let rel: Vec<Vec<bool>> = result
        .tnorms
        .iter()
        .map(|a| result.tnorms.iter().map(|b| leq(p, a, b)).collect())
        .collect();
    hasse_of_matrix(&rel)
}
