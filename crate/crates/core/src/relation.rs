//! Finite pseudo-ordered sets: reflexive, antisymmetric relations that need not be transitive.
//!
//! Elements are dense indices `0..n` with a parallel name table. Bottom and top are discovered
//! by scanning the relation, never assumed from position.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::set::{ElementSet, MAX_ELEMENTS};

/// A single axiom failure found while validating a relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotReflexive(usize),
    NotAntisymmetric(usize, usize),
    DuplicateName(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotReflexive(x) => write!(f, "element {x} is not related to itself"),
            Violation::NotAntisymmetric(x, y) => {
                write!(f, "elements {x} and {y} are related in both directions")
            }
            Violation::DuplicateName(name) => write!(f, "duplicate element name {name:?}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PsosetError {
    #[error("carrier is empty")]
    Empty,
    #[error("carrier has {0} elements, at most {MAX_ELEMENTS} are supported")]
    TooLarge(usize),
    #[error("relation matrix is not square")]
    NotSquare,
    #[error("{names} names given for a {size}x{size} relation")]
    NameCountMismatch { names: usize, size: usize },
    #[error("unknown element name {0:?}")]
    UnknownName(String),
    #[error("not a pseudo-order: {}", fmt_violations(.0))]
    Invalid(Vec<Violation>),
}

fn fmt_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// Errors for queries on a valid psoset.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error("subset is empty")]
    EmptySubset,
    #[error("element {0} is not in the subset")]
    ElementNotInSubset(usize),
    #[error("psoset has no top element")]
    NoTop,
    #[error("psoset has no bottom element")]
    NoBottom,
}

/// A finite pseudo-ordered set `(X, ⊴)`, optionally bounded.
#[derive(Clone, PartialEq, Eq)]
pub struct Psoset {
    names: Vec<String>,
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
    reach: Vec<ElementSet>,
    bottom: Option<usize>,
    top: Option<usize>,
}

impl fmt::Debug for Psoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Psoset")
            .field("names", &self.names)
            .field("up", &self.up)
            .field("bottom", &self.bottom)
            .field("top", &self.top)
            .finish()
    }
}

/// Checks a boolean matrix against the pseudo-order axioms and builds the psoset.
///
/// Every violating element or pair is reported, not just the first.
pub fn validate_psoset(rel: &[Vec<bool>], names: &[String]) -> Result<Psoset, PsosetError> {
    let n = rel.len();
    if n == 0 {
        return Err(PsosetError::Empty);
    }
    if n > MAX_ELEMENTS {
        return Err(PsosetError::TooLarge(n));
    }
    if rel.iter().any(|row| row.len() != n) {
        return Err(PsosetError::NotSquare);
    }
    if names.len() != n {
        return Err(PsosetError::NameCountMismatch { names: names.len(), size: n });
    }

    let mut violations = Vec::new();
    let mut seen = BTreeSet::new();
    for name in names {
        if !seen.insert(name.as_str()) {
            violations.push(Violation::DuplicateName(name.clone()));
        }
    }
    for x in 0..n {
        if !rel[x][x] {
            violations.push(Violation::NotReflexive(x));
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            if rel[x][y] && rel[y][x] {
                violations.push(Violation::NotAntisymmetric(x, y));
            }
        }
    }
    if !violations.is_empty() {
        return Err(PsosetError::Invalid(violations));
    }

    let up: Vec<ElementSet> = rel
        .iter()
        .map(|row| row.iter().enumerate().filter(|(_, &b)| b).map(|(y, _)| y).collect())
        .collect();
    Ok(Psoset::from_up_sets(names.to_vec(), up))
}

impl Psoset {
    /// Builds from up-sets that are already known to be reflexive and antisymmetric.
    pub(crate) fn from_up_sets(names: Vec<String>, up: Vec<ElementSet>) -> Psoset {
        let n = up.len();
        let mut down = vec![ElementSet::EMPTY; n];
        for (x, ux) in up.iter().enumerate() {
            for y in ux.iter() {
                down[y].insert(x);
            }
        }
        let reach = transitive_closure(&up);
        let all = ElementSet::full(n);
        let bottom = (0..n).find(|&x| up[x] == all);
        let top = (0..n).find(|&x| down[x] == all);
        Psoset { names, up, down, reach, bottom, top }
    }

    /// Convenience constructor from names and the list of related pairs `x ⊴ y` (by name).
    /// Reflexive pairs are added automatically.
    pub fn from_pairs(names: &[&str], pairs: &[(&str, &str)]) -> Result<Psoset, PsosetError> {
        let n = names.len();
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        let idx = |s: &str| names.iter().position(|&m| m == s);
        for (a, b) in pairs {
            match (idx(a), idx(b)) {
                (Some(i), Some(j)) => rel[i][j] = true,
                (None, _) => return Err(PsosetError::UnknownName(a.to_string())),
                (_, None) => return Err(PsosetError::UnknownName(b.to_string())),
            }
        }
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        validate_psoset(&rel, &names)
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn carrier(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    /// `x ⊴ y`.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// `↑x = { y | x ⊴ y }`.
    #[inline]
    pub fn up_set(&self, x: usize) -> ElementSet {
        self.up[x]
    }

    /// `↓x = { y | y ⊴ x }`.
    #[inline]
    pub fn down_set(&self, x: usize) -> ElementSet {
        self.down[x]
    }

    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn is_bounded(&self) -> bool {
        self.bottom.is_some() && self.top.is_some()
    }

    /// `(bottom, top)` or the missing one as an error.
    pub fn bounds(&self) -> Result<(usize, usize), QueryError> {
        let bottom = self.bottom.ok_or(QueryError::NoBottom)?;
        let top = self.top.ok_or(QueryError::NoTop)?;
        Ok((bottom, top))
    }

    pub fn matrix(&self) -> Vec<Vec<bool>> {
        (0..self.len()).map(|x| (0..self.len()).map(|y| self.leq(x, y)).collect()).collect()
    }

    /// First `(x, y, z)` with `x ⊴ y ⊴ z` but not `x ⊴ z`.
    pub fn transitivity_violation(&self) -> Option<(usize, usize, usize)> {
        for x in 0..self.len() {
            for y in self.up[x].iter() {
                if let Some(z) = (self.up[y] - self.up[x]).first() {
                    return Some((x, y, z));
                }
            }
        }
        None
    }

    pub fn is_transitive(&self) -> bool {
        self.transitivity_violation().is_none()
    }

    /// `x ≲ y`: a `⊴`-path leads from `x` to `y`.
    #[inline]
    pub fn reachable(&self, x: usize, y: usize) -> bool {
        self.reach[x].contains(y)
    }

    /// Everything reachable from `x`.
    pub fn reachable_set(&self, x: usize) -> ElementSet {
        self.reach[x]
    }

    /// `x ≲_C y`: a `⊴`-path from `x` to `y` whose elements all lie in `c`.
    pub fn restricted_reachable(&self, c: ElementSet, x: usize, y: usize) -> Result<bool, QueryError> {
        for e in [x, y] {
            if !c.contains(e) {
                return Err(QueryError::ElementNotInSubset(e));
            }
        }
        Ok(self.restricted_reach_from(c, x).contains(y))
    }

    fn restricted_reach_from(&self, c: ElementSet, x: usize) -> ElementSet {
        let mut seen = ElementSet::singleton(x);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = ElementSet::EMPTY;
            for v in frontier {
                next |= self.up[v] & c;
            }
            frontier = next - seen;
            seen |= next;
        }
        seen
    }

    /// Every pair of `c` is connected by a path inside `c` in at least one direction.
    pub fn is_pseudo_chain(&self, c: ElementSet) -> Result<bool, QueryError> {
        self.pairwise_reach(c, false)
    }

    /// Every pair of `c` is connected by paths inside `c` in both directions.
    pub fn is_cycle(&self, c: ElementSet) -> Result<bool, QueryError> {
        self.pairwise_reach(c, true)
    }

    fn pairwise_reach(&self, c: ElementSet, both: bool) -> Result<bool, QueryError> {
        if c.is_empty() {
            return Err(QueryError::EmptySubset);
        }
        let reach: Vec<(usize, ElementSet)> =
            c.iter().map(|x| (x, self.restricted_reach_from(c, x))).collect();
        for &(x, rx) in &reach {
            for &(y, ry) in &reach {
                let fwd = rx.contains(y);
                let bwd = ry.contains(x);
                let ok = if both { fwd && bwd } else { fwd || bwd };
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Strongly connected components of the `⊴`-digraph with more than one element, ordered
    /// by smallest member. Each one is a maximal cycle.
    pub fn maximal_cycles(&self) -> Vec<ElementSet> {
        let mut done = ElementSet::EMPTY;
        let mut out = Vec::new();
        for x in 0..self.len() {
            if done.contains(x) {
                continue;
            }
            let comp: ElementSet =
                self.reach[x].iter().filter(|&y| self.reach[y].contains(x)).collect();
            done |= comp;
            if comp.len() > 1 {
                out.push(comp);
            }
        }
        out
    }

    /// Maximal elements of `X \ {1}`.
    pub fn co_atoms(&self) -> Result<ElementSet, QueryError> {
        let top = self.top.ok_or(QueryError::NoTop)?;
        let rest = self.carrier().without(top);
        Ok(rest.iter().filter(|&x| (self.up[x] & rest).without(x).is_empty()).collect())
    }

    /// The psoset induced on `a`, with its elements renumbered in ascending order.
    pub fn induced(&self, a: ElementSet) -> SubPsoset {
        let embedding: Vec<usize> = a.iter().collect();
        let names = embedding.iter().map(|&x| self.names[x].clone()).collect();
        let up = embedding
            .iter()
            .map(|&x| {
                embedding
                    .iter()
                    .enumerate()
                    .filter(|&(_, &y)| self.leq(x, y))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        SubPsoset { psoset: Psoset::from_up_sets(names, up), embedding }
    }

    /// Formats a subset with element names, e.g. `{0, b, c}`.
    pub fn fmt_set(&self, s: ElementSet) -> String {
        let parts: Vec<&str> = s.iter().map(|x| self.name(x)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// Parses whitespace- or comma-separated element names.
    pub fn parse_set(&self, text: &str) -> Option<ElementSet> {
        let mut s = ElementSet::EMPTY;
        for tok in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            s.insert(self.index_of(tok)?);
        }
        Some(s)
    }

    /// Hasse-type diagram: covers, dashed pairs and back edges.
    pub fn hasse(&self) -> HasseDiagram {
        hasse_of_matrix(&self.matrix())
    }
}

/// [`Psoset::hasse`] for a reflexive relation matrix of any size.
///
/// Back edges are the edges `y ⊴ x` closing a cycle in a depth-first traversal that starts
/// from the lowest index and visits successors in index order. Covers are the remaining
/// strict pairs with nothing strictly between them. Dashed pairs are unrelated pairs joined
/// by a path in at least one direction.
pub fn hasse_of_matrix(rel: &[Vec<bool>]) -> HasseDiagram {
    let n = rel.len();
    let back_edges = dfs_back_edges(rel);
    let mut cover_edges = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            if x == y || !rel[x][y] || back_edges.contains(&(x, y)) {
                continue;
            }
            if !(0..n).any(|z| z != x && z != y && rel[x][z] && rel[z][y]) {
                cover_edges.insert((x, y));
            }
        }
    }
    let reach = closure(rel);
    let mut dashed_pairs = BTreeSet::new();
    for x in 0..n {
        for y in x + 1..n {
            if !rel[x][y] && !rel[y][x] && (reach[x][y] || reach[y][x]) {
                dashed_pairs.insert((x, y));
            }
        }
    }
    HasseDiagram { cover_edges, dashed_pairs, back_edges }
}

fn closure(rel: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = rel.len();
    let mut r = rel.to_vec();
    for m in 0..n {
        for x in 0..n {
            if r[x][m] {
                for y in 0..n {
                    if r[m][y] {
                        r[x][y] = true;
                    }
                }
            }
        }
    }
    r
}

fn dfs_back_edges(rel: &[Vec<bool>]) -> BTreeSet<(usize, usize)> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Closed,
    }
    let n = rel.len();
    let mut mark = vec![Mark::New; n];
    let mut out = BTreeSet::new();
    for root in 0..n {
        if mark[root] != Mark::New {
            continue;
        }
        // Explicit stack of (vertex, next successor to try).
        let mut stack = vec![(root, 0usize)];
        mark[root] = Mark::Open;
        while let Some((v, next)) = stack.last_mut() {
            let v = *v;
            match (*next..n).find(|&w| w != v && rel[v][w]) {
                Some(w) => {
                    *next = w + 1;
                    match mark[w] {
                        Mark::New => {
                            mark[w] = Mark::Open;
                            stack.push((w, 0));
                        }
                        Mark::Open => {
                            out.insert((v, w));
                        }
                        Mark::Closed => {}
                    }
                }
                None => {
                    mark[v] = Mark::Closed;
                    stack.pop();
                }
            }
        }
    }
    out
}

/// A psoset induced on a subset, with the map back into the parent carrier.
#[derive(Debug, Clone)]
pub struct SubPsoset {
    pub psoset: Psoset,
    /// `embedding[i]` is the parent index of local element `i`.
    pub embedding: Vec<usize>,
}

impl SubPsoset {
    pub fn local(&self, parent: usize) -> Option<usize> {
        self.embedding.iter().position(|&x| x == parent)
    }
}

/// Hasse-type diagram of a psoset.
///
/// Pairs are stored as element indices: `cover_edges` holds `(x, y)` with `x` covered by
/// `y`; `dashed_pairs` holds `(x, y)` with `x < y` by index; `back_edges` holds `(y, x)`
/// meaning `y ⊴ x` is drawn as an arrow from `y` to `x`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HasseDiagram {
    pub cover_edges: BTreeSet<(usize, usize)>,
    pub dashed_pairs: BTreeSet<(usize, usize)>,
    pub back_edges: BTreeSet<(usize, usize)>,
}

fn transitive_closure(up: &[ElementSet]) -> Vec<ElementSet> {
    let n = up.len();
    let mut r = up.to_vec();
    for k in 0..n {
        for i in 0..n {
            if r[i].contains(k) {
                let rk = r[k];
                r[i] |= rk;
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn table1() -> Psoset {
        let rows = [
            "111111", "010101", "001111", "000110", "000011", "000101",
        ];
        let rel: Vec<Vec<bool>> =
            rows.iter().map(|r| r.chars().map(|c| c == '1').collect()).collect();
        validate_psoset(&rel, &names(&["a", "b", "c", "d", "e", "f"])).unwrap()
    }

    fn set(p: &Psoset, s: &str) -> ElementSet {
        p.parse_set(s).unwrap()
    }

    /// Reference closure: plain boolean Floyd-Warshall over the matrix.
    fn closure_oracle(p: &Psoset) -> Vec<Vec<bool>> {
        let mut m = p.matrix();
        let n = m.len();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if m[i][k] && m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
        m
    }

    #[test]
    fn table1_validates_with_bottom_a_and_no_top() {
        let p = table1();
        assert_eq!(p.bottom(), Some(0));
        assert_eq!(p.top(), None);
        assert!(!p.is_transitive());
    }

    #[test]
    fn identity_is_an_antichain() {
        let rel = vec![
            vec![true, false, false],
            vec![false, true, false],
            vec![false, false, true],
        ];
        let p = validate_psoset(&rel, &names(&["x", "y", "z"])).unwrap();
        assert_eq!(p.bottom(), None);
        assert_eq!(p.top(), None);
        assert!(p.is_transitive());
    }

    #[test]
    fn all_true_two_by_two_is_not_antisymmetric() {
        let rel = vec![vec![true, true], vec![true, true]];
        let err = validate_psoset(&rel, &names(&["x", "y"])).unwrap_err();
        assert_eq!(err, PsosetError::Invalid(vec![Violation::NotAntisymmetric(0, 1)]));
    }

    #[test]
    fn every_violation_is_reported() {
        let rel = vec![
            vec![false, true, false],
            vec![true, true, false],
            vec![false, false, false],
        ];
        let err = validate_psoset(&rel, &names(&["x", "x", "z"])).unwrap_err();
        assert_eq!(
            err,
            PsosetError::Invalid(vec![
                Violation::DuplicateName("x".into()),
                Violation::NotReflexive(0),
                Violation::NotReflexive(2),
                Violation::NotAntisymmetric(0, 1),
            ])
        );
    }

    #[test]
    fn shape_errors() {
        assert_eq!(validate_psoset(&[], &[]).unwrap_err(), PsosetError::Empty);
        let rel = vec![vec![true, false], vec![true]];
        assert_eq!(validate_psoset(&rel, &names(&["x", "y"])).unwrap_err(), PsosetError::NotSquare);
        let rel = vec![vec![true]];
        assert!(matches!(
            validate_psoset(&rel, &names(&["x", "y"])).unwrap_err(),
            PsosetError::NameCountMismatch { .. }
        ));
    }

    #[test]
    fn reachability_on_table1() {
        let p = table1();
        let (b, d, e) = (1, 3, 4);
        assert!(p.reachable(b, e));
        assert!(!p.leq(b, e));
        // e ⊴ f ⊴ d
        assert!(p.reachable(e, d));
        let oracle = closure_oracle(&p);
        for x in 0..p.len() {
            assert!(p.reachable(x, x));
            for y in 0..p.len() {
                assert_eq!(p.reachable(x, y), oracle[x][y], "{x} {y}");
            }
        }
    }

    #[test]
    fn restricted_reachability() {
        let p = table1();
        let (b, d, e, f) = (1, 3, 4, 5);
        assert!(p.restricted_reachable(set(&p, "d e f"), d, f).unwrap());
        assert!(!p.restricted_reachable(set(&p, "b e"), b, e).unwrap());
        assert!(p.restricted_reachable(set(&p, "b"), b, b).unwrap());
        assert_eq!(
            p.restricted_reachable(set(&p, "b e"), b, d),
            Err(QueryError::ElementNotInSubset(d))
        );
        let all = p.carrier();
        for x in 0..p.len() {
            for y in 0..p.len() {
                assert_eq!(p.restricted_reachable(all, x, y).unwrap(), p.reachable(x, y));
            }
        }
    }

    #[test]
    fn chains_and_cycles() {
        let p = table1();
        assert!(p.is_cycle(set(&p, "d e f")).unwrap());
        assert!(p.is_pseudo_chain(set(&p, "a b d")).unwrap());
        assert!(!p.is_cycle(set(&p, "a b d")).unwrap());
        assert!(p.is_cycle(set(&p, "c")).unwrap());
        assert!(p.is_pseudo_chain(set(&p, "c")).unwrap());
        assert!(!p.is_pseudo_chain(set(&p, "b c")).unwrap());
        assert_eq!(p.is_cycle(ElementSet::EMPTY), Err(QueryError::EmptySubset));
        assert_eq!(p.maximal_cycles(), vec![set(&p, "d e f")]);
    }

    #[test]
    fn down_and_up_sets() {
        let p = table1();
        assert_eq!(p.down_set(3), set(&p, "a b c d f"));
        assert_eq!(p.down_set(0), set(&p, "a"));
        assert_eq!(p.up_set(4), set(&p, "e f"));
    }

    #[test]
    fn co_atoms_of_two_element_chain() {
        let p = Psoset::from_pairs(&["0", "1"], &[("0", "1")]).unwrap();
        assert_eq!(p.co_atoms().unwrap(), ElementSet::singleton(0));
        assert_eq!(table1().co_atoms(), Err(QueryError::NoTop));
    }

    #[test]
    fn single_element_psoset() {
        let p = Psoset::from_pairs(&["z"], &[]).unwrap();
        assert_eq!(p.bottom(), Some(0));
        assert_eq!(p.top(), Some(0));
        assert_eq!(p.co_atoms().unwrap(), ElementSet::EMPTY);
        assert!(p.maximal_cycles().is_empty());
        assert_eq!(p.hasse(), HasseDiagram::default());
    }

    #[test]
    fn hasse_of_chain_has_only_covers() {
        let p = Psoset::from_pairs(&["x", "y", "z"], &[("x", "y"), ("y", "z"), ("x", "z")]).unwrap();
        let h = p.hasse();
        assert_eq!(h.cover_edges, [(0, 1), (1, 2)].into_iter().collect());
        assert!(h.dashed_pairs.is_empty());
        assert!(h.back_edges.is_empty());
    }

    #[test]
    fn hasse_of_table1() {
        let p = table1();
        let h = p.hasse();
        let (b, d, e, f) = (1, 3, 4, 5);
        assert_eq!(h.back_edges, [(f, d)].into_iter().collect());
        assert_eq!(h.dashed_pairs, [(b, e)].into_iter().collect());
        assert!(h.cover_edges.contains(&(d, e)));
        assert!(h.cover_edges.contains(&(e, f)));
    }

    #[test]
    fn induced_sub_psoset() {
        let p = table1();
        let sub = p.induced(set(&p, "b d e"));
        assert_eq!(sub.psoset.names(), &["b", "d", "e"]);
        assert!(sub.psoset.leq(0, 1));
        assert!(!sub.psoset.leq(0, 2));
        assert_eq!(sub.local(4), Some(2));
        assert_eq!(sub.psoset.bottom(), None);
    }
}
