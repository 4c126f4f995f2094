//! Meets, joins and trellises (weakly associative lattices).

use std::fmt;

use thiserror::Error;

use crate::relation::{validate_psoset, Psoset, PsosetError, QueryError};
use crate::set::ElementSet;
use crate::table::BinaryOpTable;

/// Greatest lower bound of `s`, if it exists.
pub fn infimum(p: &Psoset, s: ElementSet) -> Result<Option<usize>, QueryError> {
    if s.is_empty() {
        return Err(QueryError::EmptySubset);
    }
    let lower = s.iter().fold(p.carrier(), |acc, x| acc & p.down_set(x));
    Ok(greatest_of(p, lower))
}

/// Smallest upper bound of `s`, if it exists.
pub fn supremum(p: &Psoset, s: ElementSet) -> Result<Option<usize>, QueryError> {
    if s.is_empty() {
        return Err(QueryError::EmptySubset);
    }
    let upper = s.iter().fold(p.carrier(), |acc, x| acc & p.up_set(x));
    Ok(least_of(p, upper))
}

fn greatest_of(p: &Psoset, s: ElementSet) -> Option<usize> {
    s.iter().find(|&g| s.is_subset(p.down_set(g)))
}

fn least_of(p: &Psoset, s: ElementSet) -> Option<usize> {
    s.iter().find(|&l| s.is_subset(p.up_set(l)))
}

fn pair_meet(p: &Psoset, x: usize, y: usize) -> Option<usize> {
    greatest_of(p, p.down_set(x) & p.down_set(y))
}

fn pair_join(p: &Psoset, x: usize, y: usize) -> Option<usize> {
    least_of(p, p.up_set(x) & p.up_set(y))
}

/// Meet table if every pair has a meet.
pub fn meet_table(p: &Psoset) -> Option<BinaryOpTable> {
    let n = p.len();
    let mut cells = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            cells.push(pair_meet(p, x, y)?);
        }
    }
    BinaryOpTable::from_cells(n, cells)
}

/// Join table if every pair has a join.
pub fn join_table(p: &Psoset) -> Option<BinaryOpTable> {
    let n = p.len();
    let mut cells = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            cells.push(pair_join(p, x, y)?);
        }
    }
    BinaryOpTable::from_cells(n, cells)
}

/// Which of the two operations is missing for a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MissingBound {
    Meet,
    Join,
}

impl fmt::Display for MissingBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MissingBound::Meet => "meet",
            MissingBound::Join => "join",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrellisError {
    #[error("not a trellis: elements {x} and {y} have no {missing}")]
    NotATrellis { x: usize, y: usize, missing: MissingBound },
    #[error("tables violate the trellis axioms ({} violations)", .0.violations.len())]
    AxiomsFailed(SkalaReport),
    #[error("trellis is not modular")]
    NotModular,
    #[error("trellis is not bounded")]
    NotBounded,
    #[error(transparent)]
    Psoset(#[from] PsosetError),
}

/// Structural flags of a psoset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StructureKind {
    pub is_meet_semi_trellis: bool,
    pub is_join_semi_trellis: bool,
    pub is_trellis: bool,
    pub is_lattice: bool,
    pub is_modular: bool,
    pub is_bounded: bool,
}

pub fn structure_kind(p: &Psoset) -> StructureKind {
    let is_meet_semi_trellis = meet_table(p).is_some();
    let is_join_semi_trellis = join_table(p).is_some();
    let is_trellis = is_meet_semi_trellis && is_join_semi_trellis;
    let is_modular = is_trellis && Trellis::new(p.clone()).map(|t| t.is_modular()).unwrap_or(false);
    StructureKind {
        is_meet_semi_trellis,
        is_join_semi_trellis,
        is_trellis,
        is_lattice: is_trellis && p.is_transitive(),
        is_modular,
        is_bounded: p.is_bounded(),
    }
}

/// A psoset in which every pair has a meet and a join, with both tables materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trellis {
    base: Psoset,
    meet: BinaryOpTable,
    join: BinaryOpTable,
}

impl Trellis {
    /// Fills the meet and join tables, failing on the first pair (row-major) lacking either.
    pub fn new(base: Psoset) -> Result<Trellis, TrellisError> {
        let n = base.len();
        let mut meet = Vec::with_capacity(n * n);
        let mut join = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let m = pair_meet(&base, x, y)
                    .ok_or(TrellisError::NotATrellis { x, y, missing: MissingBound::Meet })?;
                let j = pair_join(&base, x, y)
                    .ok_or(TrellisError::NotATrellis { x, y, missing: MissingBound::Join })?;
                meet.push(m);
                join.push(j);
            }
        }
        let meet = BinaryOpTable::from_cells(n, meet).expect("meet values are elements");
        let join = BinaryOpTable::from_cells(n, join).expect("join values are elements");
        Ok(Trellis { base, meet, join })
    }

    pub fn psoset(&self) -> &Psoset {
        &self.base
    }

    pub fn into_psoset(self) -> Psoset {
        self.base
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.base.leq(x, y)
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet.get(x, y)
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join.get(x, y)
    }

    pub fn meet_table(&self) -> &BinaryOpTable {
        &self.meet
    }

    pub fn join_table(&self) -> &BinaryOpTable {
        &self.join
    }

    pub fn bounds(&self) -> Result<(usize, usize), TrellisError> {
        self.base.bounds().map_err(|_| TrellisError::NotBounded)
    }

    pub fn kind(&self) -> StructureKind {
        StructureKind {
            is_meet_semi_trellis: true,
            is_join_semi_trellis: true,
            is_trellis: true,
            is_lattice: self.base.is_transitive(),
            is_modular: self.is_modular(),
            is_bounded: self.base.is_bounded(),
        }
    }

    pub fn is_lattice(&self) -> bool {
        self.base.is_transitive()
    }

    /// First `(x, y, z)` with `x ⊴ z` and `x ∨ (y ∧ z) ≠ (x ∨ y) ∧ z`.
    pub fn modularity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for z in self.base.up_set(x) {
                for y in 0..n {
                    if self.join(x, self.meet(y, z)) != self.meet(self.join(x, y), z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_modular(&self) -> bool {
        self.modularity_violation().is_none()
    }

    /// Checks that `x ⊴ z` and `x ∨ y = 1` imply `x ∧ y ⊴ z`, which holds in every bounded
    /// modular trellis.
    pub fn modular_implication_check(&self) -> Result<bool, TrellisError> {
        let (_, top) = self.bounds()?;
        if !self.is_modular() {
            return Err(TrellisError::NotModular);
        }
        let n = self.len();
        for x in 0..n {
            for z in self.base.up_set(x) {
                for y in 0..n {
                    if self.join(x, y) == top && !self.leq(self.meet(x, y), z) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// First `(x, y, z)` with `(x ∧ y) ∧ z ≠ x ∧ (y ∧ z)`.
    pub fn meet_associativity_violation(&self) -> Option<(usize, usize, usize)> {
        associativity_violation(&self.meet)
    }

    /// First `(x, y, z)` with `(x ∨ y) ∨ z ≠ x ∨ (y ∨ z)`.
    pub fn join_associativity_violation(&self) -> Option<(usize, usize, usize)> {
        associativity_violation(&self.join)
    }

    pub fn is_meet_closed(&self, a: ElementSet) -> bool {
        a.iter().all(|x| a.iter().all(|y| a.contains(self.meet(x, y))))
    }

    pub fn is_join_closed(&self, a: ElementSet) -> bool {
        a.iter().all(|x| a.iter().all(|y| a.contains(self.join(x, y))))
    }

    /// `a` is a ∧-sub-trellis.
    pub fn is_meet_sub_trellis(&self, a: ElementSet) -> bool {
        self.is_meet_closed(a)
    }

    /// `a` is a ∨-sub-trellis.
    pub fn is_join_sub_trellis(&self, a: ElementSet) -> bool {
        self.is_join_closed(a)
    }

    pub fn is_sub_trellis(&self, a: ElementSet) -> bool {
        self.is_meet_closed(a) && self.is_join_closed(a)
    }

    /// Sub-trellis on which `⊴` is transitive.
    pub fn is_sub_lattice(&self, a: ElementSet) -> bool {
        self.is_sub_trellis(a) && self.is_transitive_on(a)
    }

    pub fn is_transitive_on(&self, a: ElementSet) -> bool {
        a.iter().all(|x| {
            (self.base.up_set(x) & a)
                .iter()
                .all(|y| (self.base.up_set(y) & a).is_subset(self.base.up_set(x)))
        })
    }

    /// First pair `(x, y)` of `a` whose meet leaves `a`.
    pub fn meet_closure_witness(&self, a: ElementSet) -> Option<(usize, usize)> {
        for x in a {
            for y in a {
                if !a.contains(self.meet(x, y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

/// First `(x, y, z)` with `F(x, F(y, z)) ≠ F(F(x, y), z)`.
pub fn associativity_violation(op: &BinaryOpTable) -> Option<(usize, usize, usize)> {
    let n = op.size();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if op.get(x, op.get(y, z)) != op.get(op.get(x, y), z) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Which operation a Skala-axiom violation concerns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Meet,
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkalaViolation {
    SizeMismatch,
    OutOfRange,
    Commutativity { side: Side, x: usize, y: usize },
    Idempotence { side: Side, x: usize },
    /// `x ∨ (y ∧ x) = x` (side `Join`) or `x ∧ (y ∨ x) = x` (side `Meet`) fails.
    Absorption { side: Side, x: usize, y: usize },
    /// `x ∨ ((x∧y) ∨ (x∧z)) = x` (side `Join`) or `x ∧ ((x∨y) ∧ (x∨z)) = x` (side `Meet`) fails.
    PartPreservation { side: Side, x: usize, y: usize, z: usize },
}

/// Outcome of [`check_skala_axioms`]; empty `violations` means the tables form a trellis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SkalaReport {
    pub violations: Vec<SkalaViolation>,
}

impl SkalaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks commutativity, idempotence, absorption and part-preservation of two tables,
/// reporting every violating tuple.
pub fn check_skala_axioms(meet: &BinaryOpTable, join: &BinaryOpTable) -> SkalaReport {
    use SkalaViolation::*;
    let n = meet.size();
    if join.size() != n {
        return SkalaReport { violations: vec![SizeMismatch] };
    }
    let mut v = Vec::new();
    for (side, op) in [(Side::Meet, meet), (Side::Join, join)] {
        for x in 0..n {
            if op.get(x, x) != x {
                v.push(Idempotence { side, x });
            }
            for y in x + 1..n {
                if op.get(x, y) != op.get(y, x) {
                    v.push(Commutativity { side, x, y });
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if join.get(x, meet.get(y, x)) != x {
                v.push(Absorption { side: Side::Join, x, y });
            }
            if meet.get(x, join.get(y, x)) != x {
                v.push(Absorption { side: Side::Meet, x, y });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if join.get(x, join.get(meet.get(x, y), meet.get(x, z))) != x {
                    v.push(PartPreservation { side: Side::Join, x, y, z });
                }
                if meet.get(x, meet.get(join.get(x, y), join.get(x, z))) != x {
                    v.push(PartPreservation { side: Side::Meet, x, y, z });
                }
            }
        }
    }
    SkalaReport { violations: v }
}

/// Recovers the pseudo-order from trellis tables: `a ⊴ b` iff `a ∧ b = a` or `a ∨ b = b`.
pub fn induced_order(meet: &BinaryOpTable, join: &BinaryOpTable) -> Result<Vec<Vec<bool>>, TrellisError> {
    let report = check_skala_axioms(meet, join);
    if !report.passed() {
        return Err(TrellisError::AxiomsFailed(report));
    }
    let n = meet.size();
    Ok((0..n)
        .map(|a| (0..n).map(|b| meet.get(a, b) == a || join.get(a, b) == b).collect())
        .collect())
}

/// Builds a trellis directly from tables satisfying the algebraic axioms.
pub fn trellis_from_tables(
    names: &[String],
    meet: &BinaryOpTable,
    join: &BinaryOpTable,
) -> Result<Trellis, TrellisError> {
    let rel = induced_order(meet, join)?;
    let p = validate_psoset(&rel, names)?;
    Trellis::new(p)
}
