//! Binary-operation properties, t-norm checking and the t-norm constructions.

use std::fmt;

use thiserror::Error;

use crate::interior::{lambda, validate_interior, InteriorError, InteriorReport, UnaryMap};
use crate::classes::is_right_transitive;
use crate::relation::{Psoset, QueryError, SubPsoset};
use crate::set::ElementSet;
use crate::table::BinaryOpTable;
use crate::trellis::{join_table, meet_table, Trellis};

/// Tuple of element indices showing that a property fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Witness {
    One(usize),
    Two(usize, usize),
    Three(usize, usize, usize),
    Four(usize, usize, usize, usize),
}

impl Witness {
    pub fn elements(&self) -> Vec<usize> {
        match *self {
            Witness::One(x) => vec![x],
            Witness::Two(x, y) => vec![x, y],
            Witness::Three(x, y, z) => vec![x, y, z],
            Witness::Four(x, y, z, t) => vec![x, y, z, t],
        }
    }

    pub fn render(&self, p: &Psoset) -> String {
        let names: Vec<&str> = self.elements().into_iter().map(|x| p.name(x)).collect();
        format!("({})", names.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flag {
    Holds,
    Fails(Witness),
    /// The property needs a top, meet or join that the carrier lacks.
    NotApplicable,
}

impl Flag {
    pub fn holds(&self) -> bool {
        matches!(self, Flag::Holds)
    }

    pub fn witness(&self) -> Option<Witness> {
        match self {
            Flag::Fails(w) => Some(*w),
            _ => None,
        }
    }

    fn from_witness(w: Option<Witness>) -> Flag {
        w.map_or(Flag::Holds, Flag::Fails)
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flag::Holds => f.write_str("yes"),
            Flag::Fails(_) => f.write_str("no"),
            Flag::NotApplicable => f.write_str("n/a"),
        }
    }
}

/// Every checked property of a binary operation.
///
/// Witness shapes: `increasing` gives `(x, y, z, t)` with `x ⊴ y`, `z ⊴ t` and
/// `F(x,z) ⋬ F(y,t)`; `left_increasing` gives `(x, y, z)` with `F(x,z) ⋬ F(y,z)`;
/// `right_increasing` gives `(x, y, z)` with `F(z,x) ⋬ F(z,y)`; `meet_preserving` gives
/// `(x, y, z)` with `F(x, y∧z) ≠ F(x,y) ∧ F(x,z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TnormReport {
    pub commutative: Flag,
    pub associative: Flag,
    pub increasing: Flag,
    pub left_increasing: Flag,
    pub right_increasing: Flag,
    pub neutral_top: Flag,
    pub conjunctive: Flag,
    pub disjunctive: Flag,
    pub idempotent: Flag,
    pub meet_preserving: Flag,
}

impl TnormReport {
    pub fn is_tnorm(&self) -> bool {
        self.commutative.holds() && self.associative.holds() && self.increasing.holds() && self.neutral_top.holds()
    }

    /// Flag names paired with their values, in display order.
    pub fn entries(&self) -> [(&'static str, Flag); 10] {
        [
            ("commutative", self.commutative),
            ("associative", self.associative),
            ("increasing", self.increasing),
            ("left_increasing", self.left_increasing),
            ("right_increasing", self.right_increasing),
            ("neutral_top", self.neutral_top),
            ("conjunctive", self.conjunctive),
            ("disjunctive", self.disjunctive),
            ("idempotent", self.idempotent),
            ("meet_preserving", self.meet_preserving),
        ]
    }
}

pub fn commutativity_witness(op: &BinaryOpTable) -> Option<Witness> {
    let n = op.size();
    for x in 0..n {
        for y in x + 1..n {
            if op.get(x, y) != op.get(y, x) {
                return Some(Witness::Two(x, y));
            }
        }
    }
    None
}

pub fn associativity_witness(op: &BinaryOpTable) -> Option<Witness> {
    crate::trellis::associativity_violation(op).map(|(x, y, z)| Witness::Three(x, y, z))
}

pub fn increasing_witness(p: &Psoset, op: &BinaryOpTable) -> Option<Witness> {
    let n = p.len();
    for x in 0..n {
        for y in p.up_set(x) {
            for z in 0..n {
                for t in p.up_set(z) {
                    if !p.leq(op.get(x, z), op.get(y, t)) {
                        return Some(Witness::Four(x, y, z, t));
                    }
                }
            }
        }
    }
    None
}

pub fn left_increasing_witness(p: &Psoset, op: &BinaryOpTable) -> Option<Witness> {
    let n = p.len();
    for x in 0..n {
        for y in p.up_set(x) {
            for z in 0..n {
                if !p.leq(op.get(x, z), op.get(y, z)) {
                    return Some(Witness::Three(x, y, z));
                }
            }
        }
    }
    None
}

pub fn right_increasing_witness(p: &Psoset, op: &BinaryOpTable) -> Option<Witness> {
    let n = p.len();
    for x in 0..n {
        for y in p.up_set(x) {
            for z in 0..n {
                if !p.leq(op.get(z, x), op.get(z, y)) {
                    return Some(Witness::Three(x, y, z));
                }
            }
        }
    }
    None
}

fn neutral_witness(op: &BinaryOpTable, top: usize) -> Option<Witness> {
    (0..op.size())
        .find(|&x| op.get(x, top) != x || op.get(top, x) != x)
        .map(Witness::One)
}

fn idempotence_witness(op: &BinaryOpTable) -> Option<Witness> {
    (0..op.size()).find(|&x| op.get(x, x) != x).map(Witness::One)
}

fn pair_scan(n: usize, bad: impl Fn(usize, usize) -> bool) -> Option<Witness> {
    for x in 0..n {
        for y in 0..n {
            if bad(x, y) {
                return Some(Witness::Two(x, y));
            }
        }
    }
    None
}

fn meet_preserving_witness(op: &BinaryOpTable, meet: &BinaryOpTable) -> Option<Witness> {
    let n = op.size();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if op.get(x, meet.get(y, z)) != meet.get(op.get(x, y), op.get(x, z)) {
                    return Some(Witness::Three(x, y, z));
                }
            }
        }
    }
    None
}

/// Checks every property of `op` on `p`; properties needing a missing top, meet or join are
/// reported as not applicable.
pub fn check(p: &Psoset, op: &BinaryOpTable) -> TnormReport {
    let meet = meet_table(p);
    let join = join_table(p);
    check_with(p, op, meet.as_ref(), join.as_ref())
}

/// As [`check`], reusing the tables of a trellis.
pub fn check_on(t: &Trellis, op: &BinaryOpTable) -> TnormReport {
    check_with(t.psoset(), op, Some(t.meet_table()), Some(t.join_table()))
}

fn check_with(
    p: &Psoset,
    op: &BinaryOpTable,
    meet: Option<&BinaryOpTable>,
    join: Option<&BinaryOpTable>,
) -> TnormReport {
    assert_eq!(op.size(), p.len(), "operation table size must match the carrier");
    let n = p.len();
    let conjunctive = meet.map_or(Flag::NotApplicable, |m| {
        Flag::from_witness(pair_scan(n, |x, y| !p.leq(op.get(x, y), m.get(x, y))))
    });
    let disjunctive = join.map_or(Flag::NotApplicable, |j| {
        Flag::from_witness(pair_scan(n, |x, y| !p.leq(j.get(x, y), op.get(x, y))))
    });
    let meet_preserving =
        meet.map_or(Flag::NotApplicable, |m| Flag::from_witness(meet_preserving_witness(op, m)));
    TnormReport {
        commutative: Flag::from_witness(commutativity_witness(op)),
        associative: Flag::from_witness(associativity_witness(op)),
        increasing: Flag::from_witness(increasing_witness(p, op)),
        left_increasing: Flag::from_witness(left_increasing_witness(p, op)),
        right_increasing: Flag::from_witness(right_increasing_witness(p, op)),
        neutral_top: p.top().map_or(Flag::NotApplicable, |top| Flag::from_witness(neutral_witness(op, top))),
        conjunctive,
        disjunctive,
        idempotent: Flag::from_witness(idempotence_witness(op)),
        meet_preserving,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TnormError {
    #[error("carrier is not bounded")]
    NotBounded,
    #[error("element {0} is not a co-atom")]
    NotACoAtom(usize),
    #[error(transparent)]
    Interior(#[from] InteriorError),
    #[error("element {0} of the interior range is not right-transitive")]
    RangeNotRightTransitive(usize),
    #[error("inner operation is not a t-norm on the range")]
    VNotATnorm(Box<TnormReport>),
    #[error("inner operation has size {found}, range has {expected} elements")]
    VSizeMismatch { expected: usize, found: usize },
    #[error("subset is not a sub-trellis: meet or join of {0} and {1} leaves it")]
    NotASubTrellis(usize, usize),
    #[error("subset is not a bounded sub-lattice")]
    NotASubLattice,
    #[error("element {0} is not in the subset")]
    ElementNotInSubset(usize),
    #[error("operations are defined on different carriers")]
    TargetMismatch,
}

impl From<QueryError> for TnormError {
    fn from(_: QueryError) -> Self {
        TnormError::NotBounded
    }
}

/// Top row and column are neutral, everything else comes from `inner`.
fn with_neutral_top(n: usize, top: usize, inner: impl Fn(usize, usize) -> usize) -> BinaryOpTable {
    BinaryOpTable::from_fn(n, |x, y| {
        if x == top {
            y
        } else if y == top {
            x
        } else {
            inner(x, y)
        }
    })
}

/// The smallest t-norm: neutral top, bottom elsewhere.
pub fn t_drastic(p: &Psoset) -> Result<BinaryOpTable, TnormError> {
    let (bottom, top) = p.bounds()?;
    Ok(with_neutral_top(p.len(), top, |_, _| bottom))
}

/// First `(x, y, z, w)` with `x∧y ≠ 0`, `x∨y = 1` and `(x∨z)∨(y∨w) ≠ 1`.
pub fn condition4_violation(t: &Trellis) -> Result<Option<Witness>, TnormError> {
    let (bottom, top) = t.bounds().map_err(|_| TnormError::NotBounded)?;
    let n = t.len();
    for x in 0..n {
        for y in 0..n {
            if t.meet(x, y) == bottom || t.join(x, y) != top {
                continue;
            }
            for z in 0..n {
                let xz = t.join(x, z);
                for w in 0..n {
                    if t.join(xz, t.join(y, w)) != top {
                        return Ok(Some(Witness::Four(x, y, z, w)));
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn condition4(t: &Trellis) -> Result<bool, TnormError> {
    condition4_violation(t).map(|w| w.is_none())
}

/// Meet where the join is the top, bottom elsewhere.
pub fn t_z(t: &Trellis) -> Result<BinaryOpTable, TnormError> {
    let (bottom, top) = t.bounds().map_err(|_| TnormError::NotBounded)?;
    Ok(BinaryOpTable::from_fn(t.len(), |x, y| if t.join(x, y) == top { t.meet(x, y) } else { bottom }))
}

/// Drastic t-norm with the single extra cell `(i, i) ↦ i` for a co-atom `i`.
pub fn t_coatom(p: &Psoset, i: usize) -> Result<BinaryOpTable, TnormError> {
    let (bottom, top) = p.bounds()?;
    if i >= p.len() || !p.co_atoms()?.contains(i) {
        return Err(TnormError::NotACoAtom(i));
    }
    Ok(with_neutral_top(p.len(), top, |x, y| if x == i && y == i { i } else { bottom }))
}

/// Builds `T(x,y) = V(I(x), I(y))` off the top row and column, without checking anything.
/// `inner` is indexed by the carrier.
pub fn t_interior_unchecked(t: &Trellis, m: &UnaryMap, inner: impl Fn(usize, usize) -> usize) -> Result<BinaryOpTable, TnormError> {
    let (_, top) = t.bounds().map_err(|_| TnormError::NotBounded)?;
    Ok(with_neutral_top(t.len(), top, |x, y| inner(m.apply(x), m.apply(y))))
}

/// Validates an interior operator whose range consists of right-transitive elements and
/// returns the range as an induced sub-psoset.
fn checked_range(t: &Trellis, m: &UnaryMap) -> Result<SubPsoset, TnormError> {
    t.bounds().map_err(|_| TnormError::NotBounded)?;
    let report: InteriorReport = validate_interior(t, m);
    if !report.is_interior() {
        return Err(InteriorError::NotAnInteriorOperator(report).into());
    }
    let r = m.image();
    if let Some(bad) = r.iter().find(|&x| !is_right_transitive(t.psoset(), x)) {
        return Err(TnormError::RangeNotRightTransitive(bad));
    }
    Ok(t.psoset().induced(r))
}

/// `T(x,y) = V(I(x), I(y))` off the top row and column, for an interior operator `I` with
/// right-transitive range `R` and a t-norm `V` on `(R, ⊴, 0, I(1))`.
///
/// `v` is indexed by the positions of `R` in ascending element order.
pub fn t_interior(t: &Trellis, m: &UnaryMap, v: &BinaryOpTable) -> Result<BinaryOpTable, TnormError> {
    let sub = checked_range(t, m)?;
    let k = sub.embedding.len();
    if v.size() != k {
        return Err(TnormError::VSizeMismatch { expected: k, found: v.size() });
    }
    let report = check(&sub.psoset, v);
    if !report.is_tnorm() {
        return Err(TnormError::VNotATnorm(Box::new(report)));
    }
    let local = |x: usize| sub.local(x).expect("value lies in the range");
    t_interior_unchecked(t, m, |x, y| sub.embedding[v.get(local(x), local(y))])
}

/// [`t_interior`] with the meet restricted to the range as inner t-norm.
pub fn t_interior_meet(t: &Trellis, m: &UnaryMap) -> Result<BinaryOpTable, TnormError> {
    let sub = checked_range(t, m)?;
    let v = t.meet_table().restrict(&sub).expect("an interior range is meet-closed");
    t_interior(t, m, &v)
}

fn require_sub_trellis(t: &Trellis, a: ElementSet) -> Result<(), TnormError> {
    for x in a {
        for y in a {
            if !a.contains(t.meet(x, y)) || !a.contains(t.join(x, y)) {
                return Err(TnormError::NotASubTrellis(x, y));
            }
        }
    }
    Ok(())
}

/// `T^{I,V}` with `I = λ_A`; `A` must be a sub-trellis of right-transitive elements
/// containing the bottom.
pub fn t_lambda(t: &Trellis, a: ElementSet, v: &BinaryOpTable) -> Result<BinaryOpTable, TnormError> {
    let m = lambda(t, a)?;
    require_sub_trellis(t, a)?;
    t_interior(t, &m, v)
}

/// `T^I` with `I = λ_A`.
pub fn t_lambda_meet(t: &Trellis, a: ElementSet) -> Result<BinaryOpTable, TnormError> {
    let m = lambda(t, a)?;
    require_sub_trellis(t, a)?;
    t_interior_meet(t, &m)
}

/// The formula of [`t_lambda_meet`] applied without requiring `A` to be a sub-trellis:
/// `x ∧ y` for `x, y ∈ A`, `λ_A(x) ∧ λ_A(y)` otherwise. The result need not be a t-norm.
pub fn t_lambda_meet_unchecked(t: &Trellis, a: ElementSet) -> Result<BinaryOpTable, TnormError> {
    let m = lambda(t, a)?;
    let (_, top) = t.bounds().map_err(|_| TnormError::NotBounded)?;
    Ok(with_neutral_top(t.len(), top, |x, y| {
        if a.contains(x) && a.contains(y) {
            t.meet(x, y)
        } else {
            t.meet(m.apply(x), m.apply(y))
        }
    }))
}

/// `V(x,y) = x ∧ y ∧ a` on a bounded sub-lattice `A`, with the top of `A` kept neutral.
///
/// The result is indexed by the positions of `A` in ascending element order.
pub fn v_scaled(t: &Trellis, a_set: ElementSet, a: usize) -> Result<BinaryOpTable, TnormError> {
    if !a_set.contains(a) {
        return Err(TnormError::ElementNotInSubset(a));
    }
    if !t.is_sub_lattice(a_set) {
        return Err(TnormError::NotASubLattice);
    }
    let sub = t.psoset().induced(a_set);
    let (_, top) = sub.psoset.bounds().map_err(|_| TnormError::NotASubLattice)?;
    let k = sub.embedding.len();
    let local = |x: usize| sub.local(x).expect("sub-lattice is meet-closed");
    Ok(with_neutral_top(k, top, |x, y| {
        let (gx, gy) = (sub.embedding[x], sub.embedding[y]);
        local(t.meet(t.meet(gx, gy), a))
    }))
}

/// Cell-wise `T1(x,y) ⊴ T2(x,y)`.
pub fn pointwise_leq(p: &Psoset, t1: &BinaryOpTable, t2: &BinaryOpTable) -> Result<bool, TnormError> {
    if t1.size() != p.len() || t2.size() != p.len() {
        return Err(TnormError::TargetMismatch);
    }
    Ok(t1.cells().iter().zip(t2.cells()).all(|(&u, &v)| p.leq(u, v)))
}
