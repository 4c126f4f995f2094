//! Per-element transitivity, associativity and distributivity.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::relation::Psoset;
use crate::set::ElementSet;
use crate::trellis::Trellis;

/// Property selecting one of the subsets `X^α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementClass {
    RightTransitive,
    LeftTransitive,
    MiddleTransitive,
    Transitive,
    MeetAssociative,
    JoinAssociative,
    Associative,
    Distributive,
}

impl ElementClass {
    pub const ALL: [ElementClass; 8] = [
        ElementClass::RightTransitive,
        ElementClass::LeftTransitive,
        ElementClass::MiddleTransitive,
        ElementClass::Transitive,
        ElementClass::MeetAssociative,
        ElementClass::JoinAssociative,
        ElementClass::Associative,
        ElementClass::Distributive,
    ];

    /// Short label: `rtr`, `ltr`, `mtr`, `tr`, `meet-ass`, `join-ass`, `ass`, `dis`.
    pub fn label(self) -> &'static str {
        match self {
            ElementClass::RightTransitive => "rtr",
            ElementClass::LeftTransitive => "ltr",
            ElementClass::MiddleTransitive => "mtr",
            ElementClass::Transitive => "tr",
            ElementClass::MeetAssociative => "meet-ass",
            ElementClass::JoinAssociative => "join-ass",
            ElementClass::Associative => "ass",
            ElementClass::Distributive => "dis",
        }
    }
}

impl fmt::Display for ElementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown element class `{0}`")]
pub struct UnknownClass(pub String);

impl FromStr for ElementClass {
    type Err = UnknownClass;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let c = match s {
            "rtr" => ElementClass::RightTransitive,
            "ltr" => ElementClass::LeftTransitive,
            "mtr" => ElementClass::MiddleTransitive,
            "tr" => ElementClass::Transitive,
            "meet-ass" | "∧-ass" => ElementClass::MeetAssociative,
            "join-ass" | "∨-ass" => ElementClass::JoinAssociative,
            "ass" => ElementClass::Associative,
            "dis" => ElementClass::Distributive,
            _ => return Err(UnknownClass(s.to_string())),
        };
        Ok(c)
    }
}

/// Flags of one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ElementFlags {
    pub rtr: bool,
    pub ltr: bool,
    pub mtr: bool,
    pub tr: bool,
    pub meet_ass: bool,
    pub join_ass: bool,
    pub ass: bool,
    /// Every tuple containing the element satisfies `(x∧y)∨z = (x∨z)∧(y∨z)`.
    pub meet_dis: bool,
    /// Every tuple containing the element satisfies `(x∨y)∧z = (x∧z)∨(y∧z)`.
    pub join_dis: bool,
    pub dis: bool,
}

impl ElementFlags {
    pub fn has(&self, class: ElementClass) -> bool {
        match class {
            ElementClass::RightTransitive => self.rtr,
            ElementClass::LeftTransitive => self.ltr,
            ElementClass::MiddleTransitive => self.mtr,
            ElementClass::Transitive => self.tr,
            ElementClass::MeetAssociative => self.meet_ass,
            ElementClass::JoinAssociative => self.join_ass,
            ElementClass::Associative => self.ass,
            ElementClass::Distributive => self.dis,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementClassification {
    pub flags: Vec<ElementFlags>,
}

impl ElementClassification {
    /// The subset `X^α`.
    pub fn subset(&self, class: ElementClass) -> ElementSet {
        self.flags
            .iter()
            .enumerate()
            .filter(|(_, f)| f.has(class))
            .map(|(i, _)| i)
            .collect()
    }
}

/// `a ⊴ x ⊴ y` implies `a ⊴ y`.
pub fn is_right_transitive(p: &Psoset, a: usize) -> bool {
    let up = p.up_set(a);
    up.iter().all(|x| p.up_set(x).is_subset(up))
}

/// `x ⊴ y ⊴ a` implies `x ⊴ a`.
pub fn is_left_transitive(p: &Psoset, a: usize) -> bool {
    let down = p.down_set(a);
    down.iter().all(|y| p.down_set(y).is_subset(down))
}

/// `x ⊴ a ⊴ y` implies `x ⊴ y`.
pub fn is_middle_transitive(p: &Psoset, a: usize) -> bool {
    let up = p.up_set(a);
    p.down_set(a).iter().all(|x| up.is_subset(p.up_set(x)))
}

/// Right-transitive elements of a psoset.
pub fn right_transitive_elements(p: &Psoset) -> ElementSet {
    (0..p.len()).filter(|&a| is_right_transitive(p, a)).collect()
}

/// Left-transitive elements of a psoset.
pub fn left_transitive_elements(p: &Psoset) -> ElementSet {
    (0..p.len()).filter(|&a| is_left_transitive(p, a)).collect()
}

fn associative_at(n: usize, op: impl Fn(usize, usize) -> usize, a: usize) -> bool {
    // Commutativity reduces every tuple containing `a` to the shape (a, x, y).
    (0..n).all(|x| (0..n).all(|y| op(op(a, x), y) == op(a, op(x, y))))
}

fn meet_dis_tuple(t: &Trellis, x: usize, y: usize, z: usize) -> bool {
    t.join(t.meet(x, y), z) == t.meet(t.join(x, z), t.join(y, z))
}

fn join_dis_tuple(t: &Trellis, x: usize, y: usize, z: usize) -> bool {
    t.meet(t.join(x, y), z) == t.join(t.meet(x, z), t.meet(y, z))
}

/// `a` occupies the first or the last slot; the first two slots are symmetric.
fn distributive_at(t: &Trellis, a: usize, tuple: impl Fn(&Trellis, usize, usize, usize) -> bool) -> bool {
    let n = t.len();
    (0..n).all(|x| (0..n).all(|y| tuple(t, a, x, y) && tuple(t, x, y, a)))
}

pub fn classify_element(t: &Trellis, a: usize) -> ElementFlags {
    let p = t.psoset();
    let n = t.len();
    let rtr = is_right_transitive(p, a);
    let ltr = is_left_transitive(p, a);
    let mtr = is_middle_transitive(p, a);
    let meet_ass = associative_at(n, |x, y| t.meet(x, y), a);
    let join_ass = associative_at(n, |x, y| t.join(x, y), a);
    let meet_dis = distributive_at(t, a, meet_dis_tuple);
    let join_dis = distributive_at(t, a, join_dis_tuple);
    ElementFlags {
        rtr,
        ltr,
        mtr,
        tr: rtr && ltr && mtr,
        meet_ass,
        join_ass,
        ass: meet_ass && join_ass,
        meet_dis,
        join_dis,
        dis: meet_dis || join_dis,
    }
}

pub fn classify(t: &Trellis) -> ElementClassification {
    ElementClassification { flags: (0..t.len()).map(|a| classify_element(t, a)).collect() }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoldError {
    #[error("empty subset")]
    EmptySubset,
    #[error("element {0} does not satisfy the precondition")]
    PreconditionViolated(usize),
}

/// Join of a set of right-transitive elements, folded in ascending index order.
pub fn iterated_join(t: &Trellis, s: ElementSet) -> Result<usize, FoldError> {
    let first = s.first().ok_or(FoldError::EmptySubset)?;
    if let Some(bad) = s.iter().find(|&x| !is_right_transitive(t.psoset(), x)) {
        return Err(FoldError::PreconditionViolated(bad));
    }
    Ok(s.without(first).iter().fold(first, |acc, x| t.join(acc, x)))
}

/// Meet of a set of left-transitive elements, folded in ascending index order.
pub fn iterated_meet(t: &Trellis, s: ElementSet) -> Result<usize, FoldError> {
    let first = s.first().ok_or(FoldError::EmptySubset)?;
    if let Some(bad) = s.iter().find(|&x| !is_left_transitive(t.psoset(), x)) {
        return Err(FoldError::PreconditionViolated(bad));
    }
    Ok(s.without(first).iter().fold(first, |acc, x| t.meet(acc, x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five() -> Trellis {
        let p = Psoset::from_pairs(
            &["0", "a", "b", "c", "1"],
            &[
                ("0", "a"), ("0", "b"), ("0", "c"), ("0", "1"),
                ("a", "b"), ("a", "1"), ("b", "c"), ("b", "1"), ("c", "1"),
            ],
        )
        .unwrap();
        Trellis::new(p).unwrap()
    }

    fn full_associative_scan(n: usize, op: impl Fn(usize, usize) -> usize, a: usize) -> bool {
        for x in 0..n {
            for y in 0..n {
                for (p, q, r) in [(a, x, y), (x, a, y), (x, y, a)] {
                    if op(op(p, q), r) != op(p, op(q, r)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn five_element_classes() {
        let t = five();
        let c = classify(&t);
        let p = t.psoset();
        assert_eq!(c.subset(ElementClass::RightTransitive), p.parse_set("0 b c 1").unwrap());
        let ends = p.parse_set("0 1").unwrap();
        for class in [
            ElementClass::Distributive,
            ElementClass::Associative,
            ElementClass::MeetAssociative,
            ElementClass::JoinAssociative,
            ElementClass::Transitive,
        ] {
            assert_eq!(c.subset(class), ends, "{class}");
        }
    }

    #[test]
    fn reduced_associativity_scan_agrees_with_full_scan() {
        let t = five();
        for a in 0..t.len() {
            let f = classify_element(&t, a);
            assert_eq!(f.meet_ass, full_associative_scan(t.len(), |x, y| t.meet(x, y), a));
            assert_eq!(f.join_ass, full_associative_scan(t.len(), |x, y| t.join(x, y), a));
            assert_eq!(f.meet_dis, f.join_dis);
        }
    }

    #[test]
    fn iterated_folds() {
        let t = five();
        let p = t.psoset();
        assert_eq!(iterated_join(&t, p.parse_set("0 b c").unwrap()), Ok(3));
        assert_eq!(iterated_join(&t, ElementSet::singleton(2)), Ok(2));
        assert_eq!(iterated_join(&t, p.parse_set("a c").unwrap()), Err(FoldError::PreconditionViolated(1)));
        assert_eq!(iterated_join(&t, ElementSet::EMPTY), Err(FoldError::EmptySubset));
        assert_eq!(iterated_meet(&t, p.parse_set("0 1").unwrap()), Ok(0));
    }

    #[test]
    fn class_labels_round_trip() {
        for c in ElementClass::ALL {
            assert_eq!(c.label().parse::<ElementClass>(), Ok(c));
        }
    }
}
