//! Interior operators and the maps `x ↦ ∨(A ∩ ↓x)`.

use std::fmt;

use thiserror::Error;

use crate::classes::{is_right_transitive, iterated_join};
use crate::relation::Psoset;
use crate::set::ElementSet;
use crate::trellis::Trellis;

/// A total map on the carrier, `map[x] = I(x)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnaryMap {
    map: Vec<usize>,
}

impl UnaryMap {
    /// `None` if a value is out of range.
    pub fn new(n: usize, map: Vec<usize>) -> Option<UnaryMap> {
        (map.len() == n && map.iter().all(|&v| v < n)).then_some(UnaryMap { map })
    }

    pub fn identity(n: usize) -> UnaryMap {
        UnaryMap { map: (0..n).collect() }
    }

    pub fn constant(n: usize, v: usize) -> UnaryMap {
        UnaryMap { map: vec![v; n] }
    }

    /// Parses one element name per carrier element, e.g. `"0 0 b c d e 1"`.
    pub fn from_names(p: &Psoset, text: &str) -> Option<UnaryMap> {
        let map: Option<Vec<usize>> = text.split_whitespace().map(|t| p.index_of(t)).collect();
        UnaryMap::new(p.len(), map?)
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.map
    }

    /// Image set, without validating anything.
    pub fn image(&self) -> ElementSet {
        self.map.iter().copied().collect()
    }

    pub fn render(&self, p: &Psoset) -> String {
        let names: Vec<&str> = self.map.iter().map(|&v| p.name(v)).collect();
        names.join(" ")
    }
}

impl fmt::Debug for UnaryMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.map).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InteriorViolation {
    /// The map is defined on a different number of elements.
    SizeMismatch,
    /// `I(x) ⋬ x`.
    NotContractive(usize),
    /// `I(I(x)) ≠ I(x)`.
    NotIdempotent(usize),
    /// `I(x ∧ y) ≠ I(x) ∧ I(y)`.
    NotMeetHomomorphism(usize, usize),
    /// `x ⊴ y` but `I(x) ⋬ I(y)`.
    NotIncreasing(usize, usize),
    /// `x` lies in the image but `I(x) ≠ x`.
    NotFixedOnRange(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InteriorReport {
    pub violations: Vec<InteriorViolation>,
}

impl InteriorReport {
    pub fn is_interior(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the three interior-operator axioms and the two properties they imply.
pub fn validate_interior(t: &Trellis, m: &UnaryMap) -> InteriorReport {
    use InteriorViolation::*;
    let n = t.len();
    let mut v = Vec::new();
    if m.len() != n {
        return InteriorReport { violations: vec![SizeMismatch] };
    }
    let image = m.image();
    for x in 0..n {
        if !t.leq(m.apply(x), x) {
            v.push(NotContractive(x));
        }
        if m.apply(m.apply(x)) != m.apply(x) {
            v.push(NotIdempotent(x));
        }
    }
    for x in 0..n {
        for y in 0..n {
            if m.apply(t.meet(x, y)) != t.meet(m.apply(x), m.apply(y)) {
                v.push(NotMeetHomomorphism(x, y));
            }
        }
    }
    for x in 0..n {
        for y in t.psoset().up_set(x) {
            if !t.leq(m.apply(x), m.apply(y)) {
                v.push(NotIncreasing(x, y));
            }
        }
    }
    for x in image {
        if m.apply(x) != x {
            v.push(NotFixedOnRange(x));
        }
    }
    InteriorReport { violations: v }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InteriorError {
    #[error("map is not an interior operator ({} violations)", .0.violations.len())]
    NotAnInteriorOperator(InteriorReport),
    #[error("trellis is not bounded")]
    NotBounded,
    #[error("subset does not contain the bottom element")]
    BottomMissing,
    #[error("element {0} of the subset is not right-transitive")]
    NotRightTransitiveSubset(usize),
}

/// Range of a validated interior operator.
pub fn range(t: &Trellis, m: &UnaryMap) -> Result<ElementSet, InteriorError> {
    let report = validate_interior(t, m);
    if !report.is_interior() {
        return Err(InteriorError::NotAnInteriorOperator(report));
    }
    Ok(m.image())
}

/// `x ↦ ∨(A ∩ ↓x)` for `A` a set of right-transitive elements containing the bottom.
///
/// The result is an interior operator with range `A` whenever `A` is also a sub-trellis;
/// otherwise it is still well defined but may fail [`validate_interior`].
pub fn lambda(t: &Trellis, a: ElementSet) -> Result<UnaryMap, InteriorError> {
    let (bottom, _) = t.bounds().map_err(|_| InteriorError::NotBounded)?;
    if !a.contains(bottom) {
        return Err(InteriorError::BottomMissing);
    }
    if let Some(bad) = a.iter().find(|&x| !is_right_transitive(t.psoset(), x)) {
        return Err(InteriorError::NotRightTransitiveSubset(bad));
    }
    let map = (0..t.len())
        .map(|x| iterated_join(t, a & t.psoset().down_set(x)).expect("bottom lies below every element"))
        .collect();
    Ok(UnaryMap { map })
}
