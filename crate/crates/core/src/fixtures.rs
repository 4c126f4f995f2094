//! Built-in example documents.

use crate::document::{parse, PsosetDocument};

/// `(name, text)` of every built-in fixture.
pub const ALL: &[(&str, &str)] = &[
    ("table1", include_str!("../fixtures/table1.psoset")),
    ("table1_bounded", include_str!("../fixtures/table1_bounded.psoset")),
    ("chain5", include_str!("../fixtures/chain5.psoset")),
    ("modular8", include_str!("../fixtures/modular8.psoset")),
    ("modular7", include_str!("../fixtures/modular7.psoset")),
    ("nogreatest7", include_str!("../fixtures/nogreatest7.psoset")),
    ("interior7", include_str!("../fixtures/interior7.psoset")),
    ("cycle8", include_str!("../fixtures/cycle8.psoset")),
];

pub fn text(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Parsed fixture; panics on an unknown name or a malformed built-in file.
pub fn load(name: &str) -> PsosetDocument {
    let text = text(name).unwrap_or_else(|| panic!("no fixture named {name}"));
    parse(text).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}
