//! Finite pseudo-ordered sets, trellises and t-norms on them.

pub mod classes;
pub mod document;
pub mod dot;
pub mod enumerate;
pub mod fixtures;
pub mod interior;
pub mod oracle;
pub mod random;
pub mod relation;
pub mod set;
pub mod table;
pub mod tnorm;
pub mod trellis;
pub mod verify;

pub use classes::{classify, ElementClass, ElementClassification, ElementFlags};
pub use interior::{lambda, validate_interior, UnaryMap};
pub use relation::{validate_psoset, HasseDiagram, Psoset, PsosetError, QueryError, SubPsoset, Violation};
pub use set::{ElementSet, MAX_ELEMENTS};
pub use table::BinaryOpTable;
pub use tnorm::{check, check_on, Flag, TnormError, TnormReport, Witness};
pub use trellis::{StructureKind, Trellis, TrellisError};
