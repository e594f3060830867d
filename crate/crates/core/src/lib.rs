//! Left pseudo-magmas (LPMs): finite tables and guarded piecewise rules,
//! identity checking, division-chain witnesses for weak protomodularity,
//! term normalization and exhaustive enumeration of small cases.

pub mod builtins;
pub mod check;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod magma;
pub mod protomod;
pub mod rules;
pub mod subalgebra;
pub mod term;

pub use builtins::{builtin, BUILTIN_NAMES};
pub use error::{DomainError, Error, EvalError, ParseError, Result, TableError};
pub use magma::{Domain, Elem, FiniteMagma, Magma, Op, Window};
pub use rules::{Carrier, RuleMagma};
pub use subalgebra::SubPredicate;
