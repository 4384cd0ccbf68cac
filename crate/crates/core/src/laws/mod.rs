//! Exhaustive and randomized checking of the algebraic laws of hesitant
//! elements and soft sets.

pub mod check;
pub mod expr;
pub mod registry;
pub mod space;

pub use check::{
    check_law, check_law_exhaustive, replay, run_suite, CheckConfig, Counterexample, LawReport,
    Predicate, Reading, ReadingReport, Status,
};
pub use expr::Expr;
pub use registry::{find, registry, Law, Level, ParameterMode, Relation};
