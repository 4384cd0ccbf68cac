//! Interval-valued hesitant fuzzy soft sets.
//!
//! * [`interval`]: unit intervals, possibility-degree ranking, scalar kernels.
//! * [`element`]: hesitant elements (rank-sorted multisets of intervals) and
//!   their union, intersection, complement, ring operations and scores.
//! * [`soft`]: soft sets over a universe of objects and their set algebra.
//! * [`laws`]: a registry of algebraic identities and a checker that hunts for
//!   counterexamples on a grid and with seeded random trials.
//! * [`document`]: the JSON interchange format used by the `ivhfss` binary.

pub mod document;
pub mod element;
pub mod error;
pub mod interval;
pub mod laws;
pub mod par;
pub mod soft;

pub use element::{AlignmentPolicy, CombineMode, Ivhfe, Semantics};
pub use error::{Error, Result};
pub use interval::{OperatorKind, UnitInterval};
pub use soft::IvhfSoftSet;
