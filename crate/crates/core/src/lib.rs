//! Certified bounds on the slicing degree `sd₊` of knots: the least `k` such
//! that a knot bounds a disk of self-intersection `−k` in a punctured
//! connected sum of copies of `-CP²`.

pub mod cli;
pub mod engine;
pub mod knot_model;
pub mod lattice;
pub mod obstructions;
pub mod rational;
pub mod staircase;

pub use engine::{
    beta_table, bound_report, lower_bound, report_table, upper_bound, upper_bounds, BoundReport, EngineConfig,
    LowerBound, UpperBound,
};
pub use knot_model::{parse_knot_db, validate_record, KnotDatabase, KnotRecord, VsSpec};
pub use lattice::{enumerate_classes, enumerate_odd_vectors, HomologyClass};
pub use obstructions::{ObstructionSet, Verdict, Witness};
pub use staircase::{Staircase, VsSequence};
