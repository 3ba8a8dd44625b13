//! Generalized Roth-Lempel (GRL) codes over finite fields.
//!
//! The crate builds GRL generator and parity-check matrices, decides the
//! MDS, dual-AMDS and self-dual properties through closed-form subset
//! conditions, and checks every such decision against exhaustive oracles
//! (column-subset rank tests, projective codeword enumeration, Schur squares).

pub mod error;
pub mod code;
pub mod criteria;
pub mod gf;
pub mod grl;
pub mod matrix;
pub mod search;

pub use error::{Error, Result};
pub use criteria::{
    check_amds_dual_thm, check_mds_thm, check_self_dual_thm, cross_validate, solve_self_dual_special,
    ConditionReport, Criterion, SelfDualSolution,
};
pub use gf::{Fe, Field};
pub use code::{Classification, CodeClass, LinearCode, NonGrsWitness, WeightEnumerator, DEFAULT_BUDGET};
pub use grl::{GrlSpec, Layout, SymSums};
pub use matrix::{Elimination, Mat};
pub use search::{estimate_cost, run_search, Family, SearchHit, SearchJob, SearchOutcome};
