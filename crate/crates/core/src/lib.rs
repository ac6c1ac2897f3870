//! Linear sum assignment with edition.
//!
//! Transforms a set `U = {u_1..u_n}` into `V = {v_1..v_m}` by substitutions,
//! removals and insertions at minimal total cost. The costs form an
//! `(n+1) x (m+1)` [`EditCostMatrix`] whose last row holds insertion costs and
//! last column removal costs.
//!
//! ```
//! use lsape::{solve, EditCostMatrix, SolveOptions};
//!
//! let c: EditCostMatrix<i64> = "2 2\n1 5 3\n5 1 3\n3 3 0".parse().unwrap();
//! let r = solve(&c, SolveOptions::default()).unwrap();
//! assert_eq!(r.objective, 2);
//! assert_eq!(r.assignment.rho, vec![1, 2]);
//! ```
//!
//! [`solve_via_slsape`] solves the same problem through the classical square
//! formulation, and [`oracle::brute_force_optimum`] by exhaustive search.

pub mod assignment;
pub mod bench;
pub mod cost;
pub mod duals;
mod engine;
pub mod error;
pub mod generators;
pub mod hungarian;
pub mod io;
pub mod lsap;
pub mod matrix;
pub mod oracle;
pub mod slsape;

pub use assignment::{
    assignment_cost, from_matrix, to_matrix, validate_assignment, AssignmentMatrix, EditOperation,
    EpsilonAssignment, Validity,
};
pub use cost::Cost;
pub use duals::{check_slackness, DualVariables};
pub use error::{Error, Result};
pub use generators::{generate, Family, GeneratorSpec, ValueKind};
pub use hungarian::{
    apply_augmenting_path, augment, preprocess, solve, solve_with, AugmentationEvent,
    AugmentingPath, Phase, SolveOptions, SolveResult, SolveStats,
};
pub use lsap::{solve_lsap, solve_via_slsape, LsapResult, SquaredSolveResult};
pub use matrix::EditCostMatrix;
pub use oracle::{brute_force_optimum, count_assignments, enumerate_assignments};
pub use slsape::{
    build_slsape, from_slsape_bijection, to_slsape_bijection, OmegaPolicy, SLsapeInstance,
};
