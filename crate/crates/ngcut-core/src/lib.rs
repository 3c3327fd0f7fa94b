//! Solver suite for the constrained two-dimensional non-guillotine cutting
//! problem: cut rectangular pieces from a rectangular stock sheet, axis
//! aligned, without overlap and without rotation, so that the total value of
//! the pieces cut is maximal.
//!
//! The crate is organised around the classic 0-1 position-discretized model
//! of the problem and a difference-of-convex penalty heuristic that solves it
//! through a sequence of linear programs:
//!
//! * [`model`] — instances, canonical position grids and variable indexing;
//! * [`formulation`] — the 0-1 model as sparse inequality systems;
//! * [`lp`] — a bounded-variable primal simplex for the LP subproblems;
//! * [`dca`] — the penalized solver (one LP per iteration) plus the
//!   relaxation-based procedure that produces its starting point;
//! * [`exact`] — branch-and-bound and brute-force reference solvers;
//! * [`io`] — instance and solution file formats, geometric feasibility
//!   checking, and ASCII/SVG pattern rendering.
//!
//! Everything is deterministic: identical inputs produce bit-identical
//! solutions, traces and renders.

pub mod dca;
pub mod exact;
pub mod formulation;
pub mod io;
pub mod lp;
pub mod model;
pub mod testing;

pub use dca::{run_dca, DcaConfig, DcaResult, DcaTrace, InitStrategy};
pub use exact::{solve_branch_and_bound, solve_brute_force, ExactResult, ExactStatus};
pub use formulation::{Formulation, ModelStats, Polytope, RowLabel, SparseMatrix};
pub use io::{feasibility_check, FeasibilityReport, SolutionRecord};
pub use lp::{solve_lp, LpLimits, LpSolution, LpStatus};
pub use model::{Instance, Piece, Placement, PositionGrid, VarIndex};
