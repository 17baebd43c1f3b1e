//! The three-point semidefinite programming bound: model assembly, a dense
//! primal-dual interior-point solver, and a sparse text interchange format.

pub mod format;
pub mod model;
pub mod solver;

pub use format::{export_problem, export_solution_blocks, import_problem, import_solution_blocks};
pub use model::{
    bound_from_solution, build_sdp, build_sdp_ordered, min_eigenvalue, monomial_basis,
    verify_solution, BlockSpec, ConstraintRow, Entry, MonomialOrder, SdpError, SdpProblem,
    SdpSolution, SolverStatus, VerificationReport,
};
pub use solver::{solve, SolverSettings};
