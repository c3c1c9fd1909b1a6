//! Exact max-plus / min-plus scalar and matrix algebra.

pub mod digraph;
pub mod int;
pub mod kleene;
pub mod matrix;
pub mod number;

pub use digraph::{
    accessible_cycle_mean, cycle_means, cycle_time_vector, scc_and_access, Mode, SccAccess, SccMean, Sccs,
    WeightedDigraph,
};
pub use kleene::{kleene_least_solution, kleene_least_solution_raw};
pub use matrix::{residual_apply, trop_matvec, vec_le, Semiring, TropMatrix};
pub use number::{ext, ext_row, frac, parse_rational, rat, ExtendedNumber, Rational};
