//! Exact solvers that recurse down the type graph sequence, solve the base
//! graph exhaustively, and lift the answer back to the input graph.
//!
//! Every lift re-checks the structural facts the recursion depends on and
//! returns [`Error::InvariantViolated`](crate::Error::InvariantViolated)
//! instead of a wrong certificate.

mod coloring;
mod cover;
mod domination;

pub use coloring::{coloring, coloring_lift, coloring_with, lift_multicolor_weights, multicoloring, multicoloring_with, MulticolorWeights};
pub use cover::{lift_vc_weights, vc_cost, vertex_cover, vertex_cover_with, wvc2, wvc2_with, VcWeights};
pub use domination::{dominating_set, dominating_set_with, ds_demand_lift, ds_solution_lift, is_qstds, stds, stds_with};

use crate::ilp::SolverConfig;

/// Limits for the exhaustive base cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FptConfig {
    /// Largest graph whose subsets are enumerated outright.
    pub base_cap: usize,
    /// Largest base graph whose independent sets feed the coloring program.
    pub coloring_base_cap: usize,
    pub ilp: SolverConfig,
}

impl Default for FptConfig {
    fn default() -> Self {
        FptConfig {
            base_cap: 30,
            coloring_base_cap: 20,
            ilp: SolverConfig::default(),
        }
    }
}

/// A certificate together with the shape of the recursion that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solved<T> {
    pub value: T,
    /// Number of quotient steps taken before the base case.
    pub depth: usize,
    /// Node count of the graph solved exhaustively.
    pub base_size: usize,
    /// Number of per-level invariant checks that passed.
    pub checks: usize,
}
