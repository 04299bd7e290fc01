//! Exact solvers used as ground truth: matrix-game values, minimax value
//! iteration, best-response values, joint-policy evaluation and Nash gaps.
//!
//! Everything here is a pure function of its arguments.

mod lp;
mod markov;
mod matrix;

pub use lp::GameSolution;
pub use markov::{
    best_response_value, bellman_minimax, markov_nash_gap, minimax_policies,
    minimax_value_iteration, policy_value, q_target, uniform_initial, ValueIterationResult,
};
pub use matrix::{matrix_game_value, matrix_nash_gap, matrix_regret};

/// Default tolerance for every value iteration.
pub const DEFAULT_TOL: f64 = 1e-8;
