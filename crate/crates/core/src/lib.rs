//! Decentralized smoothed best-response learning in two-player zero-sum
//! matrix and Markov games.
//!
//! - [`game`]: game models, policies, q- and v-functions, softmax, entropy.
//! - [`dynamics`]: the learning dynamics, stepsize schedules, condition checks.
//! - [`oracles`]: exact values, Nash gaps and value iteration.
//! - [`chain`]: Markov chains induced by joint policies, mixing times.
//! - [`diagnostics`]: Lyapunov quantities and bound evaluators.
//! - [`harness`]: game generators, file formats and replicated experiments.

pub mod chain;
pub mod diagnostics;
pub mod dynamics;
pub mod error;
pub mod game;
pub mod harness;
pub mod oracles;

pub use error::{Error, Result};
