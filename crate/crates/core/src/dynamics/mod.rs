//! Learning engines.
//!
//! [`MatrixEngine`] runs the doubly smoothed best-response dynamics on a
//! matrix game and [`MarkovEngine`] runs its value-iteration extension on a
//! Markov game. In both, each player owns a [`LearnerState`] and only ever
//! sees a [`Feedback`] record built from its own action, its own reward and
//! the shared state.
//!
//! Every step asserts the two hard invariants of the dynamics: every policy
//! entry of a learning player stays above [`ell_tau`], and every q- and
//! v-entry stays within `1/(1−γ)`.

mod conditions;
mod markov;
mod matrix;
mod schedule;

pub use conditions::{check_conditions, CheckStatus, ConditionCheck, ConditionReport, GameDims};
pub use markov::{dsbr_vi_run, run_markov_with, MarkovEngine, MarkovRun, MarkovStep};
pub use matrix::{dsbr_step, run_dsbr, run_matrix_with, MatrixEngine, MatrixRun, StepOutcome};
pub use schedule::{ScheduleKind, StepsizeSchedule};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::game::{softmax_into, Player, Policy, QFunction, ValueFunction};

/// Absolute slack allowed on the margin and boundedness invariants.
pub const INVARIANT_TOL: f64 = 1e-12;

/// Uniform lower bound on every policy entry along a trajectory,
/// `ℓ_τ = [1 + (A_max − 1) exp(2 / ((1 − γ) τ))]⁻¹`. Matrix games use `γ = 0`.
pub fn ell_tau(tau: f64, gamma: f64, a_max: usize) -> Result<f64> {
    if a_max < 2 {
        return invalid(format!("A_max must be at least 2, got {a_max}"));
    }
    if !(tau > 0.0) || !(0.0..1.0).contains(&gamma) {
        return invalid(format!("need tau > 0 and gamma in [0, 1), got tau = {tau}, gamma = {gamma}"));
    }
    Ok(1.0 / (1.0 + (a_max as f64 - 1.0) * (2.0 / ((1.0 - gamma) * tau)).exp()))
}

/// Margin used by the in-loop assertion; a game where nobody has a choice
/// has the trivial margin 1.
pub(crate) fn margin_for(tau: f64, gamma: f64, a_max: usize) -> f64 {
    if a_max < 2 {
        1.0
    } else {
        ell_tau(tau, gamma, a_max).expect("validated arguments")
    }
}

/// Parameters of one run. `t_outer` is ignored by matrix-game runs.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// Inner-loop iterations `K`.
    pub k_inner: u64,
    /// Outer-loop iterations `T`.
    pub t_outer: u64,
    pub tau: f64,
    pub schedule: StepsizeSchedule,
    pub seed: u64,
    pub checkpoint_every: u64,
    pub strict_theory: bool,
    /// Starting state of the very first inner loop.
    pub initial_state: usize,
    /// Tolerance of the oracles evaluated at checkpoints.
    pub tol: f64,
    /// Initial distribution of the Nash gap; uniform when `None`.
    pub p_o: Option<Vec<f64>>,
    /// Numerical value for the smoothing-bias constant of Markov runs, if
    /// the caller has one. Without it that column stays empty.
    pub smoothing_constant: Option<f64>,
}

impl RunConfig {
    /// Matrix-game defaults: checkpoint every 1000 steps.
    pub fn matrix(k_inner: u64) -> Self {
        RunConfig {
            k_inner,
            t_outer: 1,
            tau: 0.05,
            schedule: StepsizeSchedule::linear(5.0, 10.0, 0.5),
            seed: 0,
            checkpoint_every: 1000,
            strict_theory: false,
            initial_state: 0,
            tol: crate::oracles::DEFAULT_TOL,
            p_o: None,
            smoothing_constant: None,
        }
    }

    /// Markov-game defaults: one checkpoint per outer iteration.
    pub fn markov(t_outer: u64, k_inner: u64) -> Self {
        RunConfig {
            t_outer,
            checkpoint_every: k_inner.max(1),
            ..Self::matrix(k_inner)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau > 0.0) || !self.tau.is_finite() {
            return invalid(format!("tau must be positive, got {}", self.tau));
        }
        if self.t_outer == 0 {
            return invalid("T must be at least 1");
        }
        if self.checkpoint_every == 0 {
            return invalid("checkpoint_every must be positive");
        }
        if !(self.tol > 0.0) {
            return invalid(format!("tol must be positive, got {}", self.tol));
        }
        self.schedule.validate()
    }

    pub(crate) fn enforce_theory(&self, dims: GameDims, gamma: f64) -> Result<()> {
        if !self.strict_theory {
            return Ok(());
        }
        let report = check_conditions(self, dims, gamma);
        if let Some(v) = report.violations().next() {
            return Err(Error::Schedule(format!(
                "strict theory mode: {} violated ({})",
                v.name, v.detail
            )));
        }
        Ok(())
    }
}

/// What a player observes after one round of play.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Feedback {
    pub state: usize,
    pub action: usize,
    pub reward: f64,
    pub next_state: usize,
}

/// One player's iterates `(q, π, v)`.
///
/// A frozen learner keeps its policy fixed and ignores feedback; it stands
/// in for a stationary opponent.
#[derive(Clone, Debug, PartialEq)]
pub struct LearnerState {
    player: Player,
    q: QFunction,
    policy: Policy,
    v: ValueFunction,
    /// `σ_τ(q(s))` for every state, refreshed when `q(s)` changes.
    smoothed: Vec<f64>,
    frozen: bool,
}

impl LearnerState {
    /// Zero q, uniform policy, zero v.
    pub fn new(player: Player, n_states: usize, n_actions: usize) -> Self {
        LearnerState {
            player,
            q: QFunction::zeros(n_states, n_actions),
            policy: Policy::uniform(n_states, n_actions),
            v: ValueFunction::zeros(n_states),
            smoothed: vec![1.0 / n_actions as f64; n_states * n_actions],
            frozen: false,
        }
    }

    pub fn stationary(player: Player, policy: Policy) -> Self {
        let mut l = Self::new(player, policy.n_states(), policy.n_actions());
        l.policy = policy;
        l.frozen = true;
        l
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn q(&self) -> &QFunction {
        &self.q
    }

    pub fn policy(&self) -> &Policy {
        &self.policy
    }

    pub fn v(&self) -> &ValueFunction {
        &self.v
    }

    pub fn is_frozen(&self) -> bool {
        self.frozen
    }

    /// `π(s) ← π(s) + β(σ_τ(q(s)) − π(s))` for every state.
    pub fn update_policy(&mut self, beta: f64) {
        if self.frozen {
            return;
        }
        let n_a = self.policy.n_actions();
        for s in 0..self.policy.n_states() {
            let target = &self.smoothed[s * n_a..(s + 1) * n_a];
            for (p, t) in self.policy.row_mut(s).iter_mut().zip(target) {
                *p += beta * (t - *p);
            }
        }
    }

    /// Samples an action at `state` from the current policy.
    pub fn sample_action<R: Rng>(&self, state: usize, rng: &mut R) -> usize {
        sample_index(self.policy.row(state), rng)
    }

    /// TD update of the visited entry toward `reward + γ v(next_state)`.
    pub fn observe(&mut self, fb: &Feedback, alpha: f64, gamma: f64, tau: f64) {
        if self.frozen {
            return;
        }
        let target = fb.reward + gamma * self.v.0[fb.next_state];
        let q = self.q.get_mut(fb.state, fb.action);
        *q += alpha * (target - *q);
        let n_a = self.q.n_actions();
        let start = fb.state * n_a;
        softmax_into(self.q.row(fb.state), tau, &mut self.smoothed[start..start + n_a]);
    }

    /// `v(s) ← π(s)ᵀ q(s)`, then reset `q` to zero and `π` to uniform.
    pub fn finish_outer(&mut self) {
        if self.frozen {
            return;
        }
        let (n_s, n_a) = (self.q.n_states(), self.q.n_actions());
        for s in 0..n_s {
            self.v.0[s] = crate::game::dot(self.policy.row(s), self.q.row(s));
        }
        self.q = QFunction::zeros(n_s, n_a);
        self.policy = Policy::uniform(n_s, n_a);
        self.smoothed.iter_mut().for_each(|x| *x = 1.0 / n_a as f64);
    }

    pub(crate) fn check_margin(&self, margin: f64, context: impl Fn() -> String) -> Result<()> {
        if self.frozen {
            return Ok(());
        }
        let min = self.policy.min_entry();
        if min < margin - INVARIANT_TOL {
            return Err(Error::Invariant(format!(
                "{}: policy entry {min:e} of player {} below margin {margin:e}",
                context(),
                self.player.index() + 1
            )));
        }
        Ok(())
    }

    pub(crate) fn check_q_entry(&self, s: usize, a: usize, bound: f64, context: impl Fn() -> String) -> Result<()> {
        let q = self.q.get(s, a);
        if q.abs() > bound + INVARIANT_TOL {
            return Err(Error::Invariant(format!(
                "{}: |q({s},{a})| = {} of player {} exceeds {bound}",
                context(),
                q.abs(),
                self.player.index() + 1
            )));
        }
        Ok(())
    }

    pub(crate) fn check_v(&self, bound: f64, context: impl Fn() -> String) -> Result<()> {
        let v = self.v.sup_norm();
        if v > bound + INVARIANT_TOL {
            return Err(Error::Invariant(format!(
                "{}: ||v||_inf = {v} of player {} exceeds {bound}",
                context(),
                self.player.index() + 1
            )));
        }
        Ok(())
    }
}

/// Inverse-CDF sampling from a probability row.
pub(crate) fn sample_index<R: Rng>(probs: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (i, p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    probs.len() - 1
}

/// Independent generator streams derived from one seed: one per player and
/// one for the environment.
#[derive(Clone, Debug)]
pub struct RngStreams {
    pub players: [ChaCha8Rng; 2],
    pub environment: ChaCha8Rng,
}

impl RngStreams {
    pub fn new(seed: u64) -> Self {
        let stream = |id: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(id);
            rng
        };
        RngStreams {
            players: [stream(1), stream(2)],
            environment: stream(3),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ell_tau_examples() {
        assert!((ell_tau(1e9, 0.5, 2).unwrap() - 0.5).abs() < 1e-8);
        let e4 = 4f64.exp();
        assert!((ell_tau(1.0, 0.5, 2).unwrap() - 1.0 / (1.0 + e4)).abs() < 1e-15);
        assert!((ell_tau(1.0, 0.5, 2).unwrap() - 0.017986).abs() < 1e-6);
        let e2 = 2f64.exp();
        assert!((ell_tau(1.0, 0.0, 3).unwrap() - 1.0 / (1.0 + 2.0 * e2)).abs() < 1e-15);
        assert!((ell_tau(1.0, 0.0, 3).unwrap() - 0.063379).abs() < 1e-6);
        assert!(ell_tau(1.0, 0.0, 1).is_err());
    }

    #[test]
    fn ell_tau_increases_with_temperature() {
        let mut prev = 0.0;
        for tau in [0.05, 0.1, 0.5, 1.0, 5.0, 50.0] {
            let l = ell_tau(tau, 0.3, 4).unwrap();
            assert!(l > prev && l <= 0.25);
            prev = l;
        }
    }

    #[test]
    fn streams_are_distinct_and_reproducible() {
        let mut a = RngStreams::new(7);
        let mut b = RngStreams::new(7);
        let x: [u64; 3] = [a.players[0].random(), a.players[1].random(), a.environment.random()];
        let y: [u64; 3] = [b.players[0].random(), b.players[1].random(), b.environment.random()];
        assert_eq!(x, y);
        assert_ne!(x[0], x[1]);
        assert_ne!(x[1], x[2]);
    }

    #[test]
    fn frozen_learner_ignores_everything() {
        let pol = Policy::from_rows(&[vec![0.9, 0.1]]).unwrap();
        let mut l = LearnerState::stationary(Player::Two, pol.clone());
        l.update_policy(0.5);
        l.observe(&Feedback { state: 0, action: 0, reward: 1.0, next_state: 0 }, 0.5, 0.0, 0.1);
        l.finish_outer();
        assert_eq!(l.policy(), &pol);
        assert_eq!(l.q().sup_norm(), 0.0);
    }

    #[test]
    fn finish_outer_sets_v_and_resets() {
        let mut l = LearnerState::new(Player::One, 2, 2);
        l.observe(&Feedback { state: 1, action: 0, reward: 1.0, next_state: 0 }, 0.5, 0.0, 1.0);
        l.finish_outer();
        assert_eq!(l.v().0, vec![0.0, 0.25]);
        assert_eq!(l.q().sup_norm(), 0.0);
        assert_eq!(l.policy(), &Policy::uniform(2, 2));
    }
}
