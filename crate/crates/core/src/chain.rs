//! Markov chains induced on the state space by a joint policy: ergodicity,
//! stationary distributions, total-variation mixing times, and the uniform
//! mixing bound over policies with bounded-below entries.

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};

use crate::error::{invalid, Error, Result};
use crate::game::{JointPolicy, MarkovGame, Policy, SIMPLEX_TOL};

/// Default cap on the number of powers examined by [`mixing_time`].
pub const DEFAULT_MIXING_CAP: u64 = 1_000_000;

/// Row-stochastic state transition matrix `P_π`.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedChain {
    transition: DMatrix<f64>,
}

impl InducedChain {
    pub fn new(transition: DMatrix<f64>) -> Result<Self> {
        if transition.nrows() == 0 || transition.nrows() != transition.ncols() {
            return invalid("transition matrix must be square and non-empty");
        }
        for i in 0..transition.nrows() {
            let row = transition.row(i);
            if let Some(p) = row.iter().find(|p| !(**p >= 0.0) || !p.is_finite()) {
                return invalid(format!("row {i} has invalid entry {p}"));
            }
            let total: f64 = row.iter().sum();
            if (total - 1.0).abs() > SIMPLEX_TOL {
                return invalid(format!("row {i} sums to {total}"));
            }
        }
        Ok(InducedChain { transition })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return invalid("transition matrix must be square");
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn transition(&self) -> &DMatrix<f64> {
        &self.transition
    }

    pub fn n_states(&self) -> usize {
        self.transition.nrows()
    }

    fn successors(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_states()).filter(move |&t| self.transition[(s, t)] > 0.0)
    }

    /// Every state reaches every other state on the support graph.
    pub fn is_irreducible(&self) -> bool {
        let n = self.n_states();
        let forward = bfs_levels(n, |s| self.successors(s).collect());
        let backward = bfs_levels(n, |s| {
            (0..n).filter(|&t| self.transition[(t, s)] > 0.0).collect()
        });
        forward.iter().all(Option::is_some) && backward.iter().all(Option::is_some)
    }

    /// Period of state 0, the gcd of its cycle lengths. Meaningful for
    /// irreducible chains, where every state shares it.
    pub fn period(&self) -> usize {
        let n = self.n_states();
        let level = bfs_levels(n, |s| self.successors(s).collect());
        let mut g = 0usize;
        for s in 0..n {
            let Some(ls) = level[s] else { continue };
            for t in self.successors(s) {
                let lt = level[t].expect("successor of a reached state is reached");
                g = gcd(g, (ls + 1).abs_diff(lt));
            }
        }
        g
    }

    pub fn check_ergodic(&self) -> Result<()> {
        if !self.is_irreducible() {
            return Err(Error::NotErgodic("chain is reducible".into()));
        }
        let p = self.period();
        if p != 1 {
            return Err(Error::NotErgodic(format!("chain has period {p}")));
        }
        Ok(())
    }

    /// Distribution after `k` steps from `init`, by repeated `μᵀP`.
    pub fn k_step_distribution(&self, init: &[f64], k: u64) -> Vec<f64> {
        let mut mu = DVector::from_column_slice(init).transpose();
        for _ in 0..k {
            mu = &mu * &self.transition;
        }
        mu.iter().copied().collect()
    }
}

fn bfs_levels(n: usize, next: impl Fn(usize) -> Vec<usize>) -> Vec<Option<usize>> {
    let mut level = vec![None; n];
    level[0] = Some(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let l = level[s].unwrap();
        for t in next(s) {
            if level[t].is_none() {
                level[t] = Some(l + 1);
                queue.push_back(t);
            }
        }
    }
    level
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `P_π(s, s') = Σ_{a¹,a²} π¹(a¹|s) π²(a²|s) p(s'|s, a¹, a²)`.
pub fn induce_chain(game: &MarkovGame, joint: &JointPolicy) -> Result<InducedChain> {
    joint.check_against(game)?;
    let n = game.n_states();
    let (m1, m2) = game.n_actions();
    let mut p = DMatrix::zeros(n, n);
    for s in 0..n {
        let (r1, r2) = (joint.player1.row(s), joint.player2.row(s));
        for a in 0..m1 {
            for b in 0..m2 {
                let w = r1[a] * r2[b];
                for (t, q) in game.transition_row(s, a, b).iter().enumerate() {
                    p[(s, t)] += w * q;
                }
            }
        }
    }
    Ok(InducedChain { transition: p })
}

/// Total-variation distance `½‖p − q‖₁`.
pub fn tv_distance(p: &[f64], q: &[f64]) -> f64 {
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

/// Unique stationary distribution of an ergodic chain, from the linear
/// system `(Pᵀ − I)μ = 0` with one equation replaced by `Σμ = 1`.
pub fn stationary_distribution(chain: &InducedChain) -> Result<Vec<f64>> {
    chain.check_ergodic()?;
    let n = chain.n_states();
    let mut a = chain.transition.transpose() - DMatrix::identity(n, n);
    let mut b = DVector::zeros(n);
    for j in 0..n {
        a[(n - 1, j)] = 1.0;
    }
    b[n - 1] = 1.0;
    let mu = a
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::Numerical("stationarity system is singular".into()))?;
    Ok(mu.iter().map(|x| x.max(0.0)).collect())
}

/// `max_s ‖P^k(s, ·) − μ‖_TV` for a given power `P^k`.
fn worst_tv(power: &DMatrix<f64>, mu: &[f64]) -> f64 {
    (0..power.nrows())
        .map(|s| {
            let row: Vec<f64> = power.row(s).iter().copied().collect();
            tv_distance(&row, mu)
        })
        .fold(0.0, f64::max)
}

/// Smallest `k` with `max_s ‖P^k(s,·) − μ_π‖_TV ≤ η`.
pub fn mixing_time(chain: &InducedChain, eta: f64) -> Result<u64> {
    mixing_time_capped(chain, eta, DEFAULT_MIXING_CAP)
}

pub fn mixing_time_capped(chain: &InducedChain, eta: f64, cap: u64) -> Result<u64> {
    if !(eta > 0.0 && eta < 1.0) {
        return invalid(format!("eta must lie in (0, 1), got {eta}"));
    }
    let mu = stationary_distribution(chain)?;
    let n = chain.n_states();
    let mut power = DMatrix::identity(n, n);
    for k in 0..=cap {
        if worst_tv(&power, &mu) <= eta {
            return Ok(k);
        }
        power = &power * &chain.transition;
    }
    Err(Error::MixingCapExceeded { cap })
}

/// `max_s ‖P^k(s,·) − μ‖_TV` for `k = 0..=k_max`.
pub fn tv_profile(chain: &InducedChain, k_max: u64) -> Result<Vec<f64>> {
    let mu = stationary_distribution(chain)?;
    let n = chain.n_states();
    let mut power = DMatrix::identity(n, n);
    let mut out = Vec::with_capacity(k_max as usize + 1);
    for _ in 0..=k_max {
        out.push(worst_tv(&power, &mu));
        power = &power * &chain.transition;
    }
    Ok(out)
}

/// Smallest `r ≥ 0` with `P^r` entrywise positive, found by iterating the
/// support pattern. `None` if no such power exists up to `|S|²`.
pub fn primitivity_index(chain: &InducedChain) -> Option<usize> {
    let n = chain.n_states();
    let step: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| chain.transition[(i, j)] > 0.0).collect())
        .collect();
    let mut support: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    for r in 0..=n * n {
        if support.iter().all(|row| row.iter().all(|&x| x)) {
            return Some(r);
        }
        support = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).any(|k| support[i][k] && step[k][j]))
                    .collect()
            })
            .collect();
    }
    None
}

/// Upper bound `t_{π_b,η} / ((δ₁δ₂)^{r_b} μ_{b,min})` on the η-mixing time of
/// every joint policy whose entries are at least `(δ₁, δ₂)`.
pub fn uniform_mixing_bound(
    t_pib_eta: u64,
    delta1: f64,
    delta2: f64,
    mu_b_min: f64,
    r_b: u32,
) -> Result<f64> {
    let denom = margin_factor(delta1, delta2, mu_b_min, r_b)?;
    Ok(t_pib_eta as f64 / denom)
}

/// `ρ_δ = ρ_b^{(δ₁δ₂)^{r_b} μ_{b,min}}`.
pub fn uniform_rho(rho_b: f64, delta1: f64, delta2: f64, mu_b_min: f64, r_b: u32) -> Result<f64> {
    if !(rho_b > 0.0 && rho_b < 1.0) {
        return invalid(format!("rho_b must lie in (0, 1), got {rho_b}"));
    }
    Ok(rho_b.powf(margin_factor(delta1, delta2, mu_b_min, r_b)?))
}

/// Lipschitz constant `2 log(8|S|/ρ) / log(1/ρ)` of the stationary map over
/// policies whose chains mix at geometric rate `ρ`.
pub fn stationary_lipschitz_constant(rho: f64, n_states: usize) -> Result<f64> {
    if !(rho > 0.0 && rho < 1.0) {
        return invalid(format!("rho must lie in (0, 1), got {rho}"));
    }
    Ok(2.0 * (8.0 * n_states as f64 / rho).ln() / (1.0 / rho).ln())
}

fn margin_factor(delta1: f64, delta2: f64, mu_b_min: f64, r_b: u32) -> Result<f64> {
    for (name, x) in [("delta1", delta1), ("delta2", delta2)] {
        if !(x > 0.0 && x <= 1.0) {
            return invalid(format!("{name} must lie in (0, 1], got {x}"));
        }
    }
    if !(mu_b_min > 0.0 && mu_b_min <= 1.0) {
        return invalid(format!("mu_b_min must lie in (0, 1], got {mu_b_min}"));
    }
    let f = (delta1 * delta2).powi(r_b as i32) * mu_b_min;
    if f == 0.0 {
        return invalid("margin factor underflows to zero");
    }
    Ok(f)
}

/// The two-state, two-action MDP whose first action keeps the state and
/// whose second action swaps it. Policies that become nearly deterministic
/// on the first action mix arbitrarily slowly.
pub mod two_state {
    use super::*;

    /// The MDP as a Markov game in which player 2 has a single action.
    pub fn game() -> MarkovGame {
        #[rustfmt::skip]
        let transition = vec![
            1.0, 0.0, // s1, a1: stay
            0.0, 1.0, // s1, a2: swap
            0.0, 1.0, // s2, a1: stay
            1.0, 0.0, // s2, a2: swap
        ];
        MarkovGame::new(2, (2, 1), transition, vec![0.0; 4], 0.0).expect("valid game")
    }

    /// `π(a₁|s) = α`, `π(a₂|s) = 1 − α` in both states, with the trivial
    /// opponent.
    pub fn joint_policy(alpha: f64) -> Result<JointPolicy> {
        let row = vec![alpha, 1.0 - alpha];
        Ok(JointPolicy::new(
            Policy::from_rows(&[row.clone(), row])?,
            Policy::uniform(2, 1),
        ))
    }

    /// `P_α = [[α, 1−α], [1−α, α]]`.
    pub fn chain(alpha: f64) -> Result<InducedChain> {
        induce_chain(&game(), &joint_policy(alpha)?)
    }

    /// Probability of the first state after `k` steps from it,
    /// `½ + (2α − 1)^k / 2`.
    pub fn first_state_mass(alpha: f64, k: u64) -> f64 {
        0.5 + (2.0 * alpha - 1.0).powf(k as f64) / 2.0
    }

    /// Exact mixing time `min{k : (2α − 1)^k ≤ 2η}`.
    pub fn exact_mixing_time(alpha: f64, eta: f64) -> u64 {
        let r = 2.0 * alpha - 1.0;
        let mut k = 0u64;
        let mut x = 1.0;
        while x > 2.0 * eta {
            x *= r;
            k += 1;
        }
        k
    }

    /// Closed-form lower bound `log(1/(2η)) / log(1/(2α−1)) − 1`.
    pub fn mixing_lower_bound(alpha: f64, eta: f64) -> f64 {
        (1.0 / (2.0 * eta)).ln() / (1.0 / (2.0 * alpha - 1.0)).ln() - 1.0
    }

    /// Returns `α` when `(game, joint)` is this example with a valid
    /// `α ∈ (½, 1)`.
    pub fn match_template(g: &MarkovGame, joint: &JointPolicy) -> Option<f64> {
        if g.n_states() != 2 || g.n_actions() != (2, 1) {
            return None;
        }
        if g.transition_flat() != game().transition_flat() {
            return None;
        }
        let (r0, r1) = (joint.player1.row(0), joint.player1.row(1));
        if r0 != r1 {
            return None;
        }
        let alpha = r0[0];
        (alpha > 0.5 && alpha < 1.0).then_some(alpha)
    }
}
