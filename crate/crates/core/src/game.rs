//! Games, policies and the simplex primitives shared by every other module.
//!
//! Only player 1's reward is ever stored. Player 2's reward is read through
//! the zero-sum relation `R²(s, a², a¹) = −R¹(s, a¹, a²)`, so the two views
//! can never drift apart.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Absolute tolerance used when checking that probability rows sum to one.
pub const SIMPLEX_TOL: f64 = 1e-12;

/// One of the two players of a zero-sum game.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::One, Player::Two];

    pub fn index(self) -> usize {
        match self {
            Player::One => 0,
            Player::Two => 1,
        }
    }

    pub fn opponent(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    /// Parses the 1-based player number used on the command line and in files.
    pub fn from_number(n: u8) -> Result<Player> {
        match n {
            1 => Ok(Player::One),
            2 => Ok(Player::Two),
            _ => invalid(format!("player must be 1 or 2, got {n}")),
        }
    }
}

/// Two-player zero-sum matrix game, stored as the row player's payoff matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixGame {
    payoff: DMatrix<f64>,
}

impl MatrixGame {
    pub fn new(payoff: DMatrix<f64>) -> Result<Self> {
        if payoff.nrows() == 0 || payoff.ncols() == 0 {
            return Err(Error::InvalidGame("payoff matrix must be at least 1x1".into()));
        }
        for i in 0..payoff.nrows() {
            for j in 0..payoff.ncols() {
                let x = payoff[(i, j)];
                if !x.is_finite() || x.abs() > 1.0 {
                    return Err(Error::InvalidGame(format!(
                        "payoff[{i}][{j}] = {x} violates |R| <= 1"
                    )));
                }
            }
        }
        Ok(MatrixGame { payoff })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let (m, n) = rect_dims(rows, "payoff")?;
        Self::new(DMatrix::from_fn(m, n, |i, j| rows[i][j]))
    }

    pub fn matching_pennies() -> Self {
        Self::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).expect("valid game")
    }

    pub fn rock_paper_scissors() -> Self {
        Self::from_rows(&[
            vec![0.0, -1.0, 1.0],
            vec![1.0, 0.0, -1.0],
            vec![-1.0, 1.0, 0.0],
        ])
        .expect("valid game")
    }

    /// Row player's payoff matrix `R¹`.
    pub fn payoff(&self) -> &DMatrix<f64> {
        &self.payoff
    }

    /// Payoff matrix from `player`'s point of view: `R¹` or `−(R¹)ᵀ`.
    pub fn payoff_for(&self, player: Player) -> DMatrix<f64> {
        match player {
            Player::One => self.payoff.clone(),
            Player::Two => -self.payoff.transpose(),
        }
    }

    /// Reward `R^i(own, opp)` received by `player`.
    #[inline]
    pub fn reward(&self, player: Player, own: usize, opp: usize) -> f64 {
        match player {
            Player::One => self.payoff[(own, opp)],
            Player::Two => -self.payoff[(opp, own)],
        }
    }

    pub fn n_actions(&self) -> (usize, usize) {
        (self.payoff.nrows(), self.payoff.ncols())
    }

    pub fn actions_of(&self, player: Player) -> usize {
        match player {
            Player::One => self.payoff.nrows(),
            Player::Two => self.payoff.ncols(),
        }
    }

    pub fn a_max(&self) -> usize {
        self.payoff.nrows().max(self.payoff.ncols())
    }

    /// The same game viewed as a single self-looping state with `γ = 0`.
    pub fn as_markov(&self) -> MarkovGame {
        let (m, n) = self.n_actions();
        let reward = (0..m)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| self.payoff[(i, j)])
            .collect();
        MarkovGame {
            n_states: 1,
            n_actions: (m, n),
            transition: vec![1.0; m * n],
            reward,
            gamma: 0.0,
        }
    }
}

/// Finite two-player zero-sum discounted Markov game.
///
/// `transition` is laid out `[s][a¹][a²][s']` and `reward` is `[s][a¹][a²]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkovGame {
    n_states: usize,
    n_actions: (usize, usize),
    transition: Vec<f64>,
    reward: Vec<f64>,
    gamma: f64,
}

impl MarkovGame {
    pub fn new(
        n_states: usize,
        n_actions: (usize, usize),
        transition: Vec<f64>,
        reward: Vec<f64>,
        gamma: f64,
    ) -> Result<Self> {
        let (m, n) = n_actions;
        if n_states == 0 || m == 0 || n == 0 {
            return Err(Error::InvalidGame(
                "state and action counts must be positive".into(),
            ));
        }
        if !(0.0..1.0).contains(&gamma) {
            return Err(Error::InvalidGame(format!("gamma = {gamma} not in [0, 1)")));
        }
        if transition.len() != n_states * m * n * n_states {
            return Err(Error::InvalidGame(format!(
                "transition has {} entries, expected {}",
                transition.len(),
                n_states * m * n * n_states
            )));
        }
        if reward.len() != n_states * m * n {
            return Err(Error::InvalidGame(format!(
                "reward has {} entries, expected {}",
                reward.len(),
                n_states * m * n
            )));
        }
        let game = MarkovGame {
            n_states,
            n_actions,
            transition,
            reward,
            gamma,
        };
        for s in 0..n_states {
            for a in 0..m {
                for b in 0..n {
                    let r = game.reward[game.sa_index(s, a, b)];
                    if !r.is_finite() || r.abs() > 1.0 {
                        return Err(Error::InvalidGame(format!(
                            "reward[{s}][{a}][{b}] = {r} violates |R| <= 1"
                        )));
                    }
                    let row = game.transition_row(s, a, b);
                    for (sp, &p) in row.iter().enumerate() {
                        if !(0.0..=1.0).contains(&p) {
                            return Err(Error::InvalidGame(format!(
                                "transition[{s}][{a}][{b}][{sp}] = {p} not in [0, 1]"
                            )));
                        }
                    }
                    let total: f64 = row.iter().sum();
                    if (total - 1.0).abs() > SIMPLEX_TOL {
                        return Err(Error::InvalidGame(format!(
                            "transition[{s}][{a}][{b}] sums to {total}, expected 1"
                        )));
                    }
                }
            }
        }
        Ok(game)
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn n_actions(&self) -> (usize, usize) {
        self.n_actions
    }

    pub fn actions_of(&self, player: Player) -> usize {
        match player {
            Player::One => self.n_actions.0,
            Player::Two => self.n_actions.1,
        }
    }

    pub fn a_max(&self) -> usize {
        self.n_actions.0.max(self.n_actions.1)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Copy of this game with a different discount factor.
    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&gamma) {
            return Err(Error::InvalidGame(format!("gamma = {gamma} not in [0, 1)")));
        }
        let mut g = self.clone();
        g.gamma = gamma;
        Ok(g)
    }

    #[inline]
    fn sa_index(&self, s: usize, a1: usize, a2: usize) -> usize {
        (s * self.n_actions.0 + a1) * self.n_actions.1 + a2
    }

    /// `R¹(s, a¹, a²)`.
    #[inline]
    pub fn reward1(&self, s: usize, a1: usize, a2: usize) -> f64 {
        self.reward[self.sa_index(s, a1, a2)]
    }

    /// `p(· | s, a¹, a²)`.
    #[inline]
    pub fn transition_row(&self, s: usize, a1: usize, a2: usize) -> &[f64] {
        let start = self.sa_index(s, a1, a2) * self.n_states;
        &self.transition[start..start + self.n_states]
    }

    /// Reward `R^i(s, own, opp)` from `player`'s perspective.
    #[inline]
    pub fn reward(&self, player: Player, s: usize, own: usize, opp: usize) -> f64 {
        match player {
            Player::One => self.reward1(s, own, opp),
            Player::Two => -self.reward1(s, opp, own),
        }
    }

    /// Transition row indexed from `player`'s perspective (own action first).
    #[inline]
    pub fn transition_for(&self, player: Player, s: usize, own: usize, opp: usize) -> &[f64] {
        match player {
            Player::One => self.transition_row(s, own, opp),
            Player::Two => self.transition_row(s, opp, own),
        }
    }

    /// Raw layouts, for serialization.
    pub fn transition_flat(&self) -> &[f64] {
        &self.transition
    }

    pub fn reward_flat(&self) -> &[f64] {
        &self.reward
    }
}

/// One probability distribution over a player's actions per state.
#[derive(Clone, Debug, PartialEq)]
pub struct Policy {
    n_states: usize,
    n_actions: usize,
    probs: Vec<f64>,
}

impl Policy {
    pub fn uniform(n_states: usize, n_actions: usize) -> Self {
        Policy {
            n_states,
            n_actions,
            probs: vec![1.0 / n_actions as f64; n_states * n_actions],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let (n_states, n_actions) =
            rect_dims(rows, "policy").map_err(|e| Error::InvalidPolicy(e.to_string()))?;
        let probs: Vec<f64> = rows.iter().flatten().copied().collect();
        for (s, row) in rows.iter().enumerate() {
            check_distribution(row).map_err(|msg| Error::InvalidPolicy(format!("row {s}: {msg}")))?;
        }
        Ok(Policy {
            n_states,
            n_actions,
            probs,
        })
    }

    /// Single-state policy, as used by matrix games.
    pub fn from_distribution(dist: &[f64]) -> Result<Self> {
        Self::from_rows(&[dist.to_vec()])
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn n_actions(&self) -> usize {
        self.n_actions
    }

    #[inline]
    pub fn row(&self, s: usize) -> &[f64] {
        &self.probs[s * self.n_actions..(s + 1) * self.n_actions]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, s: usize) -> &mut [f64] {
        &mut self.probs[s * self.n_actions..(s + 1) * self.n_actions]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n_states).map(|s| self.row(s).to_vec()).collect()
    }

    pub fn min_entry(&self) -> f64 {
        self.probs.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `max_{s,a} |π(a|s) − π'(a|s)|`.
    pub fn sup_distance(&self, other: &Policy) -> f64 {
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Joint stationary policy `(π¹, π²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointPolicy {
    pub player1: Policy,
    pub player2: Policy,
}

impl JointPolicy {
    pub fn new(player1: Policy, player2: Policy) -> Self {
        JointPolicy { player1, player2 }
    }

    pub fn uniform(n_states: usize, n_actions: (usize, usize)) -> Self {
        JointPolicy {
            player1: Policy::uniform(n_states, n_actions.0),
            player2: Policy::uniform(n_states, n_actions.1),
        }
    }

    pub fn of(&self, player: Player) -> &Policy {
        match player {
            Player::One => &self.player1,
            Player::Two => &self.player2,
        }
    }

    /// Checks that the policies have the shape the game expects.
    pub fn check_against(&self, game: &MarkovGame) -> Result<()> {
        for p in Player::BOTH {
            let pol = self.of(p);
            if pol.n_states() != game.n_states() || pol.n_actions() != game.actions_of(p) {
                return Err(Error::InvalidPolicy(format!(
                    "policy of player {} has shape {}x{}, game expects {}x{}",
                    p.index() + 1,
                    pol.n_states(),
                    pol.n_actions(),
                    game.n_states(),
                    game.actions_of(p)
                )));
            }
        }
        Ok(())
    }
}

/// Local q-function of one player, `|S| × |A^i|`.
#[derive(Clone, Debug, PartialEq)]
pub struct QFunction {
    n_states: usize,
    n_actions: usize,
    values: Vec<f64>,
}

impl QFunction {
    pub fn zeros(n_states: usize, n_actions: usize) -> Self {
        QFunction {
            n_states,
            n_actions,
            values: vec![0.0; n_states * n_actions],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let (n_states, n_actions) = rect_dims(rows, "q-function")?;
        Ok(QFunction {
            n_states,
            n_actions,
            values: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn n_actions(&self) -> usize {
        self.n_actions
    }

    #[inline]
    pub fn row(&self, s: usize) -> &[f64] {
        &self.values[s * self.n_actions..(s + 1) * self.n_actions]
    }

    #[inline]
    pub fn get(&self, s: usize, a: usize) -> f64 {
        self.values[s * self.n_actions + a]
    }

    #[inline]
    pub(crate) fn get_mut(&mut self, s: usize, a: usize) -> &mut f64 {
        &mut self.values[s * self.n_actions + a]
    }

    pub fn sup_norm(&self) -> f64 {
        sup_norm(&self.values)
    }
}

/// State-value function, one entry per state.
#[derive(Clone, Debug, PartialEq)]
pub struct ValueFunction(pub Vec<f64>);

impl ValueFunction {
    pub fn zeros(n_states: usize) -> Self {
        ValueFunction(vec![0.0; n_states])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sup_norm(&self) -> f64 {
        sup_norm(&self.0)
    }

    /// `‖self − other‖_∞`.
    pub fn sup_distance(&self, other: &ValueFunction) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// `⟨p, v⟩`.
    pub fn expectation(&self, dist: &[f64]) -> f64 {
        self.0.iter().zip(dist).map(|(v, p)| v * p).sum()
    }
}

pub(crate) fn sup_norm(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn rect_dims(rows: &[Vec<f64>], what: &str) -> Result<(usize, usize)> {
    let m = rows.len();
    let n = rows.first().map(Vec::len).unwrap_or(0);
    if m == 0 || n == 0 {
        return invalid(format!("{what} must be non-empty"));
    }
    if let Some(i) = rows.iter().position(|r| r.len() != n) {
        return invalid(format!(
            "{what} row {i} has {} entries, expected {n}",
            rows[i].len()
        ));
    }
    Ok((m, n))
}

fn check_distribution(row: &[f64]) -> std::result::Result<(), String> {
    if let Some((a, &p)) = row.iter().enumerate().find(|(_, p)| !p.is_finite() || **p < 0.0) {
        return Err(format!("entry {a} = {p} is not a probability"));
    }
    let total: f64 = row.iter().sum();
    if (total - 1.0).abs() > SIMPLEX_TOL {
        return Err(format!("sums to {total}, expected 1"));
    }
    Ok(())
}

/// Validates that `dist` lies on the probability simplex.
pub fn validate_distribution(dist: &[f64]) -> Result<()> {
    if dist.is_empty() {
        return invalid("distribution must be non-empty");
    }
    check_distribution(dist).map_err(Error::InvalidArgument)
}

/// Softmax with temperature, `σ_τ(q)(a) ∝ exp(q(a)/τ)`.
pub fn softmax(q: &[f64], tau: f64) -> Result<Vec<f64>> {
    if !(tau > 0.0) || !tau.is_finite() {
        return invalid(format!("temperature must be positive and finite, got {tau}"));
    }
    if q.is_empty() {
        return invalid("softmax of an empty vector");
    }
    if let Some(x) = q.iter().find(|x| !x.is_finite()) {
        return invalid(format!("softmax input contains non-finite value {x}"));
    }
    let mut out = vec![0.0; q.len()];
    softmax_into(q, tau, &mut out);
    Ok(out)
}

/// Unchecked softmax writing into `out`. Max-subtraction keeps every
/// exponent non-positive.
#[inline]
pub(crate) fn softmax_into(q: &[f64], tau: f64, out: &mut [f64]) {
    let max = q.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut total = 0.0;
    for (o, &x) in out.iter_mut().zip(q) {
        *o = ((x - max) / tau).exp();
        total += *o;
    }
    for o in out.iter_mut() {
        *o /= total;
    }
}

/// `τ · log Σ_a exp(y(a)/τ)`, evaluated stably.
pub(crate) fn tau_logsumexp(y: &[f64], tau: f64) -> f64 {
    let max = y.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let total: f64 = y.iter().map(|&x| ((x - max) / tau).exp()).sum();
    max + tau * total.ln()
}

/// Shannon entropy `−Σ μ log μ` with `0 log 0 = 0`.
pub fn entropy(mu: &[f64]) -> Result<f64> {
    if let Some((a, &p)) = mu.iter().enumerate().find(|(_, p)| !p.is_finite() || **p < 0.0) {
        return invalid(format!("entry {a} = {p} is not a probability"));
    }
    Ok(entropy_unchecked(mu))
}

#[inline]
pub(crate) fn entropy_unchecked(mu: &[f64]) -> f64 {
    -mu.iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.ln())
        .sum::<f64>()
}

/// Bellman lookahead `T^i(v)(s, a^i, a^{-i}) = R^i + γ E[v(S₁)]`, one matrix
/// (own actions × opponent actions) per state.
pub fn apply_t(game: &MarkovGame, v: &ValueFunction, player: Player) -> Vec<DMatrix<f64>> {
    let own_n = game.actions_of(player);
    let opp_n = game.actions_of(player.opponent());
    let gamma = game.gamma();
    (0..game.n_states())
        .map(|s| {
            DMatrix::from_fn(own_n, opp_n, |a, b| {
                let next: f64 = game
                    .transition_for(player, s, a, b)
                    .iter()
                    .zip(&v.0)
                    .map(|(p, x)| p * x)
                    .sum();
                game.reward(player, s, a, b) + gamma * next
            })
        })
        .collect()
}

/// Expected payoff of each own action against `opponent_policy`:
/// `R¹π²` for player 1, `−(R¹)ᵀπ¹` for player 2.
pub fn marginal_payoff(game: &MatrixGame, opponent_policy: &[f64], player: Player) -> Result<Vec<f64>> {
    let opp_n = game.actions_of(player.opponent());
    if opponent_policy.len() != opp_n {
        return invalid(format!(
            "opponent policy has {} entries, game expects {opp_n}",
            opponent_policy.len()
        ));
    }
    Ok(marginal_unchecked(game, opponent_policy, player))
}

pub(crate) fn marginal_unchecked(game: &MatrixGame, opp: &[f64], player: Player) -> Vec<f64> {
    (0..game.actions_of(player))
        .map(|a| {
            opp.iter()
                .enumerate()
                .map(|(b, pb)| pb * game.reward(player, a, b))
                .sum()
        })
        .collect()
}

/// `X μ` for a dense matrix and a plain slice.
pub(crate) fn mat_vec(x: &DMatrix<f64>, mu: &[f64]) -> Vec<f64> {
    (0..x.nrows())
        .map(|i| (0..x.ncols()).map(|j| x[(i, j)] * mu[j]).sum())
        .collect()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn softmax_examples() {
        assert_eq!(softmax(&[0.0, 0.0], 1.0).unwrap(), vec![0.5, 0.5]);
        for c in [-3.0, 0.0, 7.5] {
            for p in softmax(&[c, c, c], 0.3).unwrap() {
                assert!(close(p, 1.0 / 3.0, 1e-15));
            }
        }
        let p = softmax(&[1.0, 0.0], 0.5).unwrap();
        let e2 = 2f64.exp();
        assert!(close(p[0], e2 / (e2 + 1.0), 1e-15));
        assert!(close(p[0], 0.880797, 1e-6));
        assert!(close(p[1], 0.119203, 1e-6));
    }

    #[test]
    fn softmax_rejects_bad_input() {
        assert!(softmax(&[0.0], 0.0).is_err());
        assert!(softmax(&[0.0], -1.0).is_err());
        assert!(softmax(&[f64::NAN, 0.0], 1.0).is_err());
        assert!(softmax(&[f64::INFINITY], 1.0).is_err());
    }

    #[test]
    fn softmax_survives_huge_inputs() {
        let p = softmax(&[1e300, 0.0], 1e-3).unwrap();
        assert_eq!(p[0], 1.0);
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&[1.0, 0.0]).unwrap(), 0.0);
        assert!(close(entropy(&[0.5, 0.5]).unwrap(), 2f64.ln(), 1e-15));
        let h = -0.25 * 0.25f64.ln() - 0.75 * 0.75f64.ln();
        assert!(close(entropy(&[0.25, 0.75]).unwrap(), h, 1e-15));
        assert!(close(h, 0.562335, 1e-6));
        assert!(entropy(&[-0.1, 1.1]).is_err());
    }

    #[test]
    fn apply_t_examples() {
        let mp = MatrixGame::matching_pennies().as_markov();
        let q = apply_t(&mp, &ValueFunction::zeros(1), Player::One);
        assert_eq!(q[0], *MatrixGame::matching_pennies().payoff());

        let flat = MarkovGame::new(1, (2, 2), vec![1.0; 4], vec![0.5; 4], 0.9).unwrap();
        let q = apply_t(&flat, &ValueFunction(vec![1.0]), Player::One);
        for x in q[0].iter() {
            assert!(close(*x, 1.4, 1e-15));
        }
    }

    #[test]
    fn apply_t_player_two_is_transposed_negation_at_zero() {
        let g = MatrixGame::rock_paper_scissors();
        let q2 = apply_t(&g.as_markov(), &ValueFunction::zeros(1), Player::Two);
        assert_eq!(q2[0], g.payoff_for(Player::Two));
    }

    #[test]
    fn marginal_payoff_examples() {
        let g = MatrixGame::matching_pennies();
        assert_eq!(marginal_payoff(&g, &[0.5, 0.5], Player::One).unwrap(), vec![0.0, 0.0]);
        assert_eq!(marginal_payoff(&g, &[1.0, 0.0], Player::One).unwrap(), vec![1.0, -1.0]);
        assert_eq!(marginal_payoff(&g, &[1.0, 0.0], Player::Two).unwrap(), vec![-1.0, 1.0]);
        assert!(marginal_payoff(&g, &[1.0], Player::One).is_err());
    }

    #[test]
    fn game_validation_reports_indices() {
        let err = MatrixGame::from_rows(&[vec![0.0, 1.5]]).unwrap_err();
        assert!(err.to_string().contains("payoff[0][1]"), "{err}");

        let err = MarkovGame::new(2, (1, 1), vec![0.5, 0.5, 0.7, 0.2], vec![0.0, 0.0], 0.5)
            .unwrap_err();
        assert!(err.to_string().contains("transition[1][0][0]"), "{err}");

        assert!(MarkovGame::new(1, (1, 1), vec![1.0], vec![0.0], 1.0).is_err());
    }

    #[test]
    fn policy_validation() {
        assert!(Policy::from_rows(&[vec![0.5, 0.5], vec![1.0, 0.0]]).is_ok());
        assert!(Policy::from_rows(&[vec![0.5, 0.6]]).is_err());
        assert!(Policy::from_rows(&[vec![1.5, -0.5]]).is_err());
        assert!(Policy::from_rows(&[vec![0.5, 0.5], vec![1.0]]).is_err());
    }
}
