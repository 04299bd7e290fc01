use nalgebra::DMatrix;

use super::lp::{self, GameSolution};
use crate::error::{invalid, Result};
use crate::game::{dot, marginal_unchecked, validate_distribution, MatrixGame, Player};

/// Value of the matrix game `max_μ min_ν μᵀXν` together with a maximin
/// strategy for the row player and a minimax strategy for the column player.
pub fn matrix_game_value(x: &DMatrix<f64>) -> Result<GameSolution> {
    lp::solve(x)
}

/// Nash gap `Σ_i max_{π̂} (π̂ − π^i)ᵀ R^i π^{-i}` of a matrix game.
pub fn matrix_nash_gap(game: &MatrixGame, pi1: &[f64], pi2: &[f64]) -> Result<f64> {
    check_pair(game, pi1, pi2)?;
    Ok(regret_unchecked(game, Player::One, pi1, pi2) + regret_unchecked(game, Player::Two, pi2, pi1))
}

/// `max_{π̂}(π̂ − own)ᵀ R^i opp`, the improvement `player` could get by best
/// responding to a fixed opponent.
pub fn matrix_regret(game: &MatrixGame, player: Player, own: &[f64], opp: &[f64]) -> Result<f64> {
    let (p1, p2) = match player {
        Player::One => (own, opp),
        Player::Two => (opp, own),
    };
    check_pair(game, p1, p2)?;
    Ok(regret_unchecked(game, player, own, opp))
}

pub(crate) fn regret_unchecked(game: &MatrixGame, player: Player, own: &[f64], opp: &[f64]) -> f64 {
    let marginal = marginal_unchecked(game, opp, player);
    let best = marginal.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (best - dot(own, &marginal)).max(0.0)
}

fn check_pair(game: &MatrixGame, pi1: &[f64], pi2: &[f64]) -> Result<()> {
    let (m, n) = game.n_actions();
    if pi1.len() != m || pi2.len() != n {
        return invalid(format!(
            "policies have lengths ({}, {}), game is {m}x{n}",
            pi1.len(),
            pi2.len()
        ));
    }
    validate_distribution(pi1)?;
    validate_distribution(pi2)
}
