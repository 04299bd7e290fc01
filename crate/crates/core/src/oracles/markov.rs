use nalgebra::{DMatrix, DVector};

use super::lp;
use crate::error::{invalid, Error, Result};
use crate::game::{
    apply_t, validate_distribution, JointPolicy, MarkovGame, Player, Policy, QFunction,
    ValueFunction,
};

/// Output of a value iteration run.
#[derive(Clone, Debug, PartialEq)]
pub struct ValueIterationResult {
    pub v_star: ValueFunction,
    pub iterations: usize,
    /// `‖B(v) − v‖_∞` at the returned `v`.
    pub residual: f64,
}

/// Uniform distribution over `n` states, the default `p_o`.
pub fn uniform_initial(n: usize) -> Vec<f64> {
    vec![1.0 / n as f64; n]
}

/// One application of the minimax Bellman operator `B^i(v)(s) = val(T^i(v)(s))`.
pub fn bellman_minimax(game: &MarkovGame, v: &ValueFunction, player: Player) -> Result<ValueFunction> {
    check_len(game, v)?;
    apply_t(game, v, player)
        .iter()
        .map(|x| lp::solve(x).map(|sol| sol.value))
        .collect::<Result<Vec<_>>>()
        .map(ValueFunction)
}

/// Iterates `v ← B^i(v)` from zero until `‖v − v_*‖_∞ ≤ tol` is guaranteed.
pub fn minimax_value_iteration(
    game: &MarkovGame,
    player: Player,
    tol: f64,
) -> Result<ValueIterationResult> {
    value_iteration(game, tol, |v| bellman_minimax(game, v, player))
}

/// Optimal value of `player` against the fixed `opponent_policy`.
pub fn best_response_value(
    game: &MarkovGame,
    player: Player,
    opponent_policy: &Policy,
    tol: f64,
) -> Result<ValueFunction> {
    let opp = player.opponent();
    if opponent_policy.n_states() != game.n_states()
        || opponent_policy.n_actions() != game.actions_of(opp)
    {
        return Err(Error::InvalidPolicy(format!(
            "opponent policy has shape {}x{}, game expects {}x{}",
            opponent_policy.n_states(),
            opponent_policy.n_actions(),
            game.n_states(),
            game.actions_of(opp)
        )));
    }
    let n_s = game.n_states();
    let own_n = game.actions_of(player);
    // Marginalize the opponent out: one single-agent MDP.
    let mut reward = vec![0.0; n_s * own_n];
    let mut trans = vec![0.0; n_s * own_n * n_s];
    for s in 0..n_s {
        let pi = opponent_policy.row(s);
        for a in 0..own_n {
            for (b, &pb) in pi.iter().enumerate() {
                reward[s * own_n + a] += pb * game.reward(player, s, a, b);
                let row = game.transition_for(player, s, a, b);
                let dst = &mut trans[(s * own_n + a) * n_s..(s * own_n + a + 1) * n_s];
                for (d, p) in dst.iter_mut().zip(row) {
                    *d += pb * p;
                }
            }
        }
    }
    let gamma = game.gamma();
    let backup = |v: &ValueFunction| -> Result<ValueFunction> {
        Ok(ValueFunction(
            (0..n_s)
                .map(|s| {
                    (0..own_n)
                        .map(|a| {
                            let row = &trans[(s * own_n + a) * n_s..(s * own_n + a + 1) * n_s];
                            let next: f64 = row.iter().zip(&v.0).map(|(p, x)| p * x).sum();
                            reward[s * own_n + a] + gamma * next
                        })
                        .fold(f64::NEG_INFINITY, f64::max)
                })
                .collect(),
        ))
    };
    value_iteration(game, tol, backup).map(|r| r.v_star)
}

fn value_iteration<F>(game: &MarkovGame, tol: f64, backup: F) -> Result<ValueIterationResult>
where
    F: Fn(&ValueFunction) -> Result<ValueFunction>,
{
    if !(tol > 0.0) {
        return invalid(format!("tolerance must be positive, got {tol}"));
    }
    let gamma = game.gamma();
    let threshold = if gamma > 0.0 {
        tol * (1.0 - gamma) / (2.0 * gamma)
    } else {
        f64::INFINITY
    };
    let mut v = ValueFunction::zeros(game.n_states());
    let mut iterations = 0;
    loop {
        let next = backup(&v)?;
        let step = next.sup_distance(&v);
        v = next;
        iterations += 1;
        if step <= threshold {
            break;
        }
        if iterations > 1_000_000 {
            return Err(Error::Numerical("value iteration failed to converge".into()));
        }
    }
    let residual = backup(&v)?.sup_distance(&v);
    Ok(ValueIterationResult {
        v_star: v,
        iterations,
        residual,
    })
}

/// Per-state minimax strategies of the stage games `T¹(v)(s)`.
///
/// With `v = v_*¹` this is a Nash equilibrium of the Markov game.
pub fn minimax_policies(game: &MarkovGame, v1: &ValueFunction) -> Result<JointPolicy> {
    check_len(game, v1)?;
    let mut rows1 = Vec::with_capacity(game.n_states());
    let mut rows2 = Vec::with_capacity(game.n_states());
    for x in apply_t(game, v1, Player::One) {
        let sol = lp::solve(&x)?;
        rows1.push(sol.maximin);
        rows2.push(sol.minimax);
    }
    Ok(JointPolicy::new(Policy::from_rows(&rows1)?, Policy::from_rows(&rows2)?))
}

/// Exact value of the joint policy for `player`, from `(I − γP_π)v = r_π`.
pub fn policy_value(game: &MarkovGame, joint: &JointPolicy, player: Player) -> Result<ValueFunction> {
    joint.check_against(game)?;
    let n_s = game.n_states();
    let (m, n) = game.n_actions();
    let mut r = DVector::<f64>::zeros(n_s);
    let mut lhs = DMatrix::<f64>::identity(n_s, n_s);
    let gamma = game.gamma();
    for s in 0..n_s {
        let (p1, p2) = (joint.player1.row(s), joint.player2.row(s));
        for a in 0..m {
            for b in 0..n {
                let w = p1[a] * p2[b];
                if w == 0.0 {
                    continue;
                }
                r[s] += w * game.reward1(s, a, b);
                for (sp, p) in game.transition_row(s, a, b).iter().enumerate() {
                    lhs[(s, sp)] -= gamma * w * p;
                }
            }
        }
    }
    let v = if gamma == 0.0 {
        r
    } else {
        lhs.lu()
            .solve(&r)
            .ok_or_else(|| Error::Numerical("policy evaluation system is singular".into()))?
    };
    let sign = match player {
        Player::One => 1.0,
        Player::Two => -1.0,
    };
    Ok(ValueFunction(v.iter().map(|x| sign * x).collect()))
}

/// Nash gap `Σ_i [max_{π̂} U^i(π̂, π^{-i}) − U^i(π)]` with `U^i = ⟨p_o, v^i⟩`.
pub fn markov_nash_gap(game: &MarkovGame, joint: &JointPolicy, p_o: &[f64], tol: f64) -> Result<f64> {
    joint.check_against(game)?;
    if p_o.len() != game.n_states() {
        return invalid(format!(
            "initial distribution has {} entries, game has {} states",
            p_o.len(),
            game.n_states()
        ));
    }
    validate_distribution(p_o)?;
    let mut gap = 0.0;
    for player in Player::BOTH {
        let br = best_response_value(game, player, joint.of(player.opponent()), tol)?;
        let own = policy_value(game, joint, player)?;
        gap += br.expectation(p_o) - own.expectation(p_o);
    }
    Ok(gap)
}

/// Inner-loop q-target `q̄(s, a^i) = Σ_b T^i(v)(s, a^i, b) π^{-i}(b|s)`.
pub fn q_target(
    game: &MarkovGame,
    v: &ValueFunction,
    opponent_policy: &Policy,
    player: Player,
) -> QFunction {
    let rows: Vec<Vec<f64>> = apply_t(game, v, player)
        .iter()
        .enumerate()
        .map(|(s, x)| crate::game::mat_vec(x, opponent_policy.row(s)))
        .collect();
    QFunction::from_rows(&rows).expect("rectangular by construction")
}

fn check_len(game: &MarkovGame, v: &ValueFunction) -> Result<()> {
    if v.len() != game.n_states() {
        return invalid(format!(
            "value function has {} entries, game has {} states",
            v.len(),
            game.n_states()
        ));
    }
    if v.0.iter().any(|x| !x.is_finite()) {
        return invalid("value function contains non-finite entries");
    }
    Ok(())
}
