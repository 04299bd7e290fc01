// Exact quantities: matrix game values, Nash gaps, minimax value iteration
// and best responses.

use dsbr::game::{JointPolicy, MatrixGame, Player, Policy};
use dsbr::harness::{generate_game, GeneratorSpec};
use dsbr::oracles::{
    best_response_value, markov_nash_gap, matrix_game_value, matrix_nash_gap, minimax_policies,
    minimax_value_iteration, uniform_initial, DEFAULT_TOL,
};

pub fn run_example() -> dsbr::Result<f64> {
    let rps = MatrixGame::rock_paper_scissors();
    let sol = matrix_game_value(rps.payoff())?;
    println!("RPS value {:.3}, maximin {:?}", sol.value, sol.maximin);
    println!("gap at (rock, rock): {}", matrix_nash_gap(&rps, &[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0])?);

    let spec = GeneratorSpec::RandomMarkov {
        n_states: 4,
        n_actions: (3, 2),
        gamma: 0.8,
        eps_p: 0.3,
    };
    let game = generate_game(&spec, 5)?.to_markov();
    let vi = minimax_value_iteration(&game, Player::One, DEFAULT_TOL)?;
    println!("v* = {:?} after {} iterations, residual {:.1e}", vi.v_star.0, vi.iterations, vi.residual);

    let uniform = JointPolicy::uniform(4, (3, 2));
    let p_o = uniform_initial(4);
    println!("uniform gap {:.4}", markov_nash_gap(&game, &uniform, &p_o, DEFAULT_TOL)?);
    let br = best_response_value(&game, Player::One, &Policy::uniform(4, 2), DEFAULT_TOL)?;
    println!("best response to uniform: {:?}", br.0);

    let nash = minimax_policies(&game, &vi.v_star)?;
    let gap = markov_nash_gap(&game, &nash, &p_o, DEFAULT_TOL)?;
    println!("gap at the minimax policies {gap:.2e}");
    Ok(gap)
}

#[allow(dead_code)]
fn main() -> dsbr::Result<()> {
    run_example().map(|_| ())
}
