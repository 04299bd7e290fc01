// One player learns against an opponent frozen at a random stationary
// policy and ends up close to a best response.

use dsbr::dynamics::{run_matrix_with, LearnerState, RunConfig};
use dsbr::game::{MatrixGame, Player};
use dsbr::harness::random_policy;
use dsbr::oracles::matrix_regret;

pub fn run_example() -> dsbr::Result<f64> {
    let game = MatrixGame::from_rows(&[vec![0.3, -0.8, 0.5], vec![-0.2, 0.4, 0.1], vec![0.9, -0.6, -0.4]])?;
    let opponent = random_policy(1, 3, 42)?;
    let learners = [
        LearnerState::new(Player::One, 1, 3),
        LearnerState::stationary(Player::Two, opponent.clone()),
    ];
    let run = run_matrix_with(&game, &RunConfig::matrix(30_000), learners)?;
    let regret = matrix_regret(&game, Player::One, run.policy.player1.row(0), opponent.row(0))?;
    println!("opponent {:?}", opponent.row(0));
    println!("learner  {:?}", run.policy.player1.row(0));
    println!("regret {regret:.5}, smoothing bias {:.5}", 2.0 * 0.05 * 3f64.ln());
    Ok(regret)
}

#[allow(dead_code)]
fn main() -> dsbr::Result<()> {
    run_example().map(|_| ())
}
