// Both players of rock-paper-scissors learn from bandit feedback; the Nash
// gap settles near the smoothing bias.

use dsbr::dynamics::{run_dsbr, RunConfig, StepsizeSchedule};
use dsbr::game::MatrixGame;

pub fn run_example() -> dsbr::Result<f64> {
    let game = MatrixGame::rock_paper_scissors();
    let config = RunConfig {
        tau: 0.05,
        schedule: StepsizeSchedule::linear(1000.0, 1001.0, 0.003),
        checkpoint_every: 10_000,
        seed: 1,
        ..RunConfig::matrix(50_000)
    };
    let run = run_dsbr(&game, &config)?;
    for r in &run.records {
        println!("k = {:>6}  gap = {:.4}  L_pi = {:.4}  L_q = {:.5}", r.inner_k, r.nash_gap, r.l_pi, r.l_q);
    }
    println!("player 1 plays {:?}", run.policy.player1.row(0));
    Ok(run.records.last().map_or(f64::NAN, |r| r.nash_gap))
}

#[allow(dead_code)]
fn main() -> dsbr::Result<()> {
    run_example().map(|_| ())
}
