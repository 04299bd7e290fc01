// Which stepsize hypotheses a configuration meets, and strict mode
// refusing to run one that does not.

use dsbr::dynamics::{check_conditions, run_dsbr, GameDims, RunConfig, StepsizeSchedule};
use dsbr::game::MatrixGame;

pub fn run_example() -> dsbr::Result<usize> {
    let dims = GameDims { n_states: 1, a_max: 2 };
    let good = RunConfig {
        schedule: StepsizeSchedule::linear(1000.0, 1001.0, 0.003),
        ..RunConfig::matrix(1000)
    };
    let bad = RunConfig {
        schedule: StepsizeSchedule::linear(2.0, 4.0, 0.5),
        strict_theory: true,
        ..RunConfig::matrix(1000)
    };
    print!("{}", check_conditions(&good, dims, 0.0));
    let report = check_conditions(&bad, dims, 0.0);
    print!("{report}");
    match run_dsbr(&MatrixGame::matching_pennies(), &bad) {
        Ok(_) => println!("strict run accepted"),
        Err(e) => println!("strict run refused: {e}"),
    }
    print!("{}", check_conditions(&good, GameDims { n_states: 3, a_max: 2 }, 0.6));
    Ok(report.violations().count())
}

#[allow(dead_code)]
fn main() -> dsbr::Result<()> {
    run_example().map(|_| ())
}
