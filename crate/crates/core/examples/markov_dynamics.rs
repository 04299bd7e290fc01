// Value-iteration dynamics on a random three-state game. Both players'
// values approach the minimax values and sum to zero.

use dsbr::dynamics::{dsbr_vi_run, RunConfig, StepsizeSchedule};
use dsbr::harness::{generate_game, GeneratorSpec};

pub fn run_example() -> dsbr::Result<f64> {
    let spec = GeneratorSpec::RandomMarkov {
        n_states: 3,
        n_actions: (2, 2),
        gamma: 0.6,
        eps_p: 0.2,
    };
    let game = generate_game(&spec, 0)?.to_markov();
    let config = RunConfig {
        tau: 0.05,
        schedule: StepsizeSchedule::linear(100.0, 100.0, 0.03),
        ..RunConfig::markov(10, 5_000)
    };
    let run = dsbr_vi_run(&game, &config)?;
    println!(" t   gap      L_v      L_sum");
    for r in &run.records {
        println!("{:>2}  {:.4}  {:.4}  {:.4}", r.outer_t, r.nash_gap, r.l_v.unwrap(), r.l_sum.unwrap());
    }
    for w in &run.warnings {
        println!("warning: {w}");
    }
    Ok(run.records.last().and_then(|r| r.l_v).unwrap_or(f64::NAN))
}

#[allow(dead_code)]
fn main() -> dsbr::Result<()> {
    run_example().map(|_| ())
}
