// Replicated runs in parallel, written as one CSV per replication plus a
// JSON summary.

use dsbr::dynamics::RunConfig;
use dsbr::harness::{run_experiment, ExperimentSpec, GameSource, GeneratorSpec, Mode, NamedGame};

pub fn run_example() -> dsbr::Result<usize> {
    let dir = std::env::temp_dir().join("dsbr-experiment-example");
    let source = GameSource::Generator {
        spec: GeneratorSpec::Named(NamedGame::MatchingPennies),
        seed: 0,
    };
    let mut spec = ExperimentSpec::new(source, RunConfig { checkpoint_every: 2_000, ..RunConfig::matrix(10_000) }, Mode::Dsbr);
    spec.n_replications = 6;
    spec.base_seed = 100;
    spec.out = Some(dir.clone());
    let out = run_experiment(&spec)?;
    let s = &out.summary;
    println!("final gap {:.4} +- {:.4} over {} seeds", s.final_nash_gap.mean, s.final_nash_gap.std, s.n_replications);
    for c in &s.checkpoints {
        println!("k = {:>5}  mean gap {:.4}", c.inner_k, c.nash_gap);
    }
    println!("files in {}", dir.display());
    Ok(out.replications.len())
}

#[allow(dead_code)]
fn main() -> dsbr::Result<()> {
    run_example().map(|_| ())
}
