//! Experiment plumbing: game generators, the JSON game and policy formats,
//! and replicated runs with CSV and JSON output.

mod experiment;
mod generate;
mod io;

pub use experiment::{
    rationality_regret, read_records, replication_file, run_experiment, write_records, CheckpointMean,
    ExperimentOutput, ExperimentSpec, GameSource, Mode, RationalitySpec, Replication, ReplicationSummary, Stat,
    Summary,
};
pub use generate::{generate_game, random_policy, Game, GeneratorSpec, NamedGame};
pub use io::{
    game_to_json, load_game, load_policy, parse_game, parse_policy, save_game, save_policy, GameFile, PolicyFile,
};
