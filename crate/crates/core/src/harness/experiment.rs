use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{generate_game, load_game, random_policy, Game, GeneratorSpec};
use crate::diagnostics::DiagnosticsRecord;
use crate::dynamics::{dsbr_vi_run, run_dsbr, run_markov_with, run_matrix_with, LearnerState, RunConfig};
use crate::error::{invalid, Result};
use crate::game::{JointPolicy, Player, Policy};
use crate::oracles::{best_response_value, matrix_regret, policy_value, uniform_initial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Matrix-game dynamics.
    Dsbr,
    /// Markov-game dynamics with outer value iteration.
    DsbrVi,
    /// One player learns against a frozen stationary opponent.
    Rationality,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GameSource {
    File(PathBuf),
    Generator { spec: GeneratorSpec, seed: u64 },
    Inline(Game),
}

impl GameSource {
    pub fn resolve(&self) -> Result<Game> {
        match self {
            GameSource::File(p) => load_game(p),
            GameSource::Generator { spec, seed } => generate_game(spec, *seed),
            GameSource::Inline(g) => Ok(g.clone()),
        }
    }
}

/// Rationality-mode setup. Without an explicit opponent policy, one is
/// drawn from `opponent_seed`, shared by all replications.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalitySpec {
    pub learner: Player,
    pub opponent: Option<Policy>,
    pub opponent_seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub game: GameSource,
    /// `config.seed` is ignored; replication `i` uses `base_seed + i`.
    pub config: RunConfig,
    pub n_replications: usize,
    pub base_seed: u64,
    /// Directory for `rep_XXX.csv` and `summary.json`; nothing is written
    /// when `None`.
    pub out: Option<PathBuf>,
    pub mode: Mode,
    pub rationality: Option<RationalitySpec>,
}

impl ExperimentSpec {
    pub fn new(game: GameSource, config: RunConfig, mode: Mode) -> Self {
        ExperimentSpec {
            game,
            config,
            n_replications: 1,
            base_seed: 0,
            out: None,
            mode,
            rationality: None,
        }
    }

    pub fn replication_seed(&self, index: usize) -> u64 {
        self.base_seed.wrapping_add(index as u64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    /// Sample standard deviation; zero for a single replication.
    pub std: f64,
}

impl Stat {
    pub fn of(xs: &[f64]) -> Stat {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let std = if xs.len() > 1 {
            (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Stat { mean, std }
    }
}

/// Mean of each column across replications at one checkpoint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckpointMean {
    pub outer_t: u64,
    pub inner_k: u64,
    pub nash_gap: f64,
    pub l_v: Option<f64>,
    pub l_sum: Option<f64>,
    pub l_pi: f64,
    pub l_q: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReplicationSummary {
    pub index: usize,
    pub seed: u64,
    pub final_nash_gap: f64,
    /// Learner's regret against the frozen opponent, rationality mode only.
    pub regret: Option<f64>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mode: Mode,
    pub n_replications: usize,
    pub base_seed: u64,
    pub final_nash_gap: Stat,
    pub regret: Option<Stat>,
    pub checkpoints: Vec<CheckpointMean>,
    pub replications: Vec<ReplicationSummary>,
}

/// One replication's output.
#[derive(Clone, Debug, PartialEq)]
pub struct Replication {
    pub summary: ReplicationSummary,
    pub records: Vec<DiagnosticsRecord>,
    pub policy: JointPolicy,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentOutput {
    pub summary: Summary,
    pub replications: Vec<Replication>,
}

/// Runs all replications in parallel and, if `spec.out` is set, writes
/// the per-replication CSV files and the summary.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentOutput> {
    if spec.n_replications == 0 {
        return invalid("n_replications must be at least 1");
    }
    spec.config.validate()?;
    let game = spec.game.resolve()?;
    let opponent = match (spec.mode, &spec.rationality) {
        (Mode::Rationality, None) => return invalid("rationality mode needs a rationality spec"),
        (Mode::Rationality, Some(r)) => Some(opponent_policy(&game, r)?),
        _ => None,
    };
    let replications = (0..spec.n_replications)
        .into_par_iter()
        .map(|i| run_replication(spec, &game, opponent.as_ref(), i))
        .collect::<Result<Vec<_>>>()?;
    let summary = summarize(spec, &replications);
    if let Some(dir) = &spec.out {
        write_outputs(dir, &summary, &replications)?;
    }
    Ok(ExperimentOutput { summary, replications })
}

fn opponent_policy(game: &Game, r: &RationalitySpec) -> Result<Policy> {
    let opp = r.learner.opponent();
    let (m, n) = game.n_actions();
    let actions = if opp == Player::One { m } else { n };
    let policy = match &r.opponent {
        Some(p) => p.clone(),
        None => random_policy(game.n_states(), actions, r.opponent_seed)?,
    };
    if policy.n_states() != game.n_states() || policy.n_actions() != actions {
        return invalid(format!(
            "opponent policy is {}x{}, the game needs {}x{}",
            policy.n_states(),
            policy.n_actions(),
            game.n_states(),
            actions
        ));
    }
    Ok(policy)
}

fn learners_against(game: &Game, learner: Player, opponent: &Policy) -> [LearnerState; 2] {
    let (m, n) = game.n_actions();
    let own = if learner == Player::One { m } else { n };
    let active = LearnerState::new(learner, game.n_states(), own);
    let frozen = LearnerState::stationary(learner.opponent(), opponent.clone());
    match learner {
        Player::One => [active, frozen],
        Player::Two => [frozen, active],
    }
}

fn run_replication(
    spec: &ExperimentSpec,
    game: &Game,
    opponent: Option<&Policy>,
    index: usize,
) -> Result<Replication> {
    let seed = spec.replication_seed(index);
    let config = RunConfig {
        seed,
        ..spec.config.clone()
    };
    let (records, policy, warnings) = match (spec.mode, game) {
        (Mode::Dsbr, Game::Matrix(g)) => {
            let run = run_dsbr(g, &config)?;
            (run.records, run.policy, Vec::new())
        }
        (Mode::Dsbr, Game::Markov(_)) => return invalid("dsbr mode needs a matrix game"),
        (Mode::DsbrVi, g) => {
            let run = dsbr_vi_run(&g.to_markov(), &config)?;
            (run.records, run.policy, run.warnings)
        }
        (Mode::Rationality, g) => {
            let opp = opponent.expect("resolved before fan-out");
            let learner = spec.rationality.as_ref().expect("checked").learner;
            let learners = learners_against(g, learner, opp);
            match g {
                Game::Matrix(m) => {
                    let run = run_matrix_with(m, &config, learners)?;
                    (run.records, run.policy, Vec::new())
                }
                Game::Markov(mk) => {
                    let run = run_markov_with(mk, &config, learners)?;
                    (run.records, run.policy, run.warnings)
                }
            }
        }
    };
    let regret = match (spec.mode, &spec.rationality) {
        (Mode::Rationality, Some(r)) => Some(rationality_regret(game, &policy, r.learner, config.tol, config.p_o.as_deref())?),
        _ => None,
    };
    let final_nash_gap = records.last().map_or(f64::NAN, |r| r.nash_gap);
    Ok(Replication {
        summary: ReplicationSummary {
            index,
            seed,
            final_nash_gap,
            regret,
            warnings,
        },
        records,
        policy,
    })
}

/// `max_π̂ U(π̂, π^{-i}) − U(π^i, π^{-i})` with `U` the `p_o`-weighted value.
pub fn rationality_regret(
    game: &Game,
    joint: &JointPolicy,
    learner: Player,
    tol: f64,
    p_o: Option<&[f64]>,
) -> Result<f64> {
    let opp = joint.of(learner.opponent());
    match game {
        Game::Matrix(g) => matrix_regret(g, learner, joint.of(learner).row(0), opp.row(0)),
        Game::Markov(g) => {
            let p_o = p_o.map_or_else(|| uniform_initial(g.n_states()), <[f64]>::to_vec);
            let best = best_response_value(g, learner, opp, tol)?;
            let own = policy_value(g, joint, learner)?;
            Ok(best.expectation(&p_o) - own.expectation(&p_o))
        }
    }
}

fn summarize(spec: &ExperimentSpec, reps: &[Replication]) -> Summary {
    let finals: Vec<f64> = reps.iter().map(|r| r.summary.final_nash_gap).collect();
    let regrets: Option<Vec<f64>> = reps.iter().map(|r| r.summary.regret).collect();
    let n_rows = reps.iter().map(|r| r.records.len()).min().unwrap_or(0);
    let n = reps.len() as f64;
    let mean = |f: &dyn Fn(&DiagnosticsRecord) -> f64, i: usize| reps.iter().map(|r| f(&r.records[i])).sum::<f64>() / n;
    let mean_opt = |f: &dyn Fn(&DiagnosticsRecord) -> Option<f64>, i: usize| {
        reps.iter()
            .map(|r| f(&r.records[i]))
            .sum::<Option<f64>>()
            .map(|s| s / n)
    };
    let checkpoints = (0..n_rows)
        .map(|i| CheckpointMean {
            outer_t: reps[0].records[i].outer_t,
            inner_k: reps[0].records[i].inner_k,
            nash_gap: mean(&|r| r.nash_gap, i),
            l_v: mean_opt(&|r| r.l_v, i),
            l_sum: mean_opt(&|r| r.l_sum, i),
            l_pi: mean(&|r| r.l_pi, i),
            l_q: mean(&|r| r.l_q, i),
        })
        .collect();
    Summary {
        mode: spec.mode,
        n_replications: reps.len(),
        base_seed: spec.base_seed,
        final_nash_gap: Stat::of(&finals),
        regret: regrets.map(|r| Stat::of(&r)),
        checkpoints,
        replications: reps.iter().map(|r| r.summary.clone()).collect(),
    }
}

/// Writes `records` as CSV with the standard column order.
pub fn write_records<W: std::io::Write>(writer: W, records: &[DiagnosticsRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records(path: &Path) -> Result<Vec<DiagnosticsRecord>> {
    let mut r = csv::Reader::from_path(path)?;
    Ok(r.deserialize().collect::<std::result::Result<_, _>>()?)
}

pub fn replication_file(dir: &Path, index: usize) -> PathBuf {
    dir.join(format!("rep_{index:03}.csv"))
}

fn write_outputs(dir: &Path, summary: &Summary, reps: &[Replication]) -> Result<()> {
    fs::create_dir_all(dir)?;
    for r in reps {
        write_records(fs::File::create(replication_file(dir, r.summary.index))?, &r.records)?;
    }
    fs::write(dir.join("summary.json"), serde_json::to_string_pretty(summary)?)?;
    Ok(())
}
