//! Command-line driver.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dsbr::chain::{induce_chain, mixing_time, stationary_distribution, two_state};
use dsbr::dynamics::{check_conditions, GameDims, RunConfig, StepsizeSchedule};
use dsbr::game::Player;
use dsbr::harness::{
    game_to_json, generate_game, load_game, load_policy, run_experiment, ExperimentSpec, Game,
    GameSource, GeneratorSpec, Mode, NamedGame, RationalitySpec, Summary,
};
use dsbr::oracles::{
    best_response_value, markov_nash_gap, matrix_game_value, matrix_nash_gap, matrix_regret, minimax_value_iteration,
    policy_value, uniform_initial,
};
use dsbr::Result;

#[derive(Parser)]
#[command(name = "dsbr", version, about = "Smoothed best-response learning in zero-sum games")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScheduleArg {
    Constant,
    Linear,
    Poly,
}

#[derive(Args)]
struct Global {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file or directory, depending on the command.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    replications: usize,
    #[arg(long = "checkpoint-every", global = true)]
    checkpoint_every: Option<u64>,
    #[arg(long, global = true, default_value_t = 0.05)]
    tau: f64,
    #[arg(long, global = true, value_enum, default_value_t = ScheduleArg::Linear)]
    schedule: ScheduleArg,
    #[arg(long, global = true)]
    alpha: Option<f64>,
    #[arg(long, global = true)]
    h: Option<f64>,
    #[arg(long, global = true, default_value_t = 0.5)]
    z: f64,
    /// Ratio c between the policy and q stepsizes.
    #[arg(long, global = true, default_value_t = 0.5)]
    ratio: f64,
    #[arg(long = "K", global = true, default_value_t = 10_000)]
    k: u64,
    #[arg(long = "T", global = true, default_value_t = 10)]
    t: u64,
    #[arg(long, global = true, default_value_t = dsbr::oracles::DEFAULT_TOL)]
    tol: f64,
    #[arg(long = "strict-theory", global = true)]
    strict_theory: bool,
    /// Print full JSON instead of a short text summary.
    #[arg(long, global = true)]
    json: bool,
}

impl Global {
    fn schedule(&self) -> StepsizeSchedule {
        match self.schedule {
            ScheduleArg::Constant => StepsizeSchedule::constant(self.alpha.unwrap_or(0.05), self.ratio),
            ScheduleArg::Linear => {
                StepsizeSchedule::linear(self.alpha.unwrap_or(5.0), self.h.unwrap_or(10.0), self.ratio)
            }
            ScheduleArg::Poly => {
                StepsizeSchedule::polynomial(self.alpha.unwrap_or(0.5), self.h.unwrap_or(10.0), self.z, self.ratio)
            }
        }
    }

    fn config(&self, markov: bool) -> RunConfig {
        let base = if markov {
            RunConfig::markov(self.t, self.k)
        } else {
            RunConfig::matrix(self.k)
        };
        RunConfig {
            tau: self.tau,
            schedule: self.schedule(),
            seed: self.seed,
            checkpoint_every: self.checkpoint_every.unwrap_or(base.checkpoint_every),
            strict_theory: self.strict_theory,
            tol: self.tol,
            ..base
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    RandomMatrix,
    RandomMarkov,
    MatchingPennies,
    RockPaperScissors,
    AppendixD,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    #[arg(long, default_value_t = 2)]
    actions1: usize,
    #[arg(long, default_value_t = 2)]
    actions2: usize,
    #[arg(long, default_value_t = 3)]
    states: usize,
    #[arg(long, default_value_t = 0.6)]
    gamma: f64,
    #[arg(long = "eps-p", default_value_t = 0.2)]
    eps_p: f64,
    /// Policy parameter of the two-state example.
    #[arg(long = "stay-prob", default_value_t = 0.9)]
    stay_prob: f64,
}

impl GenArgs {
    fn spec(&self) -> GeneratorSpec {
        match self.kind {
            GenKind::RandomMatrix => GeneratorSpec::RandomMatrix {
                rows: self.actions1,
                cols: self.actions2,
            },
            GenKind::RandomMarkov => GeneratorSpec::RandomMarkov {
                n_states: self.states,
                n_actions: (self.actions1, self.actions2),
                gamma: self.gamma,
                eps_p: self.eps_p,
            },
            GenKind::MatchingPennies => GeneratorSpec::Named(NamedGame::MatchingPennies),
            GenKind::RockPaperScissors => GeneratorSpec::Named(NamedGame::RockPaperScissors),
            GenKind::AppendixD => GeneratorSpec::Named(NamedGame::AppendixD { alpha: self.stay_prob }),
        }
    }
}

#[derive(Args)]
struct GameArg {
    /// Game JSON file.
    #[arg(long)]
    game: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a game and write it as JSON.
    GenGame(GenArgs),
    /// Run the matrix-game dynamics.
    SimulateMatrix(GameArg),
    /// Run the Markov-game dynamics with outer value iteration.
    SimulateMarkov(GameArg),
    /// Learn against a frozen stationary opponent.
    Rationality {
        #[command(flatten)]
        game: GameArg,
        /// The learning player.
        #[arg(long, default_value_t = 1)]
        player: u8,
        /// Policy JSON whose entry for the opponent is used; random if absent.
        #[arg(long)]
        opponent: Option<PathBuf>,
    },
    /// Nash gap of a joint policy.
    NashGap {
        #[command(flatten)]
        game: GameArg,
        #[arg(long)]
        policy: PathBuf,
    },
    /// Minimax values, and with a policy its values and best responses.
    ValueIterate {
        #[command(flatten)]
        game: GameArg,
        #[arg(long)]
        policy: Option<PathBuf>,
    },
    /// Mixing time of the chain induced by a joint policy.
    MixingTime {
        #[command(flatten)]
        game: GameArg,
        #[arg(long)]
        policy: PathBuf,
        #[arg(long, default_value_t = 0.05)]
        eta: f64,
    },
    /// Check the stepsize and temperature hypotheses for a game.
    CheckConditions(GameArg),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn emit(g: &Global, text: &str) -> Result<()> {
    match &g.out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn print_json(v: &serde_json::Value) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    let g = &cli.global;
    match &cli.command {
        Command::GenGame(args) => emit(g, &game_to_json(&generate_game(&args.spec(), g.seed)?)?),
        Command::SimulateMatrix(a) => simulate(g, &a.game, Mode::Dsbr, None),
        Command::SimulateMarkov(a) => simulate(g, &a.game, Mode::DsbrVi, None),
        Command::Rationality { game, player, opponent } => {
            let learner = Player::from_number(*player)?;
            let opponent = match opponent {
                Some(p) => Some(load_policy(p)?.of(learner.opponent()).clone()),
                None => None,
            };
            let spec = RationalitySpec {
                learner,
                opponent,
                opponent_seed: g.seed,
            };
            simulate(g, &game.game, Mode::Rationality, Some(spec))
        }
        Command::NashGap { game, policy } => nash_gap(g, &load_game(&game.game)?, policy),
        Command::ValueIterate { game, policy } => value_iterate(g, &load_game(&game.game)?, policy.as_deref()),
        Command::MixingTime { game, policy, eta } => {
            let game = load_game(&game.game)?.to_markov();
            let joint = load_policy(policy)?;
            let chain = induce_chain(&game, &joint)?;
            let k = mixing_time(&chain, *eta)?;
            let mu = stationary_distribution(&chain)?;
            let analytic = two_state::match_template(&game, &joint).map(|alpha| {
                json!({
                    "alpha": alpha,
                    "exact_mixing_time": two_state::exact_mixing_time(alpha, *eta),
                    "lower_bound": two_state::mixing_lower_bound(alpha, *eta),
                })
            });
            print_json(&json!({ "mixing_time": k, "stationary": mu, "two_state": analytic }))
        }
        Command::CheckConditions(a) => {
            let game = load_game(&a.game)?;
            let markov = matches!(game, Game::Markov(_));
            let dims = GameDims {
                n_states: game.n_states(),
                a_max: game.n_actions().0.max(game.n_actions().1),
            };
            let report = check_conditions(&g.config(markov), dims, game.gamma());
            if g.json {
                print_json(&serde_json::to_value(&report)?)
            } else {
                print!("{report}");
                Ok(())
            }
        }
    }
}

fn simulate(g: &Global, path: &Path, mode: Mode, rationality: Option<RationalitySpec>) -> Result<()> {
    let game = load_game(path)?;
    let markov = match mode {
        Mode::Dsbr => false,
        Mode::DsbrVi => true,
        Mode::Rationality => matches!(game, Game::Markov(_)),
    };
    let mut spec = ExperimentSpec::new(GameSource::Inline(game), g.config(markov), mode);
    spec.n_replications = g.replications;
    spec.base_seed = g.seed;
    spec.out = g.out.clone();
    spec.rationality = rationality;
    let out = run_experiment(&spec)?;
    if g.json {
        print_json(&serde_json::to_value(&out.summary)?)
    } else {
        print_summary(&out.summary);
        Ok(())
    }
}

fn print_summary(s: &Summary) {
    println!(
        "{} replications, final nash gap {:.6} (std {:.6})",
        s.n_replications, s.final_nash_gap.mean, s.final_nash_gap.std
    );
    if let Some(r) = s.regret {
        println!("regret against the frozen opponent {:.6} (std {:.6})", r.mean, r.std);
    }
    for rep in &s.replications {
        for w in &rep.warnings {
            println!("warning (replication {}): {w}", rep.index);
        }
    }
}

fn nash_gap(g: &Global, game: &Game, policy: &Path) -> Result<()> {
    let joint = load_policy(policy)?;
    let value = match game {
        Game::Matrix(m) => {
            let (p1, p2) = (joint.player1.row(0), joint.player2.row(0));
            json!({
                "nash_gap": matrix_nash_gap(m, p1, p2)?,
                "regret1": matrix_regret(m, Player::One, p1, p2)?,
                "regret2": matrix_regret(m, Player::Two, p2, p1)?,
                "value": matrix_game_value(m.payoff())?.value,
            })
        }
        Game::Markov(m) => {
            let p_o = uniform_initial(m.n_states());
            json!({ "nash_gap": markov_nash_gap(m, &joint, &p_o, g.tol)? })
        }
    };
    print_json(&value)
}

fn value_iterate(g: &Global, game: &Game, policy: Option<&Path>) -> Result<()> {
    let m = game.to_markov();
    let v1 = minimax_value_iteration(&m, Player::One, g.tol)?;
    let v2 = minimax_value_iteration(&m, Player::Two, g.tol)?;
    let mut out = json!({
        "v_star1": v1.v_star.0,
        "v_star2": v2.v_star.0,
        "iterations": v1.iterations,
        "residual": v1.residual.max(v2.residual),
    });
    if let Some(p) = policy {
        let joint = load_policy(p)?;
        let mut players = Vec::new();
        for player in Player::BOTH {
            let own = policy_value(&m, &joint, player)?;
            let best = best_response_value(&m, player, joint.of(player.opponent()), g.tol)?;
            players.push(json!({ "policy_value": own.0, "best_response_value": best.0 }));
        }
        out["players"] = json!(players);
    }
    print_json(&out)
}
