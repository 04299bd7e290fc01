use rand_chacha::ChaCha8Rng;

use super::{margin_for, Feedback, GameDims, LearnerState, RngStreams, RunConfig, StepsizeSchedule};
use crate::diagnostics::{matrix_record, DiagnosticsRecord};
use crate::error::{Error, Result};
use crate::game::{JointPolicy, MatrixGame, Player};

/// Joint action and realized rewards of one round.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepOutcome {
    pub actions: [usize; 2],
    pub rewards: [f64; 2],
}

/// One iteration of the matrix-game dynamics at index `k`.
///
/// Both policy updates commit before either action is drawn, and both
/// actions are drawn from the updated policies before either q-update.
pub fn dsbr_step(
    game: &MatrixGame,
    learners: &mut [LearnerState; 2],
    k: u64,
    schedule: &StepsizeSchedule,
    tau: f64,
    rngs: &mut [ChaCha8Rng; 2],
) -> Result<StepOutcome> {
    let (alpha, beta) = schedule.at(k)?;
    let margin = margin_for(tau, 0.0, game.a_max());
    for l in learners.iter_mut() {
        l.update_policy(beta);
        l.check_margin(margin, || format!("matrix step {k}"))?;
    }
    let actions = [
        learners[0].sample_action(0, &mut rngs[0]),
        learners[1].sample_action(0, &mut rngs[1]),
    ];
    let rewards = [
        game.reward(Player::One, actions[0], actions[1]),
        game.reward(Player::Two, actions[1], actions[0]),
    ];
    for (i, l) in learners.iter_mut().enumerate() {
        let fb = Feedback {
            state: 0,
            action: actions[i],
            reward: rewards[i],
            next_state: 0,
        };
        l.observe(&fb, alpha, 0.0, tau);
        l.check_q_entry(0, actions[i], 1.0, || format!("matrix step {k}"))?;
    }
    Ok(StepOutcome { actions, rewards })
}

/// Owns one matrix-game trajectory.
#[derive(Clone, Debug)]
pub struct MatrixEngine<'g> {
    game: &'g MatrixGame,
    learners: [LearnerState; 2],
    rngs: [ChaCha8Rng; 2],
    schedule: StepsizeSchedule,
    tau: f64,
    k: u64,
}

impl<'g> MatrixEngine<'g> {
    /// Both players learning from `q = 0` and uniform policies.
    pub fn new(game: &'g MatrixGame, config: &RunConfig) -> Result<Self> {
        let (m, n) = game.n_actions();
        let learners = [
            LearnerState::new(Player::One, 1, m),
            LearnerState::new(Player::Two, 1, n),
        ];
        Self::with_learners(game, config, learners)
    }

    pub fn with_learners(
        game: &'g MatrixGame,
        config: &RunConfig,
        learners: [LearnerState; 2],
    ) -> Result<Self> {
        config.validate()?;
        config.enforce_theory(GameDims { n_states: 1, a_max: game.a_max() }, 0.0)?;
        for (l, p) in learners.iter().zip(Player::BOTH) {
            if l.player() != p
                || l.policy().n_states() != 1
                || l.policy().n_actions() != game.actions_of(p)
            {
                return Err(Error::InvalidArgument(format!(
                    "learner {} does not fit the game",
                    p.index() + 1
                )));
            }
        }
        let RngStreams { players, .. } = RngStreams::new(config.seed);
        Ok(MatrixEngine {
            game,
            learners,
            rngs: players,
            schedule: config.schedule,
            tau: config.tau,
            k: 0,
        })
    }

    pub fn step(&mut self) -> Result<StepOutcome> {
        let out = dsbr_step(
            self.game,
            &mut self.learners,
            self.k,
            &self.schedule,
            self.tau,
            &mut self.rngs,
        )?;
        self.k += 1;
        Ok(out)
    }

    /// Number of completed steps.
    pub fn iteration(&self) -> u64 {
        self.k
    }

    pub fn learners(&self) -> &[LearnerState; 2] {
        &self.learners
    }

    pub fn joint_policy(&self) -> JointPolicy {
        JointPolicy::new(
            self.learners[0].policy().clone(),
            self.learners[1].policy().clone(),
        )
    }

    pub fn record(&self) -> DiagnosticsRecord {
        matrix_record(self.game, &self.learners, self.tau, self.k)
    }
}

/// Final joint policy and checkpoint diagnostics of a matrix-game run.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRun {
    pub policy: JointPolicy,
    pub records: Vec<DiagnosticsRecord>,
}

/// Runs `K` steps from the standard initialization, recording diagnostics
/// at step 0 and every `checkpoint_every` steps.
pub fn run_dsbr(game: &MatrixGame, config: &RunConfig) -> Result<MatrixRun> {
    let engine = MatrixEngine::new(game, config)?;
    drive(engine, config)
}

/// Like [`run_dsbr`] with caller-supplied learners, e.g. a frozen opponent.
pub fn run_matrix_with(
    game: &MatrixGame,
    config: &RunConfig,
    learners: [LearnerState; 2],
) -> Result<MatrixRun> {
    let engine = MatrixEngine::with_learners(game, config, learners)?;
    drive(engine, config)
}

fn drive(mut engine: MatrixEngine<'_>, config: &RunConfig) -> Result<MatrixRun> {
    let mut records = vec![engine.record()];
    for _ in 0..config.k_inner {
        engine.step()?;
        if engine.iteration().is_multiple_of(config.checkpoint_every) {
            records.push(engine.record());
        }
    }
    Ok(MatrixRun {
        policy: engine.joint_policy(),
        records,
    })
}
