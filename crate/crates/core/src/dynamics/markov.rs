use super::{margin_for, Feedback, GameDims, LearnerState, RngStreams, RunConfig, StepsizeSchedule};
use crate::chain::induce_chain;
use crate::diagnostics::{compute_record, DiagnosticsRecord, RecordContext};
use crate::error::{invalid, Error, Result};
use crate::game::{JointPolicy, MarkovGame, Player, ValueFunction};
use crate::oracles::{minimax_value_iteration, uniform_initial};

/// One transition of the shared trajectory.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MarkovStep {
    pub state: usize,
    pub actions: [usize; 2],
    pub rewards: [f64; 2],
    pub next_state: usize,
}

/// Owns one Markov-game trajectory of the value-iteration dynamics.
///
/// The engine keeps the position `(t, k)`: outer iteration `t` and number
/// of inner steps `k` already taken in it. [`inner_step`](Self::inner_step)
/// advances `k`, [`outer_update`](Self::outer_update) refreshes both
/// players' v-functions, resets the inner iterates and moves to `t + 1`.
#[derive(Clone, Debug)]
pub struct MarkovEngine<'g> {
    game: &'g MarkovGame,
    learners: [LearnerState; 2],
    rngs: RngStreams,
    schedule: StepsizeSchedule,
    tau: f64,
    state: usize,
    outer_t: u64,
    inner_k: u64,
    margin: f64,
    bound: f64,
}

impl<'g> MarkovEngine<'g> {
    pub fn new(game: &'g MarkovGame, config: &RunConfig) -> Result<Self> {
        let n = game.n_states();
        let (m1, m2) = game.n_actions();
        let learners = [
            LearnerState::new(Player::One, n, m1),
            LearnerState::new(Player::Two, n, m2),
        ];
        Self::with_learners(game, config, learners)
    }

    pub fn with_learners(
        game: &'g MarkovGame,
        config: &RunConfig,
        learners: [LearnerState; 2],
    ) -> Result<Self> {
        config.validate()?;
        config.enforce_theory(
            GameDims {
                n_states: game.n_states(),
                a_max: game.a_max(),
            },
            game.gamma(),
        )?;
        if config.initial_state >= game.n_states() {
            return invalid(format!(
                "initial state {} out of range for {} states",
                config.initial_state,
                game.n_states()
            ));
        }
        for (l, p) in learners.iter().zip(Player::BOTH) {
            if l.player() != p
                || l.policy().n_states() != game.n_states()
                || l.policy().n_actions() != game.actions_of(p)
            {
                return Err(Error::InvalidArgument(format!(
                    "learner {} does not fit the game",
                    p.index() + 1
                )));
            }
        }
        Ok(MarkovEngine {
            game,
            learners,
            rngs: RngStreams::new(config.seed),
            schedule: config.schedule,
            tau: config.tau,
            state: config.initial_state,
            outer_t: 0,
            inner_k: 0,
            margin: margin_for(config.tau, game.gamma(), game.a_max()),
            bound: 1.0 / (1.0 - game.gamma()),
        })
    }

    /// Policy update at every state, simultaneous play at the current
    /// state, then each player's own q-update.
    pub fn inner_step(&mut self) -> Result<MarkovStep> {
        let (alpha, beta) = self.schedule.at(self.inner_k)?;
        let (t, k) = (self.outer_t, self.inner_k);
        let ctx = || format!("outer {t}, inner {k}");
        for l in self.learners.iter_mut() {
            l.update_policy(beta);
            l.check_margin(self.margin, ctx)?;
        }
        let s = self.state;
        let actions = [
            self.learners[0].sample_action(s, &mut self.rngs.players[0]),
            self.learners[1].sample_action(s, &mut self.rngs.players[1]),
        ];
        let next_state = super::sample_index(
            self.game.transition_row(s, actions[0], actions[1]),
            &mut self.rngs.environment,
        );
        let rewards = [
            self.game.reward(Player::One, s, actions[0], actions[1]),
            self.game.reward(Player::Two, s, actions[1], actions[0]),
        ];
        let gamma = self.game.gamma();
        for (i, l) in self.learners.iter_mut().enumerate() {
            let fb = Feedback {
                state: s,
                action: actions[i],
                reward: rewards[i],
                next_state,
            };
            l.observe(&fb, alpha, gamma, self.tau);
            l.check_q_entry(s, actions[i], self.bound, ctx)?;
        }
        self.state = next_state;
        self.inner_k += 1;
        Ok(MarkovStep {
            state: s,
            actions,
            rewards,
            next_state,
        })
    }

    /// `v_{t+1}(s) = π_{t,K}(s)ᵀ q_{t,K}(s)`; the trajectory continues from
    /// the current state.
    pub fn outer_update(&mut self) -> Result<()> {
        let t = self.outer_t;
        for l in self.learners.iter_mut() {
            l.finish_outer();
            l.check_v(self.bound, || format!("outer update {t}"))?;
        }
        self.outer_t += 1;
        self.inner_k = 0;
        Ok(())
    }

    pub fn state(&self) -> usize {
        self.state
    }

    pub fn outer_t(&self) -> u64 {
        self.outer_t
    }

    pub fn inner_k(&self) -> u64 {
        self.inner_k
    }

    pub fn learners(&self) -> &[LearnerState; 2] {
        &self.learners
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn joint_policy(&self) -> JointPolicy {
        JointPolicy::new(
            self.learners[0].policy().clone(),
            self.learners[1].policy().clone(),
        )
    }

    pub fn values(&self) -> [ValueFunction; 2] {
        [self.learners[0].v().clone(), self.learners[1].v().clone()]
    }
}

/// Output of a Markov-game run.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkovRun {
    /// `π_{T,K}`, the policy of the last inner loop.
    pub policy: JointPolicy,
    pub records: Vec<DiagnosticsRecord>,
    /// `[v_t¹, v_t²]` for `t = 0, …, T + 1`.
    pub values: Vec<[ValueFunction; 2]>,
    pub warnings: Vec<String>,
}

/// Runs outer iterations `t = 0, …, T`, each with `K` inner steps, and
/// records diagnostics at global step 0 and every `checkpoint_every` steps.
pub fn dsbr_vi_run(game: &MarkovGame, config: &RunConfig) -> Result<MarkovRun> {
    let engine = MarkovEngine::new(game, config)?;
    drive(engine, config)
}

/// Like [`dsbr_vi_run`] with caller-supplied learners, e.g. a frozen opponent.
pub fn run_markov_with(
    game: &MarkovGame,
    config: &RunConfig,
    learners: [LearnerState; 2],
) -> Result<MarkovRun> {
    let engine = MarkovEngine::with_learners(game, config, learners)?;
    drive(engine, config)
}

fn drive(mut engine: MarkovEngine<'_>, config: &RunConfig) -> Result<MarkovRun> {
    let game = engine.game;
    let mut warnings = Vec::new();
    let uniform = JointPolicy::uniform(game.n_states(), game.n_actions());
    if let Err(e) = induce_chain(game, &uniform)?.check_ergodic() {
        warnings.push(format!(
            "uniform joint policy does not induce an irreducible aperiodic chain ({e}); \
             convergence guarantees need some policy that does"
        ));
    }
    let p_o = match &config.p_o {
        Some(p) => p.clone(),
        None => uniform_initial(game.n_states()),
    };
    let v_star = [
        minimax_value_iteration(game, Player::One, config.tol)?.v_star,
        minimax_value_iteration(game, Player::Two, config.tol)?.v_star,
    ];
    let ctx = RecordContext {
        v_star: &v_star,
        p_o: &p_o,
        tau: config.tau,
        tol: config.tol,
        smoothing_constant: config.smoothing_constant,
    };
    let mut records = vec![compute_record(game, engine.learners(), &ctx, 0, 0)?];
    let mut values = vec![engine.values()];
    let mut policy = engine.joint_policy();
    let mut global = 0u64;
    for t in 0..=config.t_outer {
        for _ in 0..config.k_inner {
            engine.inner_step()?;
            global += 1;
            if global.is_multiple_of(config.checkpoint_every) {
                records.push(compute_record(game, engine.learners(), &ctx, t, engine.inner_k())?);
            }
        }
        policy = engine.joint_policy();
        engine.outer_update()?;
        values.push(engine.values());
    }
    Ok(MarkovRun {
        policy,
        records,
        values,
        warnings,
    })
}
