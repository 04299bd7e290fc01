use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chain::two_state;
use crate::error::{invalid, Result};
use crate::game::{MarkovGame, MatrixGame, Policy};

/// Either kind of game.
#[derive(Clone, Debug, PartialEq)]
pub enum Game {
    Matrix(MatrixGame),
    Markov(MarkovGame),
}

impl Game {
    /// The game as a Markov game; matrix games get one state and `γ = 0`.
    pub fn to_markov(&self) -> MarkovGame {
        match self {
            Game::Matrix(g) => g.as_markov(),
            Game::Markov(g) => g.clone(),
        }
    }

    pub fn n_states(&self) -> usize {
        match self {
            Game::Matrix(_) => 1,
            Game::Markov(g) => g.n_states(),
        }
    }

    pub fn n_actions(&self) -> (usize, usize) {
        match self {
            Game::Matrix(g) => g.n_actions(),
            Game::Markov(g) => g.n_actions(),
        }
    }

    pub fn gamma(&self) -> f64 {
        match self {
            Game::Matrix(_) => 0.0,
            Game::Markov(g) => g.gamma(),
        }
    }
}

impl From<MatrixGame> for Game {
    fn from(g: MatrixGame) -> Self {
        Game::Matrix(g)
    }
}

impl From<MarkovGame> for Game {
    fn from(g: MarkovGame) -> Self {
        Game::Markov(g)
    }
}

/// Named games available without a file.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum NamedGame {
    MatchingPennies,
    RockPaperScissors,
    /// The two-state keep-or-swap MDP. `alpha` is only used by
    /// [`two_state::joint_policy`]; the game itself has no parameter.
    AppendixD { alpha: f64 },
}

/// How to build a game.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    /// Payoffs uniform in `[−1, 1]`.
    RandomMatrix { rows: usize, cols: usize },
    /// Uniform rewards, transition rows normalized from uniform draws and
    /// then mixed with the uniform distribution at weight `eps_p`.
    RandomMarkov {
        n_states: usize,
        n_actions: (usize, usize),
        gamma: f64,
        eps_p: f64,
    },
    Named(NamedGame),
}

/// Builds a game; deterministic in `(spec, seed)`.
pub fn generate_game(spec: &GeneratorSpec, seed: u64) -> Result<Game> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *spec {
        GeneratorSpec::RandomMatrix { rows, cols } => {
            if rows == 0 || cols == 0 {
                return invalid(format!("matrix dimensions must be positive, got {rows}x{cols}"));
            }
            let payoff = (0..rows)
                .map(|_| (0..cols).map(|_| rng.random_range(-1.0..=1.0)).collect())
                .collect::<Vec<Vec<f64>>>();
            Ok(Game::Matrix(MatrixGame::from_rows(&payoff)?))
        }
        GeneratorSpec::RandomMarkov {
            n_states,
            n_actions: (m, n),
            gamma,
            eps_p,
        } => {
            if n_states == 0 || m == 0 || n == 0 {
                return invalid(format!(
                    "dimensions must be positive, got {n_states} states and {m}x{n} actions"
                ));
            }
            if !(eps_p > 0.0 && eps_p <= 1.0) {
                return invalid(format!("eps_p must lie in (0, 1], got {eps_p}"));
            }
            let cells = n_states * m * n;
            let mut transition = Vec::with_capacity(cells * n_states);
            for _ in 0..cells {
                let row = random_distribution(&mut rng, n_states);
                transition.extend(row.iter().map(|p| (1.0 - eps_p) * p + eps_p / n_states as f64));
            }
            let reward = (0..cells).map(|_| rng.random_range(-1.0..=1.0)).collect();
            Ok(Game::Markov(MarkovGame::new(n_states, (m, n), transition, reward, gamma)?))
        }
        GeneratorSpec::Named(NamedGame::MatchingPennies) => Ok(MatrixGame::matching_pennies().into()),
        GeneratorSpec::Named(NamedGame::RockPaperScissors) => Ok(MatrixGame::rock_paper_scissors().into()),
        GeneratorSpec::Named(NamedGame::AppendixD { alpha }) => {
            if !(0.0..=1.0).contains(&alpha) {
                return invalid(format!("alpha must lie in [0, 1], got {alpha}"));
            }
            Ok(two_state::game().into())
        }
    }
}

/// A policy whose rows are normalized uniform draws.
pub fn random_policy(n_states: usize, n_actions: usize, seed: u64) -> Result<Policy> {
    if n_states == 0 || n_actions == 0 {
        return invalid("policy dimensions must be positive");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<f64>> = (0..n_states).map(|_| random_distribution(&mut rng, n_actions)).collect();
    Policy::from_rows(&rows)
}

fn random_distribution(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + f64::MIN_POSITIVE).collect();
    let total: f64 = raw.iter().sum();
    let mut out: Vec<f64> = raw.iter().map(|x| x / total).collect();
    // Put the rounding residue on the largest entry so rows sum to 1.
    let residue = 1.0 - out.iter().sum::<f64>();
    let imax = (0..n).fold(0, |b, i| if out[i] > out[b] { i } else { b });
    out[imax] += residue;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::induce_chain;
    use crate::game::JointPolicy;

    #[test]
    fn named_games() {
        let Game::Matrix(g) = generate_game(&GeneratorSpec::Named(NamedGame::MatchingPennies), 0).unwrap() else {
            panic!("expected a matrix game");
        };
        assert_eq!(g, MatrixGame::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap());
        let d = generate_game(&GeneratorSpec::Named(NamedGame::AppendixD { alpha: 0.9 }), 0).unwrap();
        assert_eq!(d.n_states(), 2);
        assert_eq!(d.n_actions(), (2, 1));
    }

    #[test]
    fn deterministic_in_seed() {
        let spec = GeneratorSpec::RandomMarkov {
            n_states: 3,
            n_actions: (2, 2),
            gamma: 0.6,
            eps_p: 0.2,
        };
        assert_eq!(generate_game(&spec, 5).unwrap(), generate_game(&spec, 5).unwrap());
        assert_ne!(generate_game(&spec, 5).unwrap(), generate_game(&spec, 6).unwrap());
    }

    #[test]
    fn smoothed_transitions_are_ergodic() {
        let spec = GeneratorSpec::RandomMarkov {
            n_states: 4,
            n_actions: (2, 3),
            gamma: 0.5,
            eps_p: 0.05,
        };
        let g = generate_game(&spec, 1).unwrap().to_markov();
        for t in g.transition_flat() {
            assert!(*t >= 0.05 / 4.0 - 1e-15);
        }
        let joint = JointPolicy::new(random_policy(4, 2, 2).unwrap(), random_policy(4, 3, 3).unwrap());
        induce_chain(&g, &joint).unwrap().check_ergodic().unwrap();
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(generate_game(&GeneratorSpec::RandomMatrix { rows: 0, cols: 2 }, 0).is_err());
        let spec = GeneratorSpec::RandomMarkov {
            n_states: 2,
            n_actions: (2, 2),
            gamma: 0.5,
            eps_p: 0.0,
        };
        assert!(generate_game(&spec, 0).is_err());
    }
}
