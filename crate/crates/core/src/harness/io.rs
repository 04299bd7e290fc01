use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Game;
use crate::error::{Error, Result};
use crate::game::{JointPolicy, MarkovGame, MatrixGame, Policy};

/// On-disk form of a game.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GameFile {
    Matrix {
        payoff: Vec<Vec<f64>>,
    },
    Markov {
        n_states: usize,
        n_actions: [usize; 2],
        gamma: f64,
        /// `[s][a1][a2][s']`.
        transition: Vec<Vec<Vec<Vec<f64>>>>,
        /// `[s][a1][a2]`, player 1's reward.
        reward: Vec<Vec<Vec<f64>>>,
    },
}

fn bad(msg: String) -> Error {
    Error::InvalidGame(msg)
}

fn check_len<T>(v: &[T], want: usize, what: &str) -> Result<()> {
    if v.len() == want {
        Ok(())
    } else {
        Err(bad(format!("{what} has length {}, expected {want}", v.len())))
    }
}

impl GameFile {
    pub fn into_game(self) -> Result<Game> {
        match self {
            GameFile::Matrix { payoff } => {
                let cols = payoff.first().map_or(0, Vec::len);
                for (i, row) in payoff.iter().enumerate() {
                    check_len(row, cols, &format!("payoff[{i}]"))?;
                }
                Ok(Game::Matrix(MatrixGame::from_rows(&payoff)?))
            }
            GameFile::Markov {
                n_states,
                n_actions: [m, n],
                gamma,
                transition,
                reward,
            } => {
                check_len(&transition, n_states, "transition")?;
                check_len(&reward, n_states, "reward")?;
                let mut t_flat = Vec::with_capacity(n_states * m * n * n_states);
                let mut r_flat = Vec::with_capacity(n_states * m * n);
                for s in 0..n_states {
                    check_len(&transition[s], m, &format!("transition[{s}]"))?;
                    check_len(&reward[s], m, &format!("reward[{s}]"))?;
                    for a in 0..m {
                        check_len(&transition[s][a], n, &format!("transition[{s}][{a}]"))?;
                        check_len(&reward[s][a], n, &format!("reward[{s}][{a}]"))?;
                        for b in 0..n {
                            let row = &transition[s][a][b];
                            check_len(row, n_states, &format!("transition[{s}][{a}][{b}]"))?;
                            t_flat.extend_from_slice(row);
                            r_flat.push(reward[s][a][b]);
                        }
                    }
                }
                Ok(Game::Markov(MarkovGame::new(n_states, (m, n), t_flat, r_flat, gamma)?))
            }
        }
    }

    pub fn from_game(game: &Game) -> Self {
        match game {
            Game::Matrix(g) => {
                let p = g.payoff();
                GameFile::Matrix {
                    payoff: (0..p.nrows()).map(|i| p.row(i).iter().copied().collect()).collect(),
                }
            }
            Game::Markov(g) => {
                let (m, n) = g.n_actions();
                let ns = g.n_states();
                GameFile::Markov {
                    n_states: ns,
                    n_actions: [m, n],
                    gamma: g.gamma(),
                    transition: (0..ns)
                        .map(|s| {
                            (0..m)
                                .map(|a| (0..n).map(|b| g.transition_row(s, a, b).to_vec()).collect())
                                .collect()
                        })
                        .collect(),
                    reward: (0..ns)
                        .map(|s| (0..m).map(|a| (0..n).map(|b| g.reward1(s, a, b)).collect()).collect())
                        .collect(),
                }
            }
        }
    }
}

pub fn parse_game(json: &str) -> Result<Game> {
    serde_json::from_str::<GameFile>(json)?.into_game()
}

pub fn game_to_json(game: &Game) -> Result<String> {
    Ok(serde_json::to_string_pretty(&GameFile::from_game(game))?)
}

pub fn load_game(path: &Path) -> Result<Game> {
    parse_game(&fs::read_to_string(path)?)
}

pub fn save_game(game: &Game, path: &Path) -> Result<()> {
    fs::write(path, game_to_json(game)?)?;
    Ok(())
}

/// On-disk form of a joint policy: one row per state for each player.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolicyFile {
    pub pi1: Vec<Vec<f64>>,
    pub pi2: Vec<Vec<f64>>,
}

impl PolicyFile {
    pub fn into_joint(self) -> Result<JointPolicy> {
        Ok(JointPolicy::new(Policy::from_rows(&self.pi1)?, Policy::from_rows(&self.pi2)?))
    }

    pub fn from_joint(joint: &JointPolicy) -> Self {
        PolicyFile {
            pi1: joint.player1.rows(),
            pi2: joint.player2.rows(),
        }
    }
}

pub fn parse_policy(json: &str) -> Result<JointPolicy> {
    serde_json::from_str::<PolicyFile>(json)?.into_joint()
}

pub fn load_policy(path: &Path) -> Result<JointPolicy> {
    parse_policy(&fs::read_to_string(path)?)
}

pub fn save_policy(joint: &JointPolicy, path: &Path) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(&PolicyFile::from_joint(joint))?)?;
    Ok(())
}
