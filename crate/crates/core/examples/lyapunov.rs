// The regularized gap V_X against the Nash gap, and term-by-term bound
// evaluation with caller-supplied constants.

use dsbr::diagnostics::{lyapunov_v, theorem_bound, BoundConstants, BoundKind, BoundParams};
use dsbr::game::{MatrixGame, Player};
use dsbr::oracles::matrix_nash_gap;

pub fn run_example() -> dsbr::Result<f64> {
    let g = MatrixGame::matching_pennies();
    let (x1, x2) = (g.payoff_for(Player::One), g.payoff_for(Player::Two));
    let (mu, nu) = ([0.8, 0.2], [0.3, 0.7]);
    let gap = matrix_nash_gap(&g, &mu, &nu)?;
    for tau in [1.0, 0.1, 0.01] {
        let v = lyapunov_v(&x1, &x2, &mu, &nu, tau)?;
        println!("tau {tau:<4}  V = {v:.4}  gap = {gap:.4}  V + 2 tau log 2 = {:.4}", v + 2.0 * tau * 2f64.ln());
    }

    let params = BoundParams {
        alpha: 0.1,
        h: 0.0,
        z: 0.0,
        ratio: 0.5,
        k: 100.0,
        t: 1.0,
        tau: 0.05,
        a_max: 2,
        n_states: 1,
        gamma: 0.0,
    };
    let constants = BoundConstants { c1: Some(1.0), ..Default::default() };
    let bound = theorem_bound(BoundKind::Thm1Constant, &params, &constants)?;
    for t in &bound.terms {
        println!("{:<17} {:.4}", t.name, t.value);
    }
    println!("total             {:.4}", bound.total);
    if let Err(e) = theorem_bound(BoundKind::Thm2, &params, &constants) {
        println!("Markov bound: {e}");
    }
    Ok(bound.total)
}

#[allow(dead_code)]
fn main() -> dsbr::Result<()> {
    run_example().map(|_| ())
}
