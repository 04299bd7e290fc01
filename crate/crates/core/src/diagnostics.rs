//! Quantities logged during runs: the entropy-regularized gap `V_X`, the
//! composite Lyapunov terms `L_v`, `L_sum`, `L_π`, `L_q`, and evaluators for
//! the right-hand sides of the finite-sample bounds.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::dynamics::LearnerState;
use crate::error::{invalid, Error, Result};
use crate::game::{
    apply_t, dot, entropy_unchecked, mat_vec, marginal_unchecked, tau_logsumexp,
    validate_distribution, JointPolicy, MarkovGame, MatrixGame, Player, ValueFunction,
};
use crate::oracles::markov_nash_gap;

/// Snapshot of one checkpoint. Field order is the CSV column order.
///
/// `l_v` and `l_sum` are empty for matrix-game runs, which carry no
/// v-functions. `smoothing_bias` is empty for Markov runs unless a value
/// for its constant was supplied.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRecord {
    pub outer_t: u64,
    pub inner_k: u64,
    pub nash_gap: f64,
    pub l_v: Option<f64>,
    pub l_sum: Option<f64>,
    pub l_pi: f64,
    pub l_q: f64,
    pub smoothing_bias: Option<f64>,
}

/// CSV header matching [`DiagnosticsRecord`].
pub const CSV_COLUMNS: [&str; 8] = [
    "outer_t",
    "inner_k",
    "nash_gap",
    "l_v",
    "l_sum",
    "l_pi",
    "l_q",
    "smoothing_bias",
];

/// `V_X(μ¹, μ²) = Σ_i max_{μ̂} {(μ̂ − μ^i)ᵀ X_i μ^{-i} + τν(μ̂) − τν(μ^i)}`.
///
/// `x1` is `|A¹| × |A²|` and `x2` is `|A²| × |A¹|`. The inner maximum is
/// attained at `σ_τ(X_i μ^{-i})`, which gives the log-sum-exp closed form.
pub fn lyapunov_v(x1: &DMatrix<f64>, x2: &DMatrix<f64>, mu1: &[f64], mu2: &[f64], tau: f64) -> Result<f64> {
    if !(tau > 0.0) {
        return invalid(format!("tau must be positive, got {tau}"));
    }
    if x1.shape() != (mu1.len(), mu2.len()) || x2.shape() != (mu2.len(), mu1.len()) {
        return invalid(format!(
            "shapes {:?} and {:?} do not match policies of length {} and {}",
            x1.shape(),
            x2.shape(),
            mu1.len(),
            mu2.len()
        ));
    }
    validate_distribution(mu1)?;
    validate_distribution(mu2)?;
    Ok(lyapunov_unchecked(x1, x2, mu1, mu2, tau))
}

pub(crate) fn lyapunov_unchecked(x1: &DMatrix<f64>, x2: &DMatrix<f64>, mu1: &[f64], mu2: &[f64], tau: f64) -> f64 {
    smoothed_regret(&mat_vec(x1, mu2), mu1, tau) + smoothed_regret(&mat_vec(x2, mu1), mu2, tau)
}

fn smoothed_regret(y: &[f64], mu: &[f64], tau: f64) -> f64 {
    tau_logsumexp(y, tau) - dot(mu, y) - tau * entropy_unchecked(mu)
}

/// Record for a matrix-game run, using `X_i = R^i` in `L_π` and the exact
/// marginal payoff `R^i π^{-i}` as the q-target.
pub fn matrix_record(game: &MatrixGame, learners: &[LearnerState; 2], tau: f64, k: u64) -> DiagnosticsRecord {
    let pi1 = learners[0].policy().row(0);
    let pi2 = learners[1].policy().row(0);
    let nash_gap = crate::oracles::matrix_nash_gap(game, pi1, pi2).unwrap_or(f64::NAN);
    let l_pi = lyapunov_unchecked(
        &game.payoff_for(Player::One),
        &game.payoff_for(Player::Two),
        pi1,
        pi2,
        tau,
    );
    let l_q = learners
        .iter()
        .map(|l| {
            let opp = learners[l.player().opponent().index()].policy().row(0);
            sq_dist(l.q().row(0), &marginal_unchecked(game, opp, l.player()))
        })
        .sum();
    DiagnosticsRecord {
        outer_t: 0,
        inner_k: k,
        nash_gap,
        l_v: None,
        l_sum: None,
        l_pi,
        l_q,
        smoothing_bias: Some(2.0 * tau * (game.a_max() as f64).ln()),
    }
}

/// Run-level inputs shared by every Markov-game record.
#[derive(Clone, Copy, Debug)]
pub struct RecordContext<'a> {
    /// `[v_*¹, v_*²]`, computed once per run.
    pub v_star: &'a [ValueFunction; 2],
    pub p_o: &'a [f64],
    pub tau: f64,
    pub tol: f64,
    pub smoothing_constant: Option<f64>,
}

/// Record for a Markov-game run at position `(t, k)`.
pub fn compute_record(
    game: &MarkovGame,
    learners: &[LearnerState; 2],
    ctx: &RecordContext<'_>,
    outer_t: u64,
    inner_k: u64,
) -> Result<DiagnosticsRecord> {
    let joint = JointPolicy::new(learners[0].policy().clone(), learners[1].policy().clone());
    let nash_gap = markov_nash_gap(game, &joint, ctx.p_o, ctx.tol)?;
    let (v1, v2) = (learners[0].v(), learners[1].v());
    let l_v = v1.sup_distance(&ctx.v_star[0]) + v2.sup_distance(&ctx.v_star[1]);
    let l_sum = v1
        .0
        .iter()
        .zip(&v2.0)
        .fold(0.0, |m, (a, b)| f64::max(m, (a + b).abs()));
    let t1 = apply_t(game, v1, Player::One);
    let t2 = apply_t(game, v2, Player::Two);
    let mut l_pi = 0.0;
    let mut l_q = 0.0;
    for s in 0..game.n_states() {
        let (p1, p2) = (joint.player1.row(s), joint.player2.row(s));
        l_pi += lyapunov_unchecked(&t1[s], &t2[s], p1, p2, ctx.tau);
        l_q += sq_dist(learners[0].q().row(s), &mat_vec(&t1[s], p2));
        l_q += sq_dist(learners[1].q().row(s), &mat_vec(&t2[s], p1));
    }
    let horizon = (1.0 - game.gamma()).powi(2);
    let smoothing_bias = ctx
        .smoothing_constant
        .map(|c| c * ctx.tau * (game.a_max() as f64).ln() / horizon);
    Ok(DiagnosticsRecord {
        outer_t,
        inner_k,
        nash_gap,
        l_v: Some(l_v),
        l_sum: Some(l_sum),
        l_pi,
        l_q,
        smoothing_bias,
    })
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Which finite-sample bound to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// Matrix game, constant stepsize.
    Thm1Constant,
    /// Matrix game, `α/(k+h)`.
    Thm1Linear,
    /// Matrix game, `α/(k+h)^z`.
    Thm1Poly,
    /// Markov game, constant stepsize.
    Thm2,
    /// Markov game, `α/(k+h)`.
    Thm3,
}

/// Problem and algorithm parameters entering a bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    pub alpha: f64,
    pub h: f64,
    pub z: f64,
    pub ratio: f64,
    pub k: f64,
    pub t: f64,
    pub tau: f64,
    pub a_max: usize,
    pub n_states: usize,
    pub gamma: f64,
}

/// The numerical constants of the bounds. None has a known value; each
/// bound needs the caller to supply the ones it uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundConstants {
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub c3: Option<f64>,
    pub c1_hat: Option<f64>,
    pub c2_hat: Option<f64>,
    pub c3_hat: Option<f64>,
    pub c4_hat: Option<f64>,
    pub c1_prime: Option<f64>,
    pub c2_prime: Option<f64>,
    pub c3_prime: Option<f64>,
    /// `L̂_τ`.
    pub l_hat_tau: Option<f64>,
    /// Mixing threshold `z_β` of the constant-stepsize bound.
    pub z_beta: Option<f64>,
    /// `z_K` of the diminishing-stepsize bound.
    pub z_k: Option<f64>,
    /// Threshold `k₀` of the diminishing-stepsize bound.
    pub k0: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundTerm {
    pub name: &'static str,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundEvaluation {
    pub total: f64,
    pub terms: Vec<BoundTerm>,
}

fn need(c: Option<f64>, name: &'static str) -> Result<f64> {
    c.ok_or(Error::MissingConstant(name))
}

/// Evaluates the right-hand side of a bound term by term.
pub fn theorem_bound(which: BoundKind, p: &BoundParams, c: &BoundConstants) -> Result<BoundEvaluation> {
    let a = p.a_max as f64;
    let cab = p.ratio;
    let mut terms = Vec::new();
    let mut term = |name: &'static str, value: f64| terms.push(BoundTerm { name, value });
    match which {
        BoundKind::Thm1Constant => {
            let c1 = need(c.c1, "c1")?;
            term("convergence_bias", 3.0 * (1.0 - cab * p.alpha / 2.0).powf(p.k));
            term("variance", c1 * a.powf(1.5) / cab * p.alpha);
            term("smoothing_bias", 2.0 * p.tau * a.ln());
        }
        BoundKind::Thm1Linear => {
            let c2 = need(c.c2, "c2")?;
            if !(cab * p.alpha > 2.0) {
                return invalid("the linear-stepsize bound needs c_ab * alpha > 2");
            }
            term("convergence_bias", 3.0 * (p.h / (p.k + p.h)).powf(cab * p.alpha / 2.0));
            term(
                "variance",
                c2 * a.powf(1.5) * p.alpha / (cab * p.alpha - 2.0) * p.alpha / (p.k + p.h),
            );
            term("smoothing_bias", 2.0 * p.tau * a.ln());
        }
        BoundKind::Thm1Poly => {
            let c3 = need(c.c3, "c3")?;
            let z = p.z;
            let expo = p.alpha * ((p.k + p.h).powf(1.0 - z) - p.h.powf(1.0 - z)) / (2.0 * cab * (1.0 - z));
            term("convergence_bias", 3.0 * (-expo).exp());
            term("variance", c3 * a.powf(1.5) / cab * p.alpha / (p.k + p.h).powf(z));
            term("smoothing_bias", 2.0 * p.tau * a.ln());
        }
        BoundKind::Thm2 => {
            let (c1, c2, c3, c4) = (
                need(c.c1_hat, "c1_hat")?,
                need(c.c2_hat, "c2_hat")?,
                need(c.c3_hat, "c3_hat")?,
                need(c.c4_hat, "c4_hat")?,
            );
            let l_hat = need(c.l_hat_tau, "l_hat_tau")?;
            let z_beta = need(c.z_beta, "z_beta")?;
            if p.k < z_beta {
                return invalid("the constant-stepsize Markov bound needs K >= z_beta");
            }
            let s = p.n_states as f64;
            let g = 1.0 - p.gamma;
            term(
                "value_iteration_bias",
                c1 * s * a * p.t / (p.tau * g.powi(3)) * ((1.0 + p.gamma) / 2.0).powf(p.t - 1.0),
            );
            term(
                "inner_convergence_bias",
                c2 * (s * a).powf(1.5) * (p.k - z_beta).sqrt() / (p.tau * g.powi(5))
                    * (1.0 - cab * p.alpha / 2.0).powf((p.k - z_beta - 1.0) / 2.0),
            );
            term(
                "inner_variance",
                c3 * s * s * a * a * l_hat / (cab * g.powi(5)) * z_beta * z_beta * p.alpha.sqrt(),
            );
            term("smoothing_bias", c4 * p.tau * a.ln() / g.powi(2));
        }
        BoundKind::Thm3 => {
            let (c1, c2, c3) = (
                need(c.c1_prime, "c1_prime")?,
                need(c.c2_prime, "c2_prime")?,
                need(c.c3_prime, "c3_prime")?,
            );
            let l_hat = need(c.l_hat_tau, "l_hat_tau")?;
            let z_k = need(c.z_k, "z_k")?;
            let k0 = need(c.k0, "k0")?;
            let s = p.n_states as f64;
            let g = 1.0 - p.gamma;
            let alpha_k0 = p.alpha / (k0 + p.h);
            term(
                "value_iteration_bias",
                c1 * s * a * p.t / (p.tau * g.powi(3)) * ((1.0 + p.gamma) / 2.0).powf(p.t - 1.0),
            );
            term(
                "inner_error",
                c2 * s * s * a * a * l_hat / (alpha_k0 * cab * g.powi(5)) * z_k * z_k * p.alpha.sqrt()
                    / (p.k + p.h).sqrt(),
            );
            term("smoothing_bias", c3 * p.tau * a.ln() / g.powi(2));
        }
    }
    let total = terms.iter().map(|t| t.value).sum();
    Ok(BoundEvaluation { total, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::softmax;
    use crate::oracles::matrix_nash_gap;

    fn params() -> BoundParams {
        BoundParams {
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
        }
    }

    #[test]
    fn thm1_constant_value() {
        let c = BoundConstants { c1: Some(1.0), ..Default::default() };
        let b = theorem_bound(BoundKind::Thm1Constant, &params(), &c).unwrap();
        let expect = 3.0 * 0.975f64.powi(100) + 2f64.powf(1.5) / 0.5 * 0.1 + 0.1 * 2f64.ln();
        assert!((b.total - expect).abs() < 1e-12);
        assert!((b.total - 0.8735).abs() < 5e-4, "{}", b.total);
        assert_eq!(b.terms.len(), 3);
    }

    #[test]
    fn thm1_constant_limit_is_smoothing_bias() {
        let c = BoundConstants { c1: Some(1.0), ..Default::default() };
        let p = BoundParams { alpha: 1e-9, k: 1e15, ..params() };
        let b = theorem_bound(BoundKind::Thm1Constant, &p, &c).unwrap();
        assert!((b.total - 0.1 * 2f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn thm1_linear_decreases_in_k() {
        let c = BoundConstants { c2: Some(1.0), ..Default::default() };
        let mut prev = f64::INFINITY;
        for k in [10.0, 100.0, 1e3, 1e4, 1e5] {
            let p = BoundParams { alpha: 5.0, h: 10.0, k, ..params() };
            let b = theorem_bound(BoundKind::Thm1Linear, &p, &c).unwrap().total;
            assert!(b < prev);
            prev = b;
        }
    }

    #[test]
    fn missing_constants_are_reported() {
        let err = theorem_bound(BoundKind::Thm2, &params(), &BoundConstants::default()).unwrap_err();
        assert!(matches!(err, Error::MissingConstant("c1_hat")));
    }

    #[test]
    fn lyapunov_zero_at_smoothed_fixed_point() {
        // Matching pennies: uniform is the smoothed equilibrium for every τ.
        let g = MatrixGame::matching_pennies();
        let (x1, x2) = (g.payoff_for(Player::One), g.payoff_for(Player::Two));
        let v = lyapunov_v(&x1, &x2, &[0.5, 0.5], &[0.5, 0.5], 0.3).unwrap();
        assert!(v.abs() < 1e-15);
        // Constant payoff matrices: σ_τ is uniform regardless of the opponent.
        let c1 = DMatrix::from_element(2, 3, 0.4);
        let c2 = DMatrix::from_element(3, 2, -0.4);
        let u1 = softmax(&[0.4, 0.4], 0.2).unwrap();
        let u2 = softmax(&[0.0; 3], 0.2).unwrap();
        assert!(lyapunov_v(&c1, &c2, &u1, &u2, 0.2).unwrap().abs() < 1e-15);
    }

    #[test]
    fn lyapunov_tends_to_nash_gap() {
        let g = MatrixGame::matching_pennies();
        let (x1, x2) = (g.payoff_for(Player::One), g.payoff_for(Player::Two));
        let ng = matrix_nash_gap(&g, &[1.0, 0.0], &[1.0, 0.0]).unwrap();
        let mut prev = f64::INFINITY;
        for tau in [1e-2, 1e-4, 1e-6] {
            let v = lyapunov_v(&x1, &x2, &[1.0, 0.0], &[1.0, 0.0], tau).unwrap();
            let err = (v - ng).abs();
            assert!(err <= prev && err <= 2.0 * tau * 2f64.ln() + 1e-12);
            prev = err;
        }
    }

    #[test]
    fn lyapunov_rejects_shape_mismatch() {
        let x = DMatrix::zeros(2, 2);
        assert!(lyapunov_v(&x, &x, &[1.0], &[0.5, 0.5], 0.1).is_err());
    }
}
