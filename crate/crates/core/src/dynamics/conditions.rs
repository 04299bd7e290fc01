//! Checks of the stepsize and temperature hypotheses under which the
//! convergence guarantees hold. Constants that are only known up to an
//! unspecified numeral are reported symbolically, never guessed.

use std::fmt;

use serde::Serialize;

use super::{ell_tau, RunConfig, ScheduleKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Satisfied,
    Violated,
    /// Depends on a constant that has no numerical value.
    Symbolic,
    /// The guarantee does not cover this configuration.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionCheck {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ConditionReport {
    pub checks: Vec<ConditionCheck>,
}

impl ConditionReport {
    pub fn violations(&self) -> impl Iterator<Item = &ConditionCheck> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Violated)
    }

    pub fn find(&self, name: &str) -> Option<&ConditionCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &str, status: CheckStatus, detail: String) {
        self.checks.push(ConditionCheck {
            name: name.to_string(),
            status,
            detail,
        });
    }

    fn check(&mut self, name: &str, ok: bool, detail: String) {
        let status = if ok { CheckStatus::Satisfied } else { CheckStatus::Violated };
        self.push(name, status, detail);
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Satisfied => "ok",
                CheckStatus::Violated => "VIOLATED",
                CheckStatus::Symbolic => "symbolic",
                CheckStatus::NotApplicable => "n/a",
            };
            writeln!(f, "[{tag:>8}] {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Sizes of the game a configuration will run on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GameDims {
    pub n_states: usize,
    pub a_max: usize,
}

/// Evaluates every checkable hypothesis for `config` on a game of the
/// given size. `n_states == 1` with `gamma == 0` is treated as a matrix game.
pub fn check_conditions(config: &RunConfig, dims: GameDims, gamma: f64) -> ConditionReport {
    let mut r = ConditionReport::default();
    let s = &config.schedule;
    let c = s.ratio;
    let a_max = dims.a_max.max(2) as f64;
    let tau = config.tau;

    r.check(
        "ratio-range",
        c > 0.0 && c < 1.0,
        format!("c_ab = {c} must lie in (0, 1)"),
    );
    let (a0, b0) = (s.alpha_k(0), s.beta_k(0));
    r.check(
        "beta-simplex",
        b0 <= 1.0,
        format!("max_k beta_k = beta_0 = {b0} <= 1 keeps policies in the simplex"),
    );
    r.check(
        "alpha-convex",
        a0 <= 1.0,
        format!("max_k alpha_k = alpha_0 = {a0} <= 1 keeps q inside 1/(1-gamma)"),
    );

    let matrix = dims.n_states == 1 && gamma == 0.0;
    let ell = ell_tau(tau, gamma, dims.a_max.max(2)).unwrap_or(f64::NAN);

    if matrix {
        let rhs = ell.powi(3) * tau.powi(3) / (a_max * a_max);
        r.push(
            "matrix-ratio-bound",
            CheckStatus::Symbolic,
            format!(
                "c_ab <= l_tau^3 tau^3 / (c0 A_max^2) with c0 unspecified; \
                 l_tau^3 tau^3 / A_max^2 = {rhs:.6e}, so this needs c0 <= {:.6e}",
                rhs / c
            ),
        );
        match s.kind {
            ScheduleKind::Constant => {}
            ScheduleKind::Linear => {
                r.check(
                    "matrix-linear-alpha",
                    s.alpha > 2.0 / c,
                    format!("alpha = {} > 2/c_ab = {}", s.alpha, 2.0 / c),
                );
                r.check(
                    "matrix-linear-h",
                    s.h > s.alpha,
                    format!("h = {} > alpha = {}", s.h, s.alpha),
                );
            }
            ScheduleKind::Polynomial => {
                let need = (4.0 * s.z / (c * s.alpha)).powf(1.0 / (1.0 - s.z));
                r.check(
                    "matrix-poly-h",
                    s.h >= need,
                    format!("h = {} >= (4z/(c_ab alpha))^(1/(1-z)) = {need}", s.h),
                );
            }
        }
    } else {
        let rhs = ell * ell * tau.powi(3) * (1.0 - gamma).powi(2)
            / (512.0 * dims.n_states as f64 * a_max * a_max);
        r.push(
            "markov-ratio-bound",
            CheckStatus::Symbolic,
            format!(
                "c_ab <= c_tau l_tau^2 tau^3 (1-gamma)^2 / (512 |S| A_max^2), c_tau = mu_tau l_tau \
                 depends on the unknown uniform stationary mass mu_tau; \
                 l_tau^2 tau^3 (1-gamma)^2 / (512 |S| A_max^2) = {rhs:.6e}"
            ),
        );
        r.push(
            "markov-mixing-window",
            CheckStatus::Symbolic,
            "alpha_{k-z_k,k-1} <= 1/4 for all k >= z_k, where z_k is the uniform \
             beta_k-mixing time over policies with margin l_tau"
                .to_string(),
        );
        match s.kind {
            ScheduleKind::Constant => {}
            ScheduleKind::Linear => {
                r.check(
                    "markov-linear-beta",
                    c * s.alpha > 2.0,
                    format!("beta = c_ab alpha = {} > 2", c * s.alpha),
                );
            }
            ScheduleKind::Polynomial => r.push(
                "markov-poly",
                CheckStatus::NotApplicable,
                "Markov-game guarantees cover constant and alpha/(k+h) stepsizes only".to_string(),
            ),
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::StepsizeSchedule;

    fn cfg(schedule: StepsizeSchedule, tau: f64) -> RunConfig {
        RunConfig {
            tau,
            schedule,
            strict_theory: true,
            ..RunConfig::matrix(100)
        }
    }

    const MATRIX: GameDims = GameDims { n_states: 1, a_max: 2 };

    #[test]
    fn constant_schedule_is_ok_but_ratio_symbolic() {
        let rep = check_conditions(&cfg(StepsizeSchedule::constant(0.5, 0.9), 0.01), MATRIX, 0.0);
        assert_eq!(rep.find("beta-simplex").unwrap().status, CheckStatus::Satisfied);
        assert_eq!(rep.find("matrix-ratio-bound").unwrap().status, CheckStatus::Symbolic);
        assert_eq!(rep.violations().count(), 0);
    }

    #[test]
    fn linear_alpha_too_small() {
        let rep = check_conditions(&cfg(StepsizeSchedule::linear(3.0, 10.0, 0.5), 0.1), MATRIX, 0.0);
        assert_eq!(rep.find("matrix-linear-alpha").unwrap().status, CheckStatus::Violated);
    }

    #[test]
    fn polynomial_h_too_small() {
        // (4·0.5/(0.5·0.5))^2 = 64.
        let rep = check_conditions(
            &cfg(StepsizeSchedule::polynomial(0.5, 10.0, 0.5, 0.5), 0.1),
            MATRIX,
            0.0,
        );
        let chk = rep.find("matrix-poly-h").unwrap();
        assert_eq!(chk.status, CheckStatus::Violated);
        assert!(chk.detail.contains("64"), "{}", chk.detail);
    }

    #[test]
    fn markov_checks() {
        let dims = GameDims { n_states: 3, a_max: 2 };
        let rep = check_conditions(&cfg(StepsizeSchedule::linear(3.0, 10.0, 0.5), 0.1), dims, 0.6);
        assert_eq!(rep.find("markov-linear-beta").unwrap().status, CheckStatus::Violated);
        assert_eq!(rep.find("markov-mixing-window").unwrap().status, CheckStatus::Symbolic);
    }
}
