use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScheduleKind {
    Constant,
    Linear,
    Polynomial,
}

/// Single-timescale stepsizes: `α_k = α / (k + h)^z` and `β_k = c·α_k`,
/// with `z = 0` for the constant kind and `z = 1` for the linear kind.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepsizeSchedule {
    pub kind: ScheduleKind,
    pub alpha: f64,
    pub h: f64,
    pub z: f64,
    /// `c_{α,β}`.
    pub ratio: f64,
}

impl StepsizeSchedule {
    pub fn constant(alpha: f64, ratio: f64) -> Self {
        StepsizeSchedule {
            kind: ScheduleKind::Constant,
            alpha,
            h: 0.0,
            z: 0.0,
            ratio,
        }
    }

    pub fn linear(alpha: f64, h: f64, ratio: f64) -> Self {
        StepsizeSchedule {
            kind: ScheduleKind::Linear,
            alpha,
            h,
            z: 1.0,
            ratio,
        }
    }

    pub fn polynomial(alpha: f64, h: f64, z: f64, ratio: f64) -> Self {
        StepsizeSchedule {
            kind: ScheduleKind::Polynomial,
            alpha,
            h,
            z,
            ratio,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Schedule(msg));
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            return bad(format!("alpha must be positive, got {}", self.alpha));
        }
        if !(self.ratio > 0.0 && self.ratio < 1.0) {
            return bad(format!("ratio c_ab must lie in (0, 1), got {}", self.ratio));
        }
        match self.kind {
            ScheduleKind::Constant => {
                if self.alpha > 1.0 {
                    return bad(format!("constant alpha = {} exceeds 1", self.alpha));
                }
            }
            ScheduleKind::Linear | ScheduleKind::Polynomial => {
                if !(self.h > 0.0) || !self.h.is_finite() {
                    return bad(format!("h must be positive for decaying stepsizes, got {}", self.h));
                }
                if self.kind == ScheduleKind::Polynomial && !(self.z > 0.0 && self.z < 1.0) {
                    return bad(format!("polynomial exponent z must lie in (0, 1), got {}", self.z));
                }
            }
        }
        Ok(())
    }

    /// `α_k`.
    #[inline]
    pub fn alpha_k(&self, k: u64) -> f64 {
        match self.kind {
            ScheduleKind::Constant => self.alpha,
            ScheduleKind::Linear => self.alpha / (k as f64 + self.h),
            ScheduleKind::Polynomial => self.alpha / (k as f64 + self.h).powf(self.z),
        }
    }

    /// `β_k = c_{α,β} α_k`.
    #[inline]
    pub fn beta_k(&self, k: u64) -> f64 {
        self.ratio * self.alpha_k(k)
    }

    /// Both stepsizes at `k`, rejecting values that would leave the simplex
    /// (`β_k > 1`) or break the convex q-update (`α_k > 1`).
    pub fn at(&self, k: u64) -> Result<(f64, f64)> {
        let (a, b) = (self.alpha_k(k), self.beta_k(k));
        if b > 1.0 {
            return Err(Error::Schedule(format!("beta_{k} = {b} > 1 would leave the simplex")));
        }
        if a > 1.0 {
            return Err(Error::Schedule(format!(
                "alpha_{k} = {a} > 1 would overshoot the q-target"
            )));
        }
        Ok((a, b))
    }
}
