//! Dense tableau simplex for small zero-sum matrix games.
//!
//! The payoff matrix is shifted to be strictly positive, after which the
//! column player's problem becomes `max 1ᵀy  s.t.  X'y ≤ 1, y ≥ 0`. The
//! origin is feasible so no phase one is needed, and the row player's
//! optimal strategy is read off the reduced costs of the slack columns.
//! Bland's rule picks both the entering and the leaving variable.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-12;
const MAX_PIVOTS: usize = 100_000;

/// Value and optimal mixed strategies of a matrix game, row player maximizing.
#[derive(Clone, Debug, PartialEq)]
pub struct GameSolution {
    pub value: f64,
    /// Row player's maximin strategy.
    pub maximin: Vec<f64>,
    /// Column player's minimax strategy.
    pub minimax: Vec<f64>,
}

pub(crate) fn solve(x: &DMatrix<f64>) -> Result<GameSolution> {
    let (m, n) = (x.nrows(), x.ncols());
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("matrix game must be at least 1x1".into()));
    }
    if let Some(bad) = x.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "matrix game contains non-finite entry {bad}"
        )));
    }
    let min = x.iter().copied().fold(f64::INFINITY, f64::min);
    let shift = 1.0 - min;

    let width = n + m + 1;
    let rhs = width - 1;
    let mut tab = vec![0.0; (m + 1) * width];
    for i in 0..m {
        for j in 0..n {
            tab[i * width + j] = x[(i, j)] + shift;
        }
        tab[i * width + n + i] = 1.0;
        tab[i * width + rhs] = 1.0;
    }
    let obj = m * width;
    for j in 0..n {
        tab[obj + j] = -1.0;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    let mut pivots = 0;
    loop {
        let Some(enter) = (0..n + m).find(|&j| tab[obj + j] < -PIVOT_EPS) else {
            break;
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let a = tab[i * width + enter];
            if a > PIVOT_EPS {
                let ratio = tab[i * width + rhs] / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((best, r)) => {
                        let tie = (ratio - r).abs() <= PIVOT_EPS * r.abs().max(1.0);
                        if ratio < r && !tie || tie && basis[i] < basis[best] {
                            Some((i, ratio))
                        } else {
                            Some((best, r))
                        }
                    }
                };
            }
        }
        let Some((row, _)) = leave else {
            return Err(Error::Numerical(
                "simplex reported an unbounded direction on a strictly positive game".into(),
            ));
        };
        pivot(&mut tab, width, m + 1, row, enter);
        basis[row] = enter;
        pivots += 1;
        if pivots > MAX_PIVOTS {
            return Err(Error::Numerical(format!(
                "simplex did not terminate within {MAX_PIVOTS} pivots"
            )));
        }
    }

    let w = tab[obj + rhs];
    if !(w > 0.0) || !w.is_finite() {
        return Err(Error::Numerical(format!("simplex optimum {w} is not positive")));
    }
    let mut minimax = vec![0.0; n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            minimax[b] = tab[i * width + rhs].max(0.0);
        }
    }
    let mut maximin: Vec<f64> = (0..m).map(|i| tab[obj + n + i].max(0.0)).collect();
    normalize(&mut minimax)?;
    normalize(&mut maximin)?;
    Ok(GameSolution {
        value: 1.0 / w - shift,
        maximin,
        minimax,
    })
}

fn pivot(tab: &mut [f64], width: usize, rows: usize, row: usize, col: usize) {
    let p = tab[row * width + col];
    for j in 0..width {
        tab[row * width + j] /= p;
    }
    tab[row * width + col] = 1.0;
    for i in 0..rows {
        if i == row {
            continue;
        }
        let factor = tab[i * width + col];
        if factor == 0.0 {
            continue;
        }
        for j in 0..width {
            tab[i * width + j] -= factor * tab[row * width + j];
        }
        tab[i * width + col] = 0.0;
    }
}

fn normalize(v: &mut [f64]) -> Result<()> {
    let total: f64 = v.iter().sum();
    if !(total > 0.0) {
        return Err(Error::Numerical("simplex produced an empty strategy".into()));
    }
    v.iter_mut().for_each(|x| *x /= total);
    Ok(())
}
