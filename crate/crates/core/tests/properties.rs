use dsbr::chain::{
    induce_chain, mixing_time, primitivity_index, stationary_distribution, tv_distance, tv_profile,
    uniform_mixing_bound,
};
use dsbr::diagnostics::lyapunov_v;
use dsbr::game::{apply_t, marginal_payoff, softmax, JointPolicy, MarkovGame, MatrixGame, Player, Policy, ValueFunction};
use dsbr::harness::{generate_game, random_policy, GeneratorSpec};
use dsbr::oracles::{bellman_minimax, matrix_game_value, matrix_nash_gap};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = DMatrix<f64>> {
    prop::collection::vec(-1.0..=1.0f64, rows * cols).prop_map(move |v| DMatrix::from_row_slice(rows, cols, &v))
}

fn any_matrix(max: usize) -> impl Strategy<Value = DMatrix<f64>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| matrix(r, c))
}

fn distribution(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..1.0f64, n).prop_map(|v| {
        let s: f64 = v.iter().sum::<f64>() + 1e-9;
        let mut out: Vec<f64> = v.iter().map(|x| (x + 1e-9 / v.len() as f64) / s).collect();
        let r = 1.0 - out.iter().sum::<f64>();
        out[0] += r;
        out
    })
}

fn markov(max_states: usize) -> impl Strategy<Value = MarkovGame> {
    (1..=max_states, 1..=3usize, 1..=3usize, 0.0..0.95f64, 0.05..=1.0f64, any::<u64>()).prop_map(
        |(n, m, k, gamma, eps_p, seed)| {
            let spec = GeneratorSpec::RandomMarkov {
                n_states: n,
                n_actions: (m, k),
                gamma,
                eps_p,
            };
            generate_game(&spec, seed).unwrap().to_markov()
        },
    )
}

/// Value of a 2×2 game: the pure saddle value if one exists, else the
/// mixed closed form.
fn closed_form_2x2(x: &DMatrix<f64>) -> f64 {
    let (a, b, c, d) = (x[(0, 0)], x[(0, 1)], x[(1, 0)], x[(1, 1)]);
    let lower = f64::max(a.min(b), c.min(d));
    let upper = f64::min(a.max(c), b.max(d));
    if (lower - upper).abs() < 1e-15 {
        lower
    } else {
        (a * d - b * c) / (a + d - b - c)
    }
}

/// Value by enumerating equal-size supports and solving the indifference
/// conditions; valid for nondegenerate games.
fn support_enumeration(x: &DMatrix<f64>) -> Option<f64> {
    let (m, n) = x.shape();
    let subsets = |k: usize| (1u32..1 << k).map(move |mask| (0..k).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>());
    for rows in subsets(m) {
        for cols in subsets(n).filter(|c| c.len() == rows.len()) {
            let s = rows.len();
            // Unknowns (weights, value); indifference plus normalization.
            let mut lhs_row = DMatrix::zeros(s + 1, s + 1);
            let mut lhs_col = DMatrix::zeros(s + 1, s + 1);
            for (jj, &j) in cols.iter().enumerate() {
                for (ii, &i) in rows.iter().enumerate() {
                    lhs_row[(jj, ii)] = x[(i, j)];
                    lhs_col[(ii, jj)] = x[(i, j)];
                }
            }
            for e in 0..s {
                lhs_row[(e, s)] = -1.0;
                lhs_col[(e, s)] = -1.0;
                lhs_row[(s, e)] = 1.0;
                lhs_col[(s, e)] = 1.0;
            }
            let mut rhs = DVector::zeros(s + 1);
            rhs[s] = 1.0;
            let (Some(mu), Some(nu)) = (lhs_row.lu().solve(&rhs), lhs_col.lu().solve(&rhs)) else {
                continue;
            };
            let v = mu[s];
            if (v - nu[s]).abs() > 1e-9 || (0..s).any(|e| mu[e] < -1e-12 || nu[e] < -1e-12) {
                continue;
            }
            let mut full_mu = vec![0.0; m];
            let mut full_nu = vec![0.0; n];
            for e in 0..s {
                full_mu[rows[e]] = mu[e];
                full_nu[cols[e]] = nu[e];
            }
            let col_ok = (0..n).all(|j| (0..m).map(|i| full_mu[i] * x[(i, j)]).sum::<f64>() >= v - 1e-9);
            let row_ok = (0..m).all(|i| (0..n).map(|j| x[(i, j)] * full_nu[j]).sum::<f64>() <= v + 1e-9);
            if col_ok && row_ok {
                return Some(v);
            }
        }
    }
    None
}

fn l2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn softmax_is_a_distribution_and_shift_invariant(
        q in prop::collection::vec(-5.0..5.0f64, 1..6),
        tau in 0.01..10.0f64,
        shift in -100.0..100.0f64,
    ) {
        let p = softmax(&q, tau).unwrap();
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(p.iter().all(|&x| x > 0.0));
        let shifted: Vec<f64> = q.iter().map(|x| x + shift).collect();
        let ps = softmax(&shifted, tau).unwrap();
        for (a, b) in p.iter().zip(&ps) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn softmax_is_lipschitz(
        pair in (1..6usize).prop_flat_map(|n| (prop::collection::vec(-3.0..3.0f64, n), prop::collection::vec(-3.0..3.0f64, n))),
        tau in 0.05..5.0f64,
    ) {
        let (q1, q2) = pair;
        let d = l2(&softmax(&q1, tau).unwrap(), &softmax(&q2, tau).unwrap());
        prop_assert!(d <= l2(&q1, &q2) / tau + 1e-12);
    }

    #[test]
    fn apply_t_is_affine_in_v(g in markov(3), w in 0.0..=1.0f64, seed in any::<u64>()) {
        let n = g.n_states();
        let b = 1.0 / (1.0 - g.gamma());
        let v1 = ValueFunction((0..n).map(|s| ((seed >> s) % 7) as f64 / 7.0 * b).collect());
        let v2 = ValueFunction((0..n).map(|s| -(((seed >> (s + 3)) % 5) as f64) / 5.0 * b).collect());
        let mix = ValueFunction(v1.0.iter().zip(&v2.0).map(|(a, c)| w * a + (1.0 - w) * c).collect());
        for p in Player::BOTH {
            let (t1, t2, tm) = (apply_t(&g, &v1, p), apply_t(&g, &v2, p), apply_t(&g, &mix, p));
            for s in 0..n {
                let expect = &t1[s] * w + &t2[s] * (1.0 - w);
                prop_assert!((&tm[s] - expect).amax() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_sum_consistency(g in markov(3), seed in any::<u64>()) {
        let n = g.n_states();
        let v = ValueFunction((0..n).map(|s| ((seed >> (2 * s)) % 9) as f64 / 9.0 - 0.5).collect());
        let neg = ValueFunction(v.0.iter().map(|x| -x).collect());
        let t1 = apply_t(&g, &v, Player::One);
        let t2 = apply_t(&g, &neg, Player::Two);
        for s in 0..n {
            prop_assert!((&t2[s] + t1[s].transpose()).amax() < 1e-12);
        }
    }

    #[test]
    fn marginal_payoffs_are_zero_sum(x in any_matrix(4), seed in any::<u64>()) {
        let g = MatrixGame::new(x.clone()).unwrap();
        let (m, n) = g.n_actions();
        let mu = random_policy(1, m, seed).unwrap();
        let nu = random_policy(1, n, seed ^ 1).unwrap();
        let u1: f64 = marginal_payoff(&g, nu.row(0), Player::One).unwrap().iter().zip(mu.row(0)).map(|(a, b)| a * b).sum();
        let u2: f64 = marginal_payoff(&g, mu.row(0), Player::Two).unwrap().iter().zip(nu.row(0)).map(|(a, b)| a * b).sum();
        prop_assert!((u1 + u2).abs() < 1e-12);
    }

    #[test]
    fn lp_matches_2x2_closed_form(x in matrix(2, 2)) {
        prop_assert!((matrix_game_value(&x).unwrap().value - closed_form_2x2(&x)).abs() < 1e-9);
    }

    #[test]
    fn lp_matches_support_enumeration(x in (1..=4usize, 1..=4usize).prop_flat_map(|(r, c)| matrix(r, c))) {
        if let Some(v) = support_enumeration(&x) {
            prop_assert!((matrix_game_value(&x).unwrap().value - v).abs() < 1e-9);
        }
    }

    #[test]
    fn lp_strategies_certify_the_value(x in any_matrix(6)) {
        let sol = matrix_game_value(&x).unwrap();
        let (m, n) = x.shape();
        let lower = (0..n).map(|j| (0..m).map(|i| sol.maximin[i] * x[(i, j)]).sum::<f64>()).fold(f64::INFINITY, f64::min);
        let upper = (0..m).map(|i| (0..n).map(|j| x[(i, j)] * sol.minimax[j]).sum::<f64>()).fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(upper - lower <= 1e-9);
        prop_assert!(lower - 1e-9 <= sol.value && sol.value <= upper + 1e-9);
    }

    #[test]
    fn val_is_monotone_and_shift_equivariant(x in any_matrix(5), c in -2.0..2.0f64, bump in 0.0..0.5f64) {
        let v = matrix_game_value(&x).unwrap().value;
        let shifted = x.map(|e| e + c);
        prop_assert!((matrix_game_value(&shifted).unwrap().value - (v + c)).abs() < 1e-9);
        let bigger = x.map(|e| e + bump * e.abs());
        prop_assert!(matrix_game_value(&bigger).unwrap().value >= v - 1e-9);
    }

    #[test]
    fn bellman_is_a_contraction(g in markov(3), seed in any::<u64>()) {
        let n = g.n_states();
        let b = 1.0 / (1.0 - g.gamma());
        let v1 = ValueFunction((0..n).map(|s| (((seed >> s) % 11) as f64 / 5.5 - 1.0) * b).collect());
        let v2 = ValueFunction((0..n).map(|s| (((seed >> (s + 7)) % 13) as f64 / 6.5 - 1.0) * b).collect());
        for p in Player::BOTH {
            let d = bellman_minimax(&g, &v1, p).unwrap().sup_distance(&bellman_minimax(&g, &v2, p).unwrap());
            prop_assert!(d <= g.gamma() * v1.sup_distance(&v2) + 1e-10);
        }
    }

    #[test]
    fn tv_is_a_metric_on_the_simplex(
        (p, q, r) in (1..6usize).prop_flat_map(|n| (distribution(n), distribution(n), distribution(n)))
    ) {
        let (pq, qp) = (tv_distance(&p, &q), tv_distance(&q, &p));
        prop_assert_eq!(pq, qp);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&pq));
        prop_assert!(tv_distance(&p, &r) <= pq + tv_distance(&q, &r) + 1e-12);
        prop_assert_eq!(tv_distance(&p, &p), 0.0);
    }

    #[test]
    fn lyapunov_sandwich(x in any_matrix(4), tau in 0.001..2.0f64, seed in any::<u64>()) {
        let g = MatrixGame::new(x.clone()).unwrap();
        let (m, n) = g.n_actions();
        let mu = random_policy(1, m, seed).unwrap();
        let nu = random_policy(1, n, seed.wrapping_add(1)).unwrap();
        let (x1, x2) = (g.payoff_for(Player::One), g.payoff_for(Player::Two));
        let v = lyapunov_v(&x1, &x2, mu.row(0), nu.row(0), tau).unwrap();
        let gap = matrix_nash_gap(&g, mu.row(0), nu.row(0)).unwrap();
        prop_assert!(v >= -1e-12);
        prop_assert!(gap <= v + 2.0 * tau * (g.a_max() as f64).ln() + 1e-10);
        let br1 = softmax((&x1 * DVector::from_column_slice(nu.row(0))).as_slice(), tau).unwrap();
        let br2 = softmax((&x2 * DVector::from_column_slice(mu.row(0))).as_slice(), tau).unwrap();
        let growth = tau / 2.0 * (l2(&br1, mu.row(0)).powi(2) + l2(&br2, nu.row(0)).powi(2));
        prop_assert!(v >= growth - 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn stationary_mass_is_positive_at_positive_margin(g in markov(5), seed in any::<u64>()) {
        let (m, n) = g.n_actions();
        let joint = JointPolicy::new(
            random_policy(g.n_states(), m, seed).unwrap(),
            random_policy(g.n_states(), n, seed ^ 7).unwrap(),
        );
        let mu = stationary_distribution(&induce_chain(&g, &joint).unwrap()).unwrap();
        prop_assert!(mu.iter().all(|&x| x > 0.0));
        prop_assert!((mu.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tv_to_stationarity_is_nonincreasing(g in markov(4), seed in any::<u64>()) {
        let (m, n) = g.n_actions();
        let joint = JointPolicy::new(
            random_policy(g.n_states(), m, seed).unwrap(),
            random_policy(g.n_states(), n, seed ^ 3).unwrap(),
        );
        let profile = tv_profile(&induce_chain(&g, &joint).unwrap(), 40).unwrap();
        for w in profile.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-12);
        }
    }

    #[test]
    fn stationary_map_has_a_stable_lipschitz_ratio(g in markov(4), seed in any::<u64>(), step in 1e-4..1e-2f64) {
        let (m, n) = g.n_actions();
        let mix = |p: &Policy, q: &Policy| {
            let rows: Vec<Vec<f64>> = (0..p.n_states())
                .map(|s| p.row(s).iter().zip(q.row(s)).map(|(a, b)| (1.0 - step) * a + step * b).collect())
                .collect();
            Policy::from_rows(&rows).unwrap()
        };
        let (a1, a2) = (random_policy(g.n_states(), m, seed).unwrap(), random_policy(g.n_states(), n, seed ^ 5).unwrap());
        let (b1, b2) = (random_policy(g.n_states(), m, seed ^ 9).unwrap(), random_policy(g.n_states(), n, seed ^ 11).unwrap());
        let p = JointPolicy::new(a1.clone(), a2.clone());
        let q = JointPolicy::new(mix(&a1, &b1), mix(&a2, &b2));
        let dist = a1.sup_distance(&q.player1).max(a2.sup_distance(&q.player2));
        prop_assume!(dist > 0.0);
        let mu_p = stationary_distribution(&induce_chain(&g, &p).unwrap()).unwrap();
        let mu_q = stationary_distribution(&induce_chain(&g, &q).unwrap()).unwrap();
        let dmu = mu_p.iter().zip(&mu_q).fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs()));
        let ratio = dmu / dist;
        prop_assert!(ratio.is_finite() && ratio < 1e3, "ratio {}", ratio);
    }

    #[test]
    fn uniform_mixing_bound_dominates(g in markov(4), seed in any::<u64>(), eta in 0.01..0.3f64) {
        let (m, n) = g.n_actions();
        let base = induce_chain(&g, &JointPolicy::uniform(g.n_states(), (m, n))).unwrap();
        let t_b = mixing_time(&base, eta).unwrap();
        let mu_b = stationary_distribution(&base).unwrap();
        let r_b = primitivity_index(&base).unwrap() as u32;
        let joint = JointPolicy::new(
            random_policy(g.n_states(), m, seed).unwrap(),
            random_policy(g.n_states(), n, seed ^ 13).unwrap(),
        );
        // Margins relative to the uniform baseline policy.
        let d1 = joint.player1.min_entry() * m as f64;
        let d2 = joint.player2.min_entry() * n as f64;
        prop_assume!(d1 > 1e-3 && d2 > 1e-3);
        let bound = uniform_mixing_bound(t_b, d1.min(1.0), d2.min(1.0), mu_b.iter().cloned().fold(1.0, f64::min), r_b).unwrap();
        let t = mixing_time(&induce_chain(&g, &joint).unwrap(), eta).unwrap();
        prop_assert!(t as f64 <= bound.max(1.0), "t = {}, bound = {}", t, bound);
    }
}
