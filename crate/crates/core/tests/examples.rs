macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(matrix_dynamics, "matrix_dynamics.rs");
example!(markov_dynamics, "markov_dynamics.rs");
example!(rationality, "rationality.rs");
example!(oracles, "oracles.rs");
example!(mixing_time, "mixing_time.rs");
example!(lyapunov, "lyapunov.rs");
example!(conditions, "conditions.rs");
example!(experiment, "experiment.rs");
example!(game_files, "game_files.rs");

#[test]
fn matrix_dynamics_runs() {
    let gap = matrix_dynamics::run_example().unwrap();
    assert!(gap < 0.26, "{gap}");
}

#[test]
fn markov_dynamics_runs() {
    assert!(markov_dynamics::run_example().unwrap() < 0.5);
}

#[test]
fn rationality_runs() {
    assert!(rationality::run_example().unwrap() <= 2.0 * 0.05 * 3f64.ln() + 0.05);
}

#[test]
fn oracles_runs() {
    assert!(oracles::run_example().unwrap() <= 5e-8);
}

#[test]
fn mixing_time_runs() {
    assert!(mixing_time::run_example().unwrap() > 100);
}

#[test]
fn lyapunov_runs() {
    assert!((lyapunov::run_example().unwrap() - 0.8735).abs() < 5e-4);
}

#[test]
fn conditions_runs() {
    assert!(conditions::run_example().unwrap() > 0);
}

#[test]
fn experiment_runs() {
    assert_eq!(experiment::run_example().unwrap(), 6);
}

#[test]
fn game_files_run() {
    assert!(game_files::run_example().unwrap() > 0);
}
