// Mixing of policy-induced chains: the two-state keep-or-swap example and a
// random smoothed game.

use dsbr::chain::{induce_chain, mixing_time, primitivity_index, stationary_distribution, two_state};
use dsbr::game::JointPolicy;
use dsbr::harness::{generate_game, GeneratorSpec};

pub fn run_example() -> dsbr::Result<u64> {
    let eta = 0.05;
    println!("alpha  t_mix  exact  lower bound");
    let mut last = 0;
    for alpha in [0.6, 0.75, 0.9, 0.99] {
        let t = mixing_time(&two_state::chain(alpha)?, eta)?;
        println!(
            "{alpha:<5}  {t:>5}  {:>5}  {:.3}",
            two_state::exact_mixing_time(alpha, eta),
            two_state::mixing_lower_bound(alpha, eta)
        );
        last = t;
    }

    let spec = GeneratorSpec::RandomMarkov {
        n_states: 5,
        n_actions: (2, 2),
        gamma: 0.5,
        eps_p: 0.1,
    };
    let game = generate_game(&spec, 3)?.to_markov();
    let chain = induce_chain(&game, &JointPolicy::uniform(5, (2, 2)))?;
    println!("random game: mu = {:?}", stationary_distribution(&chain)?);
    println!("t_mix = {}, r_b = {:?}", mixing_time(&chain, eta)?, primitivity_index(&chain));
    Ok(last)
}

#[allow(dead_code)]
fn main() -> dsbr::Result<()> {
    run_example().map(|_| ())
}
