// Round trip of the JSON game and policy formats.

use dsbr::game::{JointPolicy, Policy};
use dsbr::harness::{game_to_json, generate_game, load_game, parse_game, parse_policy, save_game, save_policy, GeneratorSpec};

pub fn run_example() -> dsbr::Result<usize> {
    let spec = GeneratorSpec::RandomMarkov {
        n_states: 2,
        n_actions: (2, 1),
        gamma: 0.9,
        eps_p: 0.5,
    };
    let game = generate_game(&spec, 9)?;
    let json = game_to_json(&game)?;
    println!("{json}");

    let dir = std::env::temp_dir();
    let path = dir.join("dsbr-example-game.json");
    save_game(&game, &path)?;
    assert_eq!(load_game(&path)?, game);

    let joint = JointPolicy::new(Policy::from_rows(&[vec![0.5, 0.5], vec![0.9, 0.1]])?, Policy::uniform(2, 1));
    save_policy(&joint, &dir.join("dsbr-example-policy.json"))?;
    assert_eq!(parse_policy(r#"{"pi1":[[0.5,0.5],[0.9,0.1]],"pi2":[[1],[1]]}"#)?, joint);

    match parse_game(r#"{"type":"matrix","payoff":[[0.5,1.5]]}"#) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(json.len())
}

#[allow(dead_code)]
fn main() -> dsbr::Result<()> {
    run_example().map(|_| ())
}
