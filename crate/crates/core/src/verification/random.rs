//! Seeded generators for random test instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{AutomatonBuilder, LetterId, SimplePa, Word};
use crate::rational::{one, ratio};

/// A complete simple automaton over states `q0, q1, …` and letters
/// `a, b, …`. Each transition is either deterministic or a fair split
/// between two distinct states; `q0` is initial and each state is final
/// with probability `final_density` (at least one when it is positive).
pub fn random_simple_pa(seed: u64, n_states: usize, n_letters: usize, final_density: f64) -> SimplePa {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_simple_pa_from(&mut rng, n_states, n_letters, final_density)
}

pub fn random_simple_pa_from(rng: &mut impl Rng, n_states: usize, n_letters: usize, final_density: f64) -> SimplePa {
    assert!(n_states >= 1 && (1..=26).contains(&n_letters));
    let states: Vec<String> = (0..n_states).map(|i| format!("q{i}")).collect();
    let letters: Vec<String> = (0..n_letters).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let mut b = AutomatonBuilder::new();
    for s in &states {
        b.state(s);
    }
    for l in &letters {
        b.letter(l);
    }
    b.initial(&states[0]);
    let density = final_density.clamp(0.0, 1.0);
    let mut any_final = false;
    for s in &states {
        if rng.random_bool(density) {
            b.accept(s);
            any_final = true;
        }
    }
    if density > 0.0 && !any_final {
        b.accept(&states[rng.random_range(0..n_states)]);
    }
    for s in &states {
        for l in &letters {
            let r = rng.random_range(0..n_states);
            if n_states > 1 && rng.random_bool(0.5) {
                let t = (r + rng.random_range(1..n_states)) % n_states;
                b.edge(s, l, &states[r], ratio(1, 2));
                b.edge(s, l, &states[t], ratio(1, 2));
            } else {
                b.edge(s, l, &states[r], one());
            }
        }
    }
    let pa = b.build_pa().expect("generated automaton is complete");
    SimplePa::new(pa).expect("generated automaton is simple")
}

pub fn random_word(rng: &mut impl Rng, letters: &[LetterId], max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    (0..len).map(|_| letters[rng.random_range(0..letters.len())]).collect()
}
