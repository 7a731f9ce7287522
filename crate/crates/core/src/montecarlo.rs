//! Sampling-based acceptance estimates, used to cross-check the exact engine.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{LetterId, ProbAutomaton, StateId};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::rational::to_f64;

const CHUNK: usize = 1024;

struct Sampler {
    num_letters: usize,
    /// Per transition: successor states and cumulative probabilities.
    tables: Vec<(Vec<StateId>, Vec<f64>)>,
}

impl Sampler {
    fn new(pa: &ProbAutomaton) -> Self {
        let tables = pa
            .transitions()
            .iter()
            .map(|d| {
                let mut acc = 0.0;
                let (targets, cdf) = d
                    .entries()
                    .iter()
                    .map(|(t, p)| {
                        acc += to_f64(p);
                        (*t, acc)
                    })
                    .unzip();
                (targets, cdf)
            })
            .collect();
        Sampler {
            num_letters: pa.skeleton().num_letters(),
            tables,
        }
    }

    fn next(&self, s: StateId, a: LetterId, rng: &mut ChaCha8Rng) -> StateId {
        let (targets, cdf) = &self.tables[s * self.num_letters + a];
        if targets.len() == 1 {
            return targets[0];
        }
        let u: f64 = rng.random::<f64>() * cdf[cdf.len() - 1];
        let i = cdf.partition_point(|&c| c <= u);
        targets[i.min(targets.len() - 1)]
    }
}

/// Fraction of `samples` sampled runs on `word` that end in an accepting
/// state. Deterministic in `seed`, independent of `exec`.
pub fn monte_carlo_accept(pa: &ProbAutomaton, word: &[LetterId], samples: usize, seed: u64) -> Result<f64> {
    monte_carlo_accept_with(pa, word, samples, seed, Exec::default())
}

pub fn monte_carlo_accept_with(
    pa: &ProbAutomaton,
    word: &[LetterId],
    samples: usize,
    seed: u64,
    exec: Exec,
) -> Result<f64> {
    if samples == 0 {
        return Err(Error::Domain("at least one sample is required".into()));
    }
    pa.skeleton().check_word(word)?;
    let sampler = Sampler::new(pa);
    let sk = pa.skeleton();
    let chunks = samples.div_ceil(CHUNK);
    let hits = exec.map_range(chunks, |c| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(c as u64);
        let n = CHUNK.min(samples - c * CHUNK);
        (0..n)
            .filter(|_| {
                let end = word
                    .iter()
                    .fold(sk.initial(), |s, &a| sampler.next(s, a, &mut rng));
                sk.is_accepting(end)
            })
            .count()
    });
    Ok(hits.iter().sum::<usize>() as f64 / samples as f64)
}

/// Two-sided Hoeffding radius at confidence `1 - alpha`.
pub fn hoeffding_radius(samples: usize, alpha: f64) -> f64 {
    ((2.0 / alpha).ln() / (2.0 * samples as f64)).sqrt()
}
