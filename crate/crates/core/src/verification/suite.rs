//! Randomized batteries over the proposition checks. Every trial draws from
//! its own ChaCha stream, so results do not depend on the schedule.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{build_simulation, fair_coin};
use crate::error::Result;
use crate::par::Exec;
use crate::rational::{ratio, Rational};

use super::props::{check_fair_coin_erasure, check_fair_coin_in, Mutation, SimulationCase};
use super::random::{random_simple_pa_from, random_word};
use super::report::PropReport;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub lambdas: Vec<Rational>,
    pub thetas: Vec<Rational>,
    pub max_states: usize,
    pub max_letters: usize,
    pub max_k: usize,
    pub max_word: usize,
    pub max_sharp_word: usize,
    pub max_rounds: usize,
    /// Size bounds for the source automata of the simulation battery.
    pub sim_max_states: usize,
    pub sim_max_letters: usize,
    pub sim_max_word: usize,
    pub theta_word: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            lambdas: vec![ratio(1, 3), ratio(1, 2), ratio(2, 3)],
            thetas: vec![ratio(1, 4), ratio(1, 2)],
            max_states: 4,
            max_letters: 3,
            max_k: 3,
            max_word: 3,
            max_sharp_word: 6,
            max_rounds: 3,
            sim_max_states: 3,
            sim_max_letters: 2,
            sim_max_word: 2,
            theta_word: 12,
        }
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn pick<'a, T>(rng: &mut impl Rng, xs: &'a [T]) -> &'a T {
    &xs[rng.random_range(0..xs.len())]
}

/// Items 1 to 3 of the fair-coin proposition on `trials` random tuples.
pub fn fair_coin_suite(seed: u64, trials: usize, cfg: &SuiteConfig, exec: Exec) -> Result<Vec<PropReport>> {
    let per_trial = exec.map_range(trials, |t| -> Result<Vec<PropReport>> {
        let mut rng = trial_rng(seed, t);
        let n = rng.random_range(1..=cfg.max_states);
        let m = rng.random_range(1..=cfg.max_letters);
        let a = random_simple_pa_from(&mut rng, n, m, 0.5);
        let lambda = pick(&mut rng, &cfg.lambdas).clone();
        let b = fair_coin(&a, &lambda)?;
        let k = rng.random_range(0..=cfg.max_k);
        let letters: Vec<_> = (0..m).collect();
        let u = random_word(&mut rng, &letters, cfg.max_word);
        let (q, r) = (rng.random_range(0..n), rng.random_range(0..n));
        let mut out = check_fair_coin_in(&a, &b, k, &u, q, r)?;
        let extended: Vec<_> = (0..=m).collect();
        let w = random_word(&mut rng, &extended, cfg.max_sharp_word);
        out.push(check_fair_coin_erasure(&a, &b, &w, q, r)?);
        Ok(out)
    });
    flatten(per_trial)
}

/// The lower-bound identities, the theta bound, cheat-once and witness
/// extraction on `trials` random simulation instances.
pub fn simulation_suite(seed: u64, trials: usize, cfg: &SuiteConfig, exec: Exec) -> Result<Vec<PropReport>> {
    let per_trial = exec.map_range(trials, |t| -> Result<Vec<PropReport>> {
        let mut rng = trial_rng(seed ^ 0x5eed_c0de, t);
        let n = rng.random_range(1..=cfg.sim_max_states);
        let m = rng.random_range(1..=cfg.sim_max_letters);
        let a = random_simple_pa_from(&mut rng, n, m, 0.5);
        let lambda = pick(&mut rng, &cfg.lambdas).clone();
        let theta = pick(&mut rng, &cfg.thetas).clone();
        let c = build_simulation(&a)?;
        let case = SimulationCase::with_simulation(&a, c, &lambda, &theta)?;
        let b_letters: Vec<_> = (0..=m).collect();
        let mut out = Vec::new();

        let u = random_word(&mut rng, &b_letters, cfg.sim_max_word);
        let rounds = rng.random_range(1..=cfg.max_rounds);
        out.extend(case.check_lower(&u, rounds)?);

        let alphabet = &case.c.alphabet;
        let block_letters: Vec<_> = (0..alphabet.len()).filter(|&c| case.is_block_letter(c)).collect();
        let free = random_word(&mut rng, &block_letters, cfg.theta_word);
        out.push(case.check_theta(&free)?);

        let count = rng.random_range(1..=3usize);
        let cheat = rng.random_range(0..count);
        let mut blocks = Vec::with_capacity(count);
        for i in 0..count {
            let v = random_word(&mut rng, &b_letters, cfg.sim_max_word);
            let mut block = case.c.hat(&v)?;
            if i == cheat {
                block = loop {
                    let mutation = match rng.random_range(0..5) {
                        0 => Mutation::Swap(rng.random::<u32>() as usize),
                        1 => Mutation::Delete(rng.random::<u32>() as usize),
                        2 => Mutation::Replace(rng.random::<u32>() as usize, *pick(&mut rng, &block_letters)),
                        3 => Mutation::Duplicate(rng.random::<u32>() as usize),
                        _ => Mutation::Append,
                    };
                    let bad = case.corrupt_block(&block, mutation);
                    if !case.c.checker.in_hat_image(&bad) {
                        break bad;
                    }
                };
            }
            blocks.push(block);
        }
        out.extend(case.check_cheat_once(&blocks)?);

        // witness extraction wherever the precondition holds
        for candidate in [case.c.hat_rounds(&u, rounds)?, case.c.hat_rounds(&[], 1)?] {
            if case.instance.accept_prob(&candidate)? > theta {
                out.push(case.extract_witness(&candidate)?.1);
            }
        }
        Ok(out)
    });
    flatten(per_trial)
}

fn flatten(parts: Vec<Result<Vec<PropReport>>>) -> Result<Vec<PropReport>> {
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}
