//! Bounded search for words with high acceptance probability.
//!
//! The search walks the graph of reachable distributions layer by layer
//! (one layer per word length), keeping every distinct distribution once.
//! The best word found is always a lower bound on the value.

use std::collections::HashSet;

use num_traits::Zero;

use crate::automaton::{Distribution, ProbAutomaton, StateId, Word};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_word_length: usize,
    /// Number of distributions kept per layer; `0` keeps all of them.
    pub beam_width: usize,
    pub max_distribution_states: usize,
}

impl SearchBudget {
    pub fn exhaustive(max_word_length: usize) -> Self {
        SearchBudget {
            max_word_length,
            beam_width: 0,
            max_distribution_states: 2_000_000,
        }
    }

    pub fn beam(max_word_length: usize, beam_width: usize) -> Self {
        SearchBudget {
            max_word_length,
            beam_width,
            max_distribution_states: 2_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub word: Word,
    pub probability: Rational,
    /// Distinct distributions visited.
    pub explored: usize,
}

/// States from which some accepting state is reachable in the transition graph.
pub fn coreachable(pa: &ProbAutomaton) -> Vec<bool> {
    let sk = pa.skeleton();
    let n = sk.num_states();
    let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for s in 0..n {
        for a in 0..sk.num_letters() {
            for t in pa.transition(s, a).support() {
                preds[t].push(s);
            }
        }
    }
    let mut seen = vec![false; n];
    let mut stack: Vec<StateId> = sk.accepting().collect();
    for &s in &stack {
        seen[s] = true;
    }
    while let Some(t) = stack.pop() {
        for &s in &preds[t] {
            if !seen[s] {
                seen[s] = true;
                stack.push(s);
            }
        }
    }
    seen
}

pub fn value_lower_bound(pa: &ProbAutomaton, budget: SearchBudget) -> Result<SearchResult> {
    value_lower_bound_with(pa, budget, Exec::default())
}

struct Candidate {
    dist: Distribution,
    word: Word,
    accepting: Rational,
    key: Rational,
}

pub fn value_lower_bound_with(pa: &ProbAutomaton, budget: SearchBudget, exec: Exec) -> Result<SearchResult> {
    let sk = pa.skeleton();
    let promising = coreachable(pa);
    let init = pa.initial_distribution();
    let mut best = SearchResult {
        word: Vec::new(),
        probability: pa.final_mass(&init),
        explored: 1,
    };
    let mut visited: HashSet<Distribution> = HashSet::new();
    visited.insert(init.clone());
    let mut frontier = vec![(init, Vec::new())];

    for _ in 0..budget.max_word_length {
        let expanded: Vec<Vec<Candidate>> = exec.map(&frontier, |(d, w)| {
            (0..sk.num_letters())
                .map(|a| {
                    let dist = pa.step_unchecked(d, a);
                    let accepting = pa.final_mass(&dist);
                    let key = if budget.beam_width > 0 {
                        &accepting + dist.mass_where(|s| promising[s])
                    } else {
                        Rational::zero()
                    };
                    let mut word = w.clone();
                    word.push(a);
                    Candidate {
                        dist,
                        word,
                        accepting,
                        key,
                    }
                })
                .collect()
        });
        let mut next: Vec<Candidate> = Vec::new();
        for cand in expanded.into_iter().flatten() {
            if visited.contains(&cand.dist) {
                continue;
            }
            visited.insert(cand.dist.clone());
            if visited.len() > budget.max_distribution_states {
                return Err(Error::BudgetExceeded {
                    limit: budget.max_distribution_states,
                });
            }
            if cand.accepting > best.probability {
                best.probability = cand.accepting.clone();
                best.word = cand.word.clone();
            }
            next.push(cand);
        }
        if budget.beam_width > 0 && next.len() > budget.beam_width {
            // stable: ties keep discovery order
            next.sort_by(|x, y| y.key.cmp(&x.key));
            next.truncate(budget.beam_width);
        }
        if next.is_empty() {
            break;
        }
        frontier = next.into_iter().map(|c| (c.dist, c.word)).collect();
    }
    best.explored = visited.len();
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::AutomatonBuilder;
    use crate::fig1;
    use crate::rational::{int, ratio};

    #[test]
    fn accepting_sink_initial() {
        let mut b = AutomatonBuilder::new();
        b.initial("q").accept("q").edge("q", "a", "q", int(1));
        let r = value_lower_bound(&b.build_pa().unwrap(), SearchBudget::exhaustive(5)).unwrap();
        assert_eq!((r.word, r.probability), (vec![], int(1)));
    }

    #[test]
    fn fig1_balanced_small_length() {
        let pa = fig1::instance(&ratio(1, 2), &ratio(1, 2)).unwrap();
        let r = value_lower_bound(&pa, SearchBudget::exhaustive(6)).unwrap();
        assert_eq!(r.probability, ratio(1, 2));
        assert_eq!(pa.skeleton().render_word(&r.word), "i f");
    }

    #[test]
    fn monotone_in_length_and_schedule_independent() {
        let pa = fig1::instance(&ratio(2, 3), &ratio(1, 3)).unwrap();
        let mut last = int(0);
        for len in 0..9 {
            let seq = value_lower_bound_with(&pa, SearchBudget::exhaustive(len), Exec::Sequential).unwrap();
            let par = value_lower_bound_with(&pa, SearchBudget::exhaustive(len), Exec::Parallel).unwrap();
            assert_eq!(seq, par);
            assert!(seq.probability >= last);
            assert_eq!(pa.accept_prob(&seq.word).unwrap(), seq.probability);
            last = seq.probability;
        }
        assert!(last > ratio(1, 2));
    }

    #[test]
    fn budget_exceeded() {
        let pa = fig1::instance(&ratio(2, 3), &ratio(1, 3)).unwrap();
        let budget = SearchBudget {
            max_word_length: 10,
            beam_width: 0,
            max_distribution_states: 5,
        };
        assert_eq!(value_lower_bound(&pa, budget).unwrap_err(), Error::BudgetExceeded { limit: 5 });
    }

    #[test]
    fn coreachable_set() {
        let pa = fig1::instance(&ratio(1, 2), &ratio(1, 2)).unwrap();
        let sk = pa.skeleton();
        let co = coreachable(&pa);
        assert!(co[sk.state("C1").unwrap()]);
        assert!(co[sk.state("R1").unwrap()]);
        assert!(!co[sk.state("R2").unwrap()]);
    }
}
