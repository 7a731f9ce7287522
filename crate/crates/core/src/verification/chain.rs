//! Side-by-side value lower bounds for `A`, `B_lambda` and `C[lambda, theta]`.
//!
//! Value 1 is undecidable; this only tabulates evidence. Besides plain
//! search on each automaton, witnesses are lifted along the constructions:
//! a word `u` of `A` gives `[u]^k` for `B_lambda`, and a word `v` of
//! `B_lambda` gives `(hat(v) next_word)^l` for `C[lambda, theta]`.

use crate::analysis::{value_lower_bound_with, SearchBudget, SearchResult};
use crate::automaton::{SimplePa, Word};
use crate::constructions::{build_simulation, encode_word, fair_coin, instantiate_simulation};
use crate::error::Result;
use crate::par::Exec;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainBudget {
    pub search: SearchBudget,
    /// Sharp pairs per letter when lifting a witness of `A` into `B_lambda`.
    pub sharp_rounds: usize,
    /// Repetitions when lifting a witness of `B_lambda` into `C`.
    pub repeats: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedBound {
    pub word: Word,
    pub probability: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyBound {
    pub lambda: Rational,
    pub search: SearchResult,
    pub lifted: LiftedBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationBound {
    pub lambda: Rational,
    pub theta: Rational,
    pub search: SearchResult,
    pub lifted: LiftedBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub source: SearchResult,
    pub families: Vec<FamilyBound>,
    pub simulations: Vec<SimulationBound>,
}

impl ChainReport {
    /// Smallest of all bounds (search and lifted) in the report.
    pub fn weakest(&self) -> Rational {
        let mut all = vec![self.source.probability.clone()];
        for f in &self.families {
            all.push(f.search.probability.clone().max(f.lifted.probability.clone()));
        }
        for s in &self.simulations {
            all.push(s.search.probability.clone().max(s.lifted.probability.clone()));
        }
        all.into_iter().min().expect("source bound is always present")
    }

    /// Whether every automaton in the chain has a witness above `1 - eps`.
    pub fn co_approach(&self, eps: &Rational) -> bool {
        self.weakest() > Rational::from_integer(1.into()) - eps
    }
}

pub fn equivalence_chain_report(
    a: &SimplePa,
    lambdas: &[Rational],
    thetas: &[Rational],
    budget: ChainBudget,
) -> Result<ChainReport> {
    equivalence_chain_report_with(a, lambdas, thetas, budget, Exec::default())
}

pub fn equivalence_chain_report_with(
    a: &SimplePa,
    lambdas: &[Rational],
    thetas: &[Rational],
    budget: ChainBudget,
    exec: Exec,
) -> Result<ChainReport> {
    let source = value_lower_bound_with(a, budget.search, exec)?;
    let c = build_simulation(a)?;
    let mut families = Vec::with_capacity(lambdas.len());
    let mut simulations = Vec::with_capacity(lambdas.len() * thetas.len());
    for lambda in lambdas {
        let b = fair_coin(a, lambda)?;
        let search = value_lower_bound_with(&b.automaton, budget.search, exec)?;
        let lifted_word = encode_word(&source.word, budget.sharp_rounds, b.shape.sharp());
        let lifted = LiftedBound {
            probability: b.automaton.accept_prob(&lifted_word)?,
            word: lifted_word,
        };
        // lift the better of the two witnesses of B_lambda
        let witness = if lifted.probability > search.probability {
            lifted.word.clone()
        } else {
            search.word.clone()
        };
        for theta in thetas {
            let inst = instantiate_simulation(&c, lambda, theta)?;
            let csearch = value_lower_bound_with(&inst, budget.search, exec)?;
            let cword = c.hat_rounds(&witness, budget.repeats)?;
            simulations.push(SimulationBound {
                lambda: lambda.clone(),
                theta: theta.clone(),
                search: csearch,
                lifted: LiftedBound {
                    probability: inst.accept_prob(&cword)?,
                    word: cword,
                },
            });
        }
        families.push(FamilyBound {
            lambda: lambda.clone(),
            search,
            lifted,
        });
    }
    Ok(ChainReport {
        source,
        families,
        simulations,
    })
}
