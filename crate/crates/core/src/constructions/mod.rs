//! Automaton-to-automaton constructions: the fair-coin family `B_lambda`,
//! the simulation automaton `C` with its fairness checker, and the Büchi
//! reduction.

pub mod buchi;
pub mod fair_coin;
pub mod fairness;
pub mod letters;
pub mod simulation;

pub use buchi::{buchi_reduction, BuchiAutomaton};
pub use fair_coin::{coeff_a, encode_word, erase_sharps, fair_coin, FairCoinOutput, FairCoinShape, SHARP};
pub use fairness::{fairness_dfa, FairnessDfa};
pub use letters::{hat, SimAlphabet, SimLetter};
pub use simulation::{build_simulation, instantiate_simulation, recover_parameters, SimulationNpa};
