//! Exact probabilistic automata over finite words, numberless automata and
//! the constructions relating them: the fair-coin family `B_lambda`, the
//! single-coin simulation automaton `C`, and the Büchi reduction.

pub mod analysis;
pub mod automaton;
pub mod constructions;
pub mod error;
pub mod fig1;
pub mod io;
pub mod linalg;
pub mod montecarlo;
pub mod par;
pub mod rational;
pub mod verification;

pub use automaton::{
    AutomatonBuilder, Distribution, LetterId, NumberlessAutomaton, ProbAutomaton, SimplePa, Skeleton, StateId,
    Word, WordEvalTrace,
};
pub use error::{Error, Result};
pub use par::Exec;
pub use rational::Rational;
