use crate::automaton::{Distribution, LetterId, ProbAutomaton, Skeleton, StateId};
use crate::error::{Error, Result};
use crate::rational::Rational;

use super::fair_coin::SHARP;

pub const REJECTING_SINK: &str = "sink";

/// Probabilistic automaton read over infinite words; a run is accepting when
/// it visits a Büchi-accepting state infinitely often. The accepting set is
/// the accepting set of `automaton`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuchiAutomaton {
    pub automaton: ProbAutomaton,
}

impl BuchiAutomaton {
    pub fn new(automaton: ProbAutomaton) -> Self {
        BuchiAutomaton { automaton }
    }

    pub fn skeleton(&self) -> &Skeleton {
        self.automaton.skeleton()
    }

    pub fn is_buchi_accepting(&self, s: StateId) -> bool {
        self.automaton.skeleton().is_accepting(s)
    }
}

/// Adds a letter `#` sending accepting states back to the initial state and
/// every other state to a fresh rejecting sink.
pub fn buchi_reduction(source: &ProbAutomaton) -> Result<BuchiAutomaton> {
    let sk = source.skeleton();
    if sk.letter(SHARP).is_ok() {
        return Err(Error::AlphabetClash(SHARP.into()));
    }
    if sk.state(REJECTING_SINK).is_ok() {
        return Err(Error::Duplicate(REJECTING_SINK.into()));
    }
    let (n, m) = (sk.num_states(), sk.num_letters());
    let sink = n;
    let mut states = sk.states().to_vec();
    states.push(REJECTING_SINK.into());
    let mut alphabet = sk.alphabet().to_vec();
    alphabet.push(SHARP.into());
    let skeleton = Skeleton::new(states, alphabet, sk.initial(), sk.accepting())?;

    let mut delta = Vec::with_capacity((n + 1) * (m + 1));
    for s in 0..n {
        for a in 0..m {
            delta.push(source.transition(s, a).clone());
        }
        let back = if sk.is_accepting(s) { sk.initial() } else { sink };
        delta.push(Distribution::dirac(back));
    }
    for _ in 0..=m {
        delta.push(Distribution::dirac(sink));
    }
    Ok(BuchiAutomaton::new(ProbAutomaton::new(skeleton, delta)?))
}

/// Probability mass returned to the initial state by `word · #`.
pub fn returned_mass(ba: &BuchiAutomaton, word: &[LetterId]) -> Result<Rational> {
    let sharp = ba.skeleton().letter(SHARP)?;
    let mut w = word.to_vec();
    w.push(sharp);
    let init = ba.skeleton().initial();
    ba.automaton.reach_prob(init, &w, &[init])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::AutomatonBuilder;
    use crate::fig1;
    use crate::rational::{int, ratio};

    #[test]
    fn single_accepting_state() {
        let mut b = AutomatonBuilder::new();
        b.initial("q").accept("q").edge("q", "a", "q", int(1));
        let ba = buchi_reduction(&b.build_pa().unwrap()).unwrap();
        let sharp = ba.skeleton().letter(SHARP).unwrap();
        assert_eq!(ba.automaton.transition(0, sharp), &Distribution::dirac(0));
    }

    #[test]
    fn fig1_reduction_shape_and_prefix_semantics() {
        let pa = fig1::instance(&ratio(3, 4), &ratio(1, 4)).unwrap();
        let ba = buchi_reduction(&pa).unwrap();
        assert_eq!(ba.skeleton().num_states(), 7);
        assert_eq!(ba.skeleton().num_letters(), 4);
        for w in ["", "i f", "i a f", "i a a f i a f", "f f i"] {
            let u = pa.skeleton().word(w).unwrap();
            assert_eq!(returned_mass(&ba, &u).unwrap(), pa.accept_prob(&u).unwrap());
        }
        assert_eq!(buchi_reduction(&ba.automaton).unwrap_err(), Error::AlphabetClash(SHARP.into()));
    }
}
