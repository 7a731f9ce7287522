use std::fmt;

use crate::automaton::{LetterId, Skeleton, StateId, Word};
use crate::error::{Error, Result};

/// Structured letters of the simulation alphabet. `Base` and `Sharp` are the
/// letters of `B` itself and never occur in words over the simulation
/// alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimLetter {
    Base(LetterId),
    Sharp,
    Check(LetterId, StateId),
    Apply(LetterId, StateId),
    Dollar,
    NextTransition,
    NextWord,
}

/// Index layout of the simulation alphabet
/// `{check(b,q)} ∪ {apply(b,q)} ∪ {$, next_transition, next_word}` for `b`
/// ranging over `B` and `q` over the states of `B_lambda`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimAlphabet {
    letters: usize,
    states: usize,
}

impl SimAlphabet {
    pub fn new(letters: usize, states: usize) -> Self {
        SimAlphabet { letters, states }
    }

    pub fn num_base_letters(&self) -> usize {
        self.letters
    }

    pub fn num_base_states(&self) -> usize {
        self.states
    }

    pub fn len(&self) -> usize {
        2 * self.letters * self.states + 3
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn check(&self, b: LetterId, q: StateId) -> LetterId {
        b * self.states + q
    }

    pub fn apply(&self, b: LetterId, q: StateId) -> LetterId {
        self.letters * self.states + b * self.states + q
    }

    pub fn dollar(&self) -> LetterId {
        2 * self.letters * self.states
    }

    pub fn next_transition(&self) -> LetterId {
        self.dollar() + 1
    }

    pub fn next_word(&self) -> LetterId {
        self.dollar() + 2
    }

    pub fn decode(&self, c: LetterId) -> SimLetter {
        let block = self.letters * self.states;
        match c {
            _ if c < block => SimLetter::Check(c / self.states, c % self.states),
            _ if c < 2 * block => SimLetter::Apply((c - block) / self.states, (c - block) % self.states),
            _ if c == self.dollar() => SimLetter::Dollar,
            _ if c == self.next_transition() => SimLetter::NextTransition,
            _ => SimLetter::NextWord,
        }
    }

    /// Token names, e.g. `check(a,q.a.L)`, `$`, `next_word`.
    pub fn names(&self, base: &Skeleton) -> Vec<String> {
        (0..self.len())
            .map(|c| render(self.decode(c), base))
            .collect()
    }
}

pub fn render(letter: SimLetter, base: &Skeleton) -> String {
    match letter {
        SimLetter::Base(b) => base.letter_name(b).to_string(),
        SimLetter::Sharp => super::fair_coin::SHARP.to_string(),
        SimLetter::Check(b, q) => format!("check({},{})", base.letter_name(b), base.state_name(q)),
        SimLetter::Apply(b, q) => format!("apply({},{})", base.letter_name(b), base.state_name(q)),
        SimLetter::Dollar => "$".into(),
        SimLetter::NextTransition => "next_transition".into(),
        SimLetter::NextWord => "next_word".into(),
    }
}

impl fmt::Display for SimLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimLetter::Base(b) => write!(f, "#{b}"),
            SimLetter::Sharp => write!(f, "{}", super::fair_coin::SHARP),
            SimLetter::Check(b, q) => write!(f, "check(#{b},#{q})"),
            SimLetter::Apply(b, q) => write!(f, "apply(#{b},#{q})"),
            SimLetter::Dollar => write!(f, "$"),
            SimLetter::NextTransition => write!(f, "next_transition"),
            SimLetter::NextWord => write!(f, "next_word"),
        }
    }
}

/// Checks that `order` is a permutation of the base states.
pub fn validate_order(alphabet: &SimAlphabet, order: &[StateId]) -> Result<()> {
    let n = alphabet.num_base_states();
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(Error::OrderMismatch(format!("{} states listed, {n} expected", order.len())));
    }
    for &q in order {
        if q >= n || std::mem::replace(&mut seen[q], true) {
            return Err(Error::OrderMismatch(format!("state #{q} out of range or repeated")));
        }
    }
    Ok(())
}

/// The hat morphism:
/// `b ↦ check(b,q0) $ apply(b,q0) … check(b,q_{n-1}) $ apply(b,q_{n-1}) next_transition`.
pub fn hat(word: &[LetterId], order: &[StateId], alphabet: &SimAlphabet) -> Result<Word> {
    validate_order(alphabet, order)?;
    if let Some(&b) = word.iter().find(|&&b| b >= alphabet.num_base_letters()) {
        return Err(Error::UnknownLetter(format!("#{b}")));
    }
    let mut out = Vec::with_capacity(word.len() * (3 * order.len() + 1));
    for &b in word {
        for &q in order {
            out.extend([alphabet.check(b, q), alphabet.dollar(), alphabet.apply(b, q)]);
        }
        out.push(alphabet.next_transition());
    }
    Ok(out)
}
