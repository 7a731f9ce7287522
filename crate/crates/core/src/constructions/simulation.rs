//! The simulation automaton `C`: a numberless automaton with a single
//! probabilistic transition whose instances `C[lambda, theta]` replay runs of
//! `B_lambda`.
//!
//! Layout of the states: the left copy of `B_lambda`, the right (barred)
//! copy, the center `q_R, s, s0, s1, wait`, then the embedded fairness
//! checker. The intermediate "naive fusion" automaton is the same thing
//! without `s`, `wait` and the checker.

use num_traits::One;

use crate::automaton::{Distribution, LetterId, NumberlessAutomaton, ProbAutomaton, SimplePa, Skeleton, StateId, Word};
use crate::error::{Error, Result};
use crate::rational::{in_open_unit, Rational};

use super::fair_coin::FairCoinShape;
use super::fairness::{fairness_dfa, FairnessDfa};
use super::letters::{SimAlphabet, SimLetter};

/// Names of the center states, in layout order.
pub const CENTER: [&str; 5] = ["q_R", "s", "s0", "s1", "wait"];

#[derive(Clone, Debug)]
pub struct SimulationNpa {
    pub npa: NumberlessAutomaton,
    /// Structure of the fair-coin family being simulated.
    pub base: FairCoinShape,
    pub alphabet: SimAlphabet,
    pub checker: FairnessDfa,
}

impl SimulationNpa {
    fn n(&self) -> usize {
        self.base.skeleton().num_states()
    }

    pub fn left(&self, p: StateId) -> StateId {
        p
    }

    pub fn right(&self, p: StateId) -> StateId {
        self.n() + p
    }

    pub fn q_r(&self) -> StateId {
        2 * self.n()
    }

    pub fn s(&self) -> StateId {
        2 * self.n() + 1
    }

    pub fn s0(&self) -> StateId {
        2 * self.n() + 2
    }

    pub fn s1(&self) -> StateId {
        2 * self.n() + 3
    }

    pub fn wait(&self) -> StateId {
        2 * self.n() + 4
    }

    /// State of `C` hosting checker state `d`.
    pub fn checker_state(&self, d: usize) -> StateId {
        2 * self.n() + 5 + d
    }

    /// The enumeration of `B_lambda` states used by `hat` and the checker.
    pub fn order(&self) -> &[StateId] {
        self.checker.order()
    }

    pub fn hat(&self, word: &[LetterId]) -> Result<Word> {
        self.checker.hat(word)
    }

    /// `(hat(u) · next_word)^repeat`.
    pub fn hat_rounds(&self, word: &[LetterId], repeat: usize) -> Result<Word> {
        let mut block = self.hat(word)?;
        block.push(self.alphabet.next_word());
        Ok(block.repeat(repeat))
    }

    pub fn base_skeleton(&self) -> &Skeleton {
        self.base.skeleton()
    }

    /// Parses a whitespace-separated list of simulation tokens.
    pub fn word(&self, text: &str) -> Result<Word> {
        self.npa.skeleton().word(text)
    }

    pub fn decode(&self, c: LetterId) -> SimLetter {
        self.alphabet.decode(c)
    }
}

/// Builds `C` from a simple automaton (through its fair-coin family).
pub fn build_simulation(source: &SimplePa) -> Result<SimulationNpa> {
    let base = FairCoinShape::new(source)?;
    let bsk = base.skeleton();
    let n = bsk.num_states();
    let alphabet = SimAlphabet::new(bsk.num_letters(), n);
    let order: Vec<StateId> = (0..n).collect();
    let checker = fairness_dfa(alphabet, &order, bsk)?;

    let left = |p: StateId| p;
    let right = |p: StateId| n + p;
    let (q_r, s, s0, s1, wait) = (2 * n, 2 * n + 1, 2 * n + 2, 2 * n + 3, 2 * n + 4);
    let dfa = |d: usize| 2 * n + 5 + d;
    let d_start = dfa(checker.start());
    let d_sink = dfa(checker.sink());

    let mut states: Vec<String> = Vec::with_capacity(2 * n + 5 + checker.num_states());
    states.extend(bsk.states().iter().map(|p| format!("L[{p}]")));
    states.extend(bsk.states().iter().map(|p| format!("R[{p}]")));
    states.extend(CENTER.iter().map(|c| c.to_string()));
    states.extend(checker.names().iter().cloned());
    let total = states.len();
    let skeleton = Skeleton::new(states, alphabet.names(bsk), left(bsk.initial()), [d_start])?;

    let deterministic = |st: StateId, c: LetterId| -> StateId {
        if st >= dfa(0) {
            return dfa(checker.next(st - dfa(0), c));
        }
        match alphabet.decode(c) {
            SimLetter::Check(_, q) if st == left(q) => q_r,
            SimLetter::Apply(b, q) if st == s0 => right(base.branch(q, b).0),
            SimLetter::Apply(b, q) if st == s1 => right(base.branch(q, b).1),
            SimLetter::Apply(..) if st == s => wait,
            SimLetter::NextTransition if (n..2 * n).contains(&st) => left(st - n),
            SimLetter::NextWord => {
                if st == wait {
                    left(bsk.initial())
                } else if st < n && bsk.is_accepting(st) {
                    d_start
                } else {
                    d_sink
                }
            }
            _ => st,
        }
    };

    let nc = alphabet.len();
    let mut triples = Vec::with_capacity(total * nc + 2);
    for st in 0..total {
        for c in 0..nc {
            if st == q_r && c == alphabet.dollar() {
                triples.extend([(q_r, c, s0), (q_r, c, s1), (q_r, c, s)]);
            } else {
                triples.push((st, c, deterministic(st, c)));
            }
        }
    }
    let npa = NumberlessAutomaton::new(skeleton, triples)?;
    Ok(SimulationNpa {
        npa,
        base,
        alphabet,
        checker,
    })
}

/// `C[lambda, theta]`: the probabilistic transition becomes
/// `{s0: lambda·theta, s1: (1-lambda)·theta, s: 1-theta}`.
pub fn instantiate_simulation(c: &SimulationNpa, lambda: &Rational, theta: &Rational) -> Result<ProbAutomaton> {
    if !in_open_unit(lambda) || !in_open_unit(theta) {
        return Err(Error::Domain(format!(
            "lambda = {lambda} and theta = {theta} must lie in (0, 1)"
        )));
    }
    let sk = c.npa.skeleton();
    let m = sk.num_letters();
    let special = c.q_r() * m + c.alphabet.dollar();
    let mut delta = Vec::with_capacity(sk.num_states() * m);
    for st in 0..sk.num_states() {
        for a in 0..m {
            let succ = c.npa.successors(st, a);
            if st * m + a == special {
                let entries = vec![
                    (c.s(), Rational::one() - theta),
                    (c.s0(), lambda * theta),
                    (c.s1(), (Rational::one() - lambda) * theta),
                ];
                delta.push(Distribution::from_sorted_unchecked(entries));
            } else {
                delta.push(Distribution::dirac(succ[0]));
            }
        }
    }
    ProbAutomaton::new(sk.clone(), delta)
}

/// Recovers `(lambda, theta)` from an instance of `C`.
pub fn recover_parameters(c: &SimulationNpa, instance: &ProbAutomaton) -> Result<(Rational, Rational)> {
    let d = instance.transition(c.q_r(), c.alphabet.dollar());
    let theta = d.get(c.s0()) + d.get(c.s1());
    if !in_open_unit(&theta) {
        return Err(Error::Domain(format!("theta = {theta} outside (0, 1)")));
    }
    let lambda = d.get(c.s0()) / &theta;
    Ok((lambda, theta))
}
