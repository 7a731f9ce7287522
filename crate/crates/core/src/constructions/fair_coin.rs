use num_traits::One;

use crate::automaton::{Distribution, LetterId, ProbAutomaton, SimplePa, Skeleton, StateId, Word};
use crate::error::{Error, Result};
use crate::rational::{in_open_unit, pow, Rational};

/// Name of the extra letter used by the gadgets.
pub const SHARP: &str = "#";
/// Name of the non-accepting sink entered when a gadget is interrupted.
pub const GADGET_SINK: &str = "⊥";

/// Probability that one gadget commits within `k` pairs of sharps:
/// `1 - (1 - 2 lambda (1 - lambda))^k`.
pub fn coeff_a(lambda: &Rational, k: u64) -> Result<Rational> {
    if !in_open_unit(lambda) {
        return Err(Error::Domain(format!("lambda = {lambda} must lie in (0, 1)")));
    }
    let two = Rational::from_integer(2.into());
    let stay = Rational::one() - two * lambda * (Rational::one() - lambda);
    Ok(Rational::one() - pow(&stay, k))
}

/// Gadget states introduced for one original transition `(q, a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub pending: StateId,
    pub left: StateId,
    pub right: StateId,
}

/// Parameter-free structure shared by every `B_lambda`.
///
/// Each transition of `B_lambda` either is deterministic or picks its
/// lambda-successor with probability `lambda` and its other successor with
/// `1 - lambda`; `branches` records that pair (equal for deterministic ones).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FairCoinShape {
    skeleton: Skeleton,
    branches: Vec<(StateId, StateId)>,
    original_states: usize,
    original_letters: usize,
    gadgets: Vec<Gadget>,
    sink: StateId,
}

impl FairCoinShape {
    pub fn new(source: &SimplePa) -> Result<Self> {
        let sk = source.skeleton();
        if sk.letter(SHARP).is_ok() {
            return Err(Error::AlphabetClash(SHARP.into()));
        }
        let (nq, na) = (sk.num_states(), sk.num_letters());
        let mut states: Vec<String> = sk.states().to_vec();
        let mut gadgets = Vec::with_capacity(nq * na);
        for q in 0..nq {
            for a in 0..na {
                let base = format!("{}.{}", sk.state_name(q), sk.letter_name(a));
                let pending = states.len();
                states.push(base.clone());
                states.push(format!("{base}.L"));
                states.push(format!("{base}.R"));
                gadgets.push(Gadget {
                    pending,
                    left: pending + 1,
                    right: pending + 2,
                });
            }
        }
        let sink = states.len();
        states.push(GADGET_SINK.into());
        let mut alphabet: Vec<String> = sk.alphabet().to_vec();
        alphabet.push(SHARP.into());
        let sharp = na;
        let skeleton = Skeleton::new(states, alphabet, sk.initial(), sk.accepting())?;

        let nb = na + 1;
        let mut branches = vec![(sink, sink); skeleton.num_states() * nb];
        let mut set = |s: StateId, b: LetterId, pair: (StateId, StateId)| branches[s * nb + b] = pair;
        for q in 0..nq {
            set(q, sharp, (q, q));
            for a in 0..na {
                let g = gadgets[q * na + a];
                set(q, a, (g.pending, g.pending));
                let (r, s) = match source.transition(q, a).entries() {
                    [(r, _)] => (*r, *r),
                    [(r, _), (s, _)] => (*r, *s),
                    _ => unreachable!("simple automaton"),
                };
                set(g.pending, sharp, (g.left, g.right));
                set(g.left, sharp, (g.pending, r));
                set(g.right, sharp, (s, g.pending));
                // Letters of A inside a gadget already default to the sink.
            }
        }
        Ok(FairCoinShape {
            skeleton,
            branches,
            original_states: nq,
            original_letters: na,
            gadgets,
            sink,
        })
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn sharp(&self) -> LetterId {
        self.original_letters
    }

    pub fn sink(&self) -> StateId {
        self.sink
    }

    /// Original states keep their indices in `B_lambda`.
    pub fn original_states(&self) -> usize {
        self.original_states
    }

    pub fn gadget(&self, q: StateId, a: LetterId) -> Gadget {
        self.gadgets[q * self.original_letters + a]
    }

    /// `(lambda-successor, (1 - lambda)-successor)` of `(s, b)`.
    pub fn branch(&self, s: StateId, b: LetterId) -> (StateId, StateId) {
        self.branches[s * self.skeleton.num_letters() + b]
    }

    pub fn instantiate(&self, lambda: &Rational) -> Result<ProbAutomaton> {
        if !in_open_unit(lambda) {
            return Err(Error::Domain(format!("lambda = {lambda} must lie in (0, 1)")));
        }
        let rest = Rational::one() - lambda;
        let delta = self
            .branches
            .iter()
            .map(|&(x, y)| {
                if x == y {
                    Distribution::dirac(x)
                } else {
                    let mut e = vec![(x, lambda.clone()), (y, rest.clone())];
                    e.sort_by_key(|(s, _)| *s);
                    Distribution::from_sorted_unchecked(e)
                }
            })
            .collect();
        ProbAutomaton::new(self.skeleton.clone(), delta)
    }
}

/// `B_lambda` together with its structure.
#[derive(Clone, Debug)]
pub struct FairCoinOutput {
    pub automaton: ProbAutomaton,
    pub shape: FairCoinShape,
    pub lambda: Rational,
}

/// Replaces every transition of `source` by the lambda-biased gadget.
pub fn fair_coin(source: &SimplePa, lambda: &Rational) -> Result<FairCoinOutput> {
    let shape = FairCoinShape::new(source)?;
    Ok(FairCoinOutput {
        automaton: shape.instantiate(lambda)?,
        shape,
        lambda: lambda.clone(),
    })
}

/// `[u]^k`: each letter followed by `2k` sharps.
pub fn encode_word(word: &[LetterId], k: usize, sharp: LetterId) -> Word {
    word.iter()
        .flat_map(|&a| std::iter::once(a).chain(std::iter::repeat_n(sharp, 2 * k)))
        .collect()
}

/// Removes every sharp.
pub fn erase_sharps(word: &[LetterId], sharp: LetterId) -> Word {
    word.iter().copied().filter(|&b| b != sharp).collect()
}
