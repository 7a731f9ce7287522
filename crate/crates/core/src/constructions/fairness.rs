use crate::automaton::{AutomatonBuilder, LetterId, ProbAutomaton, Skeleton, StateId, Word};
use crate::error::Result;
use crate::rational::one;

use super::letters::{hat, validate_order, SimAlphabet, SimLetter};

/// Complete DFA over the simulation alphabet accepting
/// `{hat(u) · next_word | u ∈ B*}*`.
///
/// State layout: `start` (initial and only accepting state), `sink`,
/// `between` (a letter block just ended), then for every base letter `b`
/// one state per expected position inside `hat(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FairnessDfa {
    alphabet: SimAlphabet,
    order: Vec<StateId>,
    names: Vec<String>,
    delta: Vec<usize>,
}

pub const START: usize = 0;
pub const SINK: usize = 1;
const BETWEEN: usize = 2;

impl FairnessDfa {
    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn start(&self) -> usize {
        START
    }

    pub fn sink(&self) -> usize {
        SINK
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        s == START
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn alphabet(&self) -> &SimAlphabet {
        &self.alphabet
    }

    pub fn order(&self) -> &[StateId] {
        &self.order
    }

    pub fn next(&self, s: usize, c: LetterId) -> usize {
        self.delta[s * self.alphabet.len() + c]
    }

    pub fn run(&self, from: usize, word: &[LetterId]) -> usize {
        word.iter().fold(from, |s, &c| self.next(s, c))
    }

    pub fn accepts(&self, word: &[LetterId]) -> bool {
        self.run(START, word) == START
    }

    /// Whether `block` is `hat(u)` for some `u` (decided by running the DFA
    /// on `block · next_word`).
    pub fn in_hat_image(&self, block: &[LetterId]) -> bool {
        if block.contains(&self.alphabet.next_word()) {
            return false;
        }
        let end = self.run(START, block);
        self.next(end, self.alphabet.next_word()) == START
    }

    /// Inverse of `hat` on its image.
    pub fn unhat(&self, block: &[LetterId]) -> Option<Word> {
        if !self.in_hat_image(block) {
            return None;
        }
        let width = 3 * self.order.len() + 1;
        Some(
            block
                .chunks(width)
                .map(|chunk| match self.alphabet.decode(chunk[0]) {
                    SimLetter::Check(b, _) => b,
                    _ => unreachable!("accepted block starts with a check letter"),
                })
                .collect(),
        )
    }

    pub fn hat(&self, word: &[LetterId]) -> Result<Word> {
        hat(word, &self.order, &self.alphabet)
    }

    /// The DFA as a deterministic probabilistic automaton over named letters.
    pub fn to_automaton(&self, base: &Skeleton) -> Result<ProbAutomaton> {
        let letters = self.alphabet.names(base);
        let mut b = AutomatonBuilder::new();
        for n in &self.names {
            b.state(n);
        }
        for l in &letters {
            b.letter(l);
        }
        b.initial(&self.names[START]).accept(&self.names[START]);
        for s in 0..self.num_states() {
            for (c, l) in letters.iter().enumerate() {
                b.edge(&self.names[s], l, &self.names[self.next(s, c)], one());
            }
        }
        b.build_pa()
    }
}

/// Builds the fairness checker for the given base alphabet size, using
/// `order` as the enumeration of base states inside each block.
pub fn fairness_dfa(alphabet: SimAlphabet, order: &[StateId], base: &Skeleton) -> Result<FairnessDfa> {
    validate_order(&alphabet, order)?;
    let n = order.len();
    let nb = alphabet.num_base_letters();
    let width = 3 * n;
    let block = |b: usize| 3 + b * width;
    let expect_dollar = |b, i| block(b) + i;
    let expect_apply = |b, i| block(b) + n + i;
    // i in 1..n
    let expect_check = |b, i: usize| block(b) + 2 * n + (i - 1);
    let expect_end = |b| block(b) + width - 1;

    let total = 3 + nb * width;
    let mut names = vec![String::new(); total];
    names[START] = "D[start]".into();
    names[SINK] = "D[sink]".into();
    names[BETWEEN] = "D[between]".into();
    for b in 0..nb {
        let bn = base.letter_name(b);
        for i in 0..n {
            names[expect_dollar(b, i)] = format!("D[{bn},{i},$]");
            names[expect_apply(b, i)] = format!("D[{bn},{i},apply]");
            if i > 0 {
                names[expect_check(b, i)] = format!("D[{bn},{i},check]");
            }
        }
        names[expect_end(b)] = format!("D[{bn},end]");
    }

    let nc = alphabet.len();
    let mut delta = vec![SINK; total * nc];
    let mut set = |s: usize, c: LetterId, t: usize| delta[s * nc + c] = t;
    for s in [START, BETWEEN] {
        set(s, alphabet.next_word(), START);
        for b in 0..nb {
            set(s, alphabet.check(b, order[0]), expect_dollar(b, 0));
        }
    }
    for b in 0..nb {
        for (i, &q) in order.iter().enumerate() {
            set(expect_dollar(b, i), alphabet.dollar(), expect_apply(b, i));
            let after = if i + 1 < n { expect_check(b, i + 1) } else { expect_end(b) };
            set(expect_apply(b, i), alphabet.apply(b, q), after);
            if i > 0 {
                set(expect_check(b, i), alphabet.check(b, q), expect_dollar(b, i));
            }
        }
        set(expect_end(b), alphabet.next_transition(), BETWEEN);
    }
    Ok(FairnessDfa {
        alphabet,
        order: order.to_vec(),
        names,
        delta,
    })
}
