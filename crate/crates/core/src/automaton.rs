//! Probabilistic and numberless automata with exact semantics.
//!
//! States and letters are named by strings but stored by index; the index is
//! the declaration order, which is also the canonical enumeration used by the
//! constructions.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

pub type StateId = usize;
pub type LetterId = usize;
pub type Word = Vec<LetterId>;

/// Finitely supported probability distribution over state indices.
///
/// Entries are sorted by state, strictly positive and sum to exactly one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Distribution {
    entries: Vec<(StateId, Rational)>,
}

impl Distribution {
    pub fn dirac(state: StateId) -> Self {
        Distribution {
            entries: vec![(state, Rational::one())],
        }
    }

    /// Checks nonnegativity and total mass, drops zero entries and merges
    /// repeated states.
    pub fn new(entries: impl IntoIterator<Item = (StateId, Rational)>) -> Result<Self> {
        let mut entries: Vec<_> = entries.into_iter().collect();
        if let Some((s, v)) = entries.iter().find(|(_, v)| v.is_negative()) {
            return Err(Error::NegativeEntry {
                state: s.to_string(),
                value: format_rational(v),
            });
        }
        entries.sort_by_key(|(s, _)| *s);
        let entries = merge_sorted(entries);
        let sum: Rational = entries.iter().map(|(_, v)| v).sum();
        if !sum.is_one() {
            return Err(Error::NotADistribution {
                sum: format_rational(&sum),
            });
        }
        Ok(Distribution { entries })
    }

    /// Builds from entries already known to be sorted, positive and
    /// normalized.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(StateId, Rational)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| v.is_positive()));
        debug_assert!(entries.iter().map(|(_, v)| v).sum::<Rational>().is_one());
        Distribution { entries }
    }

    pub fn entries(&self) -> &[(StateId, Rational)] {
        &self.entries
    }

    pub fn get(&self, state: StateId) -> Rational {
        match self.entries.binary_search_by_key(&state, |(s, _)| *s) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn support(&self) -> impl Iterator<Item = StateId> + '_ {
        self.entries.iter().map(|(s, _)| *s)
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Total mass on the states selected by `pred`.
    pub fn mass_where(&self, mut pred: impl FnMut(StateId) -> bool) -> Rational {
        self.entries
            .iter()
            .filter(|(s, _)| pred(*s))
            .map(|(_, v)| v)
            .sum()
    }

    /// `alpha * a + (1 - alpha) * b` for `alpha` in `[0, 1]`.
    pub fn mix(alpha: &Rational, a: &Distribution, b: &Distribution) -> Result<Distribution> {
        let beta = Rational::one() - alpha;
        let combined = a
            .entries
            .iter()
            .map(|(s, v)| (*s, v * alpha))
            .chain(b.entries.iter().map(|(s, v)| (*s, v * &beta)));
        Distribution::new(combined)
    }
}

fn merge_sorted(entries: Vec<(StateId, Rational)>) -> Vec<(StateId, Rational)> {
    let mut out: Vec<(StateId, Rational)> = Vec::with_capacity(entries.len());
    for (s, v) in entries {
        match out.last_mut() {
            Some((last, acc)) if *last == s => *acc += v,
            _ => out.push((s, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// Names, initial state and accepting set shared by both automaton kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    states: Vec<String>,
    alphabet: Vec<String>,
    initial: StateId,
    accepting: Vec<bool>,
    state_index: HashMap<String, StateId>,
    letter_index: HashMap<String, LetterId>,
}

impl Skeleton {
    pub fn new(
        states: Vec<String>,
        alphabet: Vec<String>,
        initial: StateId,
        accepting: impl IntoIterator<Item = StateId>,
    ) -> Result<Self> {
        let state_index = index_names(&states)?;
        let letter_index = index_names(&alphabet)?;
        if states.is_empty() {
            return Err(Error::Validation("automaton has no states".into()));
        }
        if initial >= states.len() {
            return Err(Error::UnknownState(format!("#{initial}")));
        }
        let mut flags = vec![false; states.len()];
        for f in accepting {
            *flags
                .get_mut(f)
                .ok_or_else(|| Error::UnknownState(format!("#{f}")))? = true;
        }
        Ok(Skeleton {
            states,
            alphabet,
            initial,
            accepting: flags,
            state_index,
            letter_index,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }
    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }
    pub fn num_states(&self) -> usize {
        self.states.len()
    }
    pub fn num_letters(&self) -> usize {
        self.alphabet.len()
    }
    pub fn initial(&self) -> StateId {
        self.initial
    }
    pub fn is_accepting(&self, s: StateId) -> bool {
        self.accepting[s]
    }
    pub fn accepting(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.states.len()).filter(|&s| self.accepting[s])
    }
    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s]
    }
    pub fn letter_name(&self, a: LetterId) -> &str {
        &self.alphabet[a]
    }

    pub fn state(&self, name: &str) -> Result<StateId> {
        self.state_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn letter(&self, name: &str) -> Result<LetterId> {
        self.letter_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    /// Parses a whitespace-separated list of letter names.
    pub fn word(&self, text: &str) -> Result<Word> {
        text.split_whitespace().map(|t| self.letter(t)).collect()
    }

    pub fn letters<S: AsRef<str>>(&self, names: &[S]) -> Result<Word> {
        names.iter().map(|t| self.letter(t.as_ref())).collect()
    }

    pub fn render_word(&self, word: &[LetterId]) -> String {
        word.iter()
            .map(|&a| self.alphabet[a].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn check_word(&self, word: &[LetterId]) -> Result<()> {
        match word.iter().find(|&&a| a >= self.alphabet.len()) {
            Some(a) => Err(Error::UnknownLetter(format!("#{a}"))),
            None => Ok(()),
        }
    }

    fn check_state(&self, s: StateId) -> Result<()> {
        if s < self.states.len() {
            Ok(())
        } else {
            Err(Error::UnknownState(format!("#{s}")))
        }
    }

    fn slot(&self, s: StateId, a: LetterId) -> usize {
        s * self.alphabet.len() + a
    }
}

fn index_names(names: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::Duplicate(n.clone()));
        }
    }
    Ok(index)
}

/// Complete probabilistic automaton `(Q, A, q0, delta, F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbAutomaton {
    skeleton: Skeleton,
    /// Indexed by `state * |A| + letter`.
    delta: Vec<Distribution>,
}

impl ProbAutomaton {
    /// `delta` is indexed by `state * |alphabet| + letter` and must be total.
    pub fn new(skeleton: Skeleton, delta: Vec<Distribution>) -> Result<Self> {
        let expected = skeleton.num_states() * skeleton.num_letters();
        if delta.len() != expected {
            return Err(Error::Validation(format!(
                "transition table has {} entries, expected {expected}",
                delta.len()
            )));
        }
        if let Some(bad) = delta
            .iter()
            .flat_map(|d| d.support())
            .find(|&t| t >= skeleton.num_states())
        {
            return Err(Error::UnknownState(format!("#{bad}")));
        }
        Ok(ProbAutomaton { skeleton, delta })
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn transition(&self, s: StateId, a: LetterId) -> &Distribution {
        &self.delta[self.skeleton.slot(s, a)]
    }

    pub fn transitions(&self) -> &[Distribution] {
        &self.delta
    }

    /// One application of the transition function, extended linearly.
    pub fn step(&self, d: &Distribution, a: LetterId) -> Result<Distribution> {
        if a >= self.skeleton.num_letters() {
            return Err(Error::UnknownLetter(format!("#{a}")));
        }
        for s in d.support() {
            self.skeleton.check_state(s)?;
        }
        Ok(self.step_unchecked(d, a))
    }

    pub(crate) fn step_unchecked(&self, d: &Distribution, a: LetterId) -> Distribution {
        let mut acc: Vec<(StateId, Rational)> = Vec::with_capacity(d.support_len() + 2);
        for (s, w) in d.entries() {
            for (t, p) in self.transition(*s, a).entries() {
                let v = if p.is_one() { w.clone() } else { w * p };
                acc.push((*t, v));
            }
        }
        if d.support_len() > 1 {
            acc.sort_by_key(|(t, _)| *t);
            acc = merge_sorted(acc);
        }
        Distribution::from_sorted_unchecked(acc)
    }

    /// Folds `step` over `word` starting from `d`.
    pub fn run(&self, d: &Distribution, word: &[LetterId]) -> Result<Distribution> {
        self.skeleton.check_word(word)?;
        for s in d.support() {
            self.skeleton.check_state(s)?;
        }
        let mut cur = d.clone();
        for &a in word {
            cur = self.step_unchecked(&cur, a);
        }
        Ok(cur)
    }

    pub fn initial_distribution(&self) -> Distribution {
        Distribution::dirac(self.skeleton.initial())
    }

    pub fn final_mass(&self, d: &Distribution) -> Rational {
        d.mass_where(|s| self.skeleton.is_accepting(s))
    }

    /// Probability of ending in an accepting state after reading `word` from
    /// the initial state.
    pub fn accept_prob(&self, word: &[LetterId]) -> Result<Rational> {
        let d = self.run(&self.initial_distribution(), word)?;
        Ok(self.final_mass(&d))
    }

    /// Probability of going from `source` to a state of `targets` reading `word`.
    pub fn reach_prob(&self, source: StateId, word: &[LetterId], targets: &[StateId]) -> Result<Rational> {
        self.skeleton.check_state(source)?;
        for &t in targets {
            self.skeleton.check_state(t)?;
        }
        let d = self.run(&Distribution::dirac(source), word)?;
        Ok(d.mass_where(|s| targets.contains(&s)))
    }

    pub fn trace(&self, word: &[LetterId]) -> Result<WordEvalTrace> {
        self.skeleton.check_word(word)?;
        let mut prefixes = vec![self.initial_distribution()];
        for &a in word {
            let next = self.step_unchecked(prefixes.last().unwrap(), a);
            prefixes.push(next);
        }
        let acceptance = self.final_mass(prefixes.last().unwrap());
        Ok(WordEvalTrace {
            word: word.to_vec(),
            prefixes,
            acceptance,
        })
    }

    /// Every transition probability lies in `{0, 1/2, 1}`.
    pub fn is_simple(&self) -> bool {
        self.simple_violation().is_none()
    }

    fn simple_violation(&self) -> Option<(StateId, LetterId)> {
        let half = Rational::new(1.into(), 2.into());
        let n = self.skeleton.num_letters();
        self.delta.iter().enumerate().find_map(|(i, d)| {
            let ok = match d.entries() {
                [_] => true,
                [(_, p), (_, q)] => *p == half && *q == half,
                _ => false,
            };
            (!ok).then_some((i / n, i % n))
        })
    }

    /// Underlying numberless automaton: keeps exactly the positive triples.
    pub fn support_abstraction(&self) -> NumberlessAutomaton {
        NumberlessAutomaton {
            skeleton: self.skeleton.clone(),
            support: self.delta.iter().map(|d| d.support().collect()).collect(),
        }
    }
}

/// Per-prefix distributions of one word evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordEvalTrace {
    pub word: Word,
    /// `prefixes[i]` is the distribution after the first `i` letters.
    pub prefixes: Vec<Distribution>,
    pub acceptance: Rational,
}

/// Probabilistic automaton whose probabilities all lie in `{0, 1/2, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplePa(ProbAutomaton);

impl SimplePa {
    pub fn new(pa: ProbAutomaton) -> Result<Self> {
        match pa.simple_violation() {
            None => Ok(SimplePa(pa)),
            Some((s, a)) => Err(Error::NotSimple {
                state: pa.skeleton.state_name(s).to_string(),
                letter: pa.skeleton.letter_name(a).to_string(),
            }),
        }
    }

    pub fn automaton(&self) -> &ProbAutomaton {
        &self.0
    }

    pub fn into_inner(self) -> ProbAutomaton {
        self.0
    }
}

impl std::ops::Deref for SimplePa {
    type Target = ProbAutomaton;
    fn deref(&self) -> &ProbAutomaton {
        &self.0
    }
}

/// Numberless automaton `(Q, A, q0, T, F)`: only the support of each
/// transition is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberlessAutomaton {
    skeleton: Skeleton,
    /// Sorted successor sets, indexed like the transition table.
    support: Vec<Vec<StateId>>,
}

impl NumberlessAutomaton {
    pub fn new(skeleton: Skeleton, triples: impl IntoIterator<Item = (StateId, LetterId, StateId)>) -> Result<Self> {
        let (n, m) = (skeleton.num_states(), skeleton.num_letters());
        let mut support = vec![Vec::new(); n * m];
        for (s, a, t) in triples {
            if s >= n || t >= n {
                return Err(Error::UnknownState(format!("#{}", s.max(t))));
            }
            if a >= m {
                return Err(Error::UnknownLetter(format!("#{a}")));
            }
            support[s * m + a].push(t);
        }
        for (i, succ) in support.iter_mut().enumerate() {
            succ.sort_unstable();
            succ.dedup();
            if succ.is_empty() {
                return Err(Error::Incomplete {
                    state: skeleton.state_name(i / m).to_string(),
                    letter: skeleton.letter_name(i % m).to_string(),
                });
            }
        }
        Ok(NumberlessAutomaton { skeleton, support })
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn successors(&self, s: StateId, a: LetterId) -> &[StateId] {
        &self.support[self.skeleton.slot(s, a)]
    }

    pub fn triples(&self) -> impl Iterator<Item = (StateId, LetterId, StateId)> + '_ {
        let m = self.skeleton.num_letters();
        self.support
            .iter()
            .enumerate()
            .flat_map(move |(i, succ)| succ.iter().map(move |&t| (i / m, i % m, t)))
    }

    /// Builds `A[delta]`; `delta` is indexed like the transition table and
    /// must put positive mass exactly on the support.
    pub fn instantiate(&self, delta: Vec<Distribution>) -> Result<ProbAutomaton> {
        let m = self.skeleton.num_letters();
        if delta.len() != self.support.len() {
            return Err(Error::Validation(format!(
                "transition table has {} entries, expected {}",
                delta.len(),
                self.support.len()
            )));
        }
        for (i, (d, succ)) in delta.iter().zip(&self.support).enumerate() {
            let given: Vec<StateId> = d.support().collect();
            if given != *succ {
                let sk = &self.skeleton;
                let (target, direction) = match succ.iter().find(|t| !given.contains(t)) {
                    Some(&t) => (t, "missing"),
                    None => (*given.iter().find(|t| !succ.contains(t)).unwrap(), "extra"),
                };
                return Err(Error::InconsistentSupport {
                    state: sk.state_name(i / m).to_string(),
                    letter: sk.letter_name(i % m).to_string(),
                    target: if target < sk.num_states() {
                        sk.state_name(target).to_string()
                    } else {
                        format!("#{target}")
                    },
                    direction,
                });
            }
        }
        ProbAutomaton::new(self.skeleton.clone(), delta)
    }

    /// Transitions with more than one successor, in canonical order.
    pub fn probabilistic_pairs(&self) -> Vec<(StateId, LetterId)> {
        let m = self.skeleton.num_letters();
        (0..self.support.len())
            .filter(|&i| self.support[i].len() > 1)
            .map(|i| (i / m, i % m))
            .collect()
    }
}

/// Incremental construction by name. States and letters are numbered in
/// the order they are first mentioned.
#[derive(Clone, Debug, Default)]
pub struct AutomatonBuilder {
    states: Vec<String>,
    alphabet: Vec<String>,
    state_index: HashMap<String, StateId>,
    letter_index: HashMap<String, LetterId>,
    initial: Option<StateId>,
    accepting: Vec<StateId>,
    transitions: HashMap<(StateId, LetterId), Vec<(StateId, Rational)>>,
}

impl AutomatonBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn state(&mut self, name: &str) -> StateId {
        if let Some(&i) = self.state_index.get(name) {
            return i;
        }
        self.states.push(name.to_string());
        self.state_index.insert(name.to_string(), self.states.len() - 1);
        self.states.len() - 1
    }

    pub fn letter(&mut self, name: &str) -> LetterId {
        if let Some(&i) = self.letter_index.get(name) {
            return i;
        }
        self.alphabet.push(name.to_string());
        self.letter_index.insert(name.to_string(), self.alphabet.len() - 1);
        self.alphabet.len() - 1
    }

    pub fn initial(&mut self, name: &str) -> &mut Self {
        let s = self.state(name);
        self.initial = Some(s);
        self
    }

    pub fn accept(&mut self, name: &str) -> &mut Self {
        let s = self.state(name);
        self.accepting.push(s);
        self
    }

    /// Adds `p` to the mass going from `from` to `to` on `letter`.
    pub fn edge(&mut self, from: &str, letter: &str, to: &str, p: Rational) -> &mut Self {
        let (s, a, t) = (self.state(from), self.letter(letter), self.state(to));
        self.transitions.entry((s, a)).or_default().push((t, p));
        self
    }

    pub fn has_transition(&self, from: &str, letter: &str) -> bool {
        match (self.state_index.get(from), self.letter_index.get(letter)) {
            (Some(&s), Some(&a)) => self.transitions.contains_key(&(s, a)),
            _ => false,
        }
    }

    fn skeleton(&self) -> Result<Skeleton> {
        let initial = self
            .initial
            .ok_or_else(|| Error::Validation("no initial state".into()))?;
        Skeleton::new(
            self.states.clone(),
            self.alphabet.clone(),
            initial,
            self.accepting.iter().copied(),
        )
    }

    /// Fails with `Incomplete` on the first missing `(state, letter)` pair.
    pub fn build_pa(&self) -> Result<ProbAutomaton> {
        let skeleton = self.skeleton()?;
        let mut delta = Vec::with_capacity(self.states.len() * self.alphabet.len());
        for s in 0..self.states.len() {
            for a in 0..self.alphabet.len() {
                let entries = self.transitions.get(&(s, a)).ok_or_else(|| Error::Incomplete {
                    state: self.states[s].clone(),
                    letter: self.alphabet[a].clone(),
                })?;
                delta.push(Distribution::new(entries.iter().cloned()).map_err(|e| match e {
                    Error::NotADistribution { sum } => Error::Validation(format!(
                        "transition ({}, {}) sums to {sum}",
                        self.states[s], self.alphabet[a]
                    )),
                    other => other,
                })?);
            }
        }
        ProbAutomaton::new(skeleton, delta)
    }

    /// Missing pairs go to a fresh rejecting sink that loops on every letter.
    pub fn build_pa_with_sink(&self, sink: &str) -> Result<ProbAutomaton> {
        let mut completed = self.clone();
        let missing: Vec<(String, String)> = completed
            .states
            .iter()
            .flat_map(|s| completed.alphabet.iter().map(move |a| (s.clone(), a.clone())))
            .filter(|(s, a)| !self.has_transition(s, a))
            .collect();
        if missing.is_empty() {
            return completed.build_pa();
        }
        if completed.state_index.contains_key(sink) {
            return Err(Error::Duplicate(sink.to_string()));
        }
        for (s, a) in missing {
            completed.edge(&s, &a, sink, Rational::one());
        }
        let letters = completed.alphabet.clone();
        for a in letters {
            completed.edge(sink, &a, sink, Rational::one());
        }
        completed.build_pa()
    }

    /// Support triples are the pairs registered with `edge` (weights ignored).
    pub fn build_npa(&self) -> Result<NumberlessAutomaton> {
        let skeleton = self.skeleton()?;
        let triples: Vec<_> = self
            .transitions
            .iter()
            .flat_map(|(&(s, a), succ)| succ.iter().map(move |(t, _)| (s, a, *t)))
            .collect();
        NumberlessAutomaton::new(skeleton, triples)
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (s, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "#{s}: {v}")?;
        }
        write!(f, "}}")
    }
}
