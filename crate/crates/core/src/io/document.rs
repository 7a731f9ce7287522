//! JSON automaton documents.
//!
//! ```json
//! {
//!   "kind": "npa",
//!   "name": "example",
//!   "parameters": ["x"],
//!   "states": ["p", "q"],
//!   "alphabet": ["a"],
//!   "initial": "p",
//!   "final": ["q"],
//!   "transitions": [
//!     { "from": "p", "letter": "a", "to": { "p": "x", "q": "1 - x" } },
//!     { "from": "q", "letter": "a", "to": { "q": "*" } }
//!   ]
//! }
//! ```
//!
//! Weights are rational expressions over the declared parameters. In `npa`
//! documents a weight may be `"*"`, which only records the support.

use std::collections::HashSet;
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::automaton::{Distribution, NumberlessAutomaton, ProbAutomaton, Skeleton};
use crate::constructions::BuchiAutomaton;
use crate::error::{Error, Result};
use crate::rational::format_rational;

use super::expr::{Expr, Parameters};

pub const UNWEIGHTED: &str = "*";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Pa,
    Npa,
    Pba,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionEntry {
    pub from: String,
    pub letter: String,
    pub to: IndexMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDocument {
    pub kind: Kind,
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<String>,
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub initial: String,
    #[serde(rename = "final")]
    pub final_states: Vec<String>,
    pub transitions: Vec<TransitionEntry>,
}

/// A validated document, ready for instantiation.
#[derive(Clone, Debug)]
pub struct Document {
    doc: AutomatonDocument,
    skeleton: Skeleton,
    /// Per `(state, letter)`: targets with their weight expressions
    /// (`None` for `"*"`).
    weights: Vec<Vec<(usize, Option<Expr>)>>,
}

fn invalid(msg: impl fmt::Display) -> Error {
    Error::Validation(msg.to_string())
}

/// Byte offset of a 1-based line and column.
fn offset_of(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    (start + column.saturating_sub(1)).min(text.len())
}

/// Targets of one transition with their weights (`None` for `*`).
type WeightRow = Vec<(usize, Option<Expr>)>;

pub fn parse_document(text: &str) -> Result<Document> {
    let doc: AutomatonDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        position: offset_of(text, e.line(), e.column()),
        message: e.to_string(),
    })?;
    Document::new(doc)
}

impl Document {
    pub fn new(doc: AutomatonDocument) -> Result<Self> {
        let skeleton = Skeleton::new(
            doc.states.clone(),
            doc.alphabet.clone(),
            0,
            std::iter::empty(),
        )
        .map_err(invalid)?;
        let initial = skeleton.state(&doc.initial).map_err(invalid)?;
        let finals = doc
            .final_states
            .iter()
            .map(|s| skeleton.state(s))
            .collect::<Result<Vec<_>>>()
            .map_err(invalid)?;
        let skeleton = Skeleton::new(doc.states.clone(), doc.alphabet.clone(), initial, finals).map_err(invalid)?;

        let mut declared = HashSet::new();
        for p in &doc.parameters {
            if !declared.insert(p.as_str()) {
                return Err(invalid(format!("parameter {p:?} declared twice")));
            }
        }
        let m = skeleton.num_letters();
        let mut weights: Vec<Option<WeightRow>> = vec![None; skeleton.num_states() * m];
        for t in &doc.transitions {
            let s = skeleton.state(&t.from).map_err(invalid)?;
            let a = skeleton.letter(&t.letter).map_err(invalid)?;
            if weights[s * m + a].is_some() {
                return Err(invalid(format!("transition ({}, {}) given twice", t.from, t.letter)));
            }
            if t.to.is_empty() {
                return Err(invalid(format!("transition ({}, {}) has no target", t.from, t.letter)));
            }
            let mut row = Vec::with_capacity(t.to.len());
            for (target, w) in &t.to {
                let q = skeleton.state(target).map_err(invalid)?;
                let expr = if w.trim() == UNWEIGHTED {
                    if doc.kind != Kind::Npa {
                        return Err(invalid(format!("{UNWEIGHTED:?} weight outside an npa document")));
                    }
                    None
                } else {
                    let e = Expr::parse(w)?;
                    let mut vars = Vec::new();
                    e.variables(&mut vars);
                    if let Some(v) = vars.iter().find(|v| !declared.contains(v.as_str())) {
                        return Err(invalid(format!("undeclared parameter {v:?}")));
                    }
                    Some(e)
                };
                row.push((q, expr));
            }
            weights[s * m + a] = Some(row);
        }
        let weights = weights
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| {
                    invalid(Error::Incomplete {
                        state: skeleton.state_name(i / m).into(),
                        letter: skeleton.letter_name(i % m).into(),
                    })
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Document { doc, skeleton, weights })
    }

    pub fn kind(&self) -> Kind {
        self.doc.kind
    }

    pub fn name(&self) -> &str {
        &self.doc.name
    }

    pub fn parameters(&self) -> &[String] {
        &self.doc.parameters
    }

    pub fn raw(&self) -> &AutomatonDocument {
        &self.doc
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn to_npa(&self) -> Result<NumberlessAutomaton> {
        let m = self.skeleton.num_letters();
        let triples = self
            .weights
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(q, _)| (i / m, i % m, *q)));
        NumberlessAutomaton::new(self.skeleton.clone(), triples).map_err(invalid)
    }

    /// Evaluates every weight under `params`. For `npa` documents the result
    /// must also be an instance of the declared support.
    pub fn to_pa(&self, params: &Parameters) -> Result<ProbAutomaton> {
        if let Some(p) = self.doc.parameters.iter().find(|p| !params.contains_key(*p)) {
            return Err(invalid(format!("parameter {p:?} is not bound (use --set {p}=p/q)")));
        }
        let m = self.skeleton.num_letters();
        let mut delta = Vec::with_capacity(self.weights.len());
        for (i, row) in self.weights.iter().enumerate() {
            let mut entries = Vec::with_capacity(row.len());
            for (q, w) in row {
                let w = w.as_ref().ok_or_else(|| {
                    invalid(format!(
                        "transition ({}, {}) has no weights; the document only gives a support",
                        self.skeleton.state_name(i / m),
                        self.skeleton.letter_name(i % m)
                    ))
                })?;
                entries.push((*q, w.eval(params)?));
            }
            let d = Distribution::new(entries).map_err(|e| {
                invalid(format!(
                    "transition ({}, {}): {e}",
                    self.skeleton.state_name(i / m),
                    self.skeleton.letter_name(i % m)
                ))
            })?;
            delta.push(d);
        }
        match self.doc.kind {
            Kind::Npa => self.to_npa()?.instantiate(delta).map_err(invalid),
            _ => ProbAutomaton::new(self.skeleton.clone(), delta).map_err(invalid),
        }
    }

    pub fn to_buchi(&self, params: &Parameters) -> Result<BuchiAutomaton> {
        Ok(BuchiAutomaton::new(self.to_pa(params)?))
    }
}

impl AutomatonDocument {
    pub fn from_pa(name: &str, kind: Kind, pa: &ProbAutomaton) -> Self {
        let sk = pa.skeleton();
        let mut transitions = Vec::with_capacity(sk.num_states() * sk.num_letters());
        for s in 0..sk.num_states() {
            for a in 0..sk.num_letters() {
                let to = pa
                    .transition(s, a)
                    .entries()
                    .iter()
                    .map(|(t, p)| (sk.state_name(*t).to_string(), format_rational(p)))
                    .collect();
                transitions.push(TransitionEntry {
                    from: sk.state_name(s).into(),
                    letter: sk.letter_name(a).into(),
                    to,
                });
            }
        }
        Self::with_transitions(name, kind, sk, transitions)
    }

    pub fn from_npa(name: &str, npa: &NumberlessAutomaton) -> Self {
        let sk = npa.skeleton();
        let mut transitions = Vec::with_capacity(sk.num_states() * sk.num_letters());
        for s in 0..sk.num_states() {
            for a in 0..sk.num_letters() {
                let to = npa
                    .successors(s, a)
                    .iter()
                    .map(|t| (sk.state_name(*t).to_string(), UNWEIGHTED.to_string()))
                    .collect();
                transitions.push(TransitionEntry {
                    from: sk.state_name(s).into(),
                    letter: sk.letter_name(a).into(),
                    to,
                });
            }
        }
        Self::with_transitions(name, Kind::Npa, sk, transitions)
    }

    fn with_transitions(name: &str, kind: Kind, sk: &Skeleton, transitions: Vec<TransitionEntry>) -> Self {
        AutomatonDocument {
            kind,
            name: name.into(),
            parameters: Vec::new(),
            states: sk.states().to_vec(),
            alphabet: sk.alphabet().to_vec(),
            initial: sk.state_name(sk.initial()).into(),
            final_states: sk.accepting().map(|s| sk.state_name(s).to_string()).collect(),
            transitions,
        }
    }

    /// Canonical text: two-space indented JSON with a trailing newline.
    pub fn to_canonical(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }
}
