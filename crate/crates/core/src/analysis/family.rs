//! Parametric word families such as `(i a^n f)^m`.

use std::collections::BTreeMap;
use std::fmt;

use crate::automaton::{Distribution, ProbAutomaton, Skeleton, Word};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exponent {
    Const(u64),
    Var(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Segment {
    Word(Word),
    Repeat(FamilyTemplate, Exponent),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyTemplate {
    pub segments: Vec<Segment>,
}

pub type Bindings = BTreeMap<String, u64>;

/// Repetitions above this count on automata of at most `MATRIX_STATES`
/// states are evaluated by squaring the block's transfer matrix.
const UNROLL_LIMIT: u64 = 16;
const MATRIX_STATES: usize = 64;

impl Exponent {
    fn resolve(&self, bindings: &Bindings) -> Result<u64> {
        match self {
            Exponent::Const(k) => Ok(*k),
            Exponent::Var(v) => bindings
                .get(v)
                .copied()
                .ok_or_else(|| Error::Validation(format!("unbound variable {v:?}"))),
        }
    }
}

impl FamilyTemplate {
    /// Parses templates like `(i a^n f)^m` or `a^3 b`. Letters are
    /// whitespace-separated names of `skeleton`'s alphabet.
    pub fn parse(text: &str, skeleton: &Skeleton) -> Result<Self> {
        let tokens = tokenize(text);
        let mut pos = 0;
        let t = parse_seq(&tokens, &mut pos, skeleton)?;
        if pos != tokens.len() {
            return Err(Error::Parse {
                position: tokens[pos].0,
                message: format!("unexpected {:?}", tokens[pos].1),
            });
        }
        Ok(t)
    }

    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        for s in &self.segments {
            if let Segment::Repeat(t, e) = s {
                if let Exponent::Var(v) = e {
                    out.push(v.clone());
                }
                t.collect_vars(out);
            }
        }
    }

    pub fn expand(&self, bindings: &Bindings) -> Result<Word> {
        let mut out = Vec::new();
        self.expand_into(bindings, &mut out)?;
        Ok(out)
    }

    fn expand_into(&self, bindings: &Bindings, out: &mut Word) -> Result<()> {
        for s in &self.segments {
            match s {
                Segment::Word(w) => out.extend_from_slice(w),
                Segment::Repeat(t, e) => {
                    let k = e.resolve(bindings)?;
                    let mut inner = Vec::new();
                    t.expand_into(bindings, &mut inner)?;
                    for _ in 0..k {
                        out.extend_from_slice(&inner);
                    }
                }
            }
        }
        Ok(())
    }

    fn run(&self, pa: &ProbAutomaton, d: Distribution, bindings: &Bindings) -> Result<Distribution> {
        let mut cur = d;
        for s in &self.segments {
            cur = match s {
                Segment::Word(w) => pa.run(&cur, w)?,
                Segment::Repeat(t, e) => {
                    let k = e.resolve(bindings)?;
                    let n = pa.skeleton().num_states();
                    if k <= UNROLL_LIMIT || n > MATRIX_STATES {
                        for _ in 0..k {
                            cur = t.run(pa, cur, bindings)?;
                        }
                        cur
                    } else {
                        let block = t.transfer_matrix(pa, bindings)?;
                        block.pow(k).apply(&cur)?
                    }
                }
            };
        }
        Ok(cur)
    }

    fn transfer_matrix(&self, pa: &ProbAutomaton, bindings: &Bindings) -> Result<Matrix> {
        let n = pa.skeleton().num_states();
        let mut m = Matrix::zeros(n);
        for s in 0..n {
            let d = self.run(pa, Distribution::dirac(s), bindings)?;
            for (t, p) in d.entries() {
                m.set(s, *t, p.clone());
            }
        }
        Ok(m)
    }
}

/// Exact acceptance probability of the template expanded under `bindings`.
pub fn family_eval(pa: &ProbAutomaton, template: &FamilyTemplate, bindings: &Bindings) -> Result<Rational> {
    for v in template.variables() {
        if !bindings.contains_key(&v) {
            return Err(Error::Validation(format!("unbound variable {v:?}")));
        }
    }
    let d = template.run(pa, pa.initial_distribution(), bindings)?;
    Ok(pa.final_mass(&d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Caret,
    Name(String),
}

fn tokenize(text: &str) -> Vec<(usize, Tok)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 0;
    let flush = |cur: &mut String, start: usize, out: &mut Vec<(usize, Tok)>| {
        if !cur.is_empty() {
            out.push((start, Tok::Name(std::mem::take(cur))));
        }
    };
    for (i, ch) in text.char_indices() {
        let tok = match ch {
            '(' => Some(Tok::Open),
            ')' => Some(Tok::Close),
            '^' => Some(Tok::Caret),
            c if c.is_whitespace() => None,
            c => {
                if cur.is_empty() {
                    start = i;
                }
                cur.push(c);
                continue;
            }
        };
        flush(&mut cur, start, &mut out);
        if let Some(t) = tok {
            out.push((i, t));
        }
    }
    flush(&mut cur, start, &mut out);
    out
}

fn parse_seq(tokens: &[(usize, Tok)], pos: &mut usize, sk: &Skeleton) -> Result<FamilyTemplate> {
    let mut segments = Vec::new();
    while *pos < tokens.len() {
        let item = match &tokens[*pos].1 {
            Tok::Close => break,
            Tok::Open => {
                *pos += 1;
                let inner = parse_seq(tokens, pos, sk)?;
                match tokens.get(*pos) {
                    Some((_, Tok::Close)) => *pos += 1,
                    _ => {
                        return Err(Error::Parse {
                            position: tokens.get(*pos).map_or(usize::MAX, |t| t.0),
                            message: "missing ')'".into(),
                        })
                    }
                }
                inner
            }
            Tok::Name(n) => {
                *pos += 1;
                FamilyTemplate {
                    segments: vec![Segment::Word(vec![sk.letter(n)?])],
                }
            }
            Tok::Caret => {
                return Err(Error::Parse {
                    position: tokens[*pos].0,
                    message: "exponent without a base".into(),
                })
            }
        };
        if let Some((_, Tok::Caret)) = tokens.get(*pos) {
            *pos += 1;
            let exp = match tokens.get(*pos) {
                Some((_, Tok::Name(e))) => match e.parse::<u64>() {
                    Ok(k) => Exponent::Const(k),
                    Err(_) => Exponent::Var(e.clone()),
                },
                other => {
                    return Err(Error::Parse {
                        position: other.map_or(usize::MAX, |t| t.0),
                        message: "expected exponent".into(),
                    })
                }
            };
            *pos += 1;
            segments.push(Segment::Repeat(item, exp));
        } else {
            for seg in item.segments {
                match (segments.last_mut(), seg) {
                    (Some(Segment::Word(w)), Segment::Word(more)) => w.extend(more),
                    (_, seg) => segments.push(seg),
                }
            }
        }
    }
    Ok(FamilyTemplate { segments })
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Const(k) => write!(f, "{k}"),
            Exponent::Var(v) => write!(f, "{v}"),
        }
    }
}
