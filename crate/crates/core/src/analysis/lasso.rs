//! Exact acceptance probability of ultimately periodic words `stem · cycle^ω`
//! for probabilistic Büchi automata.
//!
//! One step of the induced Markov chain reads the whole cycle. Its states
//! are pairs `(q, visited)` where `visited` records whether the last cycle
//! traversal passed through an accepting state. Inside a bottom strongly
//! connected component every state recurs almost surely, so a bottom
//! component is accepting iff it holds a pair with `visited = true`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::automaton::{Distribution, Word};
use crate::constructions::BuchiAutomaton;
use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassoWord {
    pub stem: Word,
    pub cycle: Word,
}

impl LassoWord {
    pub fn new(stem: Word, cycle: Word) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::EmptyCycle);
        }
        Ok(LassoWord { stem, cycle })
    }
}

type Node = (usize, bool);

/// Distribution over `(state, visited)` after reading `cycle` from `q`.
fn cycle_step(ba: &BuchiAutomaton, q: usize, cycle: &[usize]) -> Vec<(Node, Rational)> {
    let pa = &ba.automaton;
    let mut cur: HashMap<Node, Rational> = HashMap::from([((q, false), Rational::one())]);
    for &a in cycle {
        let mut next: HashMap<Node, Rational> = HashMap::new();
        for ((s, seen), w) in cur {
            for (t, p) in pa.transition(s, a).entries() {
                let flag = seen || ba.is_buchi_accepting(*t);
                *next.entry((*t, flag)).or_insert_with(Rational::zero) += &w * p;
            }
        }
        cur = next;
    }
    let mut out: Vec<_> = cur.into_iter().collect();
    out.sort_by_key(|(n, _)| *n);
    out
}

/// Probability that the run on `stem · cycle^ω` visits accepting states
/// infinitely often.
pub fn lasso_prob(ba: &BuchiAutomaton, word: &LassoWord) -> Result<Rational> {
    if word.cycle.is_empty() {
        return Err(Error::EmptyCycle);
    }
    let pa = &ba.automaton;
    pa.skeleton().check_word(&word.cycle)?;
    let start: Distribution = pa.run(&pa.initial_distribution(), &word.stem)?;

    // reachable part of the cycle chain
    let mut index: HashMap<Node, usize> = HashMap::new();
    let mut nodes: Vec<Node> = Vec::new();
    let mut rows: Vec<Vec<(usize, Rational)>> = Vec::new();
    let mut stack: Vec<Node> = Vec::new();
    let mut intern = |n: Node, nodes: &mut Vec<Node>, stack: &mut Vec<Node>| -> usize {
        *index.entry(n).or_insert_with(|| {
            nodes.push(n);
            stack.push(n);
            nodes.len() - 1
        })
    };
    let init: Vec<(usize, Rational)> = start
        .entries()
        .iter()
        .map(|(q, p)| (intern((*q, false), &mut nodes, &mut stack), p.clone()))
        .collect();
    let mut successors_of: HashMap<usize, Vec<(Node, Rational)>> = HashMap::new();
    while let Some((q, _)) = stack.pop() {
        let succ = successors_of
            .entry(q)
            .or_insert_with(|| cycle_step(ba, q, &word.cycle))
            .clone();
        for (n, _) in &succ {
            intern(*n, &mut nodes, &mut stack);
        }
    }
    for &(q, _) in &nodes {
        let row = successors_of[&q]
            .iter()
            .map(|(n, p)| (index[n], p.clone()))
            .collect();
        rows.push(row);
    }

    let mut graph = DiGraph::<(), ()>::with_capacity(nodes.len(), 0);
    let ids: Vec<_> = (0..nodes.len()).map(|_| graph.add_node(())).collect();
    for (i, row) in rows.iter().enumerate() {
        for (j, _) in row {
            graph.add_edge(ids[i], ids[*j], ());
        }
    }
    let mut component = vec![0usize; nodes.len()];
    let sccs = tarjan_scc(&graph);
    for (c, scc) in sccs.iter().enumerate() {
        for n in scc {
            component[n.index()] = c;
        }
    }
    let bottom: Vec<bool> = sccs
        .iter()
        .enumerate()
        .map(|(c, scc)| {
            scc.iter()
                .all(|n| rows[n.index()].iter().all(|(j, _)| component[*j] == c))
        })
        .collect();
    let accepting_bottom: Vec<bool> = sccs
        .iter()
        .enumerate()
        .map(|(c, scc)| bottom[c] && scc.iter().any(|n| nodes[n.index()].1))
        .collect();

    // absorption probabilities for transient nodes
    let transient: Vec<usize> = (0..nodes.len()).filter(|&i| !bottom[component[i]]).collect();
    let pos: HashMap<usize, usize> = transient.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let t = transient.len();
    let mut a = vec![vec![Rational::zero(); t]; t];
    let mut b = vec![Rational::zero(); t];
    for (k, &i) in transient.iter().enumerate() {
        a[k][k] += Rational::one();
        for (j, p) in &rows[i] {
            if let Some(&l) = pos.get(j) {
                a[k][l] -= p;
            } else if accepting_bottom[component[*j]] {
                b[k] += p;
            }
        }
    }
    let x = if t > 0 { solve(a, b)? } else { Vec::new() };
    let value = |i: usize| -> Rational {
        match pos.get(&i) {
            Some(&k) => x[k].clone(),
            None if accepting_bottom[component[i]] => Rational::one(),
            None => Rational::zero(),
        }
    };
    Ok(init.iter().map(|(i, p)| p * value(*i)).sum())
}
