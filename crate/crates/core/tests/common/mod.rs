//! Independent oracles shared by the integration tests. None of them call
//! the library's evaluation code: they use their own propagation, graph
//! search and elimination.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use numberless::analysis::LassoWord;
use numberless::constructions::{BuchiAutomaton, SimulationNpa};
use numberless::rational::{ratio, Rational};
use numberless::{Distribution, LetterId, NumberlessAutomaton, ProbAutomaton, Skeleton, StateId};

/// `(x^n / (x^n + y^n)) (1 - (1 - (x^n + y^n)/2)^m)`.
pub fn fig1_closed_form(x: &Rational, y: &Rational, n: u64, m: u64) -> Rational {
    let (num, den) = fig1_closed_form_parts(x, y, n, m);
    Rational::new(num, den)
}

/// Unreduced `(num, den)` of the closed form, built on integers only:
/// with `A = xn_num*yn_den`, `S = A + yn_num*xn_den`, `B = xn_den*yn_den`,
/// the value is `A * ((2B)^m - (2B - S)^m) / (S * (2B)^m)`.
pub fn fig1_closed_form_parts(x: &Rational, y: &Rational, n: u64, m: u64) -> (BigInt, BigInt) {
    let n = n as u32;
    let m = m as u32;
    let (xa, xb) = (x.numer().pow(n), x.denom().pow(n));
    let (ya, yb) = (y.numer().pow(n), y.denom().pow(n));
    let a = &xa * &yb;
    let s = &a + &ya * &xb;
    let two_b = BigInt::from(2) * &xb * &yb;
    let full = two_b.pow(m);
    let stay = (&two_b - &s).pow(m);
    (a * (&full - stay), s * full)
}

/// `r == num/den` without reducing the right-hand side.
pub fn equals_fraction(r: &Rational, num: &BigInt, den: &BigInt) -> bool {
    r.numer() * den == num * r.denom()
}

/// Acceptance by brute-force enumeration of runs.
pub fn accept_by_paths(pa: &ProbAutomaton, word: &[LetterId]) -> Rational {
    fn go(pa: &ProbAutomaton, s: StateId, rest: &[LetterId], mass: Rational) -> Rational {
        match rest.split_first() {
            None if pa.skeleton().is_accepting(s) => mass,
            None => Rational::zero(),
            Some((&a, tail)) => pa
                .transition(s, a)
                .entries()
                .iter()
                .map(|(t, p)| go(pa, *t, tail, &mass * p))
                .sum(),
        }
    }
    go(pa, pa.skeleton().initial(), word, Rational::one())
}

fn gauss_jordan(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Vec<Rational> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("nonsingular");
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = Rational::one() / &a[col][col];
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        b[col] = &b[col] * &inv;
        let pivot_row = a[col].clone();
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for (v, p) in a[r].iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    b
}

/// Büchi acceptance of `stem cycle^ω` on the letter-level chain over
/// `(state, position)`: a run is accepting iff it ends in a bottom component
/// containing an accepting state.
pub fn lasso_oracle(ba: &BuchiAutomaton, lasso: &LassoWord) -> Rational {
    let pa = &ba.automaton;
    let (s, c) = (lasso.stem.len(), lasso.cycle.len());
    let letter = |p: usize| if p < s { lasso.stem[p] } else { lasso.cycle[p - s] };
    let next_pos = |p: usize| if p + 1 < s + c { p + 1 } else { s };

    let mut index: HashMap<(StateId, usize), usize> = HashMap::new();
    let mut nodes = vec![(pa.skeleton().initial(), 0)];
    index.insert(nodes[0], 0);
    let mut edges: Vec<Vec<(usize, Rational)>> = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        let (q, p) = nodes[i];
        let mut out = Vec::new();
        for (t, w) in pa.transition(q, letter(p)).entries() {
            let key = (*t, next_pos(p));
            let j = *index.entry(key).or_insert_with(|| {
                nodes.push(key);
                nodes.len() - 1
            });
            out.push((j, w.clone()));
        }
        edges.push(out);
        i += 1;
    }
    let n = nodes.len();
    let reach: Vec<Vec<bool>> = (0..n)
        .map(|v| {
            let mut seen = vec![false; n];
            let mut queue = VecDeque::from([v]);
            seen[v] = true;
            while let Some(u) = queue.pop_front() {
                for (w, _) in &edges[u] {
                    if !seen[*w] {
                        seen[*w] = true;
                        queue.push_back(*w);
                    }
                }
            }
            seen
        })
        .collect();
    let bottom: Vec<bool> = (0..n).map(|v| (0..n).all(|u| !reach[v][u] || reach[u][v])).collect();
    let good: Vec<bool> = (0..n)
        .map(|v| bottom[v] && (0..n).any(|u| reach[v][u] && ba.is_buchi_accepting(nodes[u].0)))
        .collect();
    let transient: Vec<usize> = (0..n).filter(|&v| !bottom[v]).collect();
    if !bottom[0] {
        let pos: HashMap<usize, usize> = transient.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let t = transient.len();
        let mut a = vec![vec![Rational::zero(); t]; t];
        let mut b = vec![Rational::zero(); t];
        for (k, &v) in transient.iter().enumerate() {
            a[k][k] = Rational::one();
            for (w, p) in &edges[v] {
                match pos.get(w) {
                    Some(&l) => a[k][l] -= p,
                    None if good[*w] => b[k] += p,
                    None => {}
                }
            }
        }
        gauss_jordan(a, b)[pos[&0]].clone()
    } else if good[0] {
        Rational::one()
    } else {
        Rational::zero()
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn random_weights(rng: &mut impl Rng, k: usize) -> Vec<Rational> {
    let raw: Vec<i64> = (0..k).map(|_| rng.random_range(1..=6)).collect();
    let total: i64 = raw.iter().sum();
    raw.into_iter().map(|r| ratio(r, total)).collect()
}

fn random_support(rng: &mut impl Rng, n: usize) -> Vec<StateId> {
    let k = rng.random_range(1..=n.min(3));
    let mut out: Vec<StateId> = Vec::new();
    while out.len() < k {
        let t = rng.random_range(0..n);
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out.sort();
    out
}

fn random_skeleton(rng: &mut impl Rng, n: usize, m: usize) -> Skeleton {
    let finals: Vec<_> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
    Skeleton::new(names("s", n), names("l", m), 0, finals).unwrap()
}

/// Random numberless automaton with an instance of it.
pub fn random_npa(rng: &mut impl Rng, n: usize, m: usize) -> (NumberlessAutomaton, Vec<Distribution>) {
    let sk = random_skeleton(rng, n, m);
    let mut triples = Vec::new();
    let mut delta = Vec::new();
    for s in 0..n {
        for a in 0..m {
            let support = random_support(rng, n);
            let w = random_weights(rng, support.len());
            triples.extend(support.iter().map(|&t| (s, a, t)));
            delta.push(Distribution::new(support.into_iter().zip(w)).unwrap());
        }
    }
    (NumberlessAutomaton::new(sk, triples).unwrap(), delta)
}

/// Random automaton with arbitrary rational weights.
pub fn random_pa(rng: &mut impl Rng, n: usize, m: usize) -> ProbAutomaton {
    let (npa, delta) = random_npa(rng, n, m);
    npa.instantiate(delta).unwrap()
}

/// Well-formedness of `(hat(u) next_word)^l` words, checked block by block.
pub struct BlockOracle {
    checks: Vec<Vec<LetterId>>,
    applies: Vec<Vec<LetterId>>,
    dollar: LetterId,
    next_transition: LetterId,
    next_word: LetterId,
}

impl BlockOracle {
    pub fn new(c: &SimulationNpa) -> Self {
        let nb = c.base_skeleton().num_letters();
        let order = c.order();
        BlockOracle {
            checks: (0..nb).map(|b| order.iter().map(|&q| c.alphabet.check(b, q)).collect()).collect(),
            applies: (0..nb).map(|b| order.iter().map(|&q| c.alphabet.apply(b, q)).collect()).collect(),
            dollar: c.alphabet.dollar(),
            next_transition: c.alphabet.next_transition(),
            next_word: c.alphabet.next_word(),
        }
    }

    fn letter_block(&self, b: usize) -> Vec<LetterId> {
        let mut out = Vec::new();
        for (chk, app) in self.checks[b].iter().zip(&self.applies[b]) {
            out.extend([*chk, self.dollar, *app]);
        }
        out.push(self.next_transition);
        out
    }

    fn is_block(&self, mut w: &[LetterId]) -> bool {
        'outer: while !w.is_empty() {
            for b in 0..self.checks.len() {
                let lb = self.letter_block(b);
                if w.starts_with(&lb) {
                    w = &w[lb.len()..];
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }

    pub fn is_valid(&self, w: &[LetterId]) -> bool {
        if w.is_empty() {
            return true;
        }
        if *w.last().unwrap() != self.next_word {
            return false;
        }
        w[..w.len() - 1].split(|&c| c == self.next_word).all(|blk| self.is_block(blk))
    }
}
