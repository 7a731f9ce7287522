//! Exact checks of the identities relating `A`, `B_lambda` and `C[lambda, theta]`.
//!
//! Left-hand sides are always obtained by running the constructed automaton;
//! right-hand sides by closed formulas on the source automaton.

use num_traits::{One, Zero};

use crate::automaton::{LetterId, ProbAutomaton, SimplePa, StateId, Word};
use crate::constructions::{
    build_simulation, coeff_a, encode_word, erase_sharps, fair_coin, instantiate_simulation, FairCoinOutput,
    SimLetter, SimulationNpa,
};
use crate::error::{Error, Result};
use crate::rational::{format_rational, pow, Rational};

use super::report::{PropReport, Relation};

fn render(pa: &ProbAutomaton, w: &[LetterId]) -> String {
    if w.is_empty() {
        "ε".into()
    } else {
        pa.skeleton().render_word(w)
    }
}

/// Items 1 and 2 of the fair-coin proposition: one report for the first
/// letter of `u` (when there is one), one for the whole of `u`.
pub fn check_fair_coin(
    a: &SimplePa,
    lambda: &Rational,
    k: usize,
    u: &[LetterId],
    q: StateId,
    r: StateId,
) -> Result<Vec<PropReport>> {
    let b = fair_coin(a, lambda)?;
    check_fair_coin_in(a, &b, k, u, q, r)
}

pub fn check_fair_coin_in(
    a: &SimplePa,
    b: &FairCoinOutput,
    k: usize,
    u: &[LetterId],
    q: StateId,
    r: StateId,
) -> Result<Vec<PropReport>> {
    let coeff = coeff_a(&b.lambda, k as u64)?;
    let sharp = b.shape.sharp();
    let mut out = Vec::with_capacity(2);
    let item = |id: &'static str, w: &[LetterId]| -> Result<PropReport> {
        let lhs = b.automaton.reach_prob(q, &encode_word(w, k, sharp), &[r])?;
        let rhs = pow(&coeff, w.len() as u64) * a.reach_prob(q, w, &[r])?;
        let inputs = format!(
            "lambda={} k={k} u={} q={} r={}",
            format_rational(&b.lambda),
            render(a, w),
            a.skeleton().state_name(q),
            a.skeleton().state_name(r)
        );
        Ok(PropReport::new(id, inputs, lhs, rhs, Relation::Equal))
    };
    if let Some(&first) = u.first() {
        out.push(item("fair_coin.1", &[first])?);
    }
    out.push(item("fair_coin.2", u)?);
    Ok(out)
}

/// Item 3: any word over the extended alphabet does at most as well as its
/// sharp-free projection in `A`.
pub fn check_fair_coin_erasure(
    a: &SimplePa,
    b: &FairCoinOutput,
    w: &[LetterId],
    q: StateId,
    r: StateId,
) -> Result<PropReport> {
    let lhs = b.automaton.reach_prob(q, w, &[r])?;
    let rhs = a.reach_prob(q, &erase_sharps(w, b.shape.sharp()), &[r])?;
    let inputs = format!(
        "lambda={} w={} q={} r={}",
        format_rational(&b.lambda),
        render(&b.automaton, w),
        a.skeleton().state_name(q),
        a.skeleton().state_name(r)
    );
    Ok(PropReport::new("fair_coin.3", inputs, lhs, rhs, Relation::AtMost))
}

/// `A`, `B_lambda`, `C` and `C[lambda, theta]` built once and shared by the
/// simulation checks.
#[derive(Clone, Debug)]
pub struct SimulationCase {
    pub source: SimplePa,
    pub b: FairCoinOutput,
    pub c: SimulationNpa,
    pub instance: ProbAutomaton,
    pub theta: Rational,
}

impl SimulationCase {
    pub fn new(source: &SimplePa, lambda: &Rational, theta: &Rational) -> Result<Self> {
        let c = build_simulation(source)?;
        Self::with_simulation(source, c, lambda, theta)
    }

    /// Reuses an already built `C` for new parameters.
    pub fn with_simulation(source: &SimplePa, c: SimulationNpa, lambda: &Rational, theta: &Rational) -> Result<Self> {
        let instance = instantiate_simulation(&c, lambda, theta)?;
        Ok(SimulationCase {
            source: source.clone(),
            b: fair_coin(source, lambda)?,
            c,
            instance,
            theta: theta.clone(),
        })
    }

    pub fn lambda(&self) -> &Rational {
        &self.b.lambda
    }

    fn params(&self) -> String {
        format!(
            "lambda={} theta={}",
            format_rational(self.lambda()),
            format_rational(&self.theta)
        )
    }

    fn render_c(&self, w: &[LetterId]) -> String {
        render(&self.instance, w)
    }

    /// Both identities of the lower-bound proposition for `u` over the
    /// alphabet of `B_lambda`.
    pub fn check_lower(&self, u: &[LetterId], rounds: usize) -> Result<Vec<PropReport>> {
        let pb = self.b.automaton.accept_prob(u)?;
        let tk = pow(&self.theta, u.len() as u64);
        let inputs = format!("{} u={} rounds={rounds}", self.params(), render(&self.b.automaton, u));

        let once = self.instance.accept_prob(&self.c.hat_rounds(u, 1)?)?;
        let first = PropReport::new("lower.single", inputs.clone(), once, &tk * &pb, Relation::Equal);

        let many = self.instance.accept_prob(&self.c.hat_rounds(u, rounds)?)?;
        let miss = pow(&(Rational::one() - &tk), rounds as u64);
        let second = PropReport::new("lower.repeated", inputs, many, (Rational::one() - miss) * pb, Relation::Equal);
        Ok(vec![first, second])
    }

    /// Words without `next_word` are accepted with probability at most theta.
    pub fn check_theta(&self, w: &[LetterId]) -> Result<PropReport> {
        let nw = self.c.alphabet.next_word();
        if w.contains(&nw) {
            return Err(Error::PreconditionFailed("word contains next_word".into()));
        }
        let lhs = self.instance.accept_prob(w)?;
        let inputs = format!("{} w={}", self.params(), self.render_c(w));
        Ok(PropReport::new("theta", inputs, lhs, self.theta.clone(), Relation::AtMost))
    }

    /// For every block `u_i` outside the hat image, the whole word does no
    /// better than its suffix starting at `u_i`.
    pub fn check_cheat_once(&self, blocks: &[Word]) -> Result<Vec<PropReport>> {
        let nw = self.c.alphabet.next_word();
        let join = |bs: &[Word]| -> Word {
            bs.iter()
                .flat_map(|b| b.iter().copied().chain(std::iter::once(nw)))
                .collect()
        };
        let whole = join(blocks);
        let lhs = self.instance.accept_prob(&whole)?;
        let mut out = Vec::new();
        for (i, block) in blocks.iter().enumerate() {
            if self.c.checker.in_hat_image(block) {
                continue;
            }
            let rhs = self.instance.accept_prob(&join(&blocks[i..]))?;
            let inputs = format!("{} blocks={} cheating={i}", self.params(), blocks.len());
            out.push(PropReport::new("cheat_once", inputs, lhs.clone(), rhs, Relation::AtMost));
        }
        if out.is_empty() {
            out.push(PropReport::not_applicable(
                "cheat_once",
                format!("{} blocks={} all in hat image", self.params(), blocks.len()),
            ));
        }
        Ok(out)
    }

    /// Splits `w` at `next_word`, un-hats the well-formed blocks and returns
    /// the one best accepted by `B_lambda`, together with the check
    /// `P_B(v) >= (P_C(w) - theta) / (1 - theta)`.
    pub fn extract_witness(&self, w: &[LetterId]) -> Result<(Word, PropReport)> {
        let p = self.instance.accept_prob(w)?;
        if p <= self.theta {
            return Err(Error::PreconditionFailed(format!(
                "acceptance {} does not exceed theta {}",
                format_rational(&p),
                format_rational(&self.theta)
            )));
        }
        let nw = self.c.alphabet.next_word();
        let mut best: Option<(Word, Rational)> = None;
        for block in w.split(|&c| c == nw) {
            if let Some(v) = self.c.checker.unhat(block) {
                let pv = self.b.automaton.accept_prob(&v)?;
                if best.as_ref().is_none_or(|(_, bp)| pv > *bp) {
                    best = Some((v, pv));
                }
            }
        }
        let (v, pv) = best.unwrap_or_else(|| (Vec::new(), Rational::zero()));
        let bound = (p - &self.theta) / (Rational::one() - &self.theta);
        let inputs = format!(
            "{} w_len={} v={}",
            self.params(),
            w.len(),
            render(&self.b.automaton, &v)
        );
        Ok((v, PropReport::new("upper", inputs, pv, bound, Relation::AtLeast)))
    }

    /// Words of `C` that are not concatenations of well-formed blocks: one
    /// hat block corrupted by `mutation`.
    pub fn corrupt_block(&self, block: &[LetterId], mutation: Mutation) -> Word {
        let mut out = block.to_vec();
        let nw = self.c.alphabet.next_word();
        match mutation {
            Mutation::Swap(i) if out.len() >= 2 => {
                let i = i % (out.len() - 1);
                out.swap(i, i + 1);
            }
            Mutation::Delete(i) if !out.is_empty() => {
                out.remove(i % out.len());
            }
            Mutation::Replace(i, c) if !out.is_empty() => {
                let i = i % out.len();
                out[i] = if c == nw { self.c.alphabet.dollar() } else { c };
            }
            Mutation::Duplicate(i) if !out.is_empty() => {
                let i = i % out.len();
                out.insert(i, out[i]);
            }
            _ => out.push(self.c.alphabet.dollar()),
        }
        out
    }

    /// Whether `c` is a letter of the simulation alphabet other than `next_word`.
    pub fn is_block_letter(&self, c: LetterId) -> bool {
        c < self.c.alphabet.len() && self.c.decode(c) != SimLetter::NextWord
    }
}

/// Ways of breaking a hat block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    Swap(usize),
    Delete(usize),
    Replace(usize, LetterId),
    Duplicate(usize),
    Append,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::AutomatonBuilder;
    use crate::rational::{int, ratio};
    use crate::verification::report::Verdict;
    use crate::verification::random::random_simple_pa;

    fn coin() -> SimplePa {
        let mut b = AutomatonBuilder::new();
        b.initial("p").accept("f");
        b.edge("p", "a", "p", ratio(1, 2)).edge("p", "a", "f", ratio(1, 2));
        b.edge("f", "a", "f", int(1));
        SimplePa::new(b.build_pa().unwrap()).unwrap()
    }

    #[test]
    fn fair_coin_empty_word_is_indicator() {
        let a = coin();
        for (q, r) in [(0, 0), (0, 1), (1, 1)] {
            let reps = check_fair_coin(&a, &ratio(1, 3), 2, &[], q, r).unwrap();
            assert_eq!(reps.len(), 1);
            assert_eq!(reps[0].verdict, Verdict::Equal);
            assert_eq!(reps[0].lhs, if q == r { int(1) } else { int(0) });
        }
    }

    #[test]
    fn fair_coin_random_three_state() {
        let a = random_simple_pa(11, 3, 2, 0.5);
        let u = vec![0, 1];
        for q in 0..3 {
            for r in 0..3 {
                for rep in check_fair_coin(&a, &ratio(1, 3), 2, &u, q, r).unwrap() {
                    assert_eq!(rep.verdict, Verdict::Equal, "{rep}");
                }
            }
        }
    }

    #[test]
    fn erasure_of_encoding_is_bounded() {
        let a = random_simple_pa(5, 3, 2, 0.5);
        let b = fair_coin(&a, &ratio(1, 2)).unwrap();
        let w = encode_word(&[1, 0], 1, b.shape.sharp());
        let rep = check_fair_coin_erasure(&a, &b, &w, 0, 1).unwrap();
        assert_ne!(rep.verdict, Verdict::Violated);
    }

    #[test]
    fn lower_single_round_degenerates() {
        let case = SimulationCase::new(&coin(), &ratio(1, 2), &ratio(1, 3)).unwrap();
        let sharp = case.b.shape.sharp();
        let u = vec![0, sharp, sharp];
        let reps = case.check_lower(&u, 1).unwrap();
        assert_eq!(reps[0].lhs, reps[1].lhs);
        assert!(reps.iter().all(|r| r.verdict == Verdict::Equal));
        // u = ε: indicator of q0 in F
        let reps = case.check_lower(&[], 2).unwrap();
        assert_eq!(reps[0].lhs, int(0));
        assert!(reps.iter().all(|r| r.verdict == Verdict::Equal));
    }

    #[test]
    fn lower_random_two_state() {
        let a = random_simple_pa(2, 2, 1, 0.5);
        let case = SimulationCase::new(&a, &ratio(1, 2), &ratio(1, 3)).unwrap();
        let sharp = case.b.shape.sharp();
        for rep in case.check_lower(&[0, sharp], 2).unwrap() {
            assert_eq!(rep.verdict, Verdict::Equal, "{rep}");
        }
    }

    #[test]
    fn theta_on_check_letter() {
        let case = SimulationCase::new(&coin(), &ratio(1, 2), &ratio(1, 4)).unwrap();
        let rep = case.check_theta(&[case.c.alphabet.check(0, 0)]).unwrap();
        assert_eq!(rep.lhs, int(0));
        assert_eq!(rep.verdict, Verdict::Bounded);
        assert_eq!(case.check_theta(&[]).unwrap().lhs, int(0));
        assert!(case.check_theta(&[case.c.alphabet.next_word()]).is_err());
    }

    #[test]
    fn cheat_once_cases() {
        let case = SimulationCase::new(&coin(), &ratio(1, 2), &ratio(1, 2)).unwrap();
        let sharp = case.b.shape.sharp();
        let good = case.c.hat(&[0, sharp, sharp]).unwrap();
        let reps = case.check_cheat_once(&[good.clone(), good.clone()]).unwrap();
        assert_eq!(reps[0].verdict, Verdict::NotApplicable);
        let bad = case.corrupt_block(&good, Mutation::Swap(3));
        let reps = case.check_cheat_once(std::slice::from_ref(&bad)).unwrap();
        assert_eq!(reps[0].lhs, reps[0].rhs);
        let reps = case.check_cheat_once(&[good.clone(), bad, good]).unwrap();
        assert!(reps.iter().all(|r| r.verdict == Verdict::Bounded), "{reps:?}");
    }

    #[test]
    fn witness_extraction() {
        let mut b = AutomatonBuilder::new();
        b.initial("p").accept("f");
        b.edge("p", "a", "f", int(1)).edge("f", "a", "f", int(1));
        let a = SimplePa::new(b.build_pa().unwrap()).unwrap();
        let case = SimulationCase::new(&a, &ratio(1, 2), &ratio(1, 2)).unwrap();
        let sharp = case.b.shape.sharp();
        // P_B(u) = 7/8, so 150 rounds push C above theta
        let u = vec![0, sharp, sharp, sharp, sharp, sharp, sharp];
        let w = case.c.hat_rounds(&u, 150).unwrap();
        let (v, rep) = case.extract_witness(&w).unwrap();
        assert_eq!(v, u);
        assert_eq!(rep.verdict, Verdict::Bounded, "{rep}");
        let nw = case.c.alphabet.next_word();
        assert!(matches!(case.extract_witness(&[nw]), Err(Error::PreconditionFailed(_))));
    }
}
