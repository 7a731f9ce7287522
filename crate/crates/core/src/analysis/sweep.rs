//! Grid sweep over instantiations in a sup-norm ball around a center.

use num_traits::Signed;

use crate::automaton::{Distribution, NumberlessAutomaton, StateId};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::rational::Rational;

use super::search::{value_lower_bound_with, SearchBudget, SearchResult};

const MAX_POINTS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepPoint {
    /// Offset applied to each probabilistic transition, in the order of
    /// `NumberlessAutomaton::probabilistic_pairs`.
    pub offsets: Vec<Rational>,
    pub delta: Vec<Distribution>,
    pub bound: SearchResult,
}

/// Offsets `-eps, …, +eps` in `grid` evenly spaced steps (`grid = 1` gives
/// only `0`).
pub fn grid_offsets(eps: &Rational, grid: usize) -> Vec<Rational> {
    if grid <= 1 {
        return vec![Rational::from_integer(0.into())];
    }
    let steps = Rational::from_integer((grid - 1).into());
    (0..grid)
        .map(|j| {
            let j = Rational::from_integer(j.into());
            -eps + eps * Rational::from_integer(2.into()) * j / &steps
        })
        .collect()
}

/// Moves `offset` of mass from the last support state to the first one.
/// `None` when this would leave the open simplex.
fn perturb(d: &Distribution, offset: &Rational) -> Option<Distribution> {
    let e = d.entries();
    let (first, last): (StateId, StateId) = (e[0].0, e[e.len() - 1].0);
    let moved = e.iter().map(|(s, p)| {
        let v = if *s == first {
            p + offset
        } else if *s == last {
            p - offset
        } else {
            p.clone()
        };
        (*s, v)
    });
    let entries: Vec<_> = moved.collect();
    if entries.iter().any(|(_, v)| !v.is_positive()) {
        return None;
    }
    Distribution::new(entries).ok()
}

pub fn noisy_sweep(
    npa: &NumberlessAutomaton,
    center: &[Distribution],
    eps: &Rational,
    grid: usize,
    budget: SearchBudget,
) -> Result<Vec<SweepPoint>> {
    noisy_sweep_with(npa, center, eps, grid, budget, Exec::default())
}

pub fn noisy_sweep_with(
    npa: &NumberlessAutomaton,
    center: &[Distribution],
    eps: &Rational,
    grid: usize,
    budget: SearchBudget,
    exec: Exec,
) -> Result<Vec<SweepPoint>> {
    if !eps.is_positive() {
        return Err(Error::Domain(format!("eps = {eps} must be positive")));
    }
    npa.instantiate(center.to_vec())?;
    let m = npa.skeleton().num_letters();
    let pairs = npa.probabilistic_pairs();
    let offsets = grid_offsets(eps, grid);
    let total = offsets
        .len()
        .checked_pow(pairs.len() as u32)
        .filter(|&t| t <= MAX_POINTS)
        .ok_or_else(|| Error::Domain(format!("sweep grid exceeds {MAX_POINTS} points")))?;

    let mut points: Vec<(Vec<Rational>, Vec<Distribution>)> = Vec::new();
    'outer: for index in 0..total {
        let mut rest = index;
        let mut delta = center.to_vec();
        let mut chosen = Vec::with_capacity(pairs.len());
        // last pair varies fastest
        let mut digits = vec![0; pairs.len()];
        for d in digits.iter_mut().rev() {
            *d = rest % offsets.len();
            rest /= offsets.len();
        }
        for (&(s, a), &digit) in pairs.iter().zip(&digits) {
            let off = &offsets[digit];
            match perturb(&center[s * m + a], off) {
                Some(d) => delta[s * m + a] = d,
                None => continue 'outer,
            }
            chosen.push(off.clone());
        }
        points.push((chosen, delta));
    }

    let bounds = exec.map(&points, |(_, delta)| {
        let pa = npa.instantiate(delta.clone())?;
        value_lower_bound_with(&pa, budget, Exec::Sequential)
    });
    points
        .into_iter()
        .zip(bounds)
        .map(|((offsets, delta), bound)| {
            Ok(SweepPoint {
                offsets,
                delta,
                bound: bound?,
            })
        })
        .collect()
}
