//! Small dense exact linear algebra over rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::automaton::{Distribution, LetterId, ProbAutomaton};
use crate::error::{Error, Result};
use crate::rational::{reduce, Rational};

/// Square matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.n + j] = v;
    }

    /// Stochastic matrix of reading `word`: entry `(s, t)` is the probability
    /// of going from `s` to `t`.
    pub fn of_word(pa: &ProbAutomaton, word: &[LetterId]) -> Result<Self> {
        let n = pa.skeleton().num_states();
        let mut m = Self::zeros(n);
        for s in 0..n {
            let d = pa.run(&Distribution::dirac(s), word)?;
            for (t, p) in d.entries() {
                m.set(s, *t, p.clone());
            }
        }
        Ok(m)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `self^exp`, computed on integer numerators over a shared denominator
    /// so no gcd runs until the final entries are known.
    pub fn pow(&self, exp: u64) -> Matrix {
        Scaled::of(self).pow(exp).to_matrix()
    }

    /// Row vector `d` times this matrix.
    pub fn apply(&self, d: &Distribution) -> Result<Distribution> {
        let mut out = vec![Rational::zero(); self.n];
        for (s, w) in d.entries() {
            for (t, slot) in out.iter_mut().enumerate() {
                let p = self.get(*s, t);
                if !p.is_zero() {
                    *slot += w * p;
                }
            }
        }
        Distribution::new(out.into_iter().enumerate())
    }
}

/// Matrix `num / den` with integer entries. Products never reduce, which is
/// what makes long powers affordable.
#[derive(Clone, Debug)]
pub struct Scaled {
    n: usize,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Scaled {
    pub fn of(m: &Matrix) -> Self {
        let den = m.data.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
        let num = m.data.iter().map(|r| r.numer() * (&den / r.denom())).collect();
        Scaled { n: m.n, num, den }
    }

    pub fn identity(n: usize) -> Self {
        let mut num = vec![BigInt::zero(); n * n];
        for i in 0..n {
            num[i * n + i] = BigInt::one();
        }
        Scaled { n, num, den: BigInt::one() }
    }

    pub fn mul(&self, other: &Scaled) -> Scaled {
        let n = self.n;
        let mut num = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.num[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.num[k * n + j];
                    if !b.is_zero() {
                        num[i * n + j] += a * b;
                    }
                }
            }
        }
        Scaled { n, num, den: &self.den * &other.den }
    }

    pub fn pow(&self, mut exp: u64) -> Scaled {
        let mut result: Option<Scaled> = None;
        let mut sq = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = Some(match result {
                    None => sq.clone(),
                    Some(r) => r.mul(&sq),
                });
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul(&sq);
            }
        }
        result.unwrap_or_else(|| Self::identity(self.n))
    }

    /// Sum of row `i` over the columns picked by `keep`, reduced once.
    pub fn row_mass(&self, i: usize, keep: impl Fn(usize) -> bool) -> Rational {
        let total: BigInt = (0..self.n).filter(|&j| keep(j)).map(|j| &self.num[i * self.n + j]).sum();
        reduce(total, self.den.clone())
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix {
            n: self.n,
            data: self.num.iter().map(|v| reduce(v.clone(), self.den.clone())).collect(),
        }
    }
}

/// Solves `a x = b` by Gauss-Jordan elimination. `a` is given by rows.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Result<Vec<Rational>> {
    let n = b.len();
    if a.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::Validation("linear system is not square".into()));
    }
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Validation("singular linear system".into()))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = Rational::one() / &a[col][col];
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        b[col] *= &inv;
        let pivot_row = a[col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for (v, p) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                *v -= &factor * p;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    Ok(b)
}
