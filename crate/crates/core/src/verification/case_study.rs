//! Exact acceptance of `(i a^n f)^m` on instances of the six-state example.

use num_traits::One;

use crate::error::Result;
use crate::fig1;
use crate::linalg::{Matrix, Scaled};
use crate::par::Exec;
use crate::rational::{format_rational, to_f64, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct CaseStudyRow {
    pub n: u64,
    pub m: u64,
    pub exact: Rational,
    pub float: f64,
    /// Whether `exact > 1 - eps` for the requested `eps`.
    pub above: bool,
}

impl CaseStudyRow {
    pub const CSV_HEADER: &'static str = "n,m,exact,float,above_threshold";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:.12},{}",
            self.n,
            self.m,
            format_rational(&self.exact),
            self.float,
            self.above
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseStudy {
    pub rows: Vec<CaseStudyRow>,
    /// First row (in grid order) whose acceptance exceeds `1 - eps`.
    pub first_above: Option<(u64, u64)>,
}

/// Values of `m` visited: `0`, the powers of two up to `m_max`, and `m_max`.
pub fn m_grid(m_max: u64) -> Vec<u64> {
    let mut ms = vec![0];
    let mut m = 1;
    while m <= m_max {
        ms.push(m);
        m = match m.checked_mul(2) {
            Some(v) => v,
            None => break,
        };
    }
    if *ms.last().unwrap() != m_max {
        ms.push(m_max);
    }
    ms
}

pub fn fig1_case_study(x: &Rational, y: &Rational, n_max: u64, m_max: u64, eps: &Rational) -> Result<CaseStudy> {
    fig1_case_study_with(x, y, n_max, m_max, eps, Exec::default())
}

pub fn fig1_case_study_with(
    x: &Rational,
    y: &Rational,
    n_max: u64,
    m_max: u64,
    eps: &Rational,
    exec: Exec,
) -> Result<CaseStudy> {
    let pa = fig1::instance(x, y)?;
    let sk = pa.skeleton();
    let (i, a, f) = (sk.letter("i")?, sk.letter("a")?, sk.letter("f")?);
    let ms = m_grid(m_max);
    let threshold = Rational::one() - eps;
    let start = sk.initial();

    let per_n = exec.map_range(n_max as usize + 1, |n| -> Result<Vec<CaseStudyRow>> {
        let mut word = vec![i];
        word.extend(std::iter::repeat_n(a, n));
        word.push(f);
        let block = Scaled::of(&Matrix::of_word(&pa, &word)?);
        // block^(2^j) by squaring; any other m by a direct power
        let mut squares = block.clone();
        let mut squared_to = 1u64;
        let mut rows = Vec::with_capacity(ms.len());
        for &m in &ms {
            let power = if m == 0 {
                Scaled::identity(sk.num_states())
            } else if m.is_power_of_two() {
                while squared_to < m {
                    squares = squares.mul(&squares);
                    squared_to *= 2;
                }
                squares.clone()
            } else {
                block.pow(m)
            };
            let exact = power.row_mass(start, |t| sk.is_accepting(t));
            rows.push(CaseStudyRow {
                n: n as u64,
                m,
                float: to_f64(&exact),
                above: exact > threshold,
                exact,
            });
        }
        Ok(rows)
    });
    let mut rows = Vec::new();
    for r in per_n {
        rows.extend(r?);
    }
    let first_above = rows.iter().find(|r| r.above).map(|r| (r.n, r.m));
    Ok(CaseStudy { rows, first_above })
}
