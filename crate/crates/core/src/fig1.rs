//! The six-state family whose instances have value 1 exactly when the left
//! self-loop is heavier than the right one (`x > y`).
//!
//! Undrawn transitions are self-loops.

use crate::automaton::{AutomatonBuilder, NumberlessAutomaton, ProbAutomaton};
use crate::error::{Error, Result};
use crate::rational::{in_open_unit, one, ratio, Rational};

pub const STATES: [&str; 6] = ["C1", "C2", "L1", "L2", "R1", "R2"];
pub const ALPHABET: [&str; 3] = ["i", "a", "f"];

fn builder(x: &Rational, y: &Rational) -> AutomatonBuilder {
    let mut b = AutomatonBuilder::new();
    for s in STATES {
        b.state(s);
    }
    for a in ALPHABET {
        b.letter(a);
    }
    b.initial("C1").accept("L2");
    let half = ratio(1, 2);
    let loops: [(&str, &[&str]); 6] = [
        ("C1", &["a", "f"]),
        ("C2", &["i", "a"]),
        ("L1", &["i"]),
        ("L2", &["i", "a", "f"]),
        ("R1", &["i"]),
        ("R2", &["i", "a", "f"]),
    ];
    for (s, letters) in loops {
        for a in letters {
            b.edge(s, a, s, one());
        }
    }
    b.edge("C1", "i", "L1", half.clone())
        .edge("C1", "i", "R1", half)
        .edge("C2", "f", "C1", one())
        .edge("L1", "a", "L1", x.clone())
        .edge("L1", "a", "C2", one() - x)
        .edge("L1", "f", "L2", one())
        .edge("R1", "a", "R1", y.clone())
        .edge("R1", "a", "C2", one() - y)
        .edge("R1", "f", "R2", one());
    b
}

/// The instance with self-loop probabilities `x` on `L1` and `y` on `R1`.
pub fn instance(x: &Rational, y: &Rational) -> Result<ProbAutomaton> {
    if !in_open_unit(x) || !in_open_unit(y) {
        return Err(Error::Domain(format!(
            "x = {x} and y = {y} must lie strictly between 0 and 1"
        )));
    }
    builder(x, y).build_pa()
}

pub fn npa() -> NumberlessAutomaton {
    builder(&ratio(1, 2), &ratio(1, 2))
        .build_npa()
        .expect("fixed skeleton is total")
}

/// Closed form for the acceptance of `(i a^n f)^m`:
/// `x^n / (x^n + y^n) * (1 - (1 - (x^n + y^n) / 2)^m)`.
pub fn closed_form(x: &Rational, y: &Rational, n: u64, m: u64) -> Rational {
    use crate::rational::pow;
    let (xn, yn) = (pow(x, n), pow(y, n));
    let s = &xn + &yn;
    let escape = one() - &s / Rational::from_integer(2.into());
    &xn / &s * (one() - pow(&escape, m))
}
