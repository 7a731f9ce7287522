use std::fmt;

use crate::rational::{format_rational, Rational};

/// Relation a proposition asserts between its two sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    AtMost,
    AtLeast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    Bounded,
    Violated,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropReport {
    pub id: &'static str,
    pub inputs: String,
    pub lhs: Rational,
    pub rhs: Rational,
    pub relation: Relation,
    pub verdict: Verdict,
}

impl PropReport {
    pub fn new(id: &'static str, inputs: String, lhs: Rational, rhs: Rational, relation: Relation) -> Self {
        let verdict = judge(&lhs, &rhs, relation);
        PropReport {
            id,
            inputs,
            lhs,
            rhs,
            relation,
            verdict,
        }
    }

    pub fn not_applicable(id: &'static str, inputs: String) -> Self {
        PropReport {
            id,
            inputs,
            lhs: Rational::default(),
            rhs: Rational::default(),
            relation: Relation::AtMost,
            verdict: Verdict::NotApplicable,
        }
    }

    /// Recomputes the verdict from the stored sides.
    pub fn recheck(&self) -> Verdict {
        match self.verdict {
            Verdict::NotApplicable => Verdict::NotApplicable,
            _ => judge(&self.lhs, &self.rhs, self.relation),
        }
    }

    pub fn is_violation(&self) -> bool {
        self.verdict == Verdict::Violated
    }

    pub const CSV_HEADER: &'static str = "id,inputs,lhs,rhs,lhs_float,rhs_float,relation,verdict";

    pub fn csv_row(&self) -> String {
        format!(
            "{},\"{}\",{},{},{:.12},{:.12},{},{}",
            self.id,
            self.inputs.replace('"', "\"\""),
            format_rational(&self.lhs),
            format_rational(&self.rhs),
            crate::rational::to_f64(&self.lhs),
            crate::rational::to_f64(&self.rhs),
            self.relation,
            self.verdict
        )
    }
}

fn judge(lhs: &Rational, rhs: &Rational, relation: Relation) -> Verdict {
    match relation {
        Relation::Equal if lhs == rhs => Verdict::Equal,
        Relation::AtMost if lhs <= rhs => Verdict::Bounded,
        Relation::AtLeast if lhs >= rhs => Verdict::Bounded,
        _ => Verdict::Violated,
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Equal => "=",
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
        })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equal => "equal",
            Verdict::Bounded => "bounded",
            Verdict::Violated => "violated",
            Verdict::NotApplicable => "not_applicable",
        })
    }
}

impl fmt::Display for PropReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: {} {} {} -> {}",
            self.id,
            self.inputs,
            format_rational(&self.lhs),
            self.relation,
            format_rational(&self.rhs),
            self.verdict
        )
    }
}
