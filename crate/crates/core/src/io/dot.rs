//! Graphviz rendering. Nodes follow declaration order and edges are sorted
//! by source, target and letter, so the output is stable.

use std::fmt::Write;

use crate::automaton::{NumberlessAutomaton, ProbAutomaton, Skeleton};
use crate::rational::format_rational;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn header(name: &str, sk: &Skeleton) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=LR;\n", quote(name));
    for s in 0..sk.num_states() {
        let shape = if sk.is_accepting(s) { "doublecircle" } else { "circle" };
        let style = if s == sk.initial() { ", style=bold" } else { "" };
        let _ = writeln!(out, "  {} [shape={shape}{style}];", quote(sk.state_name(s)));
    }
    out
}

fn edges(out: &mut String, sk: &Skeleton, mut list: Vec<(usize, usize, usize, String)>) {
    list.sort();
    for (s, t, _, label) in list {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(sk.state_name(s)),
            quote(sk.state_name(t)),
            quote(&label)
        );
    }
    out.push_str("}\n");
}

/// Edges labelled `letter, p/q`.
pub fn export_dot_pa(name: &str, pa: &ProbAutomaton) -> String {
    let sk = pa.skeleton();
    let mut out = header(name, sk);
    let mut list = Vec::new();
    for s in 0..sk.num_states() {
        for a in 0..sk.num_letters() {
            for (t, p) in pa.transition(s, a).entries() {
                list.push((s, *t, a, format!("{}, {}", sk.letter_name(a), format_rational(p))));
            }
        }
    }
    edges(&mut out, sk, list);
    out
}

/// Edges labelled by their letter only.
pub fn export_dot_npa(name: &str, npa: &NumberlessAutomaton) -> String {
    let sk = npa.skeleton();
    let mut out = header(name, sk);
    let list = npa
        .triples()
        .map(|(s, a, t)| (s, t, a, sk.letter_name(a).to_string()))
        .collect();
    edges(&mut out, sk, list);
    out
}
