//! Automaton documents, parameter expressions and Graphviz export.

pub mod document;
pub mod dot;
pub mod expr;

pub use document::{parse_document, AutomatonDocument, Document, Kind, TransitionEntry};
pub use dot::{export_dot_npa, export_dot_pa};
pub use expr::{eval_str, Expr, Parameters};

/// The six-state example as a parametric `npa` document over `x` and `y`.
pub const FIG1_DOCUMENT: &str = include_str!("../../assets/fig1.json");
