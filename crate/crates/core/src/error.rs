use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a distribution: entries sum to {sum}")]
    NotADistribution { sum: String },
    #[error("not a distribution: negative entry {value} on state {state}")]
    NegativeEntry { state: String, value: String },
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("duplicate identifier {0:?}")]
    Duplicate(String),
    #[error("incomplete automaton: no transition from {state:?} on {letter:?}")]
    Incomplete { state: String, letter: String },
    #[error("inconsistent support: {direction} triple ({state}, {letter}, {target})")]
    InconsistentSupport {
        state: String,
        letter: String,
        target: String,
        /// `"missing"`: the triple is in the support but gets no mass;
        /// `"extra"`: mass is assigned outside the support.
        direction: &'static str,
    },
    #[error("not a simple automaton: transition ({state:?}, {letter:?}) has probabilities outside {{0, 1/2, 1}}")]
    NotSimple { state: String, letter: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("state order does not enumerate the automaton states: {0}")]
    OrderMismatch(String),
    #[error("alphabet already contains {0:?}")]
    AlphabetClash(String),
    #[error("search budget exceeded: more than {limit} distinct distributions")]
    BudgetExceeded { limit: usize },
    #[error("lasso cycle must be nonempty")]
    EmptyCycle,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("validation error: {0}")]
    Validation(String),
}
