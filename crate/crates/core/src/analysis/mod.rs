//! Quantitative exploration: value lower bounds, word families, noisy
//! sweeps and lasso-word probabilities.

pub mod family;
pub mod lasso;
pub mod search;
pub mod sweep;

pub use family::{family_eval, Bindings, Exponent, FamilyTemplate, Segment};
pub use lasso::{lasso_prob, LassoWord};
pub use search::{value_lower_bound, value_lower_bound_with, SearchBudget, SearchResult};
pub use sweep::{noisy_sweep, noisy_sweep_with, SweepPoint};
