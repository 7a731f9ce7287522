//! Executable checks of the probability identities behind the constructions,
//! the six-state case study, and random instance generation.

pub mod case_study;
pub mod chain;
pub mod props;
pub mod random;
pub mod report;
pub mod suite;

pub use case_study::{fig1_case_study, fig1_case_study_with, CaseStudy, CaseStudyRow};
pub use chain::{equivalence_chain_report, equivalence_chain_report_with, ChainBudget, ChainReport};
pub use props::{check_fair_coin, check_fair_coin_erasure, check_fair_coin_in, Mutation, SimulationCase};
pub use random::{random_simple_pa, random_word};
pub use report::{PropReport, Relation, Verdict};
pub use suite::{fair_coin_suite, simulation_suite, SuiteConfig};
