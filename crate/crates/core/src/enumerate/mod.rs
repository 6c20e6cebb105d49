//! Enumeration of candidate lower-central types and their exclusion.

pub mod catalog;
pub mod exclude;
pub mod facts;
pub mod report;
pub mod types;

pub use catalog::{build_catalog, display_name, labelled_table, resolve_id, CatalogEntry};
pub use exclude::{apply_exclusions, surviving_pairs, ExclusionReport, Rule, Verdict};
pub use facts::{default_facts, load_facts, parse_facts, Fact, FactTable, FactTag};
pub use report::{build_report, run_pipeline, Pipeline, Report};
pub use types::{
    bounded_submultisets, enumerate_types, extend_types_gamma3, group_pairs, symplectic_split,
    verify_candidate, CandidateType, TypePair,
};
