//! Instance enumeration, claim suites, counterexample search and export.

mod enumerate;
mod export;
mod search;
mod suite;

use thiserror::Error;

pub use enumerate::{enumerate_posets, enumerate_t0_spaces, labeled_poset_oracle, space_of_poset, t0_topology_oracle};
pub use export::{export, parse_object, Format, Object};
pub use search::{search_counterexamples, Property, SearchOutcome, SearchWitness};
pub use suite::{
    claim_ids, replay, run_suite, Bounds, ClaimReport, Instance, Mutation, RunOptions, Status, SuiteReport, Witness,
    SUITES,
};

#[derive(Debug, Error)]
pub enum WorkbenchError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("unknown format `{0}`")]
    UnknownFormat(String),
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("unknown mutation `{0}`")]
    UnknownMutation(String),
    #[error("cannot recognise the object: {0}")]
    UnknownObject(String),
    #[error("no {format} rendering for {kind}")]
    Unsupported { kind: &'static str, format: &'static str },
    #[error("{what} needs {needed}, cap is {cap}")]
    SizeCap { what: &'static str, needed: usize, cap: usize },
    #[error("search failed: {0}")]
    Search(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Order(#[from] crate::order::OrderError),
}
