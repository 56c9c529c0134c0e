//! The co-clone catalog, classification by fingerprint matching, the
//! computed inclusion order, derivation replay and minimality checks.

mod catalog;
mod classify;
mod derivation;
mod id;
mod minimality;
mod verify;

pub use catalog::{catalog, catalog_ids, entry, CatalogEntry, MAX_CHAIN_N};
pub use classify::{
    default_arity, extremes, inclusion_order, Classification, Classifier, Order, Placement,
};
pub use derivation::{
    derivation_replay, known_chain, recorded_chain, replay_trace, RuleChain, Step,
};
pub use id::{CoCloneId, Family};
pub use minimality::{
    is_minimal_weak_base, MinimalityMode, SubsetWitness, Verdict, AUTO_EXHAUSTIVE_LIMIT,
    EXHAUSTIVE_LIMIT,
};
pub use verify::{verify_entries, verify_table, Record, Report, Summary, VerifyOptions};
