//! Boolean relations, (partial) polymorphisms and co-clones.
//!
//! The crate computes bounded-arity polymorphism fingerprints of Boolean
//! constraint languages and uses them to classify relations in Post's
//! lattice of co-clones, to verify a catalog of minimal weak bases, and to
//! decide quantifier-free primitive positive definability.

pub mod boolfn;
pub mod definability;
pub mod error;
pub mod galois;
pub mod lattice;
pub mod relcore;

pub use boolfn::{Budget, PartialFn, TotalFn};
pub use error::{Error, Result};
pub use galois::{Fingerprint, FnKind};
pub use lattice::{CoCloneId, Classification, Classifier, Family};
pub use relcore::{parse_relation, Permutation, Relation, Tuple};
