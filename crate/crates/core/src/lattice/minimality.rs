//! Minimality of weak bases: no proper subset generates the same co-clone.
//!
//! Exhaustive mode tests one subset per orbit of the automorphism group of
//! the relation; automorphic subsets generate the same co-clone. A subset
//! is compared with the target one polymorphism layer at a time, so most
//! subsets are rejected after the cheap low-arity layers.

use serde::Serialize;

use super::classify::{Classification, Classifier, Placement};
use super::id::CoCloneId;
use crate::error::{Error, Result};
use crate::galois::{pol_layer, Fingerprint};
use crate::relcore::{Relation, Tuple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinimalityMode {
    /// Exhaustive up to [`AUTO_EXHAUSTIVE_LIMIT`] tuples, single removals
    /// beyond.
    #[default]
    Auto,
    Exhaustive,
    SingleRemoval,
}

/// Largest relation size checked exhaustively in [`MinimalityMode::Auto`].
pub const AUTO_EXHAUSTIVE_LIMIT: usize = 8;

/// Largest relation size accepted by the exhaustive mode.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Bound on the node count of the automorphism search.
const AUTOMORPHISM_BUDGET: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetWitness {
    pub removed: Vec<Tuple>,
    /// Number of subsets in the orbit this witness stands for.
    pub orbit_size: usize,
    pub class: Classification,
    /// Placement of the subset's co-clone relative to the target.
    pub placement: Placement,
}

impl SubsetWitness {
    pub fn kept(&self, r: &Relation) -> Relation {
        self.removed
            .iter()
            .fold(r.clone(), |acc, t| acc.without_word(t.word()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub id: CoCloneId,
    pub minimal: bool,
    pub exhaustive: bool,
    /// Number of proper nonempty subsets covered.
    pub subsets_checked: usize,
    /// Every single removal in single-removal mode; only the subsets that
    /// still generate the target in exhaustive mode.
    pub witnesses: Vec<SubsetWitness>,
}

impl Verdict {
    /// Subsets that still generate the target co-clone.
    pub fn counterexamples(&self) -> impl Iterator<Item = &SubsetWitness> {
        self.witnesses
            .iter()
            .filter(|w| w.placement == Placement::Equal)
    }
}

/// Column automorphisms of `r` as permutations of its tuple indices.
fn tuple_actions(r: &Relation) -> Vec<Vec<usize>> {
    let autos = r.automorphisms(AUTOMORPHISM_BUDGET).unwrap_or_default();
    let words = r.words();
    autos
        .iter()
        .filter(|p| !p.is_identity())
        .map(|p| {
            let image = r.permute_args(p).expect("automorphism has matching size");
            debug_assert_eq!(&image, r);
            let n = r.arity();
            words
                .iter()
                .map(|&w| {
                    let mut out = 0u16;
                    for i in 0..n {
                        out |= ((w >> (n - 1 - i)) & 1) << (n - 1 - p.image(i));
                    }
                    words.binary_search(&out).expect("automorphism maps R to R")
                })
                .collect()
        })
        .collect()
}

fn map_mask(mask: u64, action: &[usize]) -> u64 {
    action
        .iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .fold(0, |acc, (_, &j)| acc | (1 << j))
}

/// Proper nonempty subsets (as kept-masks) up to automorphism, with orbit
/// sizes.
fn orbit_representatives(r: &Relation) -> Vec<(u64, usize)> {
    let len = r.len();
    let actions = tuple_actions(r);
    let full = (1u64 << len) - 1;
    let mut reps: Vec<(u64, usize)> = Vec::new();
    let mut index = std::collections::HashMap::new();
    for mask in 1..full {
        let canon = actions
            .iter()
            .map(|a| map_mask(mask, a))
            .fold(mask, u64::min);
        if canon == mask {
            index.insert(mask, reps.len());
            reps.push((mask, 1));
        } else {
            let i = index[&canon];
            reps[i].1 += 1;
        }
    }
    reps
}

fn removed_tuples(r: &Relation, kept: u64) -> Vec<Tuple> {
    r.iter()
        .enumerate()
        .filter(|&(i, _)| kept >> i & 1 == 0)
        .map(|(_, t)| t)
        .collect()
}

/// Checks that no proper subset of `r` generates the co-clone `id`.
///
/// `r` itself must classify as `id`.
pub fn is_minimal_weak_base(
    classifier: &Classifier,
    r: &Relation,
    id: CoCloneId,
    mode: MinimalityMode,
) -> Result<Verdict> {
    let target = classifier.fingerprint(id)?;
    let own = classifier.classify(r)?;
    if own != Classification::Known(id) {
        return Err(Error::ClassMismatch {
            expected: id,
            found: own.to_string(),
        });
    }
    let exhaustive = match mode {
        MinimalityMode::Auto => r.len() <= AUTO_EXHAUSTIVE_LIMIT,
        MinimalityMode::Exhaustive => true,
        MinimalityMode::SingleRemoval => false,
    };
    if exhaustive && r.len() > EXHAUSTIVE_LIMIT {
        return Err(Error::arity(r.len(), 1, EXHAUSTIVE_LIMIT));
    }
    let subsets: Vec<(u64, usize)> = if exhaustive {
        orbit_representatives(r)
    } else if r.len() > 1 {
        let full = (1u64 << r.len()) - 1;
        (0..r.len()).map(|i| (full & !(1 << i), 1)).collect()
    } else {
        Vec::new()
    };
    let witness = |kept: u64, orbit_size: usize| -> Result<SubsetWitness> {
        let fp = classifier.fingerprint_of(&r.subset_by_mask(kept))?;
        Ok(SubsetWitness {
            removed: removed_tuples(r, kept),
            orbit_size,
            placement: Placement::of(&fp, target),
            class: classifier.classify_fingerprint(&fp),
        })
    };
    let mut witnesses = Vec::new();
    for &(kept, orbit_size) in &subsets {
        if !exhaustive || same_polymorphisms(&r.subset_by_mask(kept), target) {
            witnesses.push(witness(kept, orbit_size)?);
        }
    }
    let minimal = !witnesses.iter().any(|w| w.placement == Placement::Equal);
    Ok(Verdict {
        id,
        minimal,
        exhaustive,
        subsets_checked: subsets.iter().map(|&(_, c)| c).sum(),
        witnesses,
    })
}

/// Whether `s` has the polymorphisms of `target`, layer by layer.
fn same_polymorphisms(s: &Relation, target: &Fingerprint) -> bool {
    (1..=target.max_arity()).all(|m| pol_layer(std::slice::from_ref(s), m) == *target.layer(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relcore::parse_relation;

    #[test]
    fn orbits_cover_every_subset() {
        let r = parse_relation("OR^3").unwrap();
        let reps = orbit_representatives(&r);
        let total: usize = reps.iter().map(|&(_, c)| c).sum();
        assert_eq!(total, (1 << r.len()) - 2);
        assert!(reps.len() < total);
    }

    #[test]
    fn ie2_is_minimal() {
        let c = Classifier::new(2).unwrap();
        let r = parse_relation("{00001,00101,01001,11101}").unwrap();
        let v = is_minimal_weak_base(&c, &r, "IE2".parse().unwrap(), MinimalityMode::Exhaustive)
            .unwrap();
        assert!(v.minimal);
        assert!(v.exhaustive);
        assert_eq!(v.subsets_checked, 14);
        assert!(v.witnesses.is_empty());
    }

    #[test]
    fn layered_check_agrees_with_classification() {
        let c = Classifier::new(2).unwrap();
        let id = "IE2".parse().unwrap();
        let r = parse_relation("{00001,00101,01001,11101}").unwrap();
        let target = c.fingerprint(id).unwrap();
        for mask in 1..15u64 {
            let s = r.subset_by_mask(mask);
            let equal = c.fingerprint_of(&s).unwrap() == *target;
            assert_eq!(same_polymorphisms(&s, target), equal);
        }
    }

    #[test]
    fn padded_relation_is_not_minimal() {
        let c = Classifier::new(2).unwrap();
        let id = "IM1".parse().unwrap();
        let wide = parse_relation("{001,011,111}")
            .unwrap()
            .duplicate_column(0)
            .unwrap();
        let padded = (0..16u16)
            .filter(|w| !wide.contains_word(*w))
            .map(|w| Relation::from_words(4, wide.words().iter().copied().chain([w])).unwrap())
            .find(|r| c.classify(r).unwrap() == Classification::Known(id))
            .expect("some one-tuple extension stays in IM1");
        for mode in [MinimalityMode::Exhaustive, MinimalityMode::SingleRemoval] {
            let v = is_minimal_weak_base(&c, &padded, id, mode).unwrap();
            assert!(!v.minimal);
            assert!(v.counterexamples().next().is_some());
        }
    }

    #[test]
    fn rejects_wrong_class() {
        let c = Classifier::new(2).unwrap();
        let r = parse_relation("EQ").unwrap();
        assert!(matches!(
            is_minimal_weak_base(&c, &r, "IE2".parse().unwrap(), MinimalityMode::Auto),
            Err(Error::ClassMismatch { .. })
        ));
    }
}
