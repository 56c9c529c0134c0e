use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::catalog::{catalog, CatalogEntry};
use super::id::{CoCloneId, Family};
use crate::boolfn::TOTAL_ARITY_CAP;
use crate::error::{Error, Result};
use crate::galois::{pol_k, Fingerprint};
use crate::relcore::Relation;

/// Result of matching a relation against the catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Known(CoCloneId),
    /// No catalog fingerprint matches. `above` lists the largest catalog
    /// co-clones contained in the relation's co-clone, `below` the smallest
    /// ones containing it.
    Unknown {
        above: Vec<CoCloneId>,
        below: Vec<CoCloneId>,
    },
}

impl Classification {
    pub fn id(&self) -> Option<CoCloneId> {
        match self {
            Classification::Known(id) => Some(*id),
            Classification::Unknown { .. } => None,
        }
    }
}

fn join(ids: &[CoCloneId]) -> String {
    ids.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Known(id) => write!(f, "{id}"),
            Classification::Unknown { above, below } => {
                write!(f, "unknown (above {{{}}}, below {{{}}})", join(above), join(below))
            }
        }
    }
}

/// Position of one co-clone relative to another under inclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Placement {
    Equal,
    Below,
    Above,
    Incomparable,
}

impl Placement {
    /// Placement of the co-clone with polymorphisms `a` relative to the one
    /// with polymorphisms `b` (larger co-clone, fewer polymorphisms).
    pub fn of(a: &Fingerprint, b: &Fingerprint) -> Placement {
        let a_in_b = b.is_subset(a).unwrap_or(false);
        let b_in_a = a.is_subset(b).unwrap_or(false);
        match (a_in_b, b_in_a) {
            (true, true) => Placement::Equal,
            (true, false) => Placement::Below,
            (false, true) => Placement::Above,
            (false, false) => Placement::Incomparable,
        }
    }

    /// `≤` in the inclusion order.
    pub fn is_within(self) -> bool {
        matches!(self, Placement::Equal | Placement::Below)
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Placement::Equal => "=",
            Placement::Below => "<",
            Placement::Above => ">",
            Placement::Incomparable => "||",
        })
    }
}

/// Catalog fingerprints at a fixed arity, checked to be pairwise distinct.
pub struct Classifier {
    n_max: usize,
    k: usize,
    entries: Vec<CatalogEntry>,
    fingerprints: Vec<Fingerprint>,
    lookup: HashMap<Fingerprint, usize>,
    order: Order,
}

impl fmt::Debug for Classifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Classifier")
            .field("n_max", &self.n_max)
            .field("k", &self.k)
            .field("entries", &self.entries.len())
            .finish()
    }
}

/// Fingerprint arity used for a given chain bound.
pub fn default_arity(n_max: usize) -> usize {
    n_max.max(3)
}

impl Classifier {
    /// Classifier over `catalog(n_max)` at arity `max(3, n_max)`.
    pub fn new(n_max: usize) -> Result<Self> {
        Self::with_arity(n_max, default_arity(n_max))
    }

    pub fn with_arity(n_max: usize, k: usize) -> Result<Self> {
        Self::from_entries(catalog(n_max)?, n_max, k)
    }

    /// Classifier over an arbitrary entry list; fails on the first pair of
    /// entries whose fingerprints coincide.
    pub fn from_entries(entries: Vec<CatalogEntry>, n_max: usize, k: usize) -> Result<Self> {
        if k == 0 || k > TOTAL_ARITY_CAP {
            return Err(Error::arity(k, 1, TOTAL_ARITY_CAP));
        }
        let fingerprints: Vec<Fingerprint> = entries
            .par_iter()
            .map(|e| pol_k(std::slice::from_ref(&e.weak_base), k))
            .collect::<Result<_>>()?;
        let mut lookup = HashMap::new();
        for (i, fp) in fingerprints.iter().enumerate() {
            if let Some(j) = lookup.insert(fp.clone(), i) {
                return Err(Error::FingerprintCollision(entries[j].id, entries[i].id, k));
            }
        }
        let order = Order::from_fingerprints(entries.iter().map(|e| e.id).collect(), &fingerprints);
        Ok(Classifier {
            n_max,
            k,
            entries,
            fingerprints,
            lookup,
            order,
        })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Fingerprint arity.
    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn ids(&self) -> impl Iterator<Item = CoCloneId> + '_ {
        self.entries.iter().map(|e| e.id)
    }

    fn position(&self, id: CoCloneId) -> Result<usize> {
        self.entries
            .iter()
            .position(|e| e.id == id)
            .ok_or(Error::NotInCatalog(id))
    }

    pub fn entry(&self, id: CoCloneId) -> Result<&CatalogEntry> {
        Ok(&self.entries[self.position(id)?])
    }

    pub fn fingerprint(&self, id: CoCloneId) -> Result<&Fingerprint> {
        Ok(&self.fingerprints[self.position(id)?])
    }

    /// Total fingerprint of a relation at the classifier's arity.
    pub fn fingerprint_of(&self, r: &Relation) -> Result<Fingerprint> {
        if r.is_empty() {
            return Err(Error::EmptyRelation);
        }
        pol_k(std::slice::from_ref(r), self.k)
    }

    pub fn classify(&self, r: &Relation) -> Result<Classification> {
        Ok(self.classify_fingerprint(&self.fingerprint_of(r)?))
    }

    pub fn classify_fingerprint(&self, fp: &Fingerprint) -> Classification {
        if let Some(&i) = self.lookup.get(fp) {
            return Classification::Known(self.entries[i].id);
        }
        let mut above = Vec::new();
        let mut below = Vec::new();
        for (i, other) in self.fingerprints.iter().enumerate() {
            match Placement::of(other, fp) {
                Placement::Below => above.push(i),
                Placement::Above => below.push(i),
                _ => {}
            }
        }
        let order = &self.order;
        let maximal: Vec<CoCloneId> = above
            .iter()
            .filter(|&&i| !above.iter().any(|&j| j != i && order.leq_index(i, j)))
            .map(|&i| self.entries[i].id)
            .collect();
        let minimal: Vec<CoCloneId> = below
            .iter()
            .filter(|&&i| !below.iter().any(|&j| j != i && order.leq_index(j, i)))
            .map(|&i| self.entries[i].id)
            .collect();
        Classification::Unknown {
            above: maximal,
            below: minimal,
        }
    }

    /// Where the co-clone of fingerprint `fp` sits relative to `id`.
    pub fn placement(&self, fp: &Fingerprint, id: CoCloneId) -> Result<Placement> {
        Ok(Placement::of(fp, self.fingerprint(id)?))
    }

    /// Inclusion order of the catalog computed from the fingerprints.
    pub fn order(&self) -> &Order {
        &self.order
    }
}

/// A binary relation on catalog ids, `a ≤ b` meaning `⟨a⟩ ⊆ ⟨b⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order {
    ids: Vec<CoCloneId>,
    leq: Vec<FixedBitSet>,
}

impl Order {
    fn from_fingerprints(ids: Vec<CoCloneId>, fps: &[Fingerprint]) -> Order {
        let n = ids.len();
        let leq = (0..n)
            .map(|a| {
                let mut row = FixedBitSet::with_capacity(n);
                for b in 0..n {
                    if fps[b].is_subset(&fps[a]).unwrap_or(false) {
                        row.insert(b);
                    }
                }
                row
            })
            .collect();
        Order { ids, leq }
    }

    pub fn ids(&self) -> &[CoCloneId] {
        &self.ids
    }

    fn index(&self, id: CoCloneId) -> Option<usize> {
        self.ids.iter().position(|&x| x == id)
    }

    pub(crate) fn leq_index(&self, a: usize, b: usize) -> bool {
        self.leq[a].contains(b)
    }

    /// `a ≤ b`; false when either id is not part of the order.
    pub fn leq(&self, a: CoCloneId, b: CoCloneId) -> bool {
        match (self.index(a), self.index(b)) {
            (Some(i), Some(j)) => self.leq_index(i, j),
            _ => false,
        }
    }

    /// All pairs `(a, b)` with `a ≤ b`.
    pub fn pairs(&self) -> Vec<(CoCloneId, CoCloneId)> {
        let mut out = Vec::new();
        for (a, row) in self.leq.iter().enumerate() {
            for b in row.ones() {
                out.push((self.ids[a], self.ids[b]));
            }
        }
        out
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.ids.len()).all(|a| self.leq_index(a, a))
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.ids.len();
        (0..n).all(|a| (0..n).all(|b| a == b || !(self.leq_index(a, b) && self.leq_index(b, a))))
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.ids.len();
        (0..n).all(|a| {
            self.leq[a]
                .ones()
                .all(|b| self.leq[b].ones().all(|c| self.leq_index(a, c)))
        })
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_reflexive() && self.is_antisymmetric() && self.is_transitive()
    }

    /// Ids below every other id.
    pub fn minima(&self) -> Vec<CoCloneId> {
        let n = self.ids.len();
        (0..n)
            .filter(|&a| (0..n).all(|b| self.leq_index(a, b)))
            .map(|a| self.ids[a])
            .collect()
    }

    /// Ids above every other id.
    pub fn maxima(&self) -> Vec<CoCloneId> {
        let n = self.ids.len();
        (0..n)
            .filter(|&a| (0..n).all(|b| self.leq_index(b, a)))
            .map(|a| self.ids[a])
            .collect()
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn hasse(&self) -> Vec<(CoCloneId, CoCloneId)> {
        let n = self.ids.len();
        let lt = |a: usize, b: usize| a != b && self.leq_index(a, b) && !self.leq_index(b, a);
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    out.push((self.ids[a], self.ids[b]));
                }
            }
        }
        out
    }

    /// Hasse diagram as a DOT digraph, edges pointing upwards.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph coclones {\n  rankdir=BT;\n");
        for id in &self.ids {
            out.push_str(&format!("  \"{id}\";\n"));
        }
        for (a, b) in self.hasse() {
            out.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Computed inclusion order of `catalog(n_max)`.
pub fn inclusion_order(n_max: usize) -> Result<Order> {
    Ok(Classifier::new(n_max)?.order().clone())
}

/// The `IBF` and `BR` ids, the expected bottom and top of the order.
pub fn extremes() -> (CoCloneId, CoCloneId) {
    (CoCloneId::fixed(Family::IBF), CoCloneId::fixed(Family::BR))
}
