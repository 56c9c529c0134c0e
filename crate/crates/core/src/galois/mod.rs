//! Bounded-arity polymorphism fingerprints and the clone-closure operator.
//!
//! `Pol(Γ)` and `pPol(Γ)` are infinite; a [`Fingerprint`] keeps their
//! members of arity `1..=K` as bitsets over table indices, so inclusion
//! and equality become bitwise set operations.

mod closure;
pub(crate) mod search;

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::boolfn::{Budget, PartialFn, TotalFn, TOTAL_ARITY_CAP};
use crate::error::{Error, Result};
use crate::relcore::Relation;

pub use closure::{c_cols, clone_closure, is_closed_under};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FnKind {
    Total,
    Partial,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    kind: FnKind,
    layers: Vec<FixedBitSet>,
}

impl Fingerprint {
    pub fn kind(&self) -> FnKind {
        self.kind
    }

    pub fn max_arity(&self) -> usize {
        self.layers.len()
    }

    /// Layer `m` (1-based): bit `i` is set iff the function with index `i`
    /// belongs to the fingerprint.
    pub fn layer(&self, m: usize) -> &FixedBitSet {
        &self.layers[m - 1]
    }

    pub fn cardinalities(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.count_ones(..)).collect()
    }

    pub fn total_members(&self, m: usize) -> Vec<TotalFn> {
        assert_eq!(self.kind, FnKind::Total);
        self.layer(m)
            .ones()
            .map(|i| TotalFn::new(m, i as u64).expect("index within layer"))
            .collect()
    }

    pub fn partial_members(&self, m: usize) -> Vec<PartialFn> {
        assert_eq!(self.kind, FnKind::Partial);
        self.layer(m)
            .ones()
            .map(|i| PartialFn::from_index(m, i as u64).expect("index within layer"))
            .collect()
    }

    pub fn contains_total(&self, f: &TotalFn) -> bool {
        use crate::boolfn::BoolOp;
        self.kind == FnKind::Total
            && f.arity() <= self.max_arity()
            && self.layer(f.arity()).contains(f.index() as usize)
    }

    pub fn contains_partial(&self, f: &PartialFn) -> bool {
        use crate::boolfn::BoolOp;
        self.kind == FnKind::Partial
            && f.arity() <= self.max_arity()
            && self.layer(f.arity()).contains(f.index() as usize)
    }

    /// Layerwise containment `self ⊆ other`.
    pub fn is_subset(&self, other: &Fingerprint) -> Result<bool> {
        fingerprint_leq(self, other)
    }

    /// Layerwise intersection.
    pub fn intersection(&self, other: &Fingerprint) -> Result<Fingerprint> {
        self.compatible(other)?;
        let layers = self
            .layers
            .iter()
            .zip(&other.layers)
            .map(|(a, b)| {
                let mut c = a.clone();
                c.intersect_with(b);
                c
            })
            .collect();
        Ok(Fingerprint {
            kind: self.kind,
            layers,
        })
    }

    /// Restriction to the layers `1..=k`.
    pub fn truncate(&self, k: usize) -> Fingerprint {
        Fingerprint {
            kind: self.kind,
            layers: self.layers[..k.min(self.layers.len())].to_vec(),
        }
    }

    fn compatible(&self, other: &Fingerprint) -> Result<()> {
        if self.kind != other.kind || self.layers.len() != other.layers.len() {
            Err(Error::KindMismatch)
        } else {
            Ok(())
        }
    }

    /// One line per layer: `m=<arity> n=<members> <hex>`, the hex digits
    /// listing bitset bytes in ascending order, low bit first.
    pub fn to_hex(&self) -> String {
        let mut out = String::new();
        for (i, layer) in self.layers.iter().enumerate() {
            let mut bytes = vec![0u8; layer.len().div_ceil(8)];
            for bit in layer.ones() {
                bytes[bit / 8] |= 1 << (bit % 8);
            }
            let _ = write!(out, "m={} n={} ", i + 1, layer.count_ones(..));
            for b in bytes {
                let _ = write!(out, "{b:02x}");
            }
            out.push('\n');
        }
        out
    }
}

fn check_gamma(gamma: &[Relation]) -> Result<()> {
    if gamma.is_empty() {
        return Err(Error::EmptyRelation);
    }
    Ok(())
}

/// The `m`-ary total polymorphisms of `gamma`.
pub(crate) fn pol_layer(gamma: &[Relation], m: usize) -> FixedBitSet {
    search::System::new(gamma, m).total_layer()
}

pub(crate) fn ppol_layer(gamma: &[Relation], m: usize) -> FixedBitSet {
    search::System::new(gamma, m).partial_layer()
}

/// Total polymorphisms of `gamma` of arity `1..=k`.
pub fn pol_k(gamma: &[Relation], k: usize) -> Result<Fingerprint> {
    check_gamma(gamma)?;
    if k == 0 || k > TOTAL_ARITY_CAP {
        return Err(Error::arity(k, 1, TOTAL_ARITY_CAP));
    }
    Ok(Fingerprint {
        kind: FnKind::Total,
        layers: (1..=k).map(|m| pol_layer(gamma, m)).collect(),
    })
}

/// Partial polymorphisms of `gamma` of arity `1..=k` (`k ≤ 3`).
pub fn ppol_k(gamma: &[Relation], k: usize) -> Result<Fingerprint> {
    ppol_k_with(gamma, k, Budget::Default)
}

pub fn ppol_k_with(gamma: &[Relation], k: usize, budget: Budget) -> Result<Fingerprint> {
    check_gamma(gamma)?;
    let cap = budget.partial_cap();
    if k == 0 || k > cap {
        return Err(Error::arity(k, 1, cap));
    }
    Ok(Fingerprint {
        kind: FnKind::Partial,
        layers: (1..=k).map(|m| ppol_layer(gamma, m)).collect(),
    })
}

/// Layerwise `a ⊆ b`; errors when kinds or arity bounds differ.
pub fn fingerprint_leq(a: &Fingerprint, b: &Fingerprint) -> Result<bool> {
    a.compatible(b)?;
    Ok(a.layers.iter().zip(&b.layers).all(|(x, y)| x.is_subset(y)))
}
