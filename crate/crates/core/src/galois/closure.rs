use super::search::{eval_packed, index_vectors};
use super::{pol_k, pol_layer, Fingerprint, FnKind};
use crate::boolfn::TOTAL_ARITY_CAP;
use crate::error::{Error, Result};
use crate::relcore::Relation;

/// Table integer (entry 0 most significant) to the bit-per-index form used
/// by the packed evaluator.
fn index_bits(table: usize, m: usize) -> u16 {
    let len = 1usize << m;
    (table as u16).reverse_bits() >> (16 - len)
}

fn images(r: &Relation, m: usize, tables: &[u16]) -> Vec<u16> {
    let n = r.arity();
    let vectors = index_vectors(r, m);
    let mut out: Vec<u16> = tables
        .iter()
        .flat_map(|&tb| vectors.iter().map(move |&p| eval_packed(p, n, tb)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Whether every function of a total fingerprint preserves `r`.
pub fn is_closed_under(r: &Relation, fp: &Fingerprint) -> bool {
    assert_eq!(fp.kind(), FnKind::Total);
    (1..=fp.max_arity()).all(|m| {
        let tables: Vec<u16> = fp.layer(m).ones().map(|t| index_bits(t, m)).collect();
        images(r, m, &tables).iter().all(|&w| r.contains_word(w))
    })
}

/// Least extension of `r` closed under the polymorphisms of `base` of
/// arity at most `k`.
///
/// This under-approximates `C(r)` for `C = Pol(base)` when the clone needs
/// operations of arity above `k` that do not factor through smaller ones.
pub fn clone_closure(r: &Relation, base: &[Relation], k: usize) -> Result<Relation> {
    let fp = pol_k(base, k)?;
    let layers: Vec<Vec<u16>> = (1..=k)
        .map(|m| fp.layer(m).ones().map(|t| index_bits(t, m)).collect())
        .collect();
    let mut current = r.clone();
    loop {
        let mut words = current.words().to_vec();
        for (i, tables) in layers.iter().enumerate() {
            words.extend(images(&current, i + 1, tables));
        }
        let next = Relation::from_words(current.arity(), words)?;
        if next.len() == current.len() {
            return Ok(current);
        }
        current = next;
    }
}

/// `C(COLS^s)` for `C = Pol(base)`: the truth tables of the `s`-ary
/// polymorphisms of `base`, read as `2^s`-ary tuples.
pub fn c_cols(base: &[Relation], s: usize) -> Result<Relation> {
    if s == 0 || s > TOTAL_ARITY_CAP {
        return Err(Error::arity(s, 1, TOTAL_ARITY_CAP));
    }
    if base.is_empty() {
        return Err(Error::EmptyRelation);
    }
    let layer = pol_layer(base, s);
    Relation::from_words(1 << s, layer.ones().map(|t| t as u16))
}
