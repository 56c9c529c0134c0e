//! Quantifier-free primitive positive definability, prime implicates and
//! IHSB shape checks.
//!
//! `R` is q.p.p. definable from a language `Γ` iff the conjunction of every
//! `Γ`-atom over `x1..xn` that `R` satisfies defines `R` itself. Instead of
//! materializing that conjunction atom by atom, each tuple outside `R` is
//! tested for a separating atom: one satisfied by all of `R` but not by the
//! tuple.

use std::collections::HashSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::relcore::{low_mask, Builtin, ConjAtom, Relation, Tuple, MAX_ARITY};

/// Relations available for atoms: `Γ`, then `EQ` when equality is allowed.
fn language(gamma: &[Relation], allow_eq: bool) -> Vec<Relation> {
    let mut out = gamma.to_vec();
    if allow_eq {
        out.push(Relation::builtin(Builtin::Eq, None).expect("EQ is builtin"));
    }
    out
}

/// Range of `q.words()` sharing a prefix.
type Span = (u32, u32);

/// Depth-first search over position vectors of one language relation.
///
/// The state after choosing `k` positions is, for every tuple of `R`, the
/// range of `Q` tuples whose first `k` coordinates match the projection;
/// an empty range means the atom under construction fails on `R`.
struct AtomSearch<'a> {
    q: &'a Relation,
    r_words: &'a [u16],
    n: usize,
}

impl AtomSearch<'_> {
    fn split(&self, (lo, hi): Span, depth: usize, bit: bool) -> Span {
        let words = &self.q.words()[lo as usize..hi as usize];
        let shift = self.q.arity() - 1 - depth;
        let mid = lo + words.partition_point(|w| (w >> shift) & 1 == 0) as u32;
        if bit {
            (mid, hi)
        } else {
            (lo, mid)
        }
    }

    fn value(&self, w: u16, pos: usize) -> bool {
        (w >> (self.n - pos)) & 1 == 1
    }

    fn step(&self, spans: &[Span], depth: usize, pos: usize) -> Option<Vec<Span>> {
        spans
            .iter()
            .zip(self.r_words)
            .map(|(&s, &w)| {
                let next = self.split(s, depth, self.value(w, pos));
                (next.0 < next.1).then_some(next)
            })
            .collect()
    }

    fn root(&self) -> (Vec<Span>, Span) {
        let all = (0, self.q.len() as u32);
        (vec![all; self.r_words.len()], all)
    }

    /// First position vector (lexicographically) whose atom holds on all of
    /// `R` and fails on `t`.
    fn separate(&self, t: u16) -> Option<Vec<usize>> {
        let (spans, t_span) = self.root();
        let mut dead = HashSet::new();
        let mut positions = Vec::with_capacity(self.q.arity());
        self.separate_from(&spans, Some(t_span), &mut positions, &mut dead, t)
            .then_some(positions)
    }

    fn separate_from(
        &self,
        spans: &[Span],
        t_span: Option<Span>,
        positions: &mut Vec<usize>,
        dead: &mut HashSet<(usize, Vec<Span>, Option<Span>)>,
        t: u16,
    ) -> bool {
        let depth = positions.len();
        if depth == self.q.arity() {
            return t_span.is_none();
        }
        let key = (depth, spans.to_vec(), t_span);
        if dead.contains(&key) {
            return false;
        }
        for pos in 1..=self.n {
            let Some(next) = self.step(spans, depth, pos) else {
                continue;
            };
            let next_t = t_span
                .map(|s| self.split(s, depth, self.value(t, pos)))
                .filter(|s| s.0 < s.1);
            positions.push(pos);
            if self.separate_from(&next, next_t, positions, dead, t) {
                return true;
            }
            positions.pop();
        }
        dead.insert(key);
        false
    }

    fn collect(&self, spans: &[Span], positions: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if positions.len() == self.q.arity() {
            out.push(positions.clone());
            return;
        }
        for pos in 1..=self.n {
            if let Some(next) = self.step(spans, positions.len(), pos) {
                positions.push(pos);
                self.collect(&next, positions, out);
                positions.pop();
            }
        }
    }
}

/// Every atom over `Γ` (and `EQ` if `allow_eq`) with positions in
/// `1..=arity(R)` that all tuples of `R` satisfy.
///
/// Atoms come grouped by language relation, positions ascending. The list
/// can be exponential in the arity of the language; [`qpp_definable`] does
/// not need it.
pub fn entailed_atoms(r: &Relation, gamma: &[Relation], allow_eq: bool) -> Vec<ConjAtom> {
    let mut out = Vec::new();
    for q in language(gamma, allow_eq) {
        let search = AtomSearch { q: &q, r_words: r.words(), n: r.arity() };
        let mut found = Vec::new();
        search.collect(&search.root().0, &mut Vec::new(), &mut found);
        out.extend(found.into_iter().map(|p| ConjAtom {
            relation: q.clone(),
            positions: p,
        }));
    }
    out
}

/// First separating atom for `t`, trying the language in order.
fn separating_atom(r: &Relation, lang: &[Relation], t: u16) -> Option<ConjAtom> {
    lang.iter().find_map(|q| {
        let search = AtomSearch { q, r_words: r.words(), n: r.arity() };
        search.separate(t).map(|positions| ConjAtom {
            relation: q.clone(),
            positions,
        })
    })
}

/// For each tuple outside `R`, its first separating atom (if any).
fn separations(r: &Relation, gamma: &[Relation], allow_eq: bool) -> Vec<(u16, Option<ConjAtom>)> {
    let lang = language(gamma, allow_eq);
    (0..=low_mask(r.arity()))
        .into_par_iter()
        .filter(|&w| !r.contains_word(w))
        .map(|w| (w, separating_atom(r, &lang, w)))
        .collect()
}

/// The relation defined by the conjunction of all entailed atoms; it
/// always contains `R`.
pub fn canonical_conjunction(r: &Relation, gamma: &[Relation], allow_eq: bool) -> Relation {
    let extra = separations(r, gamma, allow_eq)
        .into_iter()
        .filter(|(_, atom)| atom.is_none())
        .map(|(w, _)| w);
    Relation::from_words(r.arity(), r.words().iter().copied().chain(extra))
        .expect("arity of R is valid")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QppAnswer {
    pub definable: bool,
    /// Separating atoms, deduplicated and sorted by language position then
    /// positions. When `definable`, their conjunction is exactly `R`.
    pub witness: Vec<ConjAtom>,
    /// A tuple outside `R` that no atom excludes.
    pub counterexample: Option<Tuple>,
}

/// Decides whether `R` is a conjunction of atoms over `Γ` (plus `EQ` if
/// `allow_eq`) without existential quantification.
pub fn qpp_definable(r: &Relation, gamma: &[Relation], allow_eq: bool) -> QppAnswer {
    let lang = language(gamma, allow_eq);
    let mut witness = Vec::new();
    let mut counterexample = None;
    for (w, atom) in separations(r, gamma, allow_eq) {
        match atom {
            Some(a) => witness.push(a),
            None => {
                counterexample.get_or_insert_with(|| Tuple::from_word(w, r.arity()));
            }
        }
    }
    let rank = |a: &ConjAtom| lang.iter().position(|q| *q == a.relation);
    witness.sort_by(|a, b| (rank(a), &a.positions).cmp(&(rank(b), &b.positions)));
    witness.dedup();
    QppAnswer {
        definable: counterexample.is_none(),
        witness,
        counterexample,
    }
}

/// A disjunction of literals `(variable, polarity)`; variables are 1-based
/// and strictly ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    literals: Vec<(usize, bool)>,
}

impl Clause {
    pub fn new(mut literals: Vec<(usize, bool)>) -> Result<Clause> {
        if literals.is_empty() {
            return Err(Error::arity(0, 1, MAX_ARITY));
        }
        literals.sort();
        for w in literals.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::parse(w[1].0, format!("variable x{} repeated", w[1].0)));
            }
        }
        if literals[0].0 == 0 {
            return Err(Error::arity(0, 1, MAX_ARITY));
        }
        Ok(Clause { literals })
    }

    pub fn literals(&self) -> &[(usize, bool)] {
        &self.literals
    }

    pub fn width(&self) -> usize {
        self.literals.len()
    }

    pub fn positives(&self) -> usize {
        self.literals.iter().filter(|l| l.1).count()
    }

    /// Whether the packed `arity`-ary tuple `w` satisfies the clause.
    pub fn holds(&self, w: u16, arity: usize) -> bool {
        self.literals
            .iter()
            .any(|&(v, pol)| ((w >> (arity - v)) & 1 == 1) == pol)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lits: Vec<String> = self
            .literals
            .iter()
            .map(|&(v, pol)| format!("{}x{v}", if pol { "" } else { "¬" }))
            .collect();
        write!(f, "({})", lits.join(" ∨ "))
    }
}

/// Projection of `R` onto the coordinates in `mask` (bit `n - i` for
/// coordinate `i`), as a set of packed words in coordinate order.
fn project(r: &Relation, mask: u16) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(1 << mask.count_ones());
    for &w in r.words() {
        out.insert(pext(w, mask) as usize);
    }
    out
}

fn pext(w: u16, mask: u16) -> u16 {
    (0..16)
        .rev()
        .filter(|b| mask >> b & 1 == 1)
        .fold(0, |acc, b| (acc << 1) | (w >> b & 1))
}

/// All prime implicates of `R` of width at most `max_width`, ordered by
/// width, then variables, then polarity.
///
/// A clause over variables `S` is entailed iff its falsifying assignment
/// is missing from the projection of `R` onto `S`; it is prime iff every
/// clause with one literal dropped is not entailed.
pub fn prime_implicates(r: &Relation, max_width: usize) -> Result<Vec<Clause>> {
    let n = r.arity();
    if max_width > n {
        return Err(Error::arity(max_width, 0, n));
    }
    if r.is_empty() {
        return Err(Error::EmptyRelation);
    }
    let masks: Vec<u16> = (1..=low_mask(n))
        .filter(|m| m.count_ones() as usize <= max_width)
        .collect();
    let mut projections: Vec<Option<FixedBitSet>> = vec![None; 1 << n];
    for &m in &masks {
        projections[m as usize] = Some(project(r, m));
    }
    let mut primes = Vec::new();
    for &mask in &masks {
        let proj = projections[mask as usize].as_ref().expect("computed above");
        let bits = ones(mask);
        let width = bits.len() as u32;
        for falsifier in 0..(1u32 << width) {
            let falsifier = falsifier as u16;
            if proj.contains(falsifier as usize) {
                continue;
            }
            let prime = width == 1
                || (0..width).all(|k| {
                    let sub = projections[(mask & !(1 << bits[k as usize])) as usize]
                        .as_ref()
                        .expect("submasks are narrower");
                    sub.contains(drop_bit(falsifier, width, k) as usize)
                });
            if prime {
                let lits = bits
                    .iter()
                    .enumerate()
                    .map(|(k, &b)| {
                        let value = falsifier >> (width as usize - 1 - k) & 1 == 1;
                        (n - b as usize, !value)
                    })
                    .collect();
                primes.push(Clause::new(lits)?);
            }
        }
    }
    primes.sort_by(|a, b| (a.width(), a.literals()).cmp(&(b.width(), b.literals())));
    Ok(primes)
}

/// Set bit indices of `mask`, highest first (coordinate order).
fn ones(mask: u16) -> Vec<u32> {
    (0..16).rev().filter(|b| mask >> b & 1 == 1).collect()
}

/// Removes the `k`-th of `width` packed bits, counting from the top.
fn drop_bit(w: u16, width: u32, k: u32) -> u16 {
    let below = width - 1 - k;
    let w = w as u32;
    (((w >> (below + 1)) << below) | (w & ((1 << below) - 1))) as u16
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Whether every clause has an IHSB shape of width bound `n`: for `Plus`,
/// positive clauses of width at most `n`, negative units, and binary
/// implications `(¬x ∨ y)`; for `Minus` the same with polarities swapped.
pub fn ihsb_check(clauses: &[Clause], n: usize, sign: Sign) -> bool {
    clauses.iter().all(|c| {
        let (same, other) = match sign {
            Sign::Plus => (c.positives(), c.width() - c.positives()),
            Sign::Minus => (c.width() - c.positives(), c.positives()),
        };
        match (same, other) {
            (k, 0) => k <= n,
            (0, 1) | (1, 1) => true,
            _ => false,
        }
    })
}
