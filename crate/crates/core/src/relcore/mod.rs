//! Boolean relations as canonical tuple sets.
//!
//! A tuple of arity `n` is packed into a `u16` with coordinate 1 in the most
//! significant of the `n` low bits, so ascending integer order is the
//! lexicographic order of the matrix representation. A relation keeps its
//! tuples sorted and deduplicated; two relations are equal iff their
//! serialized forms are equal.

mod builtin;
mod formula;
mod literal;
mod perm;

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub use builtin::Builtin;
pub use formula::{Expr, Formula};
pub use literal::{parse_relation, ConjAtom};
pub use perm::Permutation;

/// Largest supported relation arity.
pub const MAX_ARITY: usize = 16;

#[inline]
pub(crate) fn low_mask(n: usize) -> u16 {
    if n >= 16 {
        u16::MAX
    } else {
        (1u16 << n) - 1
    }
}

/// A fixed-arity Boolean tuple.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tuple {
    bits: u16,
    arity: u8,
}

impl Tuple {
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let arity = bits.len();
        if arity == 0 || arity > MAX_ARITY {
            return Err(Error::arity(arity, 1, MAX_ARITY));
        }
        let mut word = 0u16;
        for (i, &b) in bits.iter().enumerate() {
            if b > 1 {
                return Err(Error::parse(i, format!("bit value {b} is not 0 or 1")));
            }
            word = (word << 1) | b as u16;
        }
        Ok(Tuple { bits: word, arity: arity as u8 })
    }

    pub(crate) fn from_word(word: u16, arity: usize) -> Self {
        debug_assert!((1..=MAX_ARITY).contains(&arity));
        Tuple {
            bits: word & low_mask(arity),
            arity: arity as u8,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    /// Packed form, coordinate 1 most significant.
    pub fn word(&self) -> u16 {
        self.bits
    }

    /// Coordinate `i`, 0-based.
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.arity());
        (self.bits >> (self.arity() - 1 - i)) & 1 == 1
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.arity()).map(|i| self.get(i) as u8).collect()
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.arity() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// A finite Boolean relation of arity `1..=16`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    arity: u8,
    tuples: Vec<u16>,
}

impl Relation {
    fn check_arity(arity: usize) -> Result<()> {
        if arity == 0 || arity > MAX_ARITY {
            Err(Error::arity(arity, 1, MAX_ARITY))
        } else {
            Ok(())
        }
    }

    /// Builds a relation from explicit bit rows; duplicates are dropped.
    pub fn from_tuples<I, T>(arity: usize, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[u8]>,
    {
        Self::check_arity(arity)?;
        let mut words = Vec::new();
        for row in rows {
            let row = row.as_ref();
            if row.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: row.len(),
                });
            }
            words.push(Tuple::from_bits(row)?.bits);
        }
        Ok(Self::from_words_unchecked(arity, words))
    }

    /// Builds a relation from packed words (coordinate 1 most significant).
    pub fn from_words<I: IntoIterator<Item = u16>>(arity: usize, words: I) -> Result<Self> {
        Self::check_arity(arity)?;
        let mask = low_mask(arity);
        let words: Vec<u16> = words.into_iter().collect();
        if let Some(&w) = words.iter().find(|&&w| w & !mask != 0) {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: 16 - w.leading_zeros() as usize,
            });
        }
        Ok(Self::from_words_unchecked(arity, words))
    }

    pub(crate) fn from_words_unchecked(arity: usize, mut words: Vec<u16>) -> Self {
        words.sort_unstable();
        words.dedup();
        Relation {
            arity: arity as u8,
            tuples: words,
        }
    }

    pub fn empty(arity: usize) -> Result<Self> {
        Self::check_arity(arity)?;
        Ok(Relation {
            arity: arity as u8,
            tuples: Vec::new(),
        })
    }

    pub fn full(arity: usize) -> Result<Self> {
        Self::check_arity(arity)?;
        Ok(Relation {
            arity: arity as u8,
            tuples: (0..=low_mask(arity)).collect(),
        })
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// Packed tuples in canonical order.
    pub fn words(&self) -> &[u16] {
        &self.tuples
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = Tuple> + '_ {
        let n = self.arity();
        self.tuples.iter().map(move |&w| Tuple::from_word(w, n))
    }

    pub fn contains(&self, t: &Tuple) -> bool {
        t.arity() == self.arity() && self.contains_word(t.bits)
    }

    pub fn contains_word(&self, w: u16) -> bool {
        self.tuples.binary_search(&w).is_ok()
    }

    /// Membership bitset over all `2^arity` packed words.
    pub(crate) fn member_table(&self) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(1usize << self.arity());
        for &w in &self.tuples {
            set.insert(w as usize);
        }
        set
    }

    /// Column `i` (0-based) read top to bottom in canonical row order.
    pub fn column(&self, i: usize) -> Vec<bool> {
        let shift = self.arity() - 1 - i;
        self.tuples.iter().map(|w| (w >> shift) & 1 == 1).collect()
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.arity == other.arity && self.tuples.iter().all(|&w| other.contains_word(w))
    }

    /// Keeps the rows whose canonical index is set in `mask`.
    pub fn subset_by_mask(&self, mask: u64) -> Relation {
        let words = self
            .tuples
            .iter()
            .enumerate()
            .filter(|(i, _)| (mask >> i) & 1 == 1)
            .map(|(_, &w)| w)
            .collect();
        Relation {
            arity: self.arity,
            tuples: words,
        }
    }

    /// Relation without the given row.
    pub fn without_word(&self, w: u16) -> Relation {
        Relation {
            arity: self.arity,
            tuples: self.tuples.iter().copied().filter(|&x| x != w).collect(),
        }
    }

    /// Relation with `extra` added.
    pub fn with_tuple(&self, extra: &Tuple) -> Result<Relation> {
        if extra.arity() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: extra.arity(),
            });
        }
        let mut words = self.tuples.clone();
        words.push(extra.bits);
        Ok(Self::from_words_unchecked(self.arity(), words))
    }

    /// Keeps the listed 0-based coordinates, in the listed order.
    pub(crate) fn select_columns(&self, coords: &[usize]) -> Relation {
        let n = self.arity();
        let words = self
            .tuples
            .iter()
            .map(|&w| {
                coords
                    .iter()
                    .fold(0u16, |acc, &c| (acc << 1) | ((w >> (n - 1 - c)) & 1))
            })
            .collect();
        Self::from_words_unchecked(coords.len(), words)
    }

    /// `R'(x_1..x_{n+m}) = R(x_1..x_n) ∧ x_1 ≠ x_{n+1} ∧ … ∧ x_m ≠ x_{n+m}`.
    pub fn neq_pad(&self, m: usize) -> Result<Relation> {
        let n = self.arity();
        if m == 0 || m > n {
            return Err(Error::arity(m, 1, n));
        }
        if n + m > MAX_ARITY {
            return Err(Error::arity(n + m, 1, MAX_ARITY));
        }
        let words = self
            .tuples
            .iter()
            .map(|&w| (w << m) | (!(w >> (n - m)) & low_mask(m)))
            .collect();
        Ok(Self::from_words_unchecked(n + m, words))
    }

    /// Identifies argument `i` with argument `j` (1-based, `i < j`): keeps
    /// the tuples with equal values there and drops coordinate `j`.
    pub fn identify_args(&self, i: usize, j: usize) -> Result<Relation> {
        let n = self.arity();
        if n == 1 {
            return Err(Error::Underflow);
        }
        if i == 0 || i >= j || j > n {
            return Err(Error::arity(j, i + 1, n));
        }
        let (pi, pj) = (n - i, n - j);
        let words = self
            .tuples
            .iter()
            .filter(|&&w| (w >> pi) & 1 == (w >> pj) & 1)
            .map(|&w| ((w >> (pj + 1)) << pj) | (w & low_mask(pj)))
            .collect();
        Ok(Self::from_words_unchecked(n - 1, words))
    }

    /// `R'(x_1..x_n) ≡ R(x_{π(1)},…,x_{π(n)})`.
    pub fn permute_args(&self, pi: &Permutation) -> Result<Relation> {
        let n = self.arity();
        if pi.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: pi.len(),
            });
        }
        let words = self
            .tuples
            .iter()
            .map(|&w| {
                let mut out = 0u16;
                for i in 0..n {
                    let bit = (w >> (n - 1 - i)) & 1;
                    out |= bit << (n - 1 - pi.image(i));
                }
                out
            })
            .collect();
        Ok(Self::from_words_unchecked(n, words))
    }

    /// Identifies all arguments that carry equal columns, keeping the first
    /// occurrence of each column.
    pub fn irredundant_core(&self) -> Relation {
        let keep = self.distinct_column_positions();
        if keep.len() == self.arity() {
            self.clone()
        } else {
            self.select_columns(&keep)
        }
    }

    /// True iff no two columns of the matrix representation coincide.
    pub fn is_irredundant(&self) -> bool {
        self.distinct_column_positions().len() == self.arity()
    }

    fn distinct_column_positions(&self) -> Vec<usize> {
        let mut seen: Vec<Vec<bool>> = Vec::new();
        let mut keep = Vec::new();
        for i in 0..self.arity() {
            let col = self.column(i);
            if !seen.contains(&col) {
                seen.push(col);
                keep.push(i);
            }
        }
        keep
    }

    /// Tuple-wise bit complement.
    pub fn dual(&self) -> Relation {
        let mask = low_mask(self.arity());
        let words = self.tuples.iter().map(|&w| !w & mask).collect();
        Self::from_words_unchecked(self.arity(), words)
    }

    /// Cartesian product `{s ⧺ t}`.
    pub fn product(&self, other: &Relation) -> Result<Relation> {
        let n = self.arity() + other.arity();
        if n > MAX_ARITY {
            return Err(Error::arity(n, 1, MAX_ARITY));
        }
        let shift = other.arity();
        let mut words = Vec::with_capacity(self.len() * other.len());
        for &s in &self.tuples {
            for &t in &other.tuples {
                words.push((s << shift) | t);
            }
        }
        Ok(Self::from_words_unchecked(n, words))
    }

    /// Relation with an extra copy of column `i` (0-based) appended.
    pub fn duplicate_column(&self, i: usize) -> Result<Relation> {
        let n = self.arity();
        if i >= n {
            return Err(Error::arity(i + 1, 1, n));
        }
        if n + 1 > MAX_ARITY {
            return Err(Error::arity(n + 1, 1, MAX_ARITY));
        }
        let words = self
            .tuples
            .iter()
            .map(|&w| (w << 1) | ((w >> (n - 1 - i)) & 1))
            .collect();
        Ok(Self::from_words_unchecked(n + 1, words))
    }

    /// Searches for `π` with `self.permute_args(π) == *target`.
    pub fn find_permutation(&self, target: &Relation) -> Option<Permutation> {
        perm::search(self, target, false).into_iter().next()
    }

    /// All `π` with `self.permute_args(π) == self`, or `None` when the
    /// search space exceeds `limit` candidate nodes.
    pub fn automorphisms(&self, limit: usize) -> Option<Vec<Permutation>> {
        perm::search_bounded(self, self, true, limit)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation/{}{}", self.arity, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(arity: usize, rows: &[&str]) -> Relation {
        Relation::from_tuples(
            arity,
            rows.iter()
                .map(|r| r.bytes().map(|b| b - b'0').collect::<Vec<u8>>()),
        )
        .unwrap()
    }

    #[test]
    fn from_tuples_canonicalizes() {
        let r13 = Relation::from_tuples(3, [[0, 0, 1], [0, 1, 0], [1, 0, 0]]).unwrap();
        assert_eq!(r13, Relation::builtin(Builtin::R13, None).unwrap());
        let f = Relation::from_tuples(1, [[0]]).unwrap();
        assert_eq!(f, Relation::builtin(Builtin::F, None).unwrap());
        let d = Relation::from_tuples(2, [[0, 1], [0, 1]]).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.to_string(), "{01}");
    }

    #[test]
    fn from_tuples_errors() {
        assert_eq!(
            Relation::from_tuples(2, [vec![0, 1], vec![1]]),
            Err(Error::ArityMismatch {
                expected: 2,
                found: 1
            })
        );
        assert!(matches!(
            Relation::from_tuples(17, Vec::<Vec<u8>>::new()),
            Err(Error::ArityOutOfRange { .. })
        ));
        assert!(matches!(
            Relation::from_tuples(0, Vec::<Vec<u8>>::new()),
            Err(Error::ArityOutOfRange { .. })
        ));
    }

    #[test]
    fn rows_are_lexicographic() {
        let r = rel(3, &["110", "001", "010"]);
        let rows: Vec<String> = r.iter().map(|t| t.to_string()).collect();
        assert_eq!(rows, ["001", "010", "110"]);
    }

    #[test]
    fn neq_pad_examples() {
        let eq = Relation::builtin(Builtin::Eq, None).unwrap();
        assert_eq!(eq.neq_pad(1).unwrap(), rel(3, &["001", "110"]));

        let even4 = Relation::builtin(Builtin::Even, Some(4)).unwrap();
        let padded = even4.neq_pad(4).unwrap();
        assert_eq!(padded.arity(), 8);
        assert_eq!(padded.len(), 8);
        for w in padded.words() {
            assert_eq!(w >> 4, !w & 0xf);
        }
        assert!(eq.neq_pad(3).is_err());
        assert!(eq.neq_pad(0).is_err());

        let or2 = Relation::builtin(Builtin::Or, Some(2)).unwrap();
        assert_eq!(
            or2.neq_pad(2).unwrap(),
            rel(4, &["0110", "1001", "1100"])
        );
    }

    #[test]
    fn identify_examples() {
        let eq = Relation::builtin(Builtin::Eq, None).unwrap();
        assert_eq!(eq.identify_args(1, 2).unwrap(), Relation::full(1).unwrap());
        let r13 = Relation::builtin(Builtin::R13, None).unwrap();
        assert_eq!(r13.identify_args(1, 2).unwrap(), rel(2, &["01"]));
        let f = Relation::builtin(Builtin::F, None).unwrap();
        assert_eq!(f.identify_args(1, 2), Err(Error::Underflow));
        assert!(r13.identify_args(2, 2).is_err());
        assert!(r13.identify_args(1, 4).is_err());
        // Non-adjacent pair.
        let r = rel(4, &["1010", "1001", "0000"]);
        assert_eq!(r.identify_args(1, 3).unwrap(), rel(3, &["100", "000"]));
    }

    #[test]
    fn permute_to_ie2_matrix() {
        let before = rel(5, &["00001", "00011", "00101", "01111"]);
        let pi = Permutation::from_one_based(&[4, 1, 2, 3, 5]).unwrap();
        let after = before.permute_args(&pi).unwrap();
        assert_eq!(after, rel(5, &["00001", "00101", "01001", "11101"]));
        assert_eq!(after.permute_args(&pi.inverse()).unwrap(), before);
        assert_eq!(
            before.permute_args(&Permutation::identity(5)).unwrap(),
            before
        );
        assert!(matches!(
            before.permute_args(&Permutation::identity(4)),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn irredundant_core_drops_repeated_columns() {
        let ie2 = rel(5, &["00001", "00101", "01001", "11101"]);
        assert_eq!(ie2.irredundant_core(), ie2);
        let r = rel(3, &["011", "100"]);
        assert_eq!(r.irredundant_core(), rel(2, &["01", "10"]));
        assert_eq!(r.irredundant_core().irredundant_core(), r.irredundant_core());
        assert!(!r.is_irredundant());
    }

    #[test]
    fn dual_and_product() {
        let or2 = Relation::builtin(Builtin::Or, Some(2)).unwrap();
        assert_eq!(or2.dual(), Relation::builtin(Builtin::Nand, Some(2)).unwrap());
        let f = Relation::builtin(Builtin::F, None).unwrap();
        let t = Relation::builtin(Builtin::T, None).unwrap();
        assert_eq!(f.dual(), t);
        assert_eq!(f.product(&t).unwrap(), rel(2, &["01"]));
        assert_eq!(or2.product(&f).unwrap().len(), 3);
        let r13 = Relation::builtin(Builtin::R13, None).unwrap();
        let eq = Relation::builtin(Builtin::Eq, None).unwrap();
        let p = r13.product(&eq).unwrap();
        assert_eq!((p.arity(), p.len()), (5, 6));
        let big = Relation::full(9).unwrap();
        assert!(big.product(&big).is_err());
    }

    #[test]
    fn automorphisms_of_or3() {
        let or3 = Relation::builtin(Builtin::Or, Some(3)).unwrap();
        assert_eq!(or3.automorphisms(1 << 20).unwrap().len(), 6);
        let r = rel(2, &["01"]);
        assert_eq!(r.automorphisms(100).unwrap().len(), 1);
    }

    #[test]
    fn find_permutation_roundtrip() {
        let r = rel(4, &["0001", "0110", "1011"]);
        let pi = Permutation::from_one_based(&[3, 1, 4, 2]).unwrap();
        let s = r.permute_args(&pi).unwrap();
        let found = r.find_permutation(&s).unwrap();
        assert_eq!(r.permute_args(&found).unwrap(), s);
        assert!(r.find_permutation(&rel(4, &["0001"])).is_none());
    }
}
