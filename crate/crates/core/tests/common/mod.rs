//! Brute-force reference implementations shared by the integration tests.
//! Everything here works on plain bit vectors and avoids the packed
//! evaluators of the library.
#![allow(dead_code, clippy::needless_range_loop)]

use coclone::boolfn::{BoolOp, PartialFn};
use coclone::relcore::ConjAtom;
use coclone::{Relation, Tuple};
use rand::Rng;

pub fn rows(r: &Relation) -> Vec<Vec<u8>> {
    r.iter().map(|t| t.to_bits()).collect()
}

pub fn relation(arity: usize, rows: &[Vec<u8>]) -> Relation {
    Relation::from_tuples(arity, rows).unwrap()
}

/// Applies `f` coordinate by coordinate to every sequence of rows.
pub fn naive_preserves(f: &PartialFn, r: &Relation) -> bool {
    let m = f.arity();
    let rs = rows(r);
    let n = r.arity();
    let k = rs.len();
    if k == 0 {
        return true;
    }
    let mut choice = vec![0usize; m];
    loop {
        let mut out = Vec::with_capacity(n);
        let mut defined = true;
        for i in 0..n {
            let a = choice.iter().fold(0usize, |acc, &c| (acc << 1) | rs[c][i] as usize);
            match f.eval(a) {
                Some(v) => out.push(v as u8),
                None => {
                    defined = false;
                    break;
                }
            }
        }
        if defined && !rs.contains(&out) {
            return false;
        }
        let mut pos = m;
        loop {
            if pos == 0 {
                return true;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < k {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// All position vectors in `1..=n` of length `m`.
pub fn position_vectors(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (1..=n).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    out
}

fn atom_holds(q: &Relation, positions: &[usize], row: &[u8]) -> bool {
    let picked: Vec<u8> = positions.iter().map(|&p| row[p - 1]).collect();
    q.contains(&Tuple::from_bits(&picked).unwrap())
}

/// Conjunction of every entailed atom, found by trying all position
/// vectors.
pub fn naive_canonical(r: &Relation, gamma: &[Relation], allow_eq: bool) -> Relation {
    let n = r.arity();
    let mut lang = gamma.to_vec();
    if allow_eq {
        lang.push("EQ".parse().unwrap());
    }
    let rs = rows(r);
    let mut atoms = Vec::new();
    for q in &lang {
        for p in position_vectors(n, q.arity()) {
            if rs.iter().all(|row| atom_holds(q, &p, row)) {
                atoms.push((q.clone(), p));
            }
        }
    }
    let all: Vec<Vec<u8>> = (0..1u32 << n)
        .map(|w| (0..n).map(|i| (w >> (n - 1 - i) & 1) as u8).collect())
        .filter(|row: &Vec<u8>| atoms.iter().all(|(q, p)| atom_holds(q, p, row)))
        .collect();
    relation(n, &all)
}

/// Conjunction of atoms evaluated row by row.
pub fn naive_conjunction(n: usize, atoms: &[ConjAtom]) -> Relation {
    let all: Vec<Vec<u8>> = (0..1u32 << n)
        .map(|w| (0..n).map(|i| (w >> (n - 1 - i) & 1) as u8).collect())
        .filter(|row: &Vec<u8>| atoms.iter().all(|a| atom_holds(&a.relation, &a.positions, row)))
        .collect();
    relation(n, &all)
}

/// Indices (table integers) of the total `m`-ary polymorphisms of `gamma`.
pub fn naive_pol(gamma: &[Relation], m: usize) -> Vec<u64> {
    (0..1u64 << (1 << m))
        .filter(|&t| {
            let f = coclone::TotalFn::new(m, t).unwrap().to_partial();
            gamma.iter().all(|r| naive_preserves(&f, r))
        })
        .collect()
}

/// Number of partial `m`-ary polymorphisms of `gamma`.
pub fn naive_ppol_count(gamma: &[Relation], m: usize) -> usize {
    (0..3u64.pow(1 << m))
        .filter(|&i| {
            let f = PartialFn::from_index(m, i).unwrap();
            gamma.iter().all(|r| naive_preserves(&f, r))
        })
        .count()
}

/// A nonempty relation of random arity in `1..=max_arity`.
pub fn random_relation<R: Rng>(rng: &mut R, max_arity: usize) -> Relation {
    let arity = rng.gen_range(1..=max_arity);
    loop {
        let words: Vec<u16> = (0..1u16 << arity).filter(|_| rng.gen_bool(0.5)).collect();
        if !words.is_empty() {
            return Relation::from_words(arity, words).unwrap();
        }
    }
}
