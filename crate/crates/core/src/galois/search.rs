//! Polymorphism search as a constraint problem over truth-table entries.
//!
//! For a fixed function arity `m`, every sequence of `m` tuples of a
//! relation of arity `n` determines, per coordinate, the argument index the
//! function is evaluated at. Only the vector of those indices matters, so
//! the sequences are collapsed to their distinct index vectors, packed with
//! four bits per coordinate. A depth-first search assigns table entries in
//! index order and checks each index vector as soon as its largest index is
//! assigned.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::relcore::Relation;

struct Check {
    rel: u32,
    packed: u64,
    used: u16,
}

pub(crate) struct System {
    m: usize,
    arities: Vec<usize>,
    members: Vec<FixedBitSet>,
    by_trigger: Vec<Vec<Check>>,
}

fn spread(t: u16, n: usize) -> u64 {
    (0..n).fold(0u64, |acc, j| acc | ((((t >> (n - 1 - j)) & 1) as u64) << (4 * j)))
}

/// Distinct packed index vectors of all `m`-sequences over `r`.
pub(crate) fn index_vectors(r: &Relation, m: usize) -> Vec<u64> {
    let n = r.arity();
    let spreads: Vec<u64> = r.words().iter().map(|&t| spread(t, n)).collect();
    let mut level = vec![0u64];
    for _ in 0..m {
        let mut next = Vec::with_capacity(level.len() * spreads.len());
        for &v in &level {
            for &s in &spreads {
                next.push((v << 1) | s);
            }
        }
        next.sort_unstable();
        next.dedup();
        level = next;
    }
    if r.is_empty() {
        level.clear();
    }
    level
}

#[inline]
pub(crate) fn field(packed: u64, j: usize) -> usize {
    ((packed >> (4 * j)) & 15) as usize
}

/// Result word of a table (bit `a` = value at index `a`) on a packed vector.
#[inline]
pub(crate) fn eval_packed(packed: u64, n: usize, tbits: u16) -> u16 {
    let mut out = 0u16;
    for j in 0..n {
        out = (out << 1) | ((tbits >> field(packed, j)) & 1);
    }
    out
}

impl System {
    pub(crate) fn new(gamma: &[Relation], m: usize) -> System {
        let len = 1usize << m;
        let mut by_trigger: Vec<Vec<Check>> = (0..len).map(|_| Vec::new()).collect();
        for (ri, r) in gamma.iter().enumerate() {
            let n = r.arity();
            for packed in index_vectors(r, m) {
                let mut used = 0u16;
                let mut top = 0;
                for j in 0..n {
                    let a = field(packed, j);
                    used |= 1 << a;
                    top = top.max(a);
                }
                by_trigger[top].push(Check {
                    rel: ri as u32,
                    packed,
                    used,
                });
            }
        }
        System {
            m,
            arities: gamma.iter().map(Relation::arity).collect(),
            members: gamma.iter().map(Relation::member_table).collect(),
            by_trigger,
        }
    }

    fn len(&self) -> usize {
        1 << self.m
    }

    fn ok(&self, a: usize, tbits: u16, undef: u16) -> bool {
        self.by_trigger[a].iter().all(|c| {
            if c.used & undef != 0 {
                return true;
            }
            let r = c.rel as usize;
            let out = eval_packed(c.packed, self.arities[r], tbits);
            self.members[r].contains(out as usize)
        })
    }

    fn table_index(&self, tbits: u16) -> usize {
        let len = self.len();
        (tbits.reverse_bits() >> (16 - len)) as usize
    }

    fn total_dfs(&self, a: usize, tbits: u16, out: &mut FixedBitSet) {
        if a == self.len() {
            out.insert(self.table_index(tbits));
            return;
        }
        for v in 0..2u16 {
            let tb = tbits | (v << a);
            if self.ok(a, tb, 0) {
                self.total_dfs(a + 1, tb, out);
            }
        }
    }

    fn partial_dfs(&self, a: usize, tbits: u16, undef: u16, idx: usize, out: &mut FixedBitSet) {
        if a == self.len() {
            out.insert(idx);
            return;
        }
        for digit in 0..3usize {
            let (tb, ud) = match digit {
                0 => (tbits, undef),
                1 => (tbits | (1 << a), undef),
                _ => (tbits, undef | (1 << a)),
            };
            if self.ok(a, tb, ud) {
                self.partial_dfs(a + 1, tb, ud, idx * 3 + digit, out);
            }
        }
    }

    /// Bitset of preserving total functions, indexed by table integer.
    pub(crate) fn total_layer(&self) -> FixedBitSet {
        let size = 1usize << self.len();
        let prefixes: Vec<u16> = (0..2u16).filter(|&v| self.ok(0, v, 0)).collect();
        prefixes
            .into_par_iter()
            .map(|tb| {
                let mut out = FixedBitSet::with_capacity(size);
                self.total_dfs(1, tb, &mut out);
                out
            })
            .reduce(
                || FixedBitSet::with_capacity(size),
                |mut a, b| {
                    a.union_with(&b);
                    a
                },
            )
    }

    /// Bitset of preserving partial functions, indexed by base-3 index.
    pub(crate) fn partial_layer(&self) -> FixedBitSet {
        let size = 3usize.pow(self.len() as u32);
        let prefixes: Vec<(u16, u16, usize)> = [(0u16, 0u16, 0usize), (1, 0, 1), (0, 1, 2)]
            .into_iter()
            .filter(|&(tb, ud, _)| self.ok(0, tb, ud))
            .collect();
        prefixes
            .into_par_iter()
            .map(|(tb, ud, idx)| {
                let mut out = FixedBitSet::with_capacity(size);
                self.partial_dfs(1, tb, ud, idx, &mut out);
                out
            })
            .reduce(
                || FixedBitSet::with_capacity(size),
                |mut a, b| {
                    a.union_with(&b);
                    a
                },
            )
    }
}
