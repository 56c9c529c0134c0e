use std::fmt;

use super::Relation;
use crate::error::{Error, Result};

/// A bijection on argument positions, written `π(i_1,…,i_n)` with `π(j) = i_j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images.
    image: Vec<usize>,
}

impl Permutation {
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in images {
            if i == 0 || i > n {
                return Err(Error::InvalidPermutation(format!(
                    "image {i} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[i - 1], true) {
                return Err(Error::InvalidPermutation(format!("image {i} repeated")));
            }
        }
        Ok(Permutation {
            image: images.iter().map(|i| i - 1).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// Swaps two 1-based positions of the identity on `n` points.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::InvalidPermutation(format!(
                "transposition ({a} {b}) outside 1..={n}"
            )));
        }
        images.swap(a - 1, b - 1);
        Self::from_one_based(&images)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// 0-based image of 0-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.image.iter().map(|i| i + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.image.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { image: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "pi({})", parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(super) fn search(from: &Relation, to: &Relation, all: bool) -> Vec<Permutation> {
    search_bounded(from, to, all, usize::MAX).unwrap_or_default()
}

/// Backtracking over `π` with `from.permute_args(π) == to`. Coordinate `i` of
/// `from` lands on coordinate `π(i)` of `to`, so their column weights must
/// agree and the projections onto the assigned prefix must coincide.
pub(super) fn search_bounded(
    from: &Relation,
    to: &Relation,
    all: bool,
    limit: usize,
) -> Option<Vec<Permutation>> {
    let n = from.arity();
    if n != to.arity() || from.len() != to.len() {
        return Some(Vec::new());
    }
    let weight = |r: &Relation, i: usize| r.column(i).iter().filter(|&&b| b).count();
    let wf: Vec<usize> = (0..n).map(|i| weight(from, i)).collect();
    let wt: Vec<usize> = (0..n).map(|i| weight(to, i)).collect();

    struct State<'a> {
        from: &'a Relation,
        to: &'a Relation,
        wf: Vec<usize>,
        wt: Vec<usize>,
        assigned: Vec<usize>,
        used: Vec<bool>,
        found: Vec<Permutation>,
        all: bool,
        budget: usize,
    }

    fn prefix_projection(r: &Relation, coords: &[usize]) -> Vec<u16> {
        let mut p: Vec<u16> = r.select_columns(coords).words().to_vec();
        p.sort_unstable();
        p
    }

    fn go(st: &mut State<'_>) -> bool {
        if st.budget == 0 {
            return false;
        }
        st.budget -= 1;
        let n = st.from.arity();
        let i = st.assigned.len();
        if i == n {
            st.found.push(Permutation {
                image: st.assigned.clone(),
            });
            return true;
        }
        for j in 0..n {
            if st.used[j] || st.wf[i] != st.wt[j] {
                continue;
            }
            st.assigned.push(j);
            st.used[j] = true;
            let src: Vec<usize> = (0..=i).collect();
            let ok = prefix_projection(st.from, &src) == prefix_projection(st.to, &st.assigned);
            if ok {
                go(st);
            }
            st.used[j] = false;
            st.assigned.pop();
            if st.budget == 0 || (!st.all && !st.found.is_empty()) {
                return true;
            }
        }
        true
    }

    let mut st = State {
        from,
        to,
        wf,
        wt,
        assigned: Vec::new(),
        used: vec![false; n],
        found: Vec::new(),
        all,
        budget: limit,
    };
    go(&mut st);
    if st.budget == 0 {
        return None;
    }
    Some(st.found)
}
