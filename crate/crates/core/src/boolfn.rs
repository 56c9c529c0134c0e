//! Total and partial Boolean functions as truth tables.
//!
//! Argument vectors are indexed big-endian (`x_1` is the most significant
//! bit). A table is stored with entry 0 in the most significant of its
//! `2^m` bits, so the table read as an integer orders functions the same
//! way as their `m:TTTT` text form read as a binary number.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::relcore::{low_mask, Relation, Tuple};

/// Arity cap for total functions.
pub const TOTAL_ARITY_CAP: usize = 4;
/// Default arity cap for partial functions.
pub const PARTIAL_ARITY_CAP: usize = 3;
/// Partial arity cap reachable with [`Budget::Slow`].
pub const PARTIAL_ARITY_CAP_SLOW: usize = 4;

/// Enumeration budget for partial functions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Budget {
    #[default]
    Default,
    /// Admits 4-ary partial functions (`3^16` of them).
    Slow,
}

impl Budget {
    pub fn partial_cap(self) -> usize {
        match self {
            Budget::Default => PARTIAL_ARITY_CAP,
            Budget::Slow => PARTIAL_ARITY_CAP_SLOW,
        }
    }
}

fn check_arity(m: usize, cap: usize) -> Result<()> {
    if m == 0 || m > cap {
        Err(Error::arity(m, 1, cap))
    } else {
        Ok(())
    }
}

/// Anything that can be applied componentwise to tuples.
pub trait BoolOp {
    fn arity(&self) -> usize;
    /// Value at big-endian argument index `a`, `None` where undefined.
    fn value(&self, a: usize) -> Option<bool>;
}

/// A total `m`-ary Boolean function.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TotalFn {
    arity: u8,
    table: u16,
}

impl TotalFn {
    pub fn new(arity: usize, table: u64) -> Result<Self> {
        check_arity(arity, TOTAL_ARITY_CAP)?;
        let len = 1usize << arity;
        if len < 64 && table >> len != 0 {
            return Err(Error::arity(arity, 1, TOTAL_ARITY_CAP));
        }
        Ok(TotalFn {
            arity: arity as u8,
            table: table as u16,
        })
    }

    /// Builds a function from its entries in argument-index order.
    pub fn from_entries(entries: &[u8]) -> Result<Self> {
        let arity = entries.len().trailing_zeros() as usize;
        if !entries.len().is_power_of_two() {
            return Err(Error::ArityMismatch {
                expected: 1 << arity,
                found: entries.len(),
            });
        }
        let table = entries.iter().fold(0u64, |acc, &e| (acc << 1) | (e & 1) as u64);
        TotalFn::new(arity, table)
    }

    /// The projection `e^m_i` (1-based `i`).
    pub fn projection(m: usize, i: usize) -> Result<Self> {
        check_arity(m, TOTAL_ARITY_CAP)?;
        if i == 0 || i > m {
            return Err(Error::arity(i, 1, m));
        }
        let len = 1usize << m;
        let table = (0..len).fold(0u64, |acc, a| (acc << 1) | ((a >> (m - i)) & 1) as u64);
        TotalFn::new(m, table)
    }

    /// Table as an integer; the enumeration key.
    pub fn index(&self) -> u64 {
        self.table as u64
    }

    pub fn eval(&self, a: usize) -> bool {
        let len = 1usize << self.arity;
        (self.table >> (len - 1 - a)) & 1 == 1
    }

    pub fn to_partial(&self) -> PartialFn {
        PartialFn {
            arity: self.arity,
            defined: low_mask(1 << self.arity),
            values: self.table,
        }
    }

    pub fn is_projection(&self) -> bool {
        (1..=self.arity()).any(|i| TotalFn::projection(self.arity(), i).ok() == Some(*self))
    }
}

impl BoolOp for TotalFn {
    fn arity(&self) -> usize {
        self.arity as usize
    }

    fn value(&self, a: usize) -> Option<bool> {
        Some(self.eval(a))
    }
}

impl fmt::Display for TotalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.arity)?;
        for a in 0..1usize << self.arity {
            f.write_str(if self.eval(a) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for TotalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for TotalFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let p: PartialFn = s.parse()?;
        p.to_total()
            .ok_or_else(|| Error::parse(s.find('*').unwrap_or(0), "undefined entry in a total function"))
    }
}

/// A partial `m`-ary Boolean function.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartialFn {
    arity: u8,
    defined: u16,
    // Zero wherever undefined.
    values: u16,
}

impl PartialFn {
    pub fn nowhere_defined(arity: usize) -> Result<Self> {
        check_arity(arity, PARTIAL_ARITY_CAP_SLOW)?;
        Ok(PartialFn {
            arity: arity as u8,
            defined: 0,
            values: 0,
        })
    }

    /// Decodes a base-3 index: entry 0 is the most significant digit and
    /// digits 0, 1, 2 mean value 0, value 1, undefined.
    pub fn from_index(arity: usize, mut index: u64) -> Result<Self> {
        check_arity(arity, PARTIAL_ARITY_CAP_SLOW)?;
        let len = 1usize << arity;
        if index >= 3u64.pow(len as u32) {
            return Err(Error::arity(arity, 1, PARTIAL_ARITY_CAP_SLOW));
        }
        let (mut defined, mut values) = (0u16, 0u16);
        for a in (0..len).rev() {
            let bit = 1u16 << (len - 1 - a);
            match index % 3 {
                0 => defined |= bit,
                1 => {
                    defined |= bit;
                    values |= bit;
                }
                _ => {}
            }
            index /= 3;
        }
        Ok(PartialFn {
            arity: arity as u8,
            defined,
            values,
        })
    }

    pub fn index(&self) -> u64 {
        (0..1usize << self.arity).fold(0u64, |acc, a| {
            acc * 3
                + match self.eval(a) {
                    Some(false) => 0,
                    Some(true) => 1,
                    None => 2,
                }
        })
    }

    pub fn eval(&self, a: usize) -> Option<bool> {
        let len = 1usize << self.arity;
        let bit = 1u16 << (len - 1 - a);
        (self.defined & bit != 0).then_some(self.values & bit != 0)
    }

    pub fn is_total(&self) -> bool {
        self.defined == low_mask(1 << self.arity)
    }

    pub fn to_total(&self) -> Option<TotalFn> {
        self.is_total().then_some(TotalFn {
            arity: self.arity,
            table: self.values,
        })
    }

    /// Number of defined entries.
    pub fn domain_size(&self) -> usize {
        self.defined.count_ones() as usize
    }

    /// Whether `self` is a subfunction of `other`.
    pub fn is_subfunction_of(&self, other: &PartialFn) -> bool {
        self.arity == other.arity
            && self.defined & !other.defined == 0
            && (self.values ^ other.values) & self.defined == 0
    }
}

impl BoolOp for PartialFn {
    fn arity(&self) -> usize {
        self.arity as usize
    }

    fn value(&self, a: usize) -> Option<bool> {
        self.eval(a)
    }
}

impl From<TotalFn> for PartialFn {
    fn from(f: TotalFn) -> Self {
        f.to_partial()
    }
}

impl fmt::Display for PartialFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.arity)?;
        for a in 0..1usize << self.arity {
            f.write_str(match self.eval(a) {
                Some(false) => "0",
                Some(true) => "1",
                None => "*",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for PartialFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PartialFn {
    type Err = Error;

    /// Parses `m:TTTT…` with `T ∈ {0,1,*}`.
    fn from_str(s: &str) -> Result<Self> {
        let (m, body) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(0, "expected `m:table`"))?;
        let arity: usize = m
            .trim()
            .parse()
            .map_err(|_| Error::parse(0, "arity is not an integer"))?;
        check_arity(arity, PARTIAL_ARITY_CAP_SLOW).map_err(|e| Error::parse(0, e.to_string()))?;
        let len = 1usize << arity;
        let offset = m.len() + 1;
        if body.len() != len {
            return Err(Error::parse(
                offset,
                format!("expected {len} table entries, found {}", body.len()),
            ));
        }
        let (mut defined, mut values) = (0u16, 0u16);
        for (a, c) in body.chars().enumerate() {
            let bit = 1u16 << (len - 1 - a);
            match c {
                '0' => defined |= bit,
                '1' => {
                    defined |= bit;
                    values |= bit;
                }
                '*' => {}
                _ => return Err(Error::parse(offset + a, format!("unexpected `{c}`"))),
            }
        }
        Ok(PartialFn {
            arity: arity as u8,
            defined,
            values,
        })
    }
}

/// Splits the coordinates of `ts` by argument index: entry `a` holds the
/// coordinates `j` where `(t_1[j],…,t_m[j])` encodes `a` big-endian.
pub(crate) fn minterms(ts: &[u16], n: usize, out: &mut [u16; 16]) -> usize {
    out[0] = low_mask(n);
    let mut len = 1;
    for &t in ts {
        for a in (0..len).rev() {
            let e = out[a];
            out[2 * a] = e & !t;
            out[2 * a + 1] = e & t;
        }
        len *= 2;
    }
    len
}

/// Componentwise application; `Ok(None)` when a partial `f` is undefined
/// at some coordinate.
pub fn apply_to_tuples<F: BoolOp>(f: &F, ts: &[Tuple]) -> Result<Option<Tuple>> {
    if ts.len() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: ts.len(),
        });
    }
    let n = ts[0].arity();
    if let Some(t) = ts.iter().find(|t| t.arity() != n) {
        return Err(Error::ArityMismatch {
            expected: n,
            found: t.arity(),
        });
    }
    let words: Vec<u16> = ts.iter().map(Tuple::word).collect();
    let mut mt = [0u16; 16];
    let len = minterms(&words, n, &mut mt);
    let mut out = 0u16;
    for (a, &m) in mt[..len].iter().enumerate() {
        if m == 0 {
            continue;
        }
        match f.value(a) {
            None => return Ok(None),
            Some(true) => out |= m,
            Some(false) => {}
        }
    }
    Ok(Some(Tuple::from_word(out, n)))
}

/// First sequence of tuples (in lexicographic tuple-index order) that `f`
/// maps outside `r`; `None` if `f` preserves `r`. Sequences on which a
/// partial `f` is undefined are skipped.
pub fn violation<F: BoolOp>(f: &F, r: &Relation) -> Option<Vec<Tuple>> {
    let m = f.arity();
    let k = r.len();
    if k == 0 {
        return None;
    }
    let n = r.arity();
    let members = r.member_table();
    let words = r.words();
    let mut idx = vec![0usize; m];
    let mut seq = vec![0u16; m];
    let mut mt = [0u16; 16];
    'outer: loop {
        for (s, &i) in seq.iter_mut().zip(&idx) {
            *s = words[i];
        }
        let len = minterms(&seq, n, &mut mt);
        let mut out = 0u16;
        let mut defined = true;
        for (a, &mm) in mt[..len].iter().enumerate() {
            if mm == 0 {
                continue;
            }
            match f.value(a) {
                None => {
                    defined = false;
                    break;
                }
                Some(true) => out |= mm,
                Some(false) => {}
            }
        }
        if defined && !members.contains(out as usize) {
            return Some(seq.iter().map(|&w| Tuple::from_word(w, n)).collect());
        }
        for pos in (0..m).rev() {
            idx[pos] += 1;
            if idx[pos] < k {
                continue 'outer;
            }
            idx[pos] = 0;
        }
        return None;
    }
}

pub fn preserves(f: &TotalFn, r: &Relation) -> bool {
    violation(f, r).is_none()
}

pub fn preserves_partial(f: &PartialFn, r: &Relation) -> bool {
    violation(f, r).is_none()
}

/// All `2^(2^m)` total `m`-ary functions in ascending table order.
pub fn enumerate_total(m: usize) -> Result<impl Iterator<Item = TotalFn>> {
    check_arity(m, TOTAL_ARITY_CAP)?;
    let count = 1u64 << (1u32 << m);
    Ok((0..count).map(move |t| TotalFn {
        arity: m as u8,
        table: t as u16,
    }))
}

/// All `3^(2^m)` partial `m`-ary functions in ascending base-3 index order.
pub fn enumerate_partial(m: usize) -> Result<impl Iterator<Item = PartialFn>> {
    enumerate_partial_with(m, Budget::Default)
}

pub fn enumerate_partial_with(m: usize, budget: Budget) -> Result<impl Iterator<Item = PartialFn>> {
    check_arity(m, budget.partial_cap())?;
    let count = 3u64.pow(1u32 << m);
    Ok((0..count).map(move |i| PartialFn::from_index(m, i).expect("index in range")))
}

/// All subfunctions of `f`, including `f` and the nowhere-defined function.
pub fn subfunctions(f: &PartialFn) -> impl Iterator<Item = PartialFn> {
    let f = *f;
    let full = f.defined;
    let mut next = Some(full);
    std::iter::from_fn(move || {
        let d = next?;
        next = if d == 0 { None } else { Some((d - 1) & full) };
        Some(PartialFn {
            arity: f.arity,
            defined: d,
            values: f.values & d,
        })
    })
}
