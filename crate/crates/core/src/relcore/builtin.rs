use std::fmt;
use std::str::FromStr;

use super::{low_mask, Relation, MAX_ARITY};
use crate::error::{Error, Result};

/// Named relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// `n`-ary disjunction.
    Or,
    /// `n`-ary negated conjunction.
    Nand,
    /// `n`-ary, even number of ones.
    Even,
    /// `n`-ary, odd number of ones.
    Odd,
    /// `{001, 010, 100}`.
    R13,
    Eq,
    Neq,
    /// `{0}`.
    F,
    /// `{1}`.
    T,
    /// The `2^n`-ary relation whose columns, left to right, are `0..2^n`
    /// written big-endian (row 1 holds the most significant bit).
    Cols,
}

impl Builtin {
    pub fn is_parametric(self) -> bool {
        matches!(
            self,
            Builtin::Or | Builtin::Nand | Builtin::Even | Builtin::Odd | Builtin::Cols
        )
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Builtin::Or => "OR",
            Builtin::Nand => "NAND",
            Builtin::Even => "EVEN",
            Builtin::Odd => "ODD",
            Builtin::R13 => "R13",
            Builtin::Eq => "EQ",
            Builtin::Neq => "NEQ",
            Builtin::F => "F",
            Builtin::T => "T",
            Builtin::Cols => "COLS",
        })
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "OR" => Builtin::Or,
            "NAND" => Builtin::Nand,
            "EVEN" => Builtin::Even,
            "ODD" => Builtin::Odd,
            "R13" => Builtin::R13,
            "EQ" => Builtin::Eq,
            "NEQ" => Builtin::Neq,
            "F" => Builtin::F,
            "T" => Builtin::T,
            "COLS" => Builtin::Cols,
            _ => return Err(Error::parse(0, format!("unknown relation name `{s}`"))),
        })
    }
}

impl Relation {
    /// The named relation; `n` is required exactly for the parametric names.
    pub fn builtin(name: Builtin, n: Option<usize>) -> Result<Relation> {
        let n = match (name.is_parametric(), n) {
            (true, Some(n)) => n,
            (true, None) => return Err(Error::arity(0, 1, MAX_ARITY)),
            (false, Some(n)) => return Err(Error::arity(n, 0, 0)),
            (false, None) => 0,
        };
        let of = |arity: usize, keep: &dyn Fn(u16) -> bool| -> Result<Relation> {
            if arity == 0 || arity > MAX_ARITY {
                return Err(Error::arity(arity, 1, MAX_ARITY));
            }
            Relation::from_words(arity, (0..=low_mask(arity)).filter(|&w| keep(w)))
        };
        match name {
            Builtin::Or => of(n, &|w| w != 0),
            Builtin::Nand => of(n, &|w| w != low_mask(n)),
            Builtin::Even => of(n, &|w| w.count_ones() % 2 == 0),
            Builtin::Odd => of(n, &|w| w.count_ones() % 2 == 1),
            Builtin::R13 => of(3, &|w| w.count_ones() == 1),
            Builtin::Eq => of(2, &|w| w == 0b00 || w == 0b11),
            Builtin::Neq => of(2, &|w| w == 0b01 || w == 0b10),
            Builtin::F => of(1, &|w| w == 0),
            Builtin::T => of(1, &|w| w == 1),
            Builtin::Cols => {
                if n == 0 || n > 4 {
                    return Err(Error::arity(n, 1, 4));
                }
                let width = 1usize << n;
                let rows = (0..n).map(|row| {
                    // Row `row` carries bit `n-1-row` of each column index.
                    (0..width).fold(0u16, |acc, j| (acc << 1) | ((j >> (n - 1 - row)) & 1) as u16)
                });
                Relation::from_words(width, rows)
            }
        }
    }

    /// A compact name for this relation in the literal grammar, when it is
    /// one of the fixed-arity builtins.
    pub(crate) fn builtin_name(&self) -> Option<String> {
        let n = self.arity();
        let fixed = [Builtin::F, Builtin::T, Builtin::Eq, Builtin::R13];
        for b in fixed {
            if Relation::builtin(b, None).as_ref() == Ok(self) {
                return Some(b.to_string());
            }
        }
        if n >= 2 {
            for b in [Builtin::Or, Builtin::Nand, Builtin::Even, Builtin::Odd] {
                if Relation::builtin(b, Some(n)).as_ref() == Ok(self) {
                    return Some(format!("{b}^{n}"));
                }
            }
        }
        None
    }
}
