use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Co-clone families with a finite base, in table order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    IBF,
    IR0,
    IR1,
    IR2,
    IM,
    IM0,
    IM1,
    IM2,
    IS0,
    IS02,
    IS01,
    IS00,
    IS1,
    IS12,
    IS11,
    IS10,
    ID,
    ID1,
    ID2,
    IL,
    IL0,
    IL1,
    IL2,
    IL3,
    IV,
    IV0,
    IV1,
    IV2,
    IE,
    IE0,
    IE1,
    IE2,
    IN,
    IN2,
    II,
    II0,
    II1,
    BR,
}

use Family::*;

impl Family {
    pub const ALL: [Family; 38] = [
        IBF, IR0, IR1, IR2, IM, IM0, IM1, IM2, IS0, IS02, IS01, IS00, IS1, IS12, IS11, IS10, ID,
        ID1, ID2, IL, IL0, IL1, IL2, IL3, IV, IV0, IV1, IV2, IE, IE0, IE1, IE2, IN, IN2, II, II0,
        II1, BR,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IBF => "IBF",
            IR0 => "IR0",
            IR1 => "IR1",
            IR2 => "IR2",
            IM => "IM",
            IM0 => "IM0",
            IM1 => "IM1",
            IM2 => "IM2",
            IS0 => "IS0",
            IS02 => "IS02",
            IS01 => "IS01",
            IS00 => "IS00",
            IS1 => "IS1",
            IS12 => "IS12",
            IS11 => "IS11",
            IS10 => "IS10",
            ID => "ID",
            ID1 => "ID1",
            ID2 => "ID2",
            IL => "IL",
            IL0 => "IL0",
            IL1 => "IL1",
            IL2 => "IL2",
            IL3 => "IL3",
            IV => "IV",
            IV0 => "IV0",
            IV1 => "IV1",
            IV2 => "IV2",
            IE => "IE",
            IE0 => "IE0",
            IE1 => "IE1",
            IE2 => "IE2",
            IN => "IN",
            IN2 => "IN2",
            II => "II",
            II0 => "II0",
            II1 => "II1",
            BR => "BR",
        }
    }

    /// Whether the family is one of the eight infinite `IS` chains.
    pub fn is_chain(self) -> bool {
        matches!(self, IS0 | IS02 | IS01 | IS00 | IS1 | IS12 | IS11 | IS10)
    }

    /// Suffix after `IS` for chain families (`"02"` for `IS02`).
    fn chain_suffix(self) -> Option<&'static str> {
        self.is_chain().then(|| &self.name()[2..])
    }

    /// The family obtained by complementing every relation.
    pub fn dual(self) -> Family {
        match self {
            IR0 => IR1,
            IR1 => IR0,
            IM0 => IM1,
            IM1 => IM0,
            IS0 => IS1,
            IS02 => IS12,
            IS01 => IS11,
            IS00 => IS10,
            IS1 => IS0,
            IS12 => IS02,
            IS11 => IS01,
            IS10 => IS00,
            IL0 => IL1,
            IL1 => IL0,
            IV => IE,
            IV0 => IE1,
            IV1 => IE0,
            IV2 => IE2,
            IE => IV,
            IE0 => IV1,
            IE1 => IV0,
            IE2 => IV2,
            II0 => II1,
            II1 => II0,
            f => f,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidCoClone(s.to_string()))
    }
}

/// A co-clone of the catalog: a family plus, for `IS` chains, `n ≥ 2`.
///
/// Text form is the family name, or `IS{n}_{suffix}` for chains
/// (`IS2_00`, `IS3_1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoCloneId {
    family: Family,
    n: u8,
}

impl CoCloneId {
    pub fn new(family: Family, n: Option<usize>) -> Result<Self> {
        match (family.is_chain(), n) {
            (true, Some(n)) if (2..=u8::MAX as usize).contains(&n) => Ok(CoCloneId {
                family,
                n: n as u8,
            }),
            (false, None) => Ok(CoCloneId { family, n: 0 }),
            _ => Err(Error::InvalidCoClone(match n {
                Some(n) => format!("{family} with n = {n}"),
                None => format!("{family} without n"),
            })),
        }
    }

    /// Identifier of a family without a parameter.
    ///
    /// # Panics
    /// If `family` is an `IS` chain.
    pub fn fixed(family: Family) -> Self {
        CoCloneId::new(family, None).expect("family takes no parameter")
    }

    /// Identifier of the `n`-th member of an `IS` chain.
    ///
    /// # Panics
    /// If `family` is not a chain or `n < 2`.
    pub fn chain(family: Family, n: usize) -> Self {
        CoCloneId::new(family, Some(n)).expect("chain family with n >= 2")
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn n(self) -> Option<usize> {
        self.family.is_chain().then_some(self.n as usize)
    }

    pub fn dual(self) -> CoCloneId {
        CoCloneId {
            family: self.family.dual(),
            n: self.n,
        }
    }
}

impl fmt::Display for CoCloneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family.chain_suffix() {
            Some(suffix) => write!(f, "IS{}_{}", self.n, suffix),
            None => f.write_str(self.family.name()),
        }
    }
}

impl FromStr for CoCloneId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidCoClone(s.to_string());
        if let Some((head, suffix)) = s.split_once('_') {
            let n: usize = head.strip_prefix("IS").ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let family: Family = format!("IS{suffix}").parse().map_err(|_| bad())?;
            if !family.is_chain() {
                return Err(bad());
            }
            return CoCloneId::new(family, Some(n)).map_err(|_| bad());
        }
        let family: Family = s.parse()?;
        CoCloneId::new(family, None).map_err(|_| bad())
    }
}

impl Serialize for CoCloneId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
