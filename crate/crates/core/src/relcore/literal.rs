//! Text form of relations.
//!
//! ```text
//! relation := "{" bitstring ("," bitstring)* "}" | builtin
//!           | "conj(" INT ";" atom ("," atom)* ")"
//! builtin  := ("OR"|"NAND"|"EVEN"|"ODD") "^" INT | "R13" | "EQ" | "F" | "T"
//!           | "COLS^" INT | "WB:" COCLONE_ID
//! atom     := relation "@[" INT ("," INT)* "]"
//! ```
//!
//! `NEQ` is accepted as well. An atom constrains the listed 1-based
//! positions of the ambient `INT`-ary relation; positions may repeat.

use std::fmt;

use super::{low_mask, Builtin, Relation, MAX_ARITY};
use crate::error::{Error, Result};
use crate::lattice::{self, CoCloneId};

/// A relation applied to 1-based positions of an ambient arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConjAtom {
    pub relation: Relation,
    pub positions: Vec<usize>,
}

impl ConjAtom {
    pub fn new(relation: Relation, positions: Vec<usize>) -> Result<Self> {
        if positions.len() != relation.arity() {
            return Err(Error::ArityMismatch {
                expected: relation.arity(),
                found: positions.len(),
            });
        }
        if positions.contains(&0) {
            return Err(Error::arity(0, 1, MAX_ARITY));
        }
        Ok(ConjAtom {
            relation,
            positions,
        })
    }

    /// Whether the packed `arity`-ary tuple `w` satisfies this atom.
    pub fn holds(&self, w: u16, arity: usize) -> bool {
        let t = self
            .positions
            .iter()
            .fold(0u16, |acc, &p| (acc << 1) | ((w >> (arity - p)) & 1));
        self.relation.contains_word(t)
    }

    /// The `arity`-ary relation defined by the conjunction of `atoms`.
    pub fn conjunction(arity: usize, atoms: &[ConjAtom]) -> Result<Relation> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(Error::arity(arity, 1, MAX_ARITY));
        }
        for a in atoms {
            if let Some(&p) = a.positions.iter().find(|&&p| p == 0 || p > arity) {
                return Err(Error::arity(p, 1, arity));
            }
        }
        let words = (0..=low_mask(arity))
            .filter(|&w| atoms.iter().all(|a| a.holds(w, arity)))
            .collect();
        Ok(Relation::from_words_unchecked(arity, words))
    }
}

impl fmt::Display for ConjAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pos: Vec<String> = self.positions.iter().map(|p| p.to_string()).collect();
        write!(f, "{}@[{}]", self.relation.literal_name(), pos.join(","))
    }
}

impl Relation {
    /// Bitstring-set form; always re-parses to an equal relation.
    pub fn to_literal(&self) -> String {
        if self.is_empty() {
            return format!("conj({}; F@[1], T@[1])", self.arity());
        }
        let rows: Vec<String> = self.iter().map(|t| t.to_string()).collect();
        format!("{{{}}}", rows.join(","))
    }

    /// Builtin name when one matches, otherwise the bitstring-set form.
    pub fn literal_name(&self) -> String {
        self.builtin_name().unwrap_or_else(|| self.to_literal())
    }
}

impl std::str::FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_relation(s)
    }
}

/// Parses a relation literal.
pub fn parse_relation(src: &str) -> Result<Relation> {
    let mut p = Parser { src, pos: 0 };
    let r = p.relation()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(Error::parse(p.pos, "trailing input"));
    }
    Ok(r)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{tok}`")))
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(Error::parse(self.pos, "expected an integer"));
        }
        let start = self.pos;
        self.pos += digits.len();
        digits
            .parse()
            .map_err(|_| Error::parse(start, "integer too large"))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let id: String = self
            .rest()
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
            .collect();
        self.pos += id.len();
        id
    }

    fn relation(&mut self) -> Result<Relation> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("{") {
            return self.bitstrings(start);
        }
        if self.eat("conj(") {
            return self.conj();
        }
        if self.eat("WB:") {
            let id_pos = self.pos;
            let id: CoCloneId = self
                .ident()
                .parse()
                .map_err(|_| Error::parse(id_pos, "unknown co-clone identifier"))?;
            return lattice::entry(id)
                .map(|e| e.weak_base)
                .map_err(|e| Error::parse(id_pos, e.to_string()));
        }
        let name = self.ident();
        let builtin: Builtin = name
            .parse()
            .map_err(|_| Error::parse(start, format!("unknown relation `{name}`")))?;
        let n = if builtin.is_parametric() {
            self.expect("^")?;
            Some(self.int()?)
        } else {
            None
        };
        Relation::builtin(builtin, n).map_err(|e| Error::parse(start, e.to_string()))
    }

    fn bitstrings(&mut self, start: usize) -> Result<Relation> {
        let mut rows: Vec<Vec<u8>> = Vec::new();
        loop {
            self.skip_ws();
            let row_pos = self.pos;
            let row: Vec<u8> = self
                .rest()
                .bytes()
                .take_while(|b| *b == b'0' || *b == b'1')
                .map(|b| b - b'0')
                .collect();
            if row.is_empty() {
                return Err(Error::parse(row_pos, "expected a bitstring"));
            }
            self.pos += row.len();
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(Error::parse(
                        row_pos,
                        format!("bitstring of length {} in a {}-ary relation", row.len(), first.len()),
                    ));
                }
            }
            rows.push(row);
            if self.eat("}") {
                break;
            }
            self.expect(",")?;
        }
        let arity = rows[0].len();
        Relation::from_tuples(arity, rows).map_err(|e| Error::parse(start, e.to_string()))
    }

    fn conj(&mut self) -> Result<Relation> {
        let arity_pos = self.pos;
        let arity = self.int()?;
        if arity == 0 || arity > MAX_ARITY {
            return Err(Error::parse(arity_pos, format!("arity {arity} outside 1..=16")));
        }
        self.expect(";")?;
        let mut atoms = Vec::new();
        loop {
            self.skip_ws();
            let atom_pos = self.pos;
            let relation = self.relation()?;
            self.expect("@[")?;
            let mut positions = Vec::new();
            loop {
                let p_pos = self.pos;
                let p = self.int()?;
                if p == 0 || p > arity {
                    return Err(Error::parse(p_pos, format!("position {p} outside 1..={arity}")));
                }
                positions.push(p);
                if self.eat("]") {
                    break;
                }
                self.expect(",")?;
            }
            let atom = ConjAtom::new(relation, positions)
                .map_err(|e| Error::parse(atom_pos, e.to_string()))?;
            atoms.push(atom);
            if self.eat(")") {
                break;
            }
            self.expect(",")?;
        }
        ConjAtom::conjunction(arity, &atoms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitstring_sets() {
        let r = parse_relation("{00001, 00101,01001,11101}").unwrap();
        assert_eq!(r.arity(), 5);
        assert_eq!(r.len(), 4);
        assert_eq!(parse_relation(&r.to_literal()).unwrap(), r);
    }

    #[test]
    fn builtins() {
        assert_eq!(parse_relation("OR^2").unwrap().to_string(), "{01,10,11}");
        assert_eq!(parse_relation("COLS^1").unwrap().to_string(), "{01}");
        assert_eq!(parse_relation("R13").unwrap().len(), 3);
        assert_eq!(parse_relation("NEQ").unwrap().to_string(), "{01,10}");
    }

    #[test]
    fn conj_is2_0() {
        let r = parse_relation("conj(3; OR^2@[1,2], T@[3])").unwrap();
        assert_eq!(r.to_string(), "{011,101,111}");
        let rep = parse_relation("conj(2; OR^3@[1,1,2])").unwrap();
        assert_eq!(rep, parse_relation("OR^2").unwrap());
    }

    #[test]
    fn empty_relation_roundtrips() {
        let e = Relation::empty(3).unwrap();
        assert_eq!(parse_relation(&e.to_literal()).unwrap(), e);
    }

    #[test]
    fn weak_base_reference() {
        let r = parse_relation("WB:IE2").unwrap();
        assert_eq!(r.to_string(), "{00001,00101,01001,11101}");
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_relation("{01,1}") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        match parse_relation("conj(2; OR^2@[1,3])") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 16),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_relation("XOR^2"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse_relation("OR^2 x"), Err(Error::Parse { offset: 5, .. })));
        assert!(parse_relation("{}").is_err());
        assert!(parse_relation("WB:IQ").is_err());
    }
}
