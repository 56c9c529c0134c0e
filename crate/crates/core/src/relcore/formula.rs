//! Propositional formulas over named variables, used to build relations.

use super::{Relation, MAX_ARITY};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(bool),
    Var(String),
    Not(Box<Expr>),
    And(Vec<Expr>),
    Or(Vec<Expr>),
    Implies(Box<Expr>, Box<Expr>),
    Iff(Box<Expr>, Box<Expr>),
    /// Sum of the variables is odd (`odd = true`) or even.
    Parity { vars: Vec<String>, odd: bool },
    /// A relation applied to variables, e.g. `OR^2(x1, x2)`.
    Apply { relation: Relation, args: Vec<String> },
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }

    pub fn and(parts: impl IntoIterator<Item = Expr>) -> Expr {
        Expr::And(parts.into_iter().collect())
    }

    pub fn or(parts: impl IntoIterator<Item = Expr>) -> Expr {
        Expr::Or(parts.into_iter().collect())
    }

    pub fn implies(a: Expr, b: Expr) -> Expr {
        Expr::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Expr, b: Expr) -> Expr {
        Expr::Iff(Box::new(a), Box::new(b))
    }

    pub fn apply(relation: Relation, args: &[&str]) -> Expr {
        Expr::Apply {
            relation,
            args: args.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Conjunction of the named variables (`x1 x2 ⋯`).
    pub fn all(vars: &[&str]) -> Expr {
        Expr::and(vars.iter().map(|v| Expr::var(v)))
    }

    /// Conjunction of the negated variables (`x̄1 x̄2 ⋯`).
    pub fn none(vars: &[&str]) -> Expr {
        Expr::and(vars.iter().map(|v| Expr::not(Expr::var(v))))
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(v) => out.push(v),
            Expr::Not(e) => e.collect_vars(out),
            Expr::And(es) | Expr::Or(es) => es.iter().for_each(|e| e.collect_vars(out)),
            Expr::Implies(a, b) | Expr::Iff(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Parity { vars, .. } => out.extend(vars.iter().map(String::as_str)),
            Expr::Apply { args, .. } => out.extend(args.iter().map(String::as_str)),
        }
    }
}

/// Index-resolved form of [`Expr`], evaluated against a packed assignment.
enum Compiled {
    Const(bool),
    Var(u16),
    Not(Box<Compiled>),
    And(Vec<Compiled>),
    Or(Vec<Compiled>),
    Implies(Box<Compiled>, Box<Compiled>),
    Iff(Box<Compiled>, Box<Compiled>),
    Parity { mask: u16, odd: bool },
    Apply { relation: Relation, bits: Vec<u16> },
}

impl Compiled {
    fn eval(&self, w: u16) -> bool {
        match self {
            Compiled::Const(b) => *b,
            Compiled::Var(bit) => w & bit != 0,
            Compiled::Not(e) => !e.eval(w),
            Compiled::And(es) => es.iter().all(|e| e.eval(w)),
            Compiled::Or(es) => es.iter().any(|e| e.eval(w)),
            Compiled::Implies(a, b) => !a.eval(w) || b.eval(w),
            Compiled::Iff(a, b) => a.eval(w) == b.eval(w),
            Compiled::Parity { mask, odd } => ((w & mask).count_ones() % 2 == 1) == *odd,
            Compiled::Apply { relation, bits } => {
                let t = bits
                    .iter()
                    .fold(0u16, |acc, bit| (acc << 1) | (w & bit != 0) as u16);
                relation.contains_word(t)
            }
        }
    }
}

/// A formula with an ordered variable list; the variable list fixes the
/// argument order of the relation it denotes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    variables: Vec<String>,
    body: Expr,
}

impl Formula {
    pub fn new(variables: &[&str], body: Expr) -> Result<Formula> {
        if variables.is_empty() || variables.len() > MAX_ARITY {
            return Err(Error::arity(variables.len(), 1, MAX_ARITY));
        }
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(Error::parse(i, format!("variable `{v}` listed twice")));
            }
        }
        let f = Formula {
            variables: variables.iter().map(|s| s.to_string()).collect(),
            body,
        };
        f.compile()?;
        Ok(f)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn body(&self) -> &Expr {
        &self.body
    }

    fn bit_of(&self, name: &str) -> Result<u16> {
        let n = self.variables.len();
        self.variables
            .iter()
            .position(|v| v == name)
            .map(|i| 1u16 << (n - 1 - i))
            .ok_or_else(|| Error::UnboundVariable(name.to_string()))
    }

    fn compile_expr(&self, e: &Expr) -> Result<Compiled> {
        Ok(match e {
            Expr::Const(b) => Compiled::Const(*b),
            Expr::Var(v) => Compiled::Var(self.bit_of(v)?),
            Expr::Not(e) => Compiled::Not(Box::new(self.compile_expr(e)?)),
            Expr::And(es) => Compiled::And(
                es.iter()
                    .map(|e| self.compile_expr(e))
                    .collect::<Result<_>>()?,
            ),
            Expr::Or(es) => Compiled::Or(
                es.iter()
                    .map(|e| self.compile_expr(e))
                    .collect::<Result<_>>()?,
            ),
            Expr::Implies(a, b) => Compiled::Implies(
                Box::new(self.compile_expr(a)?),
                Box::new(self.compile_expr(b)?),
            ),
            Expr::Iff(a, b) => Compiled::Iff(
                Box::new(self.compile_expr(a)?),
                Box::new(self.compile_expr(b)?),
            ),
            Expr::Parity { vars, odd } => {
                let mut mask = 0u16;
                for v in vars {
                    mask ^= self.bit_of(v)?;
                }
                Compiled::Parity { mask, odd: *odd }
            }
            Expr::Apply { relation, args } => {
                if args.len() != relation.arity() {
                    return Err(Error::ArityMismatch {
                        expected: relation.arity(),
                        found: args.len(),
                    });
                }
                Compiled::Apply {
                    relation: relation.clone(),
                    bits: args.iter().map(|a| self.bit_of(a)).collect::<Result<_>>()?,
                }
            }
        })
    }

    fn compile(&self) -> Result<Compiled> {
        self.compile_expr(&self.body)
    }

    /// The set of satisfying assignments, in variable-list order.
    pub fn relation(&self) -> Result<Relation> {
        let c = self.compile()?;
        let n = self.variables.len();
        let words = (0..=super::low_mask(n)).filter(|&w| c.eval(w)).collect();
        Ok(Relation::from_words_unchecked(n, words))
    }

    /// Evaluates the formula on a full assignment given in variable order.
    pub fn eval(&self, assignment: &[bool]) -> Result<bool> {
        if assignment.len() != self.variables.len() {
            return Err(Error::ArityMismatch {
                expected: self.variables.len(),
                found: assignment.len(),
            });
        }
        let w = assignment.iter().fold(0u16, |acc, &b| (acc << 1) | b as u16);
        Ok(self.compile()?.eval(w))
    }

    /// Top-level conjuncts, each as a relation over the variables it
    /// mentions (in variable-list order) plus their 1-based positions.
    pub fn conjunct_atoms(&self) -> Result<Vec<(Relation, Vec<usize>)>> {
        let parts: Vec<&Expr> = match &self.body {
            Expr::And(es) => es.iter().collect(),
            e => vec![e],
        };
        let mut out = Vec::new();
        for part in parts {
            let mut mentioned = Vec::new();
            part.collect_vars(&mut mentioned);
            let scope: Vec<&str> = self
                .variables
                .iter()
                .map(String::as_str)
                .filter(|v| mentioned.contains(v))
                .collect();
            let positions = scope
                .iter()
                .map(|v| self.variables.iter().position(|x| x == v).unwrap() + 1)
                .collect();
            let relation = Formula::new(&scope, part.clone())?.relation()?;
            out.push((relation, positions));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relcore::Builtin;

    #[test]
    fn implication_with_constant() {
        let f = Formula::new(
            &["x1", "x2", "c1"],
            Expr::and([
                Expr::implies(Expr::var("x1"), Expr::var("x2")),
                Expr::var("c1"),
            ]),
        )
        .unwrap();
        assert_eq!(f.relation().unwrap().to_string(), "{001,011,111}");
    }

    #[test]
    fn disequality() {
        let f = Formula::new(
            &["x1", "x2"],
            Expr::not(Expr::iff(Expr::var("x1"), Expr::var("x2"))),
        )
        .unwrap();
        assert_eq!(f.relation().unwrap().to_string(), "{01,10}");
    }

    #[test]
    fn ie2_matrix() {
        let f = Formula::new(
            &["x1", "x2", "x3", "c0", "c1"],
            Expr::and([
                Expr::iff(Expr::var("x1"), Expr::all(&["x2", "x3"])),
                Expr::not(Expr::var("c0")),
                Expr::var("c1"),
            ]),
        )
        .unwrap();
        assert_eq!(
            f.relation().unwrap().to_string(),
            "{00001,00101,01001,11101}"
        );
    }

    #[test]
    fn unbound_variable() {
        let err = Formula::new(&["x1"], Expr::var("x2")).unwrap_err();
        assert_eq!(err, Error::UnboundVariable("x2".into()));
    }

    #[test]
    fn conjunct_atoms_follow_variable_order() {
        let or2 = Relation::builtin(Builtin::Or, Some(2)).unwrap();
        let f = Formula::new(
            &["x1", "x2", "c1"],
            Expr::and([Expr::apply(or2.clone(), &["x1", "x2"]), Expr::var("c1")]),
        )
        .unwrap();
        let atoms = f.conjunct_atoms().unwrap();
        assert_eq!(atoms[0], (or2, vec![1, 2]));
        assert_eq!(atoms[1].1, vec![3]);
    }
}
