//! Weak bases of all co-clones with a finite base.
//!
//! Variables are ordered `x1..xn, x, c0, c1`; `c0`/`c1` only occur under
//! `F`/`T`. Chain families are instantiated for `n = 2..=n_max`.

use super::derivation::{known_chain, RuleChain};
use super::id::{CoCloneId, Family};
use crate::error::{Error, Result};
use crate::relcore::{Builtin, Expr, Formula, Permutation, Relation, MAX_ARITY};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: CoCloneId,
    pub core_size: usize,
    pub formula: Formula,
    pub weak_base: Relation,
    pub dual_id: CoCloneId,
    /// `weak_base.dual().permute_args(&dual_perm)` is the dual entry's base.
    pub dual_perm: Permutation,
    pub derivation: Option<RuleChain>,
}

fn v(name: &str) -> Expr {
    Expr::var(name)
}

fn nv(name: &str) -> Expr {
    Expr::not(Expr::var(name))
}

fn builtin(b: Builtin, n: usize) -> Relation {
    Relation::builtin(b, Some(n)).expect("builtin arity within range")
}

fn xs(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn refs(names: &[String]) -> Vec<&str> {
    names.iter().map(String::as_str).collect()
}

/// `R_{m≠}(x1..x_{n+m})` as an atom.
fn padded(r: Relation, vars: &[&str]) -> Expr {
    let m = vars.len() - r.arity();
    Expr::apply(r.neq_pad(m).expect("pad within arity"), vars)
}

fn formula(vars: &[&str], parts: Vec<Expr>) -> Formula {
    let body = if parts.len() == 1 {
        parts.into_iter().next().unwrap()
    } else {
        Expr::and(parts)
    };
    Formula::new(vars, body).expect("catalog formula is well formed")
}

fn imp_x(n: usize) -> Expr {
    let x = xs(n);
    Expr::implies(v("x"), Expr::all(&refs(&x)))
}

/// `x1 ∨ … ∨ xn → x`: the dual of `x → x1⋯xn`.
fn imp_x_dual(n: usize) -> Expr {
    let x = xs(n);
    Expr::implies(Expr::or(x.iter().map(|s| v(s))), v("x"))
}

fn chain_formula(family: Family, n: usize) -> Formula {
    let x = xs(n);
    let xr = refs(&x);
    let or = Expr::apply(builtin(Builtin::Or, n), &xr);
    let nand = Expr::apply(builtin(Builtin::Nand, n), &xr);
    let with = |extra: &[&'static str]| -> Vec<String> {
        x.iter().cloned().chain(extra.iter().map(|s| s.to_string())).collect()
    };
    match family {
        Family::IS0 => formula(&refs(&with(&["c1"])), vec![or, v("c1")]),
        Family::IS02 => formula(&refs(&with(&["c0", "c1"])), vec![or, nv("c0"), v("c1")]),
        Family::IS01 => formula(&refs(&with(&["x", "c1"])), vec![or, imp_x(n), v("c1")]),
        Family::IS00 => formula(&refs(&with(&["x", "c0", "c1"])), vec![or, imp_x(n), nv("c0"), v("c1")]),
        Family::IS1 => formula(&refs(&with(&["c0"])), vec![nand, nv("c0")]),
        Family::IS12 => formula(&refs(&with(&["c0", "c1"])), vec![nand, nv("c0"), v("c1")]),
        Family::IS11 => formula(&refs(&with(&["x", "c0"])), vec![nand, imp_x_dual(n), nv("c0")]),
        Family::IS10 => {
            formula(&refs(&with(&["x", "c0", "c1"])), vec![nand, imp_x_dual(n), nv("c0"), v("c1")])
        }
        _ => unreachable!("not a chain family"),
    }
}

fn fixed_formula(family: Family) -> Formula {
    use Family::*;
    let eq = Relation::builtin(Builtin::Eq, None).unwrap();
    let imp12 = || Expr::implies(v("x1"), v("x2"));
    let neq12 = || Expr::not(Expr::iff(v("x1"), v("x2")));
    // x̄1 ↔ x̄2x̄3 and x1 ↔ x2x3
    let v_core = || Expr::iff(nv("x1"), Expr::none(&["x2", "x3"]));
    let e_core = || Expr::iff(v("x1"), Expr::all(&["x2", "x3"]));
    let v_tail = || Expr::implies(Expr::or([nv("x2"), nv("x3")]), nv("x4"));
    let e_tail = || Expr::implies(Expr::or([v("x2"), v("x3")]), v("x4"));
    let n_tail = || Expr::iff(Expr::all(&["x1", "x4"]), Expr::all(&["x2", "x3"]));
    let x4 = ["x1", "x2", "x3", "x4"];
    let x6 = ["x1", "x2", "x3", "x4", "x5", "x6"];
    let x8 = ["x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8"];
    let cat = |a: &[&'static str], b: &[&'static str]| -> Vec<&'static str> {
        a.iter().chain(b).copied().collect()
    };
    match family {
        IBF => formula(&["x1", "x2"], vec![Expr::apply(eq, &["x1", "x2"])]),
        IR0 => formula(&["c0"], vec![nv("c0")]),
        IR1 => formula(&["c1"], vec![v("c1")]),
        IR2 => formula(&["c0", "c1"], vec![nv("c0"), v("c1")]),
        IM => formula(&["x1", "x2"], vec![imp12()]),
        IM0 => formula(&["x1", "x2", "c0"], vec![imp12(), nv("c0")]),
        IM1 => formula(&["x1", "x2", "c1"], vec![imp12(), v("c1")]),
        IM2 => formula(&["x1", "x2", "c0", "c1"], vec![imp12(), nv("c0"), v("c1")]),
        ID => formula(&["x1", "x2"], vec![neq12()]),
        ID1 => formula(&["x1", "x2", "c0", "c1"], vec![neq12(), nv("c0"), v("c1")]),
        ID2 => formula(
            &cat(&x4, &["c0", "c1"]),
            vec![padded(builtin(Builtin::Or, 2), &x4), nv("c0"), v("c1")],
        ),
        IL => formula(&x4, vec![Expr::apply(builtin(Builtin::Even, 4), &x4)]),
        IL0 => formula(
            &["x1", "x2", "x3", "c0"],
            vec![Expr::apply(builtin(Builtin::Even, 3), &["x1", "x2", "x3"]), nv("c0")],
        ),
        IL1 => formula(
            &["x1", "x2", "x3", "c1"],
            vec![Expr::apply(builtin(Builtin::Odd, 3), &["x1", "x2", "x3"]), v("c1")],
        ),
        IL2 => formula(
            &cat(&x6, &["c0", "c1"]),
            vec![padded(builtin(Builtin::Even, 3), &x6), nv("c0"), v("c1")],
        ),
        IL3 => formula(&x8, vec![padded(builtin(Builtin::Even, 4), &x8)]),
        IV => formula(&x4, vec![v_core(), v_tail()]),
        IV0 => formula(&["x1", "x2", "x3", "c0"], vec![v_core(), nv("c0")]),
        IV1 => formula(&cat(&x4, &["c1"]), vec![v_core(), v_tail(), v("c1")]),
        IV2 => formula(&["x1", "x2", "x3", "c0", "c1"], vec![v_core(), nv("c0"), v("c1")]),
        IE => formula(&x4, vec![e_core(), e_tail()]),
        IE0 => formula(&cat(&x4, &["c0"]), vec![e_core(), e_tail(), nv("c0")]),
        IE1 => formula(&["x1", "x2", "x3", "c1"], vec![e_core(), v("c1")]),
        IE2 => formula(&["x1", "x2", "x3", "c0", "c1"], vec![e_core(), nv("c0"), v("c1")]),
        IN => formula(&x4, vec![Expr::apply(builtin(Builtin::Even, 4), &x4), n_tail()]),
        IN2 => formula(&x8, vec![padded(builtin(Builtin::Even, 4), &x8), n_tail()]),
        II => formula(
            &x4,
            vec![e_core(), Expr::iff(nv("x4"), Expr::none(&["x2", "x3"]))],
        ),
        II0 => formula(
            &["x1", "x2", "x3", "c0"],
            vec![
                Expr::or([nv("x1"), nv("x2")]),
                Expr::iff(Expr::none(&["x1", "x2"]), nv("x3")),
                nv("c0"),
            ],
        ),
        II1 => formula(
            &["x1", "x2", "x3", "c1"],
            vec![
                Expr::or([v("x1"), v("x2")]),
                Expr::iff(Expr::all(&["x1", "x2"]), v("x3")),
                v("c1"),
            ],
        ),
        BR => formula(
            &cat(&x6, &["c0", "c1"]),
            vec![
                padded(Relation::builtin(Builtin::R13, None).unwrap(), &x6),
                nv("c0"),
                v("c1"),
            ],
        ),
        _ => unreachable!("chain family"),
    }
}

fn core_size(id: CoCloneId) -> usize {
    use Family::*;
    match id.family() {
        IBF | IR0 | IR1 | IR2 | IM | ID => 1,
        IM0 | IM1 | ID1 | IL | IL0 | IL1 | IV | IV0 | IE | IE1 | IN | II | II0 | II1 => 2,
        IM2 | ID2 | IL2 | IL3 | IV1 | IV2 | IE0 | IE2 | IN2 | BR => 3,
        IS00 | IS10 => id.n().unwrap().max(3),
        _ => id.n().unwrap(),
    }
}

fn dual_perm(id: CoCloneId, arity: usize) -> Permutation {
    use Family::*;
    let swap_last = || Permutation::transposition(arity, arity - 1, arity).unwrap();
    let p = |img: &[usize]| Permutation::from_one_based(img).unwrap();
    match id.family() {
        IR2 | IM => p(&[2, 1]),
        II => p(&[4, 2, 3, 1]),
        IM0 | IM1 => p(&[2, 1, 3]),
        IM2 => p(&[2, 1, 4, 3]),
        IS02 | IS12 | IS00 | IS10 | ID1 | IV2 | IE2 => swap_last(),
        ID2 => p(&[3, 4, 1, 2, 6, 5]),
        IL2 | BR => p(&[4, 5, 6, 1, 2, 3, 8, 7]),
        _ => Permutation::identity(arity),
    }
}

/// Largest `n` for which every chain instance fits the arity cap.
pub const MAX_CHAIN_N: usize = MAX_ARITY - 3;

/// The catalog entry of `id`.
pub fn entry(id: CoCloneId) -> Result<CatalogEntry> {
    let formula = match id.n() {
        Some(n) if n > MAX_CHAIN_N => return Err(Error::arity(n, 2, MAX_CHAIN_N)),
        Some(n) => chain_formula(id.family(), n),
        None => fixed_formula(id.family()),
    };
    let weak_base = formula.relation()?;
    let arity = weak_base.arity();
    Ok(CatalogEntry {
        id,
        core_size: core_size(id),
        formula,
        weak_base,
        dual_id: id.dual(),
        dual_perm: dual_perm(id, arity),
        derivation: known_chain(id.family()),
    })
}

/// All identifiers of the catalog with chain instances `2..=n_max`.
pub fn catalog_ids(n_max: usize) -> Result<Vec<CoCloneId>> {
    if !(2..=MAX_CHAIN_N).contains(&n_max) {
        return Err(Error::arity(n_max, 2, MAX_CHAIN_N));
    }
    let mut ids = Vec::new();
    for f in Family::ALL {
        if f.is_chain() {
            ids.extend((2..=n_max).map(|n| CoCloneId::chain(f, n)));
        } else {
            ids.push(CoCloneId::fixed(f));
        }
    }
    Ok(ids)
}

/// One entry per fixed family plus chain instances `n = 2..=n_max`.
pub fn catalog(n_max: usize) -> Result<Vec<CatalogEntry>> {
    catalog_ids(n_max)?.into_iter().map(entry).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(s: &str) -> Relation {
        entry(s.parse().unwrap()).unwrap().weak_base
    }

    #[test]
    fn sample_entries() {
        assert_eq!(base("IBF").to_string(), "{00,11}");
        assert_eq!(base("IE2").to_string(), "{00001,00101,01001,11101}");
        assert_eq!(base("IM1").to_string(), "{001,011,111}");
        assert_eq!(base("IR2").to_string(), "{01}");
        assert_eq!(base("BR").len(), 3);
        assert_eq!(base("BR").arity(), 8);
        let is00 = entry("IS2_00".parse().unwrap()).unwrap();
        assert_eq!(is00.core_size, 3);
        assert_eq!(is00.weak_base.to_string(), "{01001,10001,11001,11101}");
        assert_eq!(entry("IS5_10".parse().unwrap()).unwrap().core_size, 5);
    }

    #[test]
    fn chain_instances_fit_arity_cap() {
        assert!(entry(CoCloneId::chain(Family::IS00, 13)).is_ok());
        assert!(entry(CoCloneId::chain(Family::IS00, 14)).is_err());
        assert!(catalog(1).is_err());
    }

    #[test]
    fn catalog_size() {
        assert_eq!(catalog(4).unwrap().len(), 30 + 8 * 3);
    }

    #[test]
    fn bases_are_irredundant() {
        // EQ is the one base with two equal columns; its core, the full
        // unary relation, cannot express equality without `=`.
        for e in catalog(5).unwrap() {
            let expect = e.id.family() != Family::IBF;
            assert_eq!(e.weak_base.is_irredundant(), expect, "{}", e.id);
            assert!(!e.weak_base.is_empty(), "{}", e.id);
        }
    }

    #[test]
    fn recorded_dual_permutations() {
        for e in catalog(5).unwrap() {
            let other = entry(e.dual_id).unwrap();
            let mapped = e.weak_base.dual().permute_args(&e.dual_perm).unwrap();
            assert_eq!(mapped, other.weak_base, "{} -> {}", e.id, e.dual_id);
        }
    }
}
