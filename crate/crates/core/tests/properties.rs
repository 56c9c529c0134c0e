mod common;

use std::sync::OnceLock;

use coclone::boolfn::{preserves_partial, subfunctions, BoolOp, PartialFn};
use coclone::definability::{canonical_conjunction, prime_implicates, qpp_definable};
use coclone::galois::{fingerprint_leq, pol_k, ppol_k};
use coclone::relcore::ConjAtom;
use coclone::{parse_relation, Classifier, Permutation, Relation, TotalFn};
use proptest::prelude::*;

fn relation(max_arity: usize) -> impl Strategy<Value = Relation> {
    (1..=max_arity).prop_flat_map(|n| {
        proptest::collection::btree_set(0..1u16 << n, 1..=(1usize << n))
            .prop_map(move |ws| Relation::from_words(n, ws).unwrap())
    })
}

fn with_permutation(max_arity: usize) -> impl Strategy<Value = (Relation, Permutation)> {
    relation(max_arity).prop_flat_map(|r| {
        let n = r.arity();
        (Just(r), Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|(r, p)| (r, Permutation::from_one_based(&p).unwrap()))
    })
}

fn partial_fn(max_arity: usize) -> impl Strategy<Value = PartialFn> {
    (1..=max_arity).prop_flat_map(|m| {
        (0..3u64.pow(1 << m)).prop_map(move |i| PartialFn::from_index(m, i).unwrap())
    })
}

fn classifier() -> &'static Classifier {
    static C: OnceLock<Classifier> = OnceLock::new();
    C.get_or_init(|| Classifier::new(2).unwrap())
}

proptest! {
    #[test]
    fn literal_roundtrip(r in relation(6)) {
        prop_assert_eq!(parse_relation(&r.to_literal()).unwrap(), r.clone());
        prop_assert_eq!(parse_relation(&r.literal_name()).unwrap(), r);
    }

    #[test]
    fn dual_is_involution_and_commutes((r, p) in with_permutation(6)) {
        prop_assert_eq!(r.dual().dual(), r.clone());
        prop_assert_eq!(r.dual().len(), r.len());
        prop_assert_eq!(
            r.permute_args(&p).unwrap().dual(),
            r.dual().permute_args(&p).unwrap()
        );
        prop_assert_eq!(r.permute_args(&p).unwrap().permute_args(&p.inverse()).unwrap(), r);
    }

    #[test]
    fn permutation_moves_coordinates((r, p) in with_permutation(5)) {
        let image = r.permute_args(&p).unwrap();
        let rows = common::rows(&r);
        for t in image.iter() {
            let bits = t.to_bits();
            // t'[π(i)] = t[i]
            let back: Vec<u8> = (0..r.arity()).map(|i| bits[p.image(i)]).collect();
            prop_assert!(rows.contains(&back));
        }
        prop_assert_eq!(image.len(), r.len());
    }

    #[test]
    fn identification_keeps_agreeing_rows(r in relation(6), a in 0usize..64, b in 0usize..64) {
        let n = r.arity();
        prop_assume!(n >= 2);
        let i = 1 + a % (n - 1);
        let j = i + 1 + b % (n - i);
        let s = r.identify_args(i, j).unwrap();
        prop_assert_eq!(s.arity(), r.arity() - 1);
        let expect: Vec<Vec<u8>> = common::rows(&r)
            .into_iter()
            .filter(|t| t[i - 1] == t[j - 1])
            .map(|mut t| {
                t.remove(j - 1);
                t
            })
            .collect();
        prop_assert_eq!(common::rows(&s), expect);
    }

    #[test]
    fn product_counts(a in relation(4), b in relation(4)) {
        let p = a.product(&b).unwrap();
        prop_assert_eq!(p.len(), a.len() * b.len());
        prop_assert_eq!(p.arity(), a.arity() + b.arity());
    }

    #[test]
    fn irredundant_core_drops_repeats(r in relation(4), col in 0usize..4) {
        prop_assume!(col < r.arity());
        let wide = r.duplicate_column(col).unwrap();
        prop_assert!(!wide.is_irredundant());
        let core = wide.irredundant_core();
        prop_assert!(core.is_irredundant());
        prop_assert_eq!(core.len(), wide.len());
        prop_assert_eq!(core, r.irredundant_core());
    }

    #[test]
    fn partial_index_roundtrip(f in partial_fn(3)) {
        prop_assert_eq!(PartialFn::from_index(f.arity(), f.index()).unwrap(), f);
        prop_assert_eq!(f.to_string().parse::<PartialFn>().unwrap(), f);
        prop_assert_eq!(f.to_total().is_some(), f.is_total());
        prop_assert_eq!(subfunctions(&f).count(), 1 << f.domain_size());
        prop_assert!(subfunctions(&f).all(|g| g.is_subfunction_of(&f)));
    }

    #[test]
    fn preservation_matches_oracle(f in partial_fn(3), r in relation(4)) {
        prop_assert_eq!(preserves_partial(&f, &r), common::naive_preserves(&f, &r));
    }

    #[test]
    fn subfunctions_inherit_preservation(f in partial_fn(2), r in relation(4)) {
        if preserves_partial(&f, &r) {
            prop_assert!(subfunctions(&f).all(|g| preserves_partial(&g, &r)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pol_search_matches_enumeration(r in relation(4)) {
        let fp = pol_k(std::slice::from_ref(&r), 3).unwrap();
        for m in 1..=3 {
            let got: Vec<u64> = fp.total_members(m).iter().map(TotalFn::index).collect();
            prop_assert_eq!(got, common::naive_pol(std::slice::from_ref(&r), m));
        }
    }

    #[test]
    fn ppol_search_matches_enumeration(r in relation(3)) {
        let fp = ppol_k(std::slice::from_ref(&r), 2).unwrap();
        prop_assert_eq!(fp.layer(2).count_ones(..), common::naive_ppol_count(std::slice::from_ref(&r), 2));
    }

    #[test]
    fn galois_antitone(a in relation(3), b in relation(3)) {
        let one = pol_k(std::slice::from_ref(&a), 3).unwrap();
        let both = pol_k(&[a.clone(), b.clone()], 3).unwrap();
        prop_assert!(fingerprint_leq(&both, &one).unwrap());
        let p_one = ppol_k(std::slice::from_ref(&a), 2).unwrap();
        let p_both = ppol_k(&[a, b], 2).unwrap();
        prop_assert!(fingerprint_leq(&p_both, &p_one).unwrap());
        for m in 1..=2 {
            for f in one.total_members(m) {
                prop_assert!(p_one.contains_partial(&f.to_partial()));
            }
        }
    }

    #[test]
    fn classification_ignores_column_order((r, p) in with_permutation(4)) {
        let c = classifier();
        prop_assert_eq!(c.classify(&r).unwrap(), c.classify(&r.permute_args(&p).unwrap()).unwrap());
    }

    #[test]
    fn classification_ignores_repeated_columns(r in relation(4), col in 0usize..4) {
        prop_assume!(col < r.arity());
        let c = classifier();
        prop_assert_eq!(c.classify(&r).unwrap(), c.classify(&r.duplicate_column(col).unwrap()).unwrap());
    }

    #[test]
    fn canonical_conjunction_contains_and_decides(
        r in relation(4),
        gamma in proptest::collection::vec(relation(3), 1..=2),
        extra in relation(3),
        eq in any::<bool>(),
    ) {
        let canon = canonical_conjunction(&r, &gamma, eq);
        prop_assert!(r.is_subset(&canon));
        let ans = qpp_definable(&r, &gamma, eq);
        prop_assert_eq!(ans.definable, canon == r);
        if ans.definable {
            prop_assert_eq!(ConjAtom::conjunction(r.arity(), &ans.witness).unwrap(), r.clone());
            // Without equality implies with equality, reusing the witness.
            if !eq {
                prop_assert!(qpp_definable(&r, &gamma, true).definable);
            }
            // Definable relations keep every partial polymorphism.
            let mut with_eq = gamma.clone();
            if eq {
                with_eq.push(parse_relation("EQ").unwrap());
            }
            let lang = ppol_k(&with_eq, 2).unwrap();
            prop_assert!(fingerprint_leq(&lang, &ppol_k(std::slice::from_ref(&r), 2).unwrap()).unwrap());
        }
        let mut bigger = gamma.clone();
        bigger.push(extra);
        prop_assert!(canonical_conjunction(&r, &bigger, eq).is_subset(&canon));
    }

    #[test]
    fn primes_rebuild_relation(r in relation(5)) {
        let primes = prime_implicates(&r, r.arity()).unwrap();
        let n = r.arity();
        let words: Vec<u16> = (0..1u16 << n)
            .filter(|&w| primes.iter().all(|c| c.holds(w, n)))
            .collect();
        prop_assert_eq!(words.as_slice(), r.words());
        for c in &primes {
            prop_assert!(r.words().iter().all(|&w| c.holds(w, n)));
        }
    }
}
