mod common;

use proptest::prelude::*;
use tlgrowth_core::analysis::run_engine;
use tlgrowth_core::graph::canonical_labeling;
use tlgrowth_core::ncgb::{reduce_with_strategy, ReductionStrategy};
use tlgrowth_core::{canonical_form, enumerate_graphs, is_isomorphic, NcPolynomial, ParameterMode, Scalar, TwoColoredStar, Word};

fn graph_strategy(max_leaves: usize) -> impl Strategy<Value = TwoColoredStar> {
    (1..=max_leaves).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| ((i + 1)..=n).map(move |j| (i, j))).collect();
        let m = pairs.len();
        proptest::collection::vec(any::<bool>(), m).prop_map(move |mask| {
            let chosen = pairs.iter().zip(&mask).filter(|(_, &b)| b).map(|(&p, _)| p);
            TwoColoredStar::new(n, chosen).unwrap()
        })
    })
}

fn graph_and_perm(max_leaves: usize) -> impl Strategy<Value = (TwoColoredStar, Vec<usize>)> {
    graph_strategy(max_leaves).prop_flat_map(|g| {
        let perm: Vec<usize> = (1..=g.leaves()).collect();
        (Just(g), Just(perm).prop_shuffle())
    })
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        (-5i64..=5, 1i64..=4).prop_map(|(p, q)| Scalar::from_ratio(p, q)),
        (-3i64..=3).prop_map(|k| &Scalar::t() * &Scalar::from_int(k)),
        (1i64..=3).prop_map(|k| (&Scalar::t() + &Scalar::from_int(k)).inv()),
    ]
}

fn poly_strategy(generators: u8) -> impl Strategy<Value = NcPolynomial> {
    let word = proptest::collection::vec(0..generators, 0..=7).prop_map(Word::new);
    proptest::collection::vec((word, scalar_strategy()), 0..=6).prop_map(NcPolynomial::from_terms)
}

fn normal_in(p: &NcPolynomial, obs: &tlgrowth_core::ObstructionSet) -> bool {
    p.words().all(|w| obs.is_normal(w))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_relabeling_invariant((g, perm) in graph_and_perm(7)) {
        prop_assert_eq!(canonical_form(&g), canonical_form(&g.relabeled(&perm)));
        prop_assert!(is_isomorphic(&g, &g.relabeled(&perm)));
    }

    #[test]
    fn canonical_labeling_is_isomorphic(g in graph_strategy(7)) {
        let (form, relabeled) = canonical_labeling(&g);
        prop_assert_eq!(canonical_form(&relabeled), form);
        prop_assert!(is_isomorphic(&g, &relabeled));
    }

    #[test]
    fn isomorphism_agrees_with_canonical_form(a in graph_strategy(5), b in graph_strategy(5)) {
        prop_assert_eq!(is_isomorphic(&a, &b), canonical_form(&a) == canonical_form(&b));
    }

    #[test]
    fn random_configuration_matches_one_enumerated_class(g in graph_strategy(6)) {
        let hits = enumerate_graphs(g.leaves()).unwrap().iter().filter(|h| is_isomorphic(h, &g)).count();
        prop_assert_eq!(hits, 1);
    }

    #[test]
    fn reduction_properties_hold_for_random_polynomials(
        (g, p, q, c) in graph_strategy(4).prop_flat_map(|g| {
            let k = g.leaves() as u8 + 1;
            (Just(g), poly_strategy(k), poly_strategy(k), scalar_strategy())
        })
    ) {
        let run = run_engine(&g, &ParameterMode::Symbolic, None).unwrap();
        let gb = &run.groebner;
        let rp = gb.reduce(&p);
        prop_assert!(normal_in(&rp, &gb.obstructions));
        prop_assert_eq!(gb.reduce(&rp), rp.clone());
        let rq = gb.reduce(&q);
        prop_assert_eq!(gb.reduce(&p.scale(&c).add(&q)), rp.scale(&c).add(&rq));
        let other = reduce_with_strategy(&p, &gb.basis, ReductionStrategy::SmallestRightmost);
        prop_assert_eq!(other, rp);
    }
}
