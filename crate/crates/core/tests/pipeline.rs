mod common;

use arrcohom::arrangement::Kind;
use arrcohom::flats::binomial;
use arrcohom::mvbetti::{degeneration_check, e1_page, e2_page, row_structure_violations};
use arrcohom::ratlin::rat;
use arrcohom::{
    build_intersection_poset, compute_betti, decone, enumerate_d_table, essentialize,
    oracle_betti_mobius, oracle_betti_whitney, parse_arrangement, Arrangement, BettiOptions,
    Hyperplane, DEFAULT_CAP,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn pipeline_matches_both_oracles(seed in any::<u64>()) {
        let a = common::random_arrangement(&mut common::rng(seed), 3, 6);
        let report = compute_betti(&a, &BettiOptions::default()).unwrap();
        let poset = build_intersection_poset(&a, DEFAULT_CAP).unwrap();
        prop_assert_eq!(&report.betti, &oracle_betti_mobius(&poset));
        prop_assert_eq!(&report.betti, &oracle_betti_whitney(&a, DEFAULT_CAP).unwrap());
        prop_assert!(report.all_checks_passed());
    }

    #[test]
    fn d_table_is_conserved(seed in any::<u64>()) {
        let a = common::random_arrangement(&mut common::rng(seed), 4, 6);
        let d = enumerate_d_table(&a, DEFAULT_CAP).unwrap();
        prop_assert!(d.is_conserved());
    }

    #[test]
    fn essentialize_is_idempotent(seed in any::<u64>()) {
        let a = common::random_arrangement(&mut common::rng(seed), 4, 6);
        let once = essentialize(&a).unwrap();
        prop_assert!(once.essential.is_essential());
        prop_assert_eq!(once.essential.ambient_dim() + once.shift, a.ambient_dim());
        let twice = essentialize(&once.essential).unwrap();
        prop_assert_eq!(twice.shift, 0);
        prop_assert_eq!(twice.essential, once.essential);
    }

    #[test]
    fn canonical_form_is_scale_invariant(coeffs in prop::collection::vec(-9i64..=9, 3), k in 1i64..6, neg in any::<bool>()) {
        prop_assume!(coeffs[..2].iter().any(|&c| c != 0));
        let h = Hyperplane::from_ints(&coeffs).unwrap();
        let s = if neg { -k } else { k };
        let scaled: Vec<i64> = coeffs.iter().map(|c| c * s).collect();
        prop_assert_eq!(Hyperplane::from_ints(&scaled).unwrap(), h.clone());
        let again = Hyperplane::new(h.normal().to_vec(), h.constant().clone()).unwrap();
        prop_assert_eq!(again, h);
    }

    #[test]
    fn deconing_does_not_depend_on_the_chosen_hyperplane(seed in any::<u64>()) {
        let a = common::random_projective(&mut common::rng(seed), 3, 5);
        let betti: Vec<Vec<u64>> = (0..a.len())
            .map(|i| compute_betti(&decone(&a, i).unwrap(), &BettiOptions::without_oracles()).unwrap().betti)
            .collect();
        prop_assert!(betti.windows(2).all(|w| w[0] == w[1]), "{:?}", betti);
    }

    #[test]
    fn second_page_has_row_structure_and_degenerates(seed in any::<u64>()) {
        let a = common::random_arrangement(&mut common::rng(seed), 4, 6);
        let ess = essentialize(&a).unwrap().essential;
        let e1 = e1_page(&enumerate_d_table(&ess, DEFAULT_CAP).unwrap()).unwrap();
        prop_assert!(row_structure_violations(&e1).is_empty());
        prop_assert!(degeneration_check(&e2_page(&e1).unwrap()));
    }
}

#[test]
fn general_position_gives_binomial_betti() {
    let mut rng = common::rng(7);
    for (n, r) in [(2, 3), (2, 5), (3, 4), (3, 6)] {
        let a = common::random_general_position(&mut rng, n, r);
        let report = compute_betti(&a, &BettiOptions::default()).unwrap();
        let expected: Vec<u64> = (0..=n as u64).map(|k| binomial(r as u64, k)).collect();
        assert_eq!(report.betti, expected);
        assert!(report.general_position);
    }
}

#[test]
fn boolean_and_braid_families() {
    for n in 1..=5 {
        let report = compute_betti(&Arrangement::boolean(n), &BettiOptions::default()).unwrap();
        let expected: Vec<u64> = (0..=n as u64).map(|k| binomial(n as u64, k)).collect();
        assert_eq!(report.betti, expected);
    }
    let braid4 = compute_betti(&Arrangement::braid(4), &BettiOptions::default()).unwrap();
    assert_eq!(braid4.betti, vec![1, 6, 11, 6, 0]);
    assert_eq!(braid4.shift, 1);
}

#[test]
fn empty_and_degenerate_inputs() {
    let empty = Arrangement::affine(3, vec![]).unwrap();
    assert_eq!(
        compute_betti(&empty, &BettiOptions::default())
            .unwrap()
            .betti,
        vec![1, 0, 0, 0]
    );

    let parallel = parse_arrangement("affine 2\n1 0 0\n1 0 1\n1 0 2\n").unwrap();
    let report = compute_betti(&parallel, &BettiOptions::default()).unwrap();
    assert_eq!(report.betti, vec![1, 3, 0]);
    assert_eq!(report.essential_rank, 1);

    let p = Arrangement::projective_from_ints(2, &[[1, 0, 0]]).unwrap();
    assert_eq!(p.kind(), Kind::Projective);
    assert_eq!(
        compute_betti(&p, &BettiOptions::default()).unwrap().betti,
        vec![1, 0, 0]
    );
}

#[test]
fn rational_coefficients_survive_parsing() {
    let a = parse_arrangement("affine 2\n1/2 1/3 -1/6\n2 0 3/4\n").unwrap();
    assert_eq!(a.hyperplanes()[0].normal(), &[rat(3), rat(2)]);
    assert_eq!(a.hyperplanes()[0].constant(), &rat(-1));
    assert_eq!(
        compute_betti(&a, &BettiOptions::default()).unwrap().betti,
        vec![1, 2, 1]
    );
}
