mod common;

use std::collections::BTreeMap;

use arrcohom::ss::{
    cohomology_dims, pages, parse_double_complex, tensor_double_complex, total_complex,
    verify_convergence, write_double_complex,
};
use arrcohom::{Complex, DoubleComplex, Filtration};
use proptest::prelude::*;

fn convolve(a: &BTreeMap<i64, usize>, b: &BTreeMap<i64, usize>) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for (i, x) in a {
        for (j, y) in b {
            *out.entry(i + j).or_insert(0) += x * y;
        }
    }
    out.retain(|_, v| *v > 0);
    out
}

fn r_max_for(c: &DoubleComplex) -> usize {
    let span = |f: fn(&(i64, i64)) -> i64| {
        let vals: Vec<i64> = c.dims().keys().map(f).collect();
        vals.iter()
            .max()
            .zip(vals.iter().min())
            .map_or(0, |(hi, lo)| (hi - lo + 1) as usize)
    };
    (span(|k| k.0).max(span(|k| k.1)) + 1).max(2)
}

fn random_tensor(seed: u64) -> DoubleComplex {
    let mut rng = common::rng(seed);
    let a = common::random_complex(&mut rng, 4, 3);
    let b = common::random_complex(&mut rng, 4, 3);
    tensor_double_complex(&a, &b)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn first_page_is_row_and_column_cohomology(seed in any::<u64>()) {
        let c = random_tensor(seed);
        let r_max = r_max_for(&c);
        let horiz = pages(&c, Filtration::Horizontal, r_max).unwrap();
        let vert = pages(&c, Filtration::Vertical, r_max).unwrap();
        for &(p, q) in c.dims().keys() {
            prop_assert_eq!(horiz.get(1, p, q), c.row(q).cohomology_dims().get(&p).copied().unwrap_or(0));
            prop_assert_eq!(vert.get(1, p, q), c.column(p).cohomology_dims().get(&q).copied().unwrap_or(0));
            prop_assert_eq!(horiz.get(0, p, q), c.dim(p, q));
        }
    }

    #[test]
    fn both_filtrations_converge_to_total_cohomology(seed in any::<u64>()) {
        let c = random_tensor(seed);
        let h = cohomology_dims(&total_complex(&c).unwrap());
        let r_max = r_max_for(&c);
        for f in [Filtration::Horizontal, Filtration::Vertical] {
            let t = pages(&c, f, r_max).unwrap();
            prop_assert!(verify_convergence(&t, &h));
            prop_assert!(t.stable_at <= r_max);
        }
    }

    #[test]
    fn tensor_cohomology_is_the_kunneth_product(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let a = common::random_complex(&mut rng, 5, 4);
        let b = common::random_complex(&mut rng, 5, 4);
        let c = tensor_double_complex(&a, &b);
        prop_assert!(c.validate().is_ok());
        let mut h = cohomology_dims(&total_complex(&c).unwrap());
        h.retain(|_, v| *v > 0);
        prop_assert_eq!(h, convolve(&a.cohomology_dims(), &b.cohomology_dims()));
    }

    #[test]
    fn pages_never_grow(seed in any::<u64>()) {
        let c = random_tensor(seed);
        let r_max = r_max_for(&c);
        for f in [Filtration::Horizontal, Filtration::Vertical] {
            let t = pages(&c, f, r_max).unwrap();
            for &(p, q) in c.dims().keys() {
                for r in 0..r_max {
                    prop_assert!(t.get(r + 1, p, q) <= t.get(r, p, q));
                }
            }
        }
    }

    #[test]
    fn serialization_round_trips(seed in any::<u64>()) {
        let c = random_tensor(seed);
        let back = parse_double_complex(&write_double_complex(&c)).unwrap();
        prop_assert_eq!(back.dims(), c.dims());
        for &(p, q) in c.dims().keys() {
            prop_assert_eq!(back.d_horiz(p, q), c.d_horiz(p, q));
            prop_assert_eq!(back.d_vert(p, q), c.d_vert(p, q));
        }
    }
}

#[test]
fn single_column_collapses_at_the_second_page() {
    let mut rng = common::rng(11);
    for _ in 0..20 {
        let a = common::random_complex(&mut rng, 5, 4);
        let point = Complex::from_sequence(0, &[2], vec![]).unwrap();
        let c = tensor_double_complex(&point, &a);
        for f in [Filtration::Horizontal, Filtration::Vertical] {
            let t = pages(&c, f, 6).unwrap();
            assert!(t.stable_at <= 2, "{f}: stable at {}", t.stable_at);
        }
    }
}

#[test]
fn direct_sum_is_additive() {
    let a = random_tensor(3);
    let b = random_tensor(4);
    let s = a.direct_sum(&b);
    let r_max = r_max_for(&s);
    let ta = pages(&a, Filtration::Vertical, r_max).unwrap();
    let tb = pages(&b, Filtration::Vertical, r_max).unwrap();
    let ts = pages(&s, Filtration::Vertical, r_max).unwrap();
    for &(p, q) in s.dims().keys() {
        for r in 0..=r_max {
            assert_eq!(ts.get(r, p, q), ta.get(r, p, q) + tb.get(r, p, q));
        }
    }
}

#[test]
fn limit_matches_total_degree_sums() {
    let c = random_tensor(99);
    let h = cohomology_dims(&total_complex(&c).unwrap());
    let t = pages(&c, Filtration::Horizontal, r_max_for(&c)).unwrap();
    let mut by_degree: BTreeMap<i64, usize> = BTreeMap::new();
    for (&(p, q), &v) in t.limit() {
        *by_degree.entry(p + q).or_insert(0) += v;
    }
    let nonzero: BTreeMap<i64, usize> = h.into_iter().filter(|&(_, v)| v > 0).collect();
    assert_eq!(by_degree, nonzero);
}
