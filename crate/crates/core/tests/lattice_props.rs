mod common;

use common::{brute_classes, brute_eta, brute_kappa, count_square_partitions};
use proptest::prelude::*;
use slicedeg::lattice::{enumerate_classes, enumerate_odd_vectors, eta, eta_factored, kappa_min, HomologyClass, LaurentPoly};

fn poly_map(p: &LaurentPoly) -> std::collections::BTreeMap<i64, i64> {
    p.terms().collect()
}

#[test]
fn class_counts_match_partition_counts() {
    for k in 0..=60u64 {
        let classes = enumerate_classes(k);
        assert_eq!(classes.len() as u64, count_square_partitions(k as usize), "k = {k}");
    }
}

#[test]
fn classes_match_nested_enumeration() {
    for k in 0..=40i64 {
        let got: Vec<Vec<i64>> = enumerate_classes(k as u64).iter().map(|c| c.coords().to_vec()).collect();
        assert_eq!(got, brute_classes(k), "k = {k}");
    }
}

#[test]
fn classes_are_normalized_distinct_and_descending() {
    for k in 0..=50u64 {
        let classes = enumerate_classes(k);
        for c in &classes {
            assert_eq!(c.norm(), k as i64);
            assert!(c.coords().windows(2).all(|w| w[0] >= w[1]));
            assert!(c.coords().iter().all(|&a| a >= 1));
        }
        assert!(classes.windows(2).all(|w| w[0].coords() > w[1].coords()), "k = {k}");
    }
}

#[test]
fn kappa_closed_form_matches_brute_force() {
    for a in -12..=12i64 {
        for c in -2..=2i64 {
            let (k, phi) = kappa_min(&[a], &[c]);
            let (bk, bphi) = brute_kappa(&[a], &[c]);
            assert_eq!(k, bk, "a = {a}, c = {c}");
            assert_eq!(phi, bphi, "a = {a}, c = {c}");
        }
    }
}

#[test]
fn kappa_and_eta_examples() {
    use num_rational::Rational64;
    assert_eq!(kappa_min(&[2], &[0]), (Rational64::new(1, 4), vec![vec![-1], vec![0]]));
    assert_eq!(kappa_min(&[1], &[0]), (Rational64::new(1, 16), vec![vec![0]]));
    assert_eq!(kappa_min(&[4], &[0]), (Rational64::from(0), vec![vec![-1]]));
    assert_eq!(eta(&[2], &[0]).to_string(), "1 - T^4");
    assert_eq!(eta(&[2, 2], &[0, 0]).to_string(), "1 - 2T^4 + T^8");
    assert_eq!(eta(&[1], &[0]).to_string(), "1");
}

#[test]
fn odd_vector_examples() {
    let got: Vec<Vec<i64>> = enumerate_odd_vectors(&[2], 1).map(|v| v.0).collect();
    assert_eq!(got, vec![vec![1]]);
    let got: Vec<Vec<i64>> = enumerate_odd_vectors(&[1], 0).map(|v| v.0).collect();
    assert_eq!(got, vec![vec![1]]);
    let mut got: Vec<Vec<i64>> = enumerate_odd_vectors(&[1, 1], 1).map(|v| v.0).collect();
    got.sort();
    // every odd λ with 0 ≤ Σλa ≤ 2 and Σ(λ² − 1) ≤ 8
    assert_eq!(got, vec![vec![-1, 1], vec![-1, 3], vec![1, -1], vec![1, 1], vec![3, -1]]);
}

fn small_class() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 1..=3)
}

proptest! {
    #[test]
    fn kappa_separable_matches_box_search(a in small_class(), seed in any::<u64>()) {
        let c: Vec<i64> = a.iter().enumerate().map(|(i, _)| ((seed >> (2 * i)) % 5) as i64 - 2).collect();
        let (k, phi) = kappa_min(&a, &c);
        let (bk, bphi) = brute_kappa(&a, &c);
        prop_assert_eq!(k, bk);
        prop_assert_eq!(phi, bphi);
    }

    #[test]
    fn eta_matches_direct_count(a in small_class(), seed in any::<u64>()) {
        let c: Vec<i64> = a.iter().enumerate().map(|(i, _)| ((seed >> (2 * i)) % 3) as i64 - 1).collect();
        let expected = brute_eta(&a, &c);
        prop_assert_eq!(poly_map(&eta(&a, &c)), expected.clone());
        prop_assert_eq!(poly_map(&eta_factored(&a, &c)), expected);
    }

    #[test]
    fn eta_ignores_zero_padding(a in small_class(), pad in 1usize..3) {
        let c = vec![0; a.len()];
        let mut a2 = a.clone();
        a2.extend(std::iter::repeat_n(0, pad));
        let c2 = vec![0; a2.len()];
        prop_assert_eq!(eta(&a2, &c2), eta(&a, &c));
    }

    #[test]
    fn eta_is_multiplicative(a in small_class(), b in small_class(), ca in -1i64..=1, cb in -1i64..=1) {
        let c1 = vec![ca; a.len()];
        let c2 = vec![cb; b.len()];
        let joined: Vec<i64> = a.iter().chain(&b).copied().collect();
        let cj: Vec<i64> = c1.iter().chain(&c2).copied().collect();
        prop_assert_eq!(eta(&joined, &cj), eta(&a, &c1).mul(&eta(&b, &c2)));
    }

    #[test]
    fn class_parse_normalizes(coords in prop::collection::vec(-9i64..=9, 0..6)) {
        let text = coords.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        let (class, changed) = HomologyClass::parse(&text).unwrap();
        let mut expected: Vec<i64> = coords.iter().map(|a| a.abs()).filter(|&a| a != 0).collect();
        expected.sort_unstable_by(|x, y| y.cmp(x));
        prop_assert_eq!(class.coords(), expected.as_slice());
        prop_assert_eq!(changed, expected != coords);
        let shown = class.to_string();
        prop_assert_eq!(HomologyClass::parse(&shown).unwrap().0, class);
    }
}
