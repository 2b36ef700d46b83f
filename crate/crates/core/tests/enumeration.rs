use std::collections::BTreeSet;

use hexglue::enumerate::{
    complete_gluings, enumerate_all, enumerate_all_without_zips, enumerate_tree_complexes, forced_zips,
};
use hexglue::CanonicalCode;

const COUNTS: [usize; 7] = [2, 4, 6, 11, 10, 17, 18];

#[test]
fn counts_up_to_seven() {
    for (i, &k) in COUNTS.iter().enumerate() {
        assert_eq!(enumerate_all(i + 1).len(), k, "n = {}", i + 1);
    }
}

#[test]
fn every_gluing_is_a_convex_sphere() {
    for n in 1..=7 {
        for item in enumerate_all(n).items {
            let c = &item.complex;
            assert!(c.is_sphere());
            assert_eq!(c.euler_characteristic(), 2);
            let p = c.curvature_profile().unwrap();
            assert_eq!(2 * p.n1 + p.n2, 6, "n = {n}: {p}");
            assert!((3..=6).contains(&(p.n1 + p.n2)), "n = {n}: {p}");
            assert!(c.vertex_orbits().iter().all(|o| o.corner_count() <= 3));
            assert_eq!(c.canonical_code(), item.code);
        }
    }
}

#[test]
fn zips_lose_no_completion() {
    for n in 1..=3 {
        for tree in enumerate_tree_complexes(n).items {
            let direct: BTreeSet<CanonicalCode> =
                complete_gluings(&tree.complex).unwrap().iter().map(|c| c.canonical_code()).collect();
            let zipped = match forced_zips(&tree.complex) {
                Ok(z) => complete_gluings(&z).unwrap().iter().map(|c| c.canonical_code()).collect(),
                Err(_) => BTreeSet::new(),
            };
            assert_eq!(direct, zipped, "n = {n}");
        }
    }
}

#[test]
fn zips_are_idempotent() {
    for n in 1..=5 {
        for tree in enumerate_tree_complexes(n).items {
            if let Ok(z) = forced_zips(&tree.complex) {
                assert_eq!(forced_zips(&z).unwrap(), z);
            }
        }
    }
}

#[test]
fn zipping_does_not_change_the_result() {
    for n in 1..=4 {
        assert_eq!(enumerate_all_without_zips(n), enumerate_all(n), "n = {n}");
    }
}

#[test]
fn output_is_deterministic() {
    assert_eq!(enumerate_all(5), enumerate_all(5));
}
