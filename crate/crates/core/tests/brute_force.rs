//! Exhaustive cross-check of the enumeration for one and two hexagons.
//!
//! Every perfect matching of the 6n hexagon edges is tried, the angle and
//! sphere conditions are checked with a separate union-find over corners,
//! and isomorphism classes are found by applying every relabeling.

#[path = "common/brute.rs"]
mod brute;

use std::collections::BTreeSet;

use brute::{brute_canonical, brute_force, convex_sphere, matchings, pairing_of, Pairing};
use hexglue::enumerate::enumerate_all;
use hexglue::HexComplex;

#[test]
fn enumeration_matches_brute_force() {
    for (n, expected) in [(1, 2), (2, 4)] {
        let oracle = brute_force(n);
        assert_eq!(oracle.len(), expected, "n = {n}");
        let ours: BTreeSet<Pairing> =
            enumerate_all(n).items.iter().map(|i| brute_canonical(n, &pairing_of(&i.complex))).collect();
        assert_eq!(enumerate_all(n).len(), ours.len(), "enumeration has isomorphic duplicates");
        assert_eq!(ours, oracle, "n = {n}");
    }
}

#[test]
fn brute_canonical_agrees_with_codes() {
    // both notions of isomorphism split the n = 2 gluings the same way
    let mut all = Vec::new();
    matchings(&mut (0..12).collect(), &mut Vec::new(), &mut all);
    let spheres: Vec<Pairing> = all.into_iter().filter(|p| convex_sphere(2, p)).collect();
    let mut classes = BTreeSet::new();
    for p in spheres.iter().step_by(7) {
        let pairs: Vec<_> = p
            .iter()
            .map(|&(x, y)| (hexglue::HexEdge::from_index(x), hexglue::HexEdge::from_index(y)))
            .collect();
        let c = HexComplex::new(2, &pairs).expect("oracle spheres are valid");
        classes.insert((brute_canonical(2, p), c.canonical_code()));
    }
    let by_brute: BTreeSet<_> = classes.iter().map(|(b, _)| b.clone()).collect();
    let by_code: BTreeSet<_> = classes.iter().map(|(_, c)| c.clone()).collect();
    assert_eq!(classes.len(), by_brute.len());
    assert_eq!(classes.len(), by_code.len());
}
