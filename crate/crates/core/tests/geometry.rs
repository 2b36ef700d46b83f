use hexglue::enumerate::enumerate_all;
use hexglue::geometry::{enumerate_geodesics, is_simple, reversed, triangulate};
use hexglue::HexComplex;
use proptest::prelude::*;

fn gluings() -> Vec<HexComplex> {
    (1..=4).flat_map(|n| enumerate_all(n).items.into_iter().map(|i| i.complex)).collect()
}

/// a² + ab + b² by search, independent of the library's test.
fn is_norm(m: i64) -> bool {
    (0..=m).any(|a| (0..=m).any(|b| a * a + a * b + b * b == m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn geodesics_have_lattice_lengths(c in proptest::sample::select(gluings()), pick in any::<prop::sample::Index>()) {
        let mesh = triangulate(&c);
        let cones = mesh.cone_points();
        let source = cones[pick.index(cones.len())];
        let bound = 16 * c.hexagon_count() as i64;
        for g in enumerate_geodesics(&mesh, source, bound) {
            prop_assert!(g.squared_length <= bound);
            prop_assert!(is_norm(g.squared_length), "{}", g.squared_length);
            prop_assert_eq!(g.squared_length, g.developed_vector.norm2());
            let r = reversed(&mesh, &g).unwrap();
            prop_assert_eq!(r.source, g.target);
            prop_assert_eq!(r.target, g.source);
            prop_assert_eq!(r.squared_length, g.squared_length);
            prop_assert_eq!(is_simple(&r), is_simple(&g));
            prop_assert_eq!(reversed(&mesh, &r).unwrap(), g);
        }
    }
}

#[test]
fn every_cone_point_has_geodesics() {
    for c in gluings() {
        let mesh = triangulate(&c);
        for v in mesh.cone_points() {
            assert!(!enumerate_geodesics(&mesh, v, 9 * c.hexagon_count() as i64).is_empty());
        }
    }
}
