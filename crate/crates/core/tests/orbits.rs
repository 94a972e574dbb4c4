use std::time::Instant;

use proptest::prelude::*;

use theta_strata::characteristic::{all_characteristics, product_split_tuple, CharTuple, Characteristic, ParityFilter};
use theta_strata::orbit::{orbit_bfs, orbit_profile, tuples_equivalent};
use theta_strata::symplectic::{act_on_tuple, random_symplectic, standard_generators};
use theta_strata::verify::orbit_oracle;

#[test]
fn invariants_match_bfs_exhaustively() {
    let start = Instant::now();
    for (genus, length, comparisons) in [(1, 2, 81), (1, 3, 729), (2, 2, 10_000), (2, 3, 1_000_000)] {
        let s = orbit_oracle(genus, length).unwrap();
        assert_eq!(s.comparisons, comparisons);
        assert_eq!(s.disagreements, 0, "g={genus} length={length}");
    }
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn split_tuple_orbit_at_genus_two() {
    let i1 = product_split_tuple(2, 1).unwrap();
    let orbit = orbit_bfs(&i1).unwrap();
    assert!(orbit.len() > 1);
    for t in &orbit {
        assert_eq!(t.len(), 1);
        assert!(t.entries()[0].is_even());
        assert!(tuples_equivalent(&i1, t).unwrap());
    }
}

#[test]
fn parity_preserved_by_generators_through_genus_four() {
    for g in 1..=4 {
        let gens: Vec<_> = standard_generators(g).unwrap().iter().map(|s| s.reduce_mod2()).collect();
        for m in all_characteristics(g, ParityFilter::All).unwrap() {
            for gm in &gens {
                assert_eq!(gm.act(&m).unwrap().parity(), m.parity());
            }
        }
    }
}

#[test]
fn random_words_are_symplectic() {
    for seed in 0..100 {
        for g in 1..=4 {
            assert!(random_symplectic(g, 1 + (seed as usize % 7), seed).unwrap().is_symplectic());
        }
    }
}

fn even_char(genus: usize) -> impl Strategy<Value = Characteristic> {
    let evens = all_characteristics(genus, ParityFilter::Even).unwrap();
    (0..evens.len()).prop_map(move |i| evens[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn profile_is_orbit_invariant(entries in prop::collection::vec(even_char(3), 1..6), seed in 0u64..10_000) {
        let t = CharTuple::new(3, entries).unwrap();
        let gamma = random_symplectic(3, 6, seed).unwrap().reduce_mod2();
        let moved = act_on_tuple(&gamma, &t).unwrap();
        prop_assert_eq!(orbit_profile(&moved).unwrap(), orbit_profile(&t).unwrap());
    }

    #[test]
    fn action_composes_on_the_right(m in even_char(4), s1 in 0u64..10_000, s2 in 0u64..10_000) {
        let g1 = random_symplectic(4, 5, s1).unwrap();
        let g2 = random_symplectic(4, 5, s2).unwrap();
        let product = g1.mul(&g2).unwrap().reduce_mod2();
        let stepwise = g2.reduce_mod2().act(&g1.reduce_mod2().act(&m).unwrap()).unwrap();
        prop_assert_eq!(product.act(&m).unwrap(), stepwise);
    }
}
