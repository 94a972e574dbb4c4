use proptest::prelude::*;

use theta_strata::characteristic::*;

#[test]
fn census_by_enumeration() {
    for (g, even, odd) in [(1, 3, 1), (2, 10, 6), (3, 36, 28), (4, 136, 120)] {
        let all = all_characteristics(g, ParityFilter::All).unwrap();
        assert_eq!(all.len(), 1 << (2 * g));
        assert_eq!(all.iter().filter(|m| m.is_even()).count(), even);
        assert_eq!(all.iter().filter(|m| !m.is_even()).count(), odd);
        assert_eq!(even, (1 << (g - 1)) * ((1 << g) + 1));
        assert_eq!(odd, (1 << (g - 1)) * ((1 << g) - 1));
    }
}

#[test]
fn split_counts_and_symmetry() {
    assert_eq!(n_k(2, 1).unwrap(), 1);
    assert_eq!(n_k(4, 1).unwrap(), 28);
    assert_eq!(n_k(4, 2).unwrap(), 36);
    for g in 2..=5 {
        for k in 1..g {
            let t = product_split_tuple(g, k).unwrap();
            assert_eq!(t.len(), n_k(g, k).unwrap());
            assert_eq!(t.len(), product_split_tuple(g, g - k).unwrap().len());
            assert!(t.entries().iter().all(|m| m.is_even()));
        }
    }
}

fn any_char(genus: usize) -> impl Strategy<Value = Characteristic> {
    let mask = (1u16 << genus) - 1;
    (any::<u16>(), any::<u16>()).prop_map(move |(e, d)| Characteristic::new(genus, e & mask, d & mask).unwrap())
}

proptest! {
    #[test]
    fn addition_laws(a in any_char(4), b in any_char(4), c in any_char(4)) {
        prop_assert!(add(&a, &a).unwrap().is_even());
        prop_assert_eq!(add(&a, &b).unwrap(), add(&b, &a).unwrap());
        prop_assert_eq!(
            add(&add(&a, &b).unwrap(), &c).unwrap(),
            add(&a, &add(&b, &c).unwrap()).unwrap()
        );
    }

    #[test]
    fn string_form_roundtrips(m in any_char(6)) {
        prop_assert_eq!(m.to_string().parse::<Characteristic>().unwrap(), m);
    }
}
