use std::sync::OnceLock;

use braceforge::brace::{gamma, left_ideals, SkewBrace};
use braceforge::classify::{first_failure, is_good, theorem_predicate};
use braceforge::enumerate::{enumerate_circ, reduce_up_to_iso, Enumerator};
use braceforge::group::{census, identify, CensusEntry};
use braceforge::report::{hg_descriptor, parse, serialize};
use proptest::prelude::*;

fn small_census() -> &'static [CensusEntry] {
    static CELL: OnceLock<Vec<CensusEntry>> = OnceLock::new();
    CELL.get_or_init(|| census(8).unwrap())
}

fn braces_up_to_12() -> &'static [SkewBrace] {
    static CELL: OnceLock<Vec<SkewBrace>> = OnceLock::new();
    CELL.get_or_init(|| {
        census(12)
            .unwrap()
            .iter()
            .flat_map(|e| enumerate_circ(&e.group).unwrap().operations)
            .collect()
    })
}

fn relabelling(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|rest| std::iter::once(0).chain(rest).collect())
}

fn entry_and_map() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..small_census().len()).prop_flat_map(|k| (Just(k), relabelling(small_census()[k].order)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabelling_preserves_everything((k, map) in entry_and_map()) {
        let entry = &small_census()[k];
        let moved = entry.group.transport(&map, "moved").unwrap();
        prop_assert_eq!(identify(&moved).unwrap().label, entry.label.clone());
        prop_assert_eq!(theorem_predicate(&moved), theorem_predicate(&entry.group));
        let (a, b) = (enumerate_circ(&entry.group).unwrap(), enumerate_circ(&moved).unwrap());
        prop_assert_eq!(a.len(), b.len());
        prop_assert_eq!(&a.by_mult_type.keys().collect::<Vec<_>>(), &b.by_mult_type.keys().collect::<Vec<_>>());
        let (a, b) = (reduce_up_to_iso(a).unwrap(), reduce_up_to_iso(b).unwrap());
        prop_assert_eq!(a.iso_classes.len(), b.iso_classes.len());
        let en = Enumerator::new();
        prop_assert_eq!(is_good(&moved, false, &en).unwrap().good, is_good(&entry.group, false, &en).unwrap().good);
    }

    #[test]
    fn brace_invariants(k in 0usize..10_000) {
        let all = braces_up_to_12();
        let b = &all[k % all.len()];
        let g = gamma(b);
        prop_assert!(g.check(b).is_ok());
        for ideal in left_ideals(b) {
            prop_assert!(b.circ().is_subgroup(ideal.members()));
        }
        let d = hg_descriptor(b);
        prop_assert_eq!(d.bijective, d.left_ideal_count() == d.lattice.len());
        prop_assert_eq!(d.bijective, first_failure(b).is_none());
        if d.classical {
            prop_assert!(d.bijective);
        }
        let identity_gamma = g.maps().iter().all(|m| m.is_identity());
        prop_assert_eq!(identity_gamma, d.gamma_orbits.len() == b.order());
        let back: SkewBrace = parse(&serialize(b)).unwrap();
        prop_assert_eq!(&back, b);
    }
}
