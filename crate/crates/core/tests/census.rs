use braceforge::enumerate::{enumerate_circ, reduce_up_to_iso};
use braceforge::group::{are_isomorphic, census_of_order, identify, FiniteGroup, GROUP_COUNTS};

/// Every Latin square with first row and column `0..n`, keeping those that
/// are groups.
fn all_group_tables(n: usize) -> Vec<FiniteGroup> {
    fn fill(n: usize, cell: usize, t: &mut Vec<Vec<usize>>, out: &mut Vec<FiniteGroup>) {
        if cell == (n - 1) * (n - 1) {
            if let Ok(g) = FiniteGroup::from_table("brute", t.clone()) {
                out.push(g);
            }
            return;
        }
        let (r, c) = (1 + cell / (n - 1), 1 + cell % (n - 1));
        for v in 0..n {
            let row_free = !t[r][..c].contains(&v);
            let col_free = (0..r).all(|k| t[k][c] != v);
            if row_free && col_free {
                t[r][c] = v;
                fill(n, cell + 1, t, out);
            }
        }
        t[r][c] = usize::MAX;
    }
    if n == 1 {
        return vec![FiniteGroup::cyclic(1).unwrap()];
    }
    let mut t = vec![vec![usize::MAX; n]; n];
    for k in 0..n {
        t[0][k] = k;
        t[k][0] = k;
    }
    let mut out = Vec::new();
    fill(n, 0, &mut t, &mut out);
    out
}

#[test]
fn census_matches_brute_force_for_small_orders() {
    for n in 1..=6 {
        let mut classes: Vec<FiniteGroup> = Vec::new();
        for g in all_group_tables(n) {
            assert!(identify(&g).is_some(), "order {n} table not identified");
            if !classes.iter().any(|c| are_isomorphic(c, &g).is_some()) {
                classes.push(g);
            }
        }
        assert_eq!(classes.len(), GROUP_COUNTS[n], "order {n}");
        assert_eq!(census_of_order(n).unwrap().len(), classes.len());
    }
}

#[test]
fn census_entries_are_pairwise_non_isomorphic() {
    for n in 1..=15 {
        let entries = census_of_order(n).unwrap();
        assert_eq!(entries.len(), GROUP_COUNTS[n]);
        for (i, a) in entries.iter().enumerate() {
            for b in &entries[i + 1..] {
                assert!(are_isomorphic(&a.group, &b.group).is_none(), "{} {}", a.label, b.label);
            }
        }
    }
}

#[test]
fn skew_brace_class_counts_by_order() {
    // number of isomorphism classes of skew braces of order n
    let known = [1, 1, 1, 4, 1, 6, 1, 47, 4, 6, 1, 38, 1, 6, 1];
    for n in 1..=15 {
        let total: usize = census_of_order(n)
            .unwrap()
            .iter()
            .map(|e| {
                reduce_up_to_iso(enumerate_circ(&e.group).unwrap())
                    .unwrap()
                    .iso_classes
                    .len()
            })
            .sum();
        assert_eq!(total, known[n - 1], "order {n}");
    }
}
