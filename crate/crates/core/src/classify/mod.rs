//! Good and bad groups.
//!
//! A group `N` is good when, for every skew brace `(N, ·, ∘)`, every subgroup
//! of `(N, ∘)` is a left ideal. The full check enumerates every compatible
//! `∘` and scans the subgroup lattice of each multiplicative group. Bad
//! verdicts carry a [`Witness`] that can be replayed without trusting any of
//! the code that produced it.

mod examples;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brace::{gamma, is_left_ideal_with, validate, FailingPair, FailureKind, SkewBrace};
use crate::enumerate::Enumerator;
use crate::error::{Error, Result};
use crate::group::{
    census, characteristic_subgroups, prime_divisors, subgroups, FiniteGroup, CENSUS_CAP,
};

pub use examples::{
    brace_order4_nontrivial, example_c2cubed, example_cn_even, example_p_odd, example_pq,
    example_pq_with_kappa, example_q8, pq_kappa,
};

/// A brace together with a multiplicative subgroup that is not a left ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub brace: SkewBrace,
    pub subgroup: Vec<usize>,
    pub failing: FailingPair,
}

impl Witness {
    /// Rechecks the witness from the raw tables: the brace relation, closure
    /// of the subgroup under `∘`, and the failing pair.
    pub fn replay(&self) -> Result<()> {
        let bad = |why: String| Err(Error::InvalidWitness(why));
        let dot = FiniteGroup::from_table("dot", self.brace.dot().rows())?;
        let circ = FiniteGroup::from_table("circ", self.brace.circ().rows())?;
        validate(&dot, &circ)?;
        let n = dot.order();
        let mut inside = vec![false; n];
        for &m in &self.subgroup {
            if m >= n {
                return bad(format!("element {m} is out of range"));
            }
            inside[m] = true;
        }
        if !inside[0] {
            return bad("subgroup misses the identity".into());
        }
        for &a in &self.subgroup {
            for &b in &self.subgroup {
                if !inside[circ.mul(a, b)] {
                    return bad(format!("subgroup is not closed under ∘ at ({a}, {b})"));
                }
            }
        }
        let FailingPair { a, x, kind } = self.failing;
        if a >= n || x >= n {
            return bad(format!("failing pair ({a}, {x}) is out of range"));
        }
        let fails = match kind {
            FailureKind::Gamma => inside[x] && !inside[dot.mul(dot.inv(a), circ.mul(a, x))],
            FailureKind::DotClosure => inside[a] && inside[x] && !inside[dot.mul(a, x)],
        };
        if fails {
            Ok(())
        } else {
            bad(format!("pair ({a}, {x}) does not show a failure"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub group_label: String,
    pub good: bool,
    pub witness: Option<Witness>,
    /// Operations checked: all of them on a full sweep, up to and including
    /// the first bad one otherwise.
    pub braces_examined: usize,
    pub short_circuited: bool,
}

/// First multiplicative subgroup, in canonical order, that is not a left
/// ideal.
pub fn first_failure(b: &SkewBrace) -> Option<Witness> {
    let g = gamma(b);
    subgroups(b.circ()).into_iter().find_map(|s| {
        let flag = is_left_ideal_with(b, &g, s.members());
        flag.failing_pair.map(|failing| Witness {
            brace: b.clone(),
            subgroup: flag.subgroup,
            failing,
        })
    })
}

/// Decides whether `g` is good. Stops at the first bad brace unless
/// `exhaustive` is set; either way the reported witness is the first failure
/// in enumeration order. Verdicts are cached alongside enumerations; a
/// cached witness is replayed before it is trusted.
pub fn is_good(g: &FiniteGroup, exhaustive: bool, enumerator: &Enumerator) -> Result<Verdict> {
    if g.order() > CENSUS_CAP {
        return Err(Error::CensusCap {
            requested: g.order(),
            cap: CENSUS_CAP,
        });
    }
    match &enumerator.cache {
        Some(cache) => {
            let kind = if exhaustive { "verdict-full" } else { "verdict" };
            let accept = |v: &Verdict| {
                v.group_label == g.label()
                    && v.witness.as_ref().map_or(v.good, |w| !v.good && w.replay().is_ok())
            };
            cache.entry(kind, g, accept, || sweep(g, exhaustive, enumerator))
        }
        None => sweep(g, exhaustive, enumerator),
    }
}

fn sweep(g: &FiniteGroup, exhaustive: bool, enumerator: &Enumerator) -> Result<Verdict> {
    let e = enumerator.enumerate(g)?;
    let total = e.len();
    let (witness, braces_examined) = if exhaustive {
        let failures: Vec<Option<Witness>> = e.operations.par_iter().map(first_failure).collect();
        (failures.into_iter().flatten().next(), total)
    } else {
        match e
            .operations
            .par_iter()
            .enumerate()
            .find_map_first(|(k, b)| first_failure(b).map(|w| (k, w)))
        {
            Some((k, w)) => (Some(w), k + 1),
            None => (None, total),
        }
    };
    Ok(Verdict {
        group_label: g.label().to_string(),
        good: witness.is_none(),
        short_circuited: braces_examined < total,
        witness,
        braces_examined,
    })
}

/// `g ≅ C2`, `g ≅ C2×C2`, or `g` cyclic of odd order with `q ∤ p − 1` for all
/// primes `p, q` dividing the order. The trivial group qualifies.
pub fn theorem_predicate(g: &FiniteGroup) -> bool {
    let n = g.order();
    if n == 2 || (n == 4 && !g.is_cyclic()) {
        return true;
    }
    if n % 2 == 0 || !g.is_cyclic() {
        return false;
    }
    let primes = prime_divisors(n);
    primes
        .iter()
        .all(|&p| primes.iter().all(|&q| (p - 1) % q != 0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremRow {
    pub label: String,
    pub order: usize,
    pub predicted: bool,
    pub computed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub max_order: usize,
    pub rows: Vec<TheoremRow>,
    pub all_match: bool,
}

impl TheoremReport {
    /// Labels of the groups found good, in census order.
    pub fn good_labels(&self) -> Vec<&str> {
        self.rows
            .iter()
            .filter(|r| r.computed)
            .map(|r| r.label.as_str())
            .collect()
    }
}

/// Compares the predicate with the full check on every census group of
/// order at most `max_order`.
pub fn verify_theorem(max_order: usize, enumerator: &Enumerator) -> Result<TheoremReport> {
    let rows = census(max_order)?
        .into_iter()
        .map(|entry| {
            let verdict = is_good(&entry.group, false, enumerator)?;
            Ok(TheoremRow {
                predicted: theorem_predicate(&entry.group),
                computed: verdict.good,
                order: entry.order,
                label: entry.label,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TheoremReport {
        max_order,
        all_match: rows.iter().all(|r| r.predicted == r.computed),
        rows,
    })
}

/// Outcome of one of the cheap tests that can decide a brace without a full
/// lattice scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "signal", rename_all = "snake_case")]
pub enum HeuristicSignal {
    /// `(N,∘)` has more subgroups of this order than `(N,·)`.
    MoreSubgroupsOfOrder {
        order: usize,
        circ_count: usize,
        dot_count: usize,
    },
    /// Equal subgroup totals, but this `·`-subgroup is not `∘`-closed.
    DotSubgroupNotCircClosed { members: Vec<usize> },
    /// As many characteristic `·`-subgroups as `∘`-subgroups, so every
    /// `∘`-subgroup is a left ideal.
    AllCircSubgroupsAreLeftIdeals { count: usize },
}

impl HeuristicSignal {
    pub fn signals_bad(&self) -> bool {
        !matches!(self, HeuristicSignal::AllCircSubgroupsAreLeftIdeals { .. })
    }
}

fn counts_by_order(g: &FiniteGroup) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for s in subgroups(g) {
        *counts.entry(s.order()).or_insert(0) += 1;
    }
    counts
}

/// Bad signal when some order has more `∘`-subgroups than `·`-subgroups.
pub fn heuristic_subgroup_count(b: &SkewBrace) -> Option<HeuristicSignal> {
    let dot = counts_by_order(b.dot());
    counts_by_order(b.circ())
        .into_iter()
        .find_map(|(order, circ_count)| {
            let dot_count = dot.get(&order).copied().unwrap_or(0);
            (circ_count > dot_count).then_some(HeuristicSignal::MoreSubgroupsOfOrder {
                order,
                circ_count,
                dot_count,
            })
        })
}

/// Bad signal when both groups have the same number of subgroups but some
/// `·`-subgroup is not `∘`-closed.
pub fn heuristic_subgroup_containment(b: &SkewBrace) -> Option<HeuristicSignal> {
    let dot = subgroups(b.dot());
    if dot.len() != subgroups(b.circ()).len() {
        return None;
    }
    dot.into_iter()
        .find(|s| !b.circ().is_subgroup(s.members()))
        .map(|s| HeuristicSignal::DotSubgroupNotCircClosed {
            members: s.members().to_vec(),
        })
}

/// Good signal when the characteristic `·`-subgroups, which are always left
/// ideals, are as many as the `∘`-subgroups.
pub fn heuristic_characteristic_count(b: &SkewBrace) -> Option<HeuristicSignal> {
    let count = subgroups(b.circ()).len();
    (characteristic_subgroups(b.dot()).len() == count)
        .then_some(HeuristicSignal::AllCircSubgroupsAreLeftIdeals { count })
}

/// Lifts a witness on `M` to `M × M′` using the brace
/// `(m1, m1′)∘(m2, m2′) = (m1 ∘ m2, m1′ · m2′)` and the subgroup `S × {1}`.
/// A trivial `M′` returns the witness unchanged.
pub fn direct_factor_witness(witness: &Witness, m_prime: &FiniteGroup) -> Result<Witness> {
    witness.replay()?;
    if m_prime.order() == 1 {
        return Ok(witness.clone());
    }
    let b = &witness.brace;
    let dot = FiniteGroup::direct_product(b.dot(), m_prime);
    let circ = FiniteGroup::direct_product(b.circ(), m_prime);
    let label = format!("{}x{}", b.label(), m_prime.label());
    let lifted = Witness {
        brace: validate(&dot, &circ)?.with_label(label),
        // (s, 1) keeps the index of s
        subgroup: witness.subgroup.clone(),
        failing: witness.failing,
    };
    lifted.replay()?;
    Ok(lifted)
}

/// Every Sylow subgroup is cyclic. Sylow subgroups of one prime are
/// conjugate, so one per prime is checked.
pub fn c_group_check(g: &FiniteGroup) -> bool {
    let n = g.order();
    let all = subgroups(g);
    prime_divisors(n).into_iter().all(|p| {
        let mut sylow = 1;
        while n % (sylow * p) == 0 {
            sylow *= p;
        }
        all.iter()
            .find(|s| s.order() == sylow)
            .is_some_and(|s| s.members().iter().any(|&x| g.element_order(x) == sylow))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::{almost_trivial, left_ideals, trivial};
    use crate::group::{are_isomorphic, census_of_order, lookup};

    fn group(label: &str) -> FiniteGroup {
        lookup(label).unwrap().group
    }

    #[test]
    fn small_verdicts() {
        let en = Enumerator::new();
        assert!(is_good(&group("C2"), false, &en).unwrap().good);
        assert!(is_good(&group("C9"), false, &en).unwrap().good);
        let q8 = is_good(&group("Q8"), false, &en).unwrap();
        assert!(!q8.good);
        q8.witness.as_ref().unwrap().replay().unwrap();
        assert!(is_good(&group("C4"), false, &en).unwrap().witness.is_some());
    }

    #[test]
    fn exhaustive_sweep_counts_every_brace() {
        let en = Enumerator::new();
        let g = group("Q8");
        let quick = is_good(&g, false, &en).unwrap();
        let full = is_good(&g, true, &en).unwrap();
        assert_eq!(full.braces_examined, en.enumerate(&g).unwrap().len());
        assert!(!full.short_circuited);
        assert_eq!(quick.witness, full.witness);
        assert!(quick.braces_examined <= full.braces_examined);
    }

    #[test]
    fn cached_verdicts_match_and_tampering_is_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let cache = crate::report::CensusCache::new(dir.path());
        let en = Enumerator::new().with_cache(cache.clone());
        let g = group("D8");
        let cold = is_good(&g, false, &en).unwrap();
        assert_eq!(is_good(&g, false, &en).unwrap(), cold);
        assert_eq!(cold, is_good(&g, false, &Enumerator::new()).unwrap());
        let path = cache.path_for_kind("verdict", &g);
        let mut forged = cold.clone();
        forged.witness.as_mut().unwrap().failing.a = 0;
        std::fs::write(&path, crate::report::to_canonical_json(&forged)).unwrap();
        assert_eq!(is_good(&g, false, &en).unwrap(), cold);
        let mut flipped = cold.clone();
        flipped.good = true;
        std::fs::write(&path, crate::report::to_canonical_json(&flipped)).unwrap();
        assert_eq!(is_good(&g, false, &en).unwrap(), cold);
    }

    #[test]
    fn cap_is_enforced() {
        let c16 = FiniteGroup::cyclic(16).unwrap();
        assert!(matches!(
            is_good(&c16, false, &Enumerator::new()),
            Err(Error::CensusCap { .. })
        ));
        assert!(matches!(
            verify_theorem(16, &Enumerator::new()),
            Err(Error::CensusCap { .. })
        ));
    }

    #[test]
    fn predicate_arithmetic() {
        let c = |n| FiniteGroup::cyclic(n).unwrap();
        assert!(theorem_predicate(&c(15)));
        assert!(!theorem_predicate(&c(21)));
        assert!(!theorem_predicate(&c(4)));
        assert!(theorem_predicate(&c(1)));
        assert!(theorem_predicate(&c(2)));
        assert!(theorem_predicate(&c(9)));
        assert!(theorem_predicate(&c(45)));
        assert!(!theorem_predicate(&c(63)));
        assert!(theorem_predicate(&FiniteGroup::abelian(&[2, 2]).unwrap()));
        assert!(!theorem_predicate(&FiniteGroup::abelian(&[3, 3]).unwrap()));
    }

    #[test]
    fn predicate_is_invariant_under_relabelling() {
        for entry in census(8).unwrap() {
            let n = entry.order;
            let map: Vec<usize> = (0..n).map(|x| if x == 0 { 0 } else { n - x }).collect();
            let moved = entry.group.transport(&map, "moved").unwrap();
            assert_eq!(theorem_predicate(&moved), theorem_predicate(&entry.group));
        }
    }

    #[test]
    fn theorem_up_to_order_four() {
        let report = verify_theorem(4, &Enumerator::new()).unwrap();
        assert!(report.all_match);
        assert_eq!(report.good_labels(), ["C1", "C2", "C3", "C2xC2"]);
    }

    #[test]
    fn theorem_up_to_order_eight() {
        let report = verify_theorem(8, &Enumerator::new()).unwrap();
        assert!(report.all_match);
        assert_eq!(
            report.good_labels(),
            ["C1", "C2", "C3", "C2xC2", "C5", "C7"]
        );
    }

    #[test]
    fn heuristics_on_trivial_braces() {
        for label in ["C6", "Q8", "C2xC2xC2", "A4"] {
            let b = trivial(&group(label));
            assert_eq!(heuristic_subgroup_count(&b), None);
            assert_eq!(heuristic_subgroup_containment(&b), None);
        }
        for n in [1, 4, 9, 12] {
            let b = trivial(&FiniteGroup::cyclic(n).unwrap());
            assert!(heuristic_characteristic_count(&b).is_some());
        }
    }

    #[test]
    fn heuristic_examples() {
        let q8 = example_q8();
        assert_eq!(
            heuristic_subgroup_count(&q8),
            Some(HeuristicSignal::MoreSubgroupsOfOrder {
                order: 2,
                circ_count: 5,
                dot_count: 1
            })
        );
        assert_eq!(heuristic_characteristic_count(&q8), None);
        match heuristic_subgroup_count(&example_pq(7, 3, 1, 1).unwrap()) {
            Some(HeuristicSignal::MoreSubgroupsOfOrder {
                order: 3,
                circ_count: 7,
                dot_count: 1,
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(heuristic_subgroup_containment(&example_c2cubed()).is_some());
        assert!(heuristic_subgroup_containment(&example_p_odd(3, 1, 1).unwrap()).is_some());
    }

    #[test]
    fn q8_braces_with_dihedral_circ_are_bad() {
        let e = Enumerator::new().enumerate(&group("Q8")).unwrap();
        let d8 = &e.by_mult_type["D8"];
        assert!(!d8.is_empty());
        for &k in d8 {
            first_failure(&e.operations[k]).unwrap().replay().unwrap();
        }
        let w = first_failure(&example_q8()).unwrap();
        w.replay().unwrap();
        assert_eq!(lookup("D8").unwrap().label, crate::group::identify(w.brace.circ()).unwrap().label);
    }

    #[test]
    fn direct_factor_lifts() {
        let en = Enumerator::new();
        for (m, m_prime, product) in [("C4", "C3", "C12"), ("Q8", "C1", "Q8")] {
            let w = is_good(&group(m), false, &en).unwrap().witness.unwrap();
            let lifted = direct_factor_witness(&w, &group(m_prime)).unwrap();
            lifted.replay().unwrap();
            assert!(are_isomorphic(lifted.brace.dot(), &group(product)).is_some());
        }
        let w = is_good(&group("Q8"), false, &en).unwrap().witness.unwrap();
        assert_eq!(direct_factor_witness(&w, &group("C1")).unwrap(), w);
        let lifted = direct_factor_witness(&w, &group("C3")).unwrap();
        assert_eq!(lifted.brace.order(), 24);
        lifted.replay().unwrap();
    }

    #[test]
    fn tampered_witnesses_are_rejected() {
        let w = is_good(&group("C4"), false, &Enumerator::new())
            .unwrap()
            .witness
            .unwrap();
        let mut wrong_pair = w.clone();
        wrong_pair.failing.a = 0;
        assert!(matches!(wrong_pair.replay(), Err(Error::InvalidWitness(_))));
        let mut not_closed = w.clone();
        not_closed.subgroup = vec![0, 1, 2];
        assert!(not_closed.replay().is_err());
        assert!(direct_factor_witness(&wrong_pair, &group("C3")).is_err());
    }

    #[test]
    fn c_groups() {
        for n in 1..=15 {
            assert!(c_group_check(&FiniteGroup::cyclic(n).unwrap()));
        }
        assert!(!c_group_check(&group("C2xC2")));
        assert!(c_group_check(&group("S3")));
        assert!(c_group_check(&group("Dic3")));
        assert!(!c_group_check(&group("Q8")));
        assert!(!c_group_check(&group("A4")));
    }

    #[test]
    fn nonabelian_non_hamiltonian_groups_are_bad_via_almost_trivial() {
        for label in ["S3", "D8", "A4", "Dic3", "D12", "D14"] {
            let b = almost_trivial(&group(label));
            let w = first_failure(&b).unwrap_or_else(|| panic!("{label}"));
            w.replay().unwrap();
        }
        assert!(first_failure(&almost_trivial(&group("Q8"))).is_none());
    }

    #[test]
    fn bad_verdicts_replay_for_every_group_up_to_twelve() {
        let en = Enumerator::new();
        for n in 1..=12 {
            for entry in census_of_order(n).unwrap() {
                let v = is_good(&entry.group, true, &en).unwrap();
                assert_eq!(v.good, v.witness.is_none());
                if let Some(w) = &v.witness {
                    w.replay().unwrap();
                    assert!(!left_ideals(&w.brace)
                        .iter()
                        .any(|s| s.members() == w.subgroup.as_slice()));
                }
            }
        }
    }
}
