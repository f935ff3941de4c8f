//! Every group of order at most [`CENSUS_CAP`], one per isomorphism class.
//!
//! Entries are built from explicit constructors (cyclic, abelian, dihedral,
//! quaternion, semidirect and direct products), deduplicated with
//! [`are_isomorphic`], and the per-order counts are checked against the
//! known number of groups of each order.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{are_isomorphic, prime_divisors, FiniteGroup};
use crate::error::{Error, Result};

pub const CENSUS_CAP: usize = 15;

/// Number of isomorphism classes of groups of order `n`, indexed by `n`.
pub const GROUP_COUNTS: [usize; CENSUS_CAP + 1] = [0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub order: usize,
    pub label: String,
    pub group: FiniteGroup,
}

const ALIASES: &[(&str, &str)] = &[
    ("D6", "S3"),
    ("Sym3", "S3"),
    ("C2^2", "C2xC2"),
    ("V4", "C2xC2"),
    ("C2^3", "C2xC2xC2"),
    ("C3^2", "C3xC3"),
    ("C2xC4", "C4xC2"),
    ("C2xC6", "C6xC2"),
    ("Q12", "Dic3"),
    ("C3:C4", "Dic3"),
    ("Alt4", "A4"),
];

fn full_census() -> &'static [CensusEntry] {
    static CENSUS: OnceLock<Vec<CensusEntry>> = OnceLock::new();
    CENSUS.get_or_init(|| {
        let mut all = Vec::new();
        for n in 1..=CENSUS_CAP {
            let entries = build_order(n, &all);
            assert_eq!(
                entries.len(),
                GROUP_COUNTS[n],
                "constructor sweep found {} groups of order {n}",
                entries.len()
            );
            all.extend(entries);
        }
        all
    })
}

/// All census entries of order `<= max_order`, ordered by order and then
/// by construction order (cyclic first).
pub fn census(max_order: usize) -> Result<Vec<CensusEntry>> {
    if max_order > CENSUS_CAP {
        return Err(Error::CensusCap {
            requested: max_order,
            cap: CENSUS_CAP,
        });
    }
    Ok(full_census()
        .iter()
        .filter(|e| e.order <= max_order)
        .cloned()
        .collect())
}

pub fn census_of_order(order: usize) -> Result<Vec<CensusEntry>> {
    Ok(census(order)?.into_iter().filter(|e| e.order == order).collect())
}

/// Finds a census entry by label (case-insensitive, common aliases accepted).
pub fn lookup(label: &str) -> Result<CensusEntry> {
    let wanted = ALIASES
        .iter()
        .find(|(alias, _)| alias.eq_ignore_ascii_case(label))
        .map_or(label, |(_, canonical)| canonical);
    full_census()
        .iter()
        .find(|e| e.label.eq_ignore_ascii_case(wanted))
        .cloned()
        .ok_or_else(|| Error::UnknownLabel {
            label: label.to_string(),
            available: full_census().iter().map(|e| e.label.clone()).collect(),
        })
}

/// The census entry isomorphic to `g`, if `g` is small enough to be listed.
pub fn identify(g: &FiniteGroup) -> Option<CensusEntry> {
    if g.order() > CENSUS_CAP {
        return None;
    }
    full_census()
        .iter()
        .filter(|e| e.order == g.order())
        .find(|e| are_isomorphic(g, &e.group).is_some())
        .cloned()
}

/// Invariant factors `d1 >= d2 >= ...` (each dividing the previous) of an
/// abelian group, or `None` for a nonabelian one. Empty for the trivial
/// group.
pub fn abelian_invariants(g: &FiniteGroup) -> Option<Vec<usize>> {
    if !g.is_abelian() {
        return None;
    }
    let orders = g.element_orders();
    let mut factors: Vec<usize> = Vec::new();
    for p in prime_divisors(g.order()) {
        // ranks[k] = number of cyclic p-factors of order at least p^(k+1)
        let mut ranks = Vec::new();
        let (mut prev, mut pk) = (1usize, p);
        loop {
            let omega = orders.iter().filter(|&&o| pk % o == 0).count();
            if omega == prev {
                break;
            }
            let (mut ratio, mut rank) = (omega / prev, 0);
            while ratio > 1 {
                ratio /= p;
                rank += 1;
            }
            ranks.push(rank);
            prev = omega;
            pk *= p;
        }
        let count = ranks.first().copied().unwrap_or(0);
        if factors.len() < count {
            factors.resize(count, 1);
        }
        for r in ranks {
            for f in factors.iter_mut().take(r) {
                *f *= p;
            }
        }
    }
    factors.sort_unstable_by(|a, b| b.cmp(a));
    Some(factors)
}

/// Census label when listed; otherwise the invariant factors of an abelian
/// group, `Cp:Cq` for the nonabelian group of order `pq`, or
/// `nonabelian-order-n`.
pub fn describe(g: &FiniteGroup) -> String {
    if let Some(e) = identify(g) {
        return e.label;
    }
    match abelian_invariants(g) {
        Some(factors) => invariant_label(&factors),
        None => {
            let n = g.order();
            match prime_divisors(n).as_slice() {
                &[q, p] if p * q == n => format!("C{p}:C{q}"),
                _ => format!("nonabelian-order-{n}"),
            }
        }
    }
}

fn invariant_label(factors: &[usize]) -> String {
    if factors.is_empty() {
        return "C1".into();
    }
    factors
        .iter()
        .map(|d| format!("C{d}"))
        .collect::<Vec<_>>()
        .join("x")
}

/// Non-increasing factor lists (each factor >= 2) with product `n`.
fn factorizations(n: usize, max_factor: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for f in (2..=max_factor.min(n)).rev() {
        if n % f == 0 {
            for mut rest in factorizations(n / f, f) {
                rest.insert(0, f);
                out.push(rest);
            }
        }
    }
    out
}

/// `C_a x|_k C_b`, the generator of `C_b` acting by `x -> k x`.
fn metacyclic(a: usize, b: usize, k: usize) -> Option<FiniteGroup> {
    let ca = FiniteGroup::cyclic(a).ok()?;
    let cb = FiniteGroup::cyclic(b).ok()?;
    let mut action = Vec::with_capacity(b);
    let mut mult = 1 % a.max(1);
    for _ in 0..b {
        action.push((0..a).map(|x| x * mult % a).collect::<Vec<_>>());
        mult = mult * k % a;
    }
    FiniteGroup::semidirect_product(&ca, &cb, &action).ok()
}

fn candidates(n: usize, smaller: &[CensusEntry]) -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    let mut push = |label: &str, g: Option<FiniteGroup>| {
        if let Some(g) = g {
            out.push((label.to_string(), g));
        }
    };
    push(&format!("C{n}"), FiniteGroup::cyclic(n).ok());
    for factors in factorizations(n, n).into_iter().skip(1) {
        let g = FiniteGroup::abelian(&factors).ok();
        let label = g.as_ref().map(|g| g.label().to_string()).unwrap_or_default();
        push(&label, g);
    }
    if n == 6 {
        push("S3", FiniteGroup::dihedral(6).ok());
    } else if n >= 6 && n % 2 == 0 {
        push(&format!("D{n}"), FiniteGroup::dihedral(n).ok());
    }
    if n == 8 {
        push("Q8", Some(FiniteGroup::quaternion8()));
    }
    if n == 12 {
        let v4 = FiniteGroup::abelian(&[2, 2]).ok();
        let c3 = FiniteGroup::cyclic(3).ok();
        let a4 = v4.zip(c3).and_then(|(v4, c3)| {
            let rotate = vec![vec![0, 1, 2, 3], vec![0, 2, 3, 1], vec![0, 3, 1, 2]];
            FiniteGroup::semidirect_product(&v4, &c3, &rotate).ok()
        });
        push("A4", a4);
        push("Dic3", metacyclic(3, 4, 2));
    }
    // generic sweep: every metacyclic split extension and every direct product
    // of smaller entries; anything not isomorphic to a named group above would
    // surface as an extra class and fail the count check
    for a in 2..n {
        if n % a != 0 {
            continue;
        }
        let b = n / a;
        for k in 1..a {
            if super::gcd(k, a) == 1 && pow_mod(k, b, a) == 1 {
                push(&format!("C{a}:{k}C{b}"), metacyclic(a, b, k));
            }
        }
    }
    for x in smaller {
        for y in smaller {
            if x.order > 1 && y.order > 1 && x.order * y.order == n {
                push(
                    &format!("{}x{}", x.label, y.label),
                    Some(FiniteGroup::direct_product(&x.group, &y.group)),
                );
            }
        }
    }
    out
}

fn pow_mod(base: usize, exp: usize, m: usize) -> usize {
    (0..exp).fold(1 % m, |acc, _| acc * base % m)
}

fn build_order(n: usize, smaller: &[CensusEntry]) -> Vec<CensusEntry> {
    let mut entries: Vec<CensusEntry> = Vec::new();
    for (label, g) in candidates(n, smaller) {
        if entries
            .iter()
            .all(|e| are_isomorphic(&e.group, &g).is_none())
        {
            entries.push(CensusEntry {
                order: n,
                label: label.clone(),
                group: g.with_label(label),
            });
        }
    }
    entries
}
