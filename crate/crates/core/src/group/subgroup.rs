use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{automorphism_group, FiniteGroup};
use crate::error::{Error, Result};

/// A subgroup of some [`FiniteGroup`], stored as its sorted member indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    /// Checks that `members` is a subgroup of `parent`.
    pub fn new(parent: &FiniteGroup, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if !parent.is_subgroup(&members) {
            return Err(Error::NotASubgroup(format!("{members:?}")));
        }
        Ok(Subgroup { members })
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<usize>) -> Self {
        Subgroup { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// Sort key used everywhere subgroups are listed: by order, then members.
    pub(crate) fn canonical_key(&self) -> (usize, &[usize]) {
        (self.members.len(), &self.members)
    }
}

/// Every subgroup of `g`, ordered by size then member list.
///
/// Starts from the cyclic subgroups and repeatedly joins each known subgroup
/// with each cyclic subgroup until nothing new appears. Every subgroup is a
/// chain of such joins, so the result is complete.
pub fn subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let n = g.order();
    let mut found: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut cyclic: Vec<(usize, Vec<usize>)> = Vec::new();
    for a in 0..n {
        let members = g.closure(&[a]);
        if !found.contains_key(&members) {
            found.insert(members.clone(), vec![a]);
            cyclic.push((a, members));
        }
    }
    let mut frontier: Vec<(Vec<usize>, Vec<usize>)> =
        found.iter().map(|(m, gens)| (m.clone(), gens.clone())).collect();
    frontier.sort();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (members, gens) in &frontier {
            for (a, cyc) in &cyclic {
                if members.binary_search(a).is_ok() || cyc.len() >= n {
                    continue;
                }
                let mut join_gens = gens.clone();
                join_gens.push(*a);
                let join = g.closure(&join_gens);
                if !found.contains_key(&join) {
                    found.insert(join.clone(), join_gens.clone());
                    next.push((join, join_gens));
                }
            }
        }
        next.sort();
        frontier = next;
    }
    let mut all: Vec<Subgroup> = found
        .into_keys()
        .map(Subgroup::from_sorted_unchecked)
        .collect();
    all.sort_by(|x, y| x.canonical_key().cmp(&y.canonical_key()));
    all
}

/// True iff `a s a^-1 ⊆ s` for every `a`.
pub fn is_normal(g: &FiniteGroup, s: &Subgroup) -> bool {
    (0..g.order()).all(|a| {
        let a_inv = g.inv(a);
        s.members()
            .iter()
            .all(|&x| s.contains(g.mul(g.mul(a, x), a_inv)))
    })
}

pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    subgroups(g).into_iter().filter(|s| is_normal(g, s)).collect()
}

/// Subgroups fixed setwise by every automorphism.
pub fn characteristic_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let auts = automorphism_group(g);
    subgroups(g)
        .into_iter()
        .filter(|s| {
            auts.generators()
                .iter()
                .all(|alpha| s.members().iter().all(|&x| s.contains(alpha.apply(x))))
        })
        .collect()
}

/// Conjugacy classes, each sorted, listed by least element.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        let mut class: Vec<usize> = (0..n).map(|a| g.mul(g.mul(a, x), g.inv(a))).collect();
        class.sort_unstable();
        class.dedup();
        for &y in &class {
            assigned[y] = true;
        }
        classes.push(class);
    }
    classes
}
