//! Enumeration of every multiplicative operation compatible with a fixed
//! additive group.
//!
//! A skew brace with additive group `N` is the same thing as a regular
//! subgroup `R` of `Hol(N)`: the element of `R` sending 0 to `a` has the form
//! `y ↦ a·α_a(y)` with `α_a ∈ Aut(N)`, and `a∘b = a·α_a(b)`. The search
//! therefore picks, point by point, an automorphism `α_a` and closes the
//! partial set under composition, rejecting any branch where two elements
//! would send 0 to the same point.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brace::{brace_isomorphic, validate, SkewBrace};
use crate::error::{Error, Result};
use crate::group::{
    automorphism_group, census_of_order, describe, CensusEntry, FiniteGroup, Permutation,
    CENSUS_CAP,
};
use crate::report::CensusCache;

/// Largest additive order accepted by [`oracle_enumerate_circ`].
pub const ORACLE_CAP: usize = 6;

/// All operations `∘` making `(N, ·, ∘)` a skew brace, as tables.
///
/// `operations` is sorted by circ table. `iso_classes` holds the index of
/// the representative of each brace isomorphism class once
/// [`reduce_up_to_iso`] has run and is empty before. `by_mult_type` maps the
/// census label of each multiplicative group to the operations having it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceEnumeration {
    pub additive: FiniteGroup,
    pub operations: Vec<SkewBrace>,
    pub iso_classes: Vec<usize>,
    pub by_mult_type: BTreeMap<String, Vec<usize>>,
}

impl BraceEnumeration {
    pub fn len(&self) -> usize {
        self.operations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operations.is_empty()
    }
}

/// Knobs shared by everything that enumerates: the worker count for the
/// parallel search and an optional on-disk cache.
#[derive(Clone, Debug, Default)]
pub struct Enumerator {
    pub workers: Option<usize>,
    pub cache: Option<CensusCache>,
}

impl Enumerator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers.max(1));
        self
    }

    pub fn with_cache(mut self, cache: CensusCache) -> Self {
        self.cache = Some(cache);
        self
    }

    /// Enumerates through the cache when one is configured.
    pub fn enumerate(&self, additive: &FiniteGroup) -> Result<BraceEnumeration> {
        match &self.cache {
            Some(cache) => cache.get_or_compute(additive, || self.compute(additive)),
            None => self.compute(additive),
        }
    }

    fn compute(&self, additive: &FiniteGroup) -> Result<BraceEnumeration> {
        match self.workers {
            Some(workers) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .build()
                    .map_err(|e| Error::Internal(e.to_string()))?;
                pool.install(|| enumerate_uncached(additive))
            }
            None => enumerate_uncached(additive),
        }
    }
}

/// Every circ operation on `additive`, using the global thread pool and no
/// cache.
pub fn enumerate_circ(additive: &FiniteGroup) -> Result<BraceEnumeration> {
    enumerate_uncached(additive)
}

struct Holomorph<'a> {
    dot: &'a FiniteGroup,
    auts: Vec<Permutation>,
    /// `compose[i * m + j]` is the index of `auts[i] ∘ auts[j]`.
    compose: Vec<usize>,
    /// For each point `a`, automorphism indices ordered by the image list of
    /// `y ↦ a·α(y)`.
    candidates: Vec<Vec<usize>>,
}

impl<'a> Holomorph<'a> {
    fn new(dot: &'a FiniteGroup) -> Self {
        let n = dot.order();
        let auts = automorphism_group(dot).elements().to_vec();
        let m = auts.len();
        let index: HashMap<&Permutation, usize> =
            auts.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut compose = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                compose[i * m + j] = index[&auts[i].compose(&auts[j])];
            }
        }
        let candidates = (0..n)
            .map(|a| {
                let mut order: Vec<usize> = (0..m).collect();
                order.sort_by_cached_key(|&i| {
                    (0..n).map(|y| dot.mul(a, auts[i].apply(y))).collect::<Vec<_>>()
                });
                order
            })
            .collect();
        Holomorph {
            dot,
            auts,
            compose,
            candidates,
        }
    }

    /// `(a, α_i) ∘ (b, α_j) = (a·α_i(b), α_i α_j)`.
    #[inline]
    fn product(&self, a: usize, i: usize, b: usize, j: usize) -> (usize, usize) {
        let m = self.auts.len();
        (
            self.dot.mul(a, self.auts[i].apply(b)),
            self.compose[i * m + j],
        )
    }
}

/// A partial regular subset: `assigned[a]` is the automorphism attached to
/// point `a`, and `points` lists the assigned points.
#[derive(Clone)]
struct Partial {
    assigned: Vec<Option<usize>>,
    points: Vec<usize>,
}

impl Partial {
    fn start(n: usize, identity_aut: usize) -> Self {
        let mut assigned = vec![None; n];
        assigned[0] = Some(identity_aut);
        Partial {
            assigned,
            points: vec![0],
        }
    }

    /// Adds `(a, α_i)` and closes under composition. Returns false when the
    /// closure is not regular.
    fn extend(&mut self, hol: &Holomorph, a: usize, i: usize) -> bool {
        match self.assigned[a] {
            Some(j) => return j == i,
            None => {
                self.assigned[a] = Some(i);
                self.points.push(a);
            }
        }
        let mut queue = vec![a];
        while let Some(x) = queue.pop() {
            let xi = self.assigned[x].unwrap();
            let mut k = 0;
            while k < self.points.len() {
                let y = self.points[k];
                let yi = self.assigned[y].unwrap();
                for (p, pi) in [hol.product(x, xi, y, yi), hol.product(y, yi, x, xi)] {
                    match self.assigned[p] {
                        None => {
                            self.assigned[p] = Some(pi);
                            self.points.push(p);
                            queue.push(p);
                        }
                        Some(existing) if existing != pi => return false,
                        Some(_) => {}
                    }
                }
                k += 1;
            }
        }
        true
    }

    fn first_free(&self) -> Option<usize> {
        self.assigned.iter().position(Option::is_none)
    }
}

fn search(hol: &Holomorph, partial: Partial, out: &mut Vec<Vec<usize>>) {
    let Some(a) = partial.first_free() else {
        out.push(partial.assigned.iter().map(|x| x.unwrap()).collect());
        return;
    };
    for &i in &hol.candidates[a] {
        let mut next = partial.clone();
        if next.extend(hol, a, i) {
            search(hol, next, out);
        }
    }
}

fn enumerate_uncached(additive: &FiniteGroup) -> Result<BraceEnumeration> {
    let n = additive.order();
    if n > CENSUS_CAP {
        return Err(Error::CensusCap {
            requested: n,
            cap: CENSUS_CAP,
        });
    }
    let hol = Holomorph::new(additive);
    let identity = hol
        .auts
        .iter()
        .position(Permutation::is_identity)
        .expect("Aut contains the identity");
    let root = Partial::start(n, identity);

    // split at the first branching point; each subtree is independent
    let assignments: Vec<Vec<usize>> = match root.first_free() {
        None => vec![vec![identity]],
        Some(a) => hol.candidates[a]
            .par_iter()
            .map(|&i| {
                let mut out = Vec::new();
                let mut next = root.clone();
                if next.extend(&hol, a, i) {
                    search(&hol, next, &mut out);
                }
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect(),
    };

    let mut tables: Vec<Vec<Vec<usize>>> = assignments
        .into_iter()
        .map(|assigned| {
            (0..n)
                .map(|a| {
                    let alpha = &hol.auts[assigned[a]];
                    (0..n).map(|b| additive.mul(a, alpha.apply(b))).collect()
                })
                .collect()
        })
        .collect();
    tables.sort();
    tables.dedup();

    let operations = tables
        .into_par_iter()
        .enumerate()
        .map(|(k, table)| decode(additive, k, table))
        .collect::<Result<Vec<_>>>()?;
    let by_mult_type = group_by_mult_type(&operations);
    Ok(BraceEnumeration {
        additive: additive.clone(),
        operations,
        iso_classes: Vec::new(),
        by_mult_type,
    })
}

fn decode(additive: &FiniteGroup, k: usize, table: Vec<Vec<usize>>) -> Result<SkewBrace> {
    let label = format!("{}#{k}", additive.label());
    let circ = FiniteGroup::from_table(format!("{label}.circ"), table)
        .map_err(|e| Error::Internal(format!("decoded regular subgroup is not a group: {e}")))?;
    validate(additive, &circ)
        .map(|b| b.with_label(label))
        .map_err(|e| Error::Internal(format!("decoded regular subgroup fails the brace relation: {e}")))
}

/// Census label of a group, or a structural description above the cap.
pub fn type_label(g: &FiniteGroup) -> String {
    describe(g)
}

fn group_by_mult_type(operations: &[SkewBrace]) -> BTreeMap<String, Vec<usize>> {
    let labels: Vec<String> = operations.par_iter().map(|b| type_label(b.circ())).collect();
    let mut map: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (k, label) in labels.into_iter().enumerate() {
        map.entry(label).or_default().push(k);
    }
    map
}

/// Number of operations per multiplicative type.
pub fn mult_type_census(e: &BraceEnumeration) -> BTreeMap<String, usize> {
    e.by_mult_type
        .iter()
        .map(|(label, ops)| (label.clone(), ops.len()))
        .collect()
}

/// Canonical form of a partition: for each operation, the least index of its
/// class.
pub type Partition = Vec<usize>;

/// Classes under [`brace_isomorphic`], comparing each operation with the
/// representatives found so far.
pub fn classes_by_brace_isomorphism(e: &BraceEnumeration) -> Partition {
    let mut reps: Vec<usize> = Vec::new();
    let mut class = vec![0; e.len()];
    for (k, b) in e.operations.iter().enumerate() {
        match reps
            .iter()
            .find(|&&r| brace_isomorphic(&e.operations[r], b).is_some())
        {
            Some(&r) => class[k] = r,
            None => {
                reps.push(k);
                class[k] = k;
            }
        }
    }
    class
}

/// Orbits of `Aut(N)` acting on the operations by transport of structure,
/// which is conjugation of the regular subgroups inside `Hol(N)`.
pub fn classes_by_aut_conjugacy(e: &BraceEnumeration) -> Result<Partition> {
    let n = e.additive.order();
    let index: HashMap<Vec<usize>, usize> = e
        .operations
        .iter()
        .enumerate()
        .map(|(k, b)| (b.circ().rows().concat(), k))
        .collect();
    let auts = automorphism_group(&e.additive);
    let mut class: Vec<usize> = (0..e.len()).collect();
    for k in 0..e.len() {
        if class[k] != k {
            continue;
        }
        let circ = e.operations[k].circ();
        for alpha in auts.elements() {
            let mut moved = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    moved[alpha.apply(a) * n + alpha.apply(b)] = alpha.apply(circ.mul(a, b));
                }
            }
            let j = *index.get(&moved).ok_or_else(|| {
                Error::Internal("conjugate of a regular subgroup is missing".into())
            })?;
            class[j] = class[j].min(k);
        }
    }
    Ok(class)
}

/// Fills `iso_classes`. Both quotients are computed and must agree.
pub fn reduce_up_to_iso(mut e: BraceEnumeration) -> Result<BraceEnumeration> {
    let direct = classes_by_brace_isomorphism(&e);
    let conjugacy = classes_by_aut_conjugacy(&e)?;
    if direct != conjugacy {
        return Err(Error::Internal(format!(
            "brace isomorphism and Aut-conjugacy quotients disagree for {}",
            e.additive.label()
        )));
    }
    e.iso_classes = direct
        .iter()
        .enumerate()
        .filter(|&(k, &c)| k == c)
        .map(|(k, _)| k)
        .collect();
    Ok(e)
}

/// Independent check of [`enumerate_circ`]: transport every census group of
/// the same order onto the index set by every bijection fixing 0 and keep
/// the tables compatible with `additive`. Sorted circ tables.
pub fn oracle_enumerate_circ(additive: &FiniteGroup) -> Result<Vec<Vec<Vec<usize>>>> {
    let n = additive.order();
    if n > ORACLE_CAP {
        return Err(Error::OracleCap {
            requested: n,
            cap: ORACLE_CAP,
        });
    }
    let mut tables = BTreeSet::new();
    for entry in census_of_order(n)? {
        for rest in (1..n).permutations(n - 1) {
            let mut map = vec![0];
            map.extend(rest);
            let moved = entry.group.transport(&map, entry.label.clone())?;
            if validate(additive, &moved).is_ok() {
                tables.insert(moved.rows());
            }
        }
    }
    Ok(tables.into_iter().collect())
}

/// Braces of order `|circ_type|` whose multiplicative group is isomorphic
/// to `circ_type`, over every additive group in the census.
pub fn braces_with_mult_group(circ_type: &CensusEntry, enumerator: &Enumerator) -> Result<Vec<SkewBrace>> {
    let mut out = Vec::new();
    for additive in census_of_order(circ_type.order)? {
        let e = enumerator.enumerate(&additive.group)?;
        if let Some(ops) = e.by_mult_type.get(&circ_type.label) {
            out.extend(ops.iter().map(|&k| e.operations[k].clone()));
        }
    }
    Ok(out)
}
