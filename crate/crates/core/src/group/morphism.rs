//! Homomorphism extension, automorphism groups, isomorphism search and the
//! permutation groups attached to a finite group (regular representations,
//! holomorph).

use std::collections::HashSet;
use std::ops::ControlFlow;

use super::{FiniteGroup, PermGroup, Permutation};
use crate::error::{Error, Result};

/// Extends `gens[i] -> images[i]` to a homomorphism `src -> tgt`.
///
/// The map is built along a breadth-first walk of the Cayley graph of
/// `src`; every edge `x -> x g_i` is checked against `f(x) f(g_i)`, which is
/// exactly the homomorphism condition when `gens` generates `src`. Returns
/// `None` if the assignment does not extend or `gens` does not generate.
pub fn extend_homomorphism(
    src: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
    tgt: &FiniteGroup,
) -> Option<Vec<usize>> {
    debug_assert_eq!(gens.len(), images.len());
    let n = src.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&g, &h) in gens.iter().zip(images) {
            let y = src.mul(x, g);
            let fy = tgt.mul(map[x], h);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
        i += 1;
    }
    (queue.len() == n).then_some(map)
}

fn is_bijection(map: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    map.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

/// Backtracks over images of `gens` in `tgt` with equal element orders,
/// calling `visit` with every bijective homomorphism found. `accept` can veto
/// a candidate image for generator `k` early.
pub(crate) fn search_isomorphisms(
    src: &FiniteGroup,
    tgt: &FiniteGroup,
    gens: &[usize],
    accept: &dyn Fn(usize, usize) -> bool,
    visit: &mut dyn FnMut(Vec<usize>) -> ControlFlow<()>,
) {
    let src_orders: Vec<usize> = gens.iter().map(|&g| src.element_order(g)).collect();
    let tgt_orders = tgt.element_orders();
    let mut images = Vec::with_capacity(gens.len());
    let _ = backtrack(src, tgt, gens, &src_orders, &tgt_orders, accept, &mut images, visit);
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    src: &FiniteGroup,
    tgt: &FiniteGroup,
    gens: &[usize],
    src_orders: &[usize],
    tgt_orders: &[usize],
    accept: &dyn Fn(usize, usize) -> bool,
    images: &mut Vec<usize>,
    visit: &mut dyn FnMut(Vec<usize>) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let k = images.len();
    if k == gens.len() {
        if let Some(map) = extend_homomorphism(src, gens, images, tgt) {
            if is_bijection(&map, tgt.order()) {
                return visit(map);
            }
        }
        return ControlFlow::Continue(());
    }
    // generator k lies outside <g_0..g_{k-1}>, so an injective image must too
    let span = tgt.closure(images);
    for t in 0..tgt.order() {
        if tgt_orders[t] != src_orders[k] || span.binary_search(&t).is_ok() || !accept(k, t) {
            continue;
        }
        images.push(t);
        let flow = backtrack(src, tgt, gens, src_orders, tgt_orders, accept, images, visit);
        images.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

/// The full automorphism group of `g`, acting on element indices.
pub fn automorphism_group(g: &FiniteGroup) -> PermGroup {
    let gens = g.generating_set();
    let mut auts = Vec::new();
    search_isomorphisms(g, g, &gens, &|_, _| true, &mut |map| {
        auts.push(Permutation::from_vec_unchecked(map));
        ControlFlow::Continue(())
    });
    PermGroup::from_elements(g.order(), auts)
}

/// A verified isomorphism `source -> target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub map: Vec<usize>,
}

impl Isomorphism {
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, map: Vec<usize>) -> Result<Self> {
        let n = source.order();
        if target.order() != n {
            return Err(Error::OrderMismatch {
                left: n,
                right: target.order(),
            });
        }
        if map.len() != n || !is_bijection(&map, n) || map[0] != 0 {
            return Err(Error::InvalidParameter("map is not a bijection fixing 0".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::InvalidParameter(format!(
                        "map is not a homomorphism at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(Isomorphism {
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    pub fn inverse(&self) -> Isomorphism {
        let mut inv = vec![0; self.map.len()];
        for (a, &b) in self.map.iter().enumerate() {
            inv[b] = a;
        }
        Isomorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv,
        }
    }
}

fn sorted_orders(g: &FiniteGroup) -> Vec<usize> {
    let mut orders = g.element_orders();
    orders.sort_unstable();
    orders
}

/// Finds an isomorphism `a -> b` if one exists.
pub fn are_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> Option<Isomorphism> {
    if a.order() != b.order()
        || a.center().len() != b.center().len()
        || sorted_orders(a) != sorted_orders(b)
    {
        return None;
    }
    let gens = a.generating_set();
    let mut found = None;
    search_isomorphisms(a, b, &gens, &|_, _| true, &mut |map| {
        found = Some(map);
        ControlFlow::Break(())
    });
    found.map(|map| Isomorphism {
        source: a.clone(),
        target: b.clone(),
        map,
    })
}

/// `a -> (x -> a x)` for every `a`.
pub fn left_regular(g: &FiniteGroup) -> PermGroup {
    let n = g.order();
    let perms = (0..n)
        .map(|a| Permutation::from_vec_unchecked((0..n).map(|x| g.mul(a, x)).collect()))
        .collect();
    PermGroup::from_elements(n, perms)
}

/// `a -> (x -> x a^-1)` for every `a`.
pub fn right_regular(g: &FiniteGroup) -> PermGroup {
    let n = g.order();
    let perms = (0..n)
        .map(|a| {
            let a_inv = g.inv(a);
            Permutation::from_vec_unchecked((0..n).map(|x| g.mul(x, a_inv)).collect())
        })
        .collect();
    PermGroup::from_elements(n, perms)
}

/// `Hol(g)`, generated by the left translations and `Aut(g)`.
pub fn holomorph(g: &FiniteGroup) -> PermGroup {
    let n = g.order();
    let mut gens: Vec<Permutation> = g
        .generating_set()
        .into_iter()
        .map(|a| Permutation::from_vec_unchecked((0..n).map(|x| g.mul(a, x)).collect()))
        .collect();
    gens.extend(automorphism_group(g).elements().iter().cloned());
    PermGroup::new(n, gens).expect("holomorph generators share the degree")
}

/// True iff `sub` (a subgroup of `pg`) acts regularly: it has `degree`
/// elements and only the identity fixes point 0.
pub fn is_regular(pg: &PermGroup, sub: &[Permutation]) -> Result<bool> {
    let set: HashSet<&Permutation> = sub.iter().collect();
    if let Some(p) = sub.iter().find(|p| !pg.contains(p)) {
        return Err(Error::NotASubgroup(format!("{p:?} is not in the group")));
    }
    if !set.contains(&Permutation::identity(pg.degree())) {
        return Err(Error::NotASubgroup("identity missing".into()));
    }
    for p in &set {
        for q in &set {
            if !set.contains(&p.compose(q)) {
                return Err(Error::NotASubgroup("set is not closed".into()));
            }
        }
    }
    Ok(set.len() == pg.degree() && set.iter().all(|p| p.apply(0) != 0 || p.is_identity()))
}
