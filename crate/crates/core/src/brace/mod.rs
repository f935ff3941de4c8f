//! Skew braces: two group structures on one set tied by the brace relation
//! `a∘(b·c) = (a∘b)·a⁻¹·(a∘c)`.
//!
//! `dot` is the additive group and `circ` the multiplicative one. Both have
//! identity 0.

use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{subgroups, FiniteGroup, Permutation, Subgroup};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "BraceJson", into = "BraceJson")]
pub struct SkewBrace {
    dot: FiniteGroup,
    circ: FiniteGroup,
    label: String,
}

// Equality is on the two tables and the brace label; the labels of the
// component groups are not serialised and do not take part.
impl PartialEq for SkewBrace {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label
            && self.dot.flat_table() == other.dot.flat_table()
            && self.circ.flat_table() == other.circ.flat_table()
    }
}

impl Eq for SkewBrace {}

impl std::hash::Hash for SkewBrace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.label.hash(state);
        self.dot.flat_table().hash(state);
        self.circ.flat_table().hash(state);
    }
}

/// On-disk form: `{ "order": n, "dot": [[int]], "circ": [[int]], "label": str }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraceJson {
    pub order: usize,
    pub dot: Vec<Vec<usize>>,
    pub circ: Vec<Vec<usize>>,
    pub label: String,
}

impl TryFrom<BraceJson> for SkewBrace {
    type Error = Error;

    fn try_from(json: BraceJson) -> Result<Self> {
        for table in [&json.dot, &json.circ] {
            if table.len() != json.order {
                return Err(Error::OrderMismatch {
                    left: json.order,
                    right: table.len(),
                });
            }
        }
        let dot = FiniteGroup::from_table(format!("{}.dot", json.label), json.dot)?;
        let circ = FiniteGroup::from_table(format!("{}.circ", json.label), json.circ)?;
        Ok(validate(&dot, &circ)?.with_label(json.label))
    }
}

impl From<SkewBrace> for BraceJson {
    fn from(b: SkewBrace) -> Self {
        BraceJson {
            order: b.order(),
            dot: b.dot.rows(),
            circ: b.circ.rows(),
            label: b.label,
        }
    }
}

/// Checks the brace relation over all `n³` triples and returns the brace.
/// On failure the least violating triple `(a, b, c)` is reported.
pub fn validate(dot: &FiniteGroup, circ: &FiniteGroup) -> Result<SkewBrace> {
    let n = dot.order();
    if circ.order() != n {
        return Err(Error::OrderMismatch {
            left: n,
            right: circ.order(),
        });
    }
    let violation = (0..n).into_par_iter().find_map_first(|a| {
        let a_inv = dot.inv(a);
        for b in 0..n {
            let ab = circ.mul(a, b);
            for c in 0..n {
                let lhs = circ.mul(a, dot.mul(b, c));
                let rhs = dot.mul(dot.mul(ab, a_inv), circ.mul(a, c));
                if lhs != rhs {
                    return Some((a, b, c));
                }
            }
        }
        None
    });
    if let Some((a, b, c)) = violation {
        return Err(Error::BraceRelation { a, b, c });
    }
    Ok(SkewBrace {
        dot: dot.clone(),
        circ: circ.clone(),
        label: format!("({}, {})", dot.label(), circ.label()),
    })
}

/// `(G, ·, ·)`.
pub fn trivial(g: &FiniteGroup) -> SkewBrace {
    SkewBrace {
        dot: g.clone(),
        circ: g.clone(),
        label: format!("trivial({})", g.label()),
    }
}

/// `(G, ·, ·op)` with `a ∘ b = b · a`.
pub fn almost_trivial(g: &FiniteGroup) -> SkewBrace {
    SkewBrace {
        dot: g.clone(),
        circ: g.opposite(),
        label: format!("almost_trivial({})", g.label()),
    }
}

impl SkewBrace {
    pub fn order(&self) -> usize {
        self.dot.order()
    }

    pub fn dot(&self) -> &FiniteGroup {
        &self.dot
    }

    pub fn circ(&self) -> &FiniteGroup {
        &self.circ
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `γ_a(b) = a⁻¹·(a∘b)`.
    #[inline]
    pub fn gamma_at(&self, a: usize, b: usize) -> usize {
        self.dot.mul(self.dot.inv(a), self.circ.mul(a, b))
    }

    /// True when `circ` equals `dot` as tables.
    pub fn is_trivial(&self) -> bool {
        self.dot.flat_table() == self.circ.flat_table()
    }

    /// True when `circ` equals the opposite of `dot` as tables.
    pub fn is_almost_trivial(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.circ.mul(a, b) == self.dot.mul(b, a)))
    }
}

/// The map `a ↦ γ_a`, materialised as one permutation per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaFunction {
    maps: Vec<Permutation>,
}

impl GammaFunction {
    pub fn get(&self, a: usize) -> &Permutation {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[Permutation] {
        &self.maps
    }

    #[inline]
    pub fn apply(&self, a: usize, x: usize) -> usize {
        self.maps[a].apply(x)
    }

    /// Checks the defining formula, that each `γ_a` is an automorphism of
    /// `(B,·)` and that `γ_{a∘b} = γ_a γ_b`.
    pub fn check(&self, b: &SkewBrace) -> Result<()> {
        let n = b.order();
        let dot = b.dot();
        for a in 0..n {
            for x in 0..n {
                if self.apply(a, x) != b.gamma_at(a, x) {
                    return Err(Error::Internal(format!("γ_{a}({x}) disagrees with a⁻¹·(a∘x)")));
                }
            }
            if !dot.is_automorphism(self.maps[a].image()) {
                return Err(Error::Internal(format!("γ_{a} is not an automorphism")));
            }
        }
        for a in 0..n {
            for c in 0..n {
                let ac = b.circ().mul(a, c);
                if self.maps[ac] != self.maps[a].compose(&self.maps[c]) {
                    return Err(Error::Internal(format!(
                        "γ_(a∘b) ≠ γ_a γ_b at ({a}, {c})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The gamma function of a brace. The invariants are verified; a failure
/// means the brace itself was inconsistent and aborts.
pub fn gamma(b: &SkewBrace) -> GammaFunction {
    let n = b.order();
    let maps = (0..n)
        .map(|a| Permutation::from_vec_unchecked((0..n).map(|x| b.gamma_at(a, x)).collect()))
        .collect();
    let g = GammaFunction { maps };
    if let Err(e) = g.check(b) {
        panic!("gamma function of a validated brace failed its invariants: {e}");
    }
    g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    /// `γ_a(x)` lies outside the set.
    Gamma,
    /// `a`, `x` are in the set but `a·x` is not.
    DotClosure,
}

/// Why a set fails to be a left ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FailingPair {
    pub a: usize,
    pub x: usize,
    pub kind: FailureKind,
}

impl FailingPair {
    /// Re-checks this pair against the brace: true iff it really shows that
    /// `members` is not a left ideal.
    pub fn holds(&self, b: &SkewBrace, members: &[usize]) -> bool {
        let inside = |y: usize| members.binary_search(&y).is_ok();
        let n = b.order();
        if self.a >= n || self.x >= n {
            return false;
        }
        match self.kind {
            FailureKind::Gamma => inside(self.x) && !inside(b.gamma_at(self.a, self.x)),
            FailureKind::DotClosure => {
                inside(self.a) && inside(self.x) && !inside(b.dot().mul(self.a, self.x))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeftIdealFlag {
    pub subgroup: Vec<usize>,
    pub is_left_ideal: bool,
    pub failing_pair: Option<FailingPair>,
}

fn gamma_failure(gamma: &GammaFunction, members: &[usize]) -> Option<FailingPair> {
    let n = gamma.maps.len();
    let mut inside = vec![false; n];
    for &m in members {
        inside[m] = true;
    }
    (0..n).find_map(|a| {
        members
            .iter()
            .find(|&&x| !inside[gamma.apply(a, x)])
            .map(|&x| FailingPair {
                a,
                x,
                kind: FailureKind::Gamma,
            })
    })
}

fn flag_from(
    b: &SkewBrace,
    members: Vec<usize>,
    failing_pair: Option<FailingPair>,
) -> LeftIdealFlag {
    let is_left_ideal = failing_pair.is_none();
    if is_left_ideal {
        assert!(
            b.circ().is_subgroup(&members),
            "left ideal {members:?} is not closed under ∘"
        );
    }
    LeftIdealFlag {
        subgroup: members,
        is_left_ideal,
        failing_pair,
    }
}

/// Decides whether a subgroup of `(B,·)` is a left ideal.
pub fn is_left_ideal(b: &SkewBrace, s: &Subgroup) -> Result<LeftIdealFlag> {
    if !b.dot().is_subgroup(s.members()) {
        return Err(Error::NotASubgroup(format!(
            "{:?} is not a subgroup of the additive group",
            s.members()
        )));
    }
    Ok(is_left_ideal_with(b, &gamma(b), s.members()))
}

/// Left-ideal test for an arbitrary set with a precomputed gamma function.
/// A set that is not `·`-closed yields a [`FailureKind::DotClosure`] pair.
pub fn is_left_ideal_with(b: &SkewBrace, gamma: &GammaFunction, members: &[usize]) -> LeftIdealFlag {
    let mut members = members.to_vec();
    members.sort_unstable();
    members.dedup();
    let dot = b.dot();
    let closure_failure = members.iter().find_map(|&a| {
        members
            .iter()
            .find(|&&x| members.binary_search(&dot.mul(a, x)).is_err())
            .map(|&x| FailingPair {
                a,
                x,
                kind: FailureKind::DotClosure,
            })
    });
    let failing = closure_failure.or_else(|| gamma_failure(gamma, &members));
    flag_from(b, members, failing)
}

/// Decides whether a subgroup of `(B,∘)` is a left ideal: first `·`-closure,
/// then stability under every `γ_a`.
pub fn is_left_ideal_circ(b: &SkewBrace, s: &Subgroup) -> Result<LeftIdealFlag> {
    if !b.circ().is_subgroup(s.members()) {
        return Err(Error::NotASubgroup(format!(
            "{:?} is not a subgroup of the multiplicative group",
            s.members()
        )));
    }
    Ok(is_left_ideal_with(b, &gamma(b), s.members()))
}

/// All left ideals, in the canonical subgroup order of `(B,·)`.
pub fn left_ideals(b: &SkewBrace) -> Vec<Subgroup> {
    let g = gamma(b);
    subgroups(b.dot())
        .into_iter()
        .filter(|s| gamma_failure(&g, s.members()).is_none())
        .collect()
}

fn order_pairs(b: &SkewBrace) -> Vec<(usize, usize)> {
    (0..b.order())
        .map(|a| (b.dot().element_order(a), b.circ().element_order(a)))
        .collect()
}

/// A bijection `φ` with `φ(0) = 0` preserving both operations, if any.
pub fn brace_isomorphic(x: &SkewBrace, y: &SkewBrace) -> Option<Vec<usize>> {
    if x.order() != y.order() {
        return None;
    }
    let (px, py) = (order_pairs(x), order_pairs(y));
    let mut sx = px.clone();
    let mut sy = py.clone();
    sx.sort_unstable();
    sy.sort_unstable();
    if sx != sy {
        return None;
    }
    let gens = x.dot().generating_set();
    let n = x.order();
    let mut found = None;
    crate::group::morphism_search(
        x.dot(),
        y.dot(),
        &gens,
        &|k, t| px[gens[k]] == py[t],
        &mut |map| {
            let preserves_circ = (0..n)
                .all(|a| (0..n).all(|c| map[x.circ().mul(a, c)] == y.circ().mul(map[a], map[c])));
            if preserves_circ {
                found = Some(map);
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        },
    );
    found
}
