//! Symbolic descriptors of the Hopf–Galois structure attached to a skew
//! brace, and their JSON and DOT renderings.
//!
//! No field elements are ever built. A structure is described by its type
//! (the additive group), the Galois group it acts on (the multiplicative
//! group), the orbits of the gamma action on the index set (these are the
//! blocks of coefficients forced equal up to Galois action), and the
//! subgroup lattice of the multiplicative group with each subgroup flagged
//! according to whether its fixed field lies in the image of the
//! correspondence (left ideal) or not.

mod cache;

use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::brace::{gamma, is_left_ideal_with, FailingPair, SkewBrace};
use crate::error::{Error, Result};
use crate::group::{describe, subgroups};

pub use cache::{CensusCache, CACHE_DIR_ENV, DEFAULT_CACHE_DIR};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Header placed on human-readable reports.
pub const REPRESENTATION_NOTE: &str = "Hopf-Galois structures are shown by combinatorial invariants only \
(type, Galois group, gamma orbits, image lattice); the action on field elements is not represented.";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeEntry {
    pub members: Vec<usize>,
    pub is_left_ideal: bool,
    pub failing_pair: Option<FailingPair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HGDescriptor {
    pub order: usize,
    /// Isomorphism class of the additive group.
    pub type_label: String,
    /// Isomorphism class of the multiplicative group.
    pub galois_label: String,
    pub gamma_orbits: Vec<Vec<usize>>,
    /// Subgroups of the multiplicative group in canonical order.
    pub lattice: Vec<LatticeEntry>,
    pub bijective: bool,
    /// Multiplicative table equals the additive one.
    pub classical: bool,
    /// Multiplicative table equals the opposite of the additive one.
    pub canonical_nonclassical: bool,
}

impl HGDescriptor {
    pub fn left_ideal_count(&self) -> usize {
        self.lattice.iter().filter(|e| e.is_left_ideal).count()
    }
}


/// Orbits of the group generated by all `γ_a`, each sorted, listed by least
/// element.
pub fn gamma_orbits(b: &SkewBrace) -> Vec<Vec<usize>> {
    let n = b.order();
    let g = gamma(b);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut y = x;
        while parent[y] != root {
            let next = parent[y];
            parent[y] = root;
            y = next;
        }
        root
    }
    for a in 0..n {
        for x in 0..n {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, g.apply(a, x)));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        if slot[r] == usize::MAX {
            slot[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[r]].push(x);
    }
    orbits
}

pub fn hg_descriptor(b: &SkewBrace) -> HGDescriptor {
    let g = gamma(b);
    let lattice: Vec<LatticeEntry> = subgroups(b.circ())
        .into_iter()
        .map(|s| {
            let flag = is_left_ideal_with(b, &g, s.members());
            LatticeEntry {
                members: flag.subgroup,
                is_left_ideal: flag.is_left_ideal,
                failing_pair: flag.failing_pair,
            }
        })
        .collect();
    let bijective = lattice.iter().all(|e| e.is_left_ideal);
    HGDescriptor {
        order: b.order(),
        type_label: describe(b.dot()),
        galois_label: describe(b.circ()),
        gamma_orbits: gamma_orbits(b),
        lattice,
        bijective,
        classical: b.is_trivial(),
        canonical_nonclassical: b.is_almost_trivial(),
    }
}

/// Hasse diagram of the multiplicative subgroup lattice in DOT. Left ideals
/// are drawn solid, the rest dashed.
pub fn render_dot(d: &HGDescriptor) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph lattice {{");
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(
        out,
        "  label=\"type {} / Galois group {}\";",
        d.type_label, d.galois_label
    );
    let _ = writeln!(out, "  node [shape=box];");
    for (k, entry) in d.lattice.iter().enumerate() {
        let members = entry
            .members
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",");
        let style = if entry.is_left_ideal { "solid" } else { "dashed" };
        let _ = writeln!(
            out,
            "  s{k} [label=\"order {}\\n{{{members}}}\", style={style}];",
            entry.members.len()
        );
    }
    for (lo, hi) in covering_pairs(&d.lattice) {
        let _ = writeln!(out, "  s{lo} -> s{hi};");
    }
    let _ = writeln!(out, "}}");
    out
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.len() < b.len() && a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Pairs `(i, j)` with `lattice[i] ⊂ lattice[j]` and nothing strictly
/// between them.
pub fn covering_pairs(lattice: &[LatticeEntry]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for (i, lo) in lattice.iter().enumerate() {
        for (j, hi) in lattice.iter().enumerate() {
            if subset(&lo.members, &hi.members)
                && !lattice
                    .iter()
                    .any(|mid| subset(&lo.members, &mid.members) && subset(&mid.members, &hi.members))
            {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool_version: String,
    /// SHA-256 of the canonical JSON of the input brace.
    pub input_sha256: String,
    /// Wall time of the computation. Left out unless asked for, so that
    /// reports are reproducible byte for byte.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub note: String,
    pub descriptor: HGDescriptor,
    pub provenance: Provenance,
}

impl ReportBundle {
    pub fn new(b: &SkewBrace) -> Self {
        ReportBundle {
            note: REPRESENTATION_NOTE.to_string(),
            descriptor: hg_descriptor(b),
            provenance: Provenance {
                tool_version: TOOL_VERSION.to_string(),
                input_sha256: sha256_hex(to_canonical_json(b).as_bytes()),
                elapsed_ms: None,
            },
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Compact JSON with object keys sorted, followed by a newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("report types serialise");
    let mut text = serde_json::to_string(&value).expect("json values serialise");
    text.push('\n');
    text
}

pub fn serialize<T: Serialize>(value: &T) -> Vec<u8> {
    to_canonical_json(value).into_bytes()
}

/// Parses JSON, reporting schema violations with the JSON path where they
/// occurred. Braces and groups are validated while loading.
pub fn parse<T: DeserializeOwned>(bytes: &[u8]) -> Result<T> {
    let mut de = serde_json::Deserializer::from_slice(bytes);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| Error::Json {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    de.end().map_err(|e| Error::Json {
        path: ".".into(),
        message: e.to_string(),
    })?;
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::{almost_trivial, trivial};
    use crate::group::{conjugacy_classes, FiniteGroup};

    #[test]
    fn trivial_brace_descriptor() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let d = hg_descriptor(&trivial(&g));
        assert!(d.classical && d.bijective);
        assert_eq!(d.gamma_orbits.len(), 6);
        assert_eq!(d.type_label, "C6");
    }

    #[test]
    fn almost_trivial_q8_orbits_are_conjugacy_classes() {
        let q = FiniteGroup::quaternion8();
        let d = hg_descriptor(&almost_trivial(&q));
        assert!(d.bijective);
        assert!(d.canonical_nonclassical && !d.classical);
        assert_eq!(d.gamma_orbits, conjugacy_classes(&q));
        assert_eq!(d.gamma_orbits.len(), 5);
    }

    #[test]
    fn dot_for_trivial_c2() {
        let d = hg_descriptor(&trivial(&FiniteGroup::cyclic(2).unwrap()));
        let dot = render_dot(&d);
        assert_eq!(dot.matches("style=solid").count(), 2);
        assert_eq!(dot.matches("style=dashed").count(), 0);
        assert_eq!(dot.matches("->").count(), 1);
    }

    #[test]
    fn covering_relation_is_transitive_reduction() {
        let d = hg_descriptor(&trivial(&FiniteGroup::cyclic(8).unwrap()));
        // chain 1 < 2 < 4 < 8
        assert_eq!(covering_pairs(&d.lattice), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn parse_reports_json_path() {
        let bad = br#"{"order":2,"label":"x","table":[[0,1],[1,"a"]]}"#;
        match parse::<FiniteGroup>(bad) {
            Err(Error::Json { path, .. }) => assert!(path.contains("table"), "{path}"),
            other => panic!("unexpected {other:?}"),
        }
        let bundle = ReportBundle::new(&trivial(&FiniteGroup::cyclic(3).unwrap()));
        let back: ReportBundle = parse(&serialize(&bundle)).unwrap();
        assert_eq!(back, bundle);
    }
}
