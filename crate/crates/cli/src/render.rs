use std::fmt::Write as _;

use braceforge::brace::{gamma, FailureKind, SkewBrace};
use braceforge::classify::{TheoremReport, Verdict, Witness};
use braceforge::enumerate::{mult_type_census, type_label, BraceEnumeration};
use braceforge::group::{CensusEntry, FiniteGroup};
use braceforge::report::{covering_pairs, ReportBundle};

fn set(members: &[usize]) -> String {
    let inner = members.iter().map(usize::to_string).collect::<Vec<_>>().join(", ");
    format!("{{{inner}}}")
}

fn rows(g: &FiniteGroup) -> String {
    let width = g.order().saturating_sub(1).to_string().len();
    let mut out = String::new();
    for row in g.rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
        let _ = writeln!(out, "  {}", cells.join(" "));
    }
    out
}

pub fn group_list(entries: &[CensusEntry]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:>5}  {:<10} {:<8} cyclic", "order", "label", "abelian");
    for e in entries {
        let _ = writeln!(
            out,
            "{:>5}  {:<10} {:<8} {}",
            e.order,
            e.label,
            e.group.is_abelian(),
            e.group.is_cyclic()
        );
    }
    out
}

pub fn group(g: &FiniteGroup) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} (census type {}), order {}", g.label(), type_label(g), g.order());
    let _ = writeln!(out, "element orders: {:?}", g.element_orders());
    let _ = writeln!(out, "centre: {}", set(&g.center()));
    let _ = writeln!(out, "table:");
    out.push_str(&rows(g));
    out
}

pub fn enumeration(e: &BraceEnumeration) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "additive group {}: {} operations",
        e.additive.label(),
        e.len()
    );
    for (label, count) in mult_type_census(e) {
        let _ = writeln!(out, "  multiplicative {label}: {count}");
    }
    if !e.iso_classes.is_empty() {
        let _ = writeln!(out, "isomorphism classes: {}", e.iso_classes.len());
        for &k in &e.iso_classes {
            let _ = writeln!(
                out,
                "  {} (multiplicative {})",
                e.operations[k].label(),
                type_label(e.operations[k].circ())
            );
        }
    }
    out
}

fn witness(w: &Witness) -> String {
    let mut out = String::new();
    let f = w.failing;
    let _ = writeln!(
        out,
        "witness brace {} (multiplicative {})",
        w.brace.label(),
        type_label(w.brace.circ())
    );
    let _ = writeln!(out, "  subgroup of (N,∘) that is not a left ideal: {}", set(&w.subgroup));
    match f.kind {
        FailureKind::Gamma => {
            let _ = writeln!(
                out,
                "  gamma_{}({}) = {} lies outside it",
                f.a,
                f.x,
                w.brace.gamma_at(f.a, f.x)
            );
        }
        FailureKind::DotClosure => {
            let _ = writeln!(
                out,
                "  {} · {} = {} lies outside it",
                f.a,
                f.x,
                w.brace.dot().mul(f.a, f.x)
            );
        }
    }
    out
}

pub fn verdict(v: &Verdict) -> String {
    let mut out = String::new();
    let word = if v.good { "good" } else { "bad" };
    let how = if v.short_circuited { "stopped early" } else { "full sweep" };
    let _ = writeln!(
        out,
        "{}: {word} ({} braces examined, {how})",
        v.group_label, v.braces_examined
    );
    if let Some(w) = &v.witness {
        out.push_str(&witness(w));
    }
    out
}

pub fn theorem(r: &TheoremReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:>5}  {:<10} {:<10} {:<10}", "order", "group", "predicted", "computed");
    for row in &r.rows {
        let mark = if row.predicted == row.computed { "" } else { "  MISMATCH" };
        let _ = writeln!(
            out,
            "{:>5}  {:<10} {:<10} {:<10}{mark}",
            row.order,
            row.label,
            if row.predicted { "good" } else { "bad" },
            if row.computed { "good" } else { "bad" }
        );
    }
    let _ = writeln!(out, "good groups: {}", r.good_labels().join(", "));
    let _ = writeln!(out, "all match: {}", r.all_match);
    out
}

pub fn example(b: &SkewBrace, w: Option<&Witness>) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}: order {}, additive {}, multiplicative {}",
        b.label(),
        b.order(),
        type_label(b.dot()),
        type_label(b.circ())
    );
    let _ = writeln!(out, "gamma table (row a lists gamma_a(0), gamma_a(1), ...):");
    for (a, map) in gamma(b).maps().iter().enumerate() {
        let images: Vec<String> = (0..b.order()).map(|x| map.apply(x).to_string()).collect();
        let _ = writeln!(out, "  {a:>3}: {}", images.join(" "));
    }
    match w {
        Some(w) => out.push_str(&witness(w)),
        None => {
            let _ = writeln!(out, "every subgroup of (N,∘) is a left ideal");
        }
    }
    out
}

pub fn bundle(r: &ReportBundle) -> String {
    let d = &r.descriptor;
    let mut out = String::new();
    let _ = writeln!(out, "note: {}", r.note);
    let _ = writeln!(out, "type {}, Galois group {}, order {}", d.type_label, d.galois_label, d.order);
    let _ = writeln!(
        out,
        "classical: {}, canonical nonclassical: {}, correspondence bijective: {}",
        d.classical, d.canonical_nonclassical, d.bijective
    );
    let orbits: Vec<String> = d.gamma_orbits.iter().map(|o| set(o)).collect();
    let _ = writeln!(out, "gamma orbits: {}", orbits.join(" "));
    let _ = writeln!(
        out,
        "subgroups of the Galois group: {} ({} in the image)",
        d.lattice.len(),
        d.left_ideal_count()
    );
    for entry in &d.lattice {
        let status = if entry.is_left_ideal { "in image" } else { "not in image" };
        let _ = writeln!(out, "  {:<24} {status}", set(&entry.members));
    }
    let _ = writeln!(out, "covering pairs: {}", covering_pairs(&d.lattice).len());
    let _ = writeln!(out, "input sha256: {}", r.provenance.input_sha256);
    out
}
