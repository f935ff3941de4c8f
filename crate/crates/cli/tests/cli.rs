use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use braceforge::brace::validate;
use braceforge::classify::{TheoremReport, Verdict};
use braceforge::enumerate::BraceEnumeration;
use braceforge::group::FiniteGroup;
use braceforge::report::{parse, ReportBundle};
use serde_json::Value;

fn braceforge(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braceforge"))
        .arg("--cache-dir")
        .arg(cache)
        .args(args)
        .env_remove("BRACEFORGE_CACHE_DIR")
        .env_remove("BRACEFORGE_WORKERS")
        .output()
        .expect("binary runs")
}

fn ok(out: &Output) -> &[u8] {
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    &out.stdout
}

/// A C6 table relabelled so that it no longer satisfies the brace relation
/// over additive C6.
fn incompatible_c6_brace_json() -> String {
    let c6 = FiniteGroup::cyclic(6).unwrap();
    for shift in 1..6 {
        let map: Vec<usize> = (0..6)
            .map(|x| if x == 0 { 0 } else { 1 + (x - 1 + shift) % 5 })
            .collect();
        let circ = c6.transport(&map, "circ").unwrap();
        if validate(&c6, &circ).is_err() {
            return serde_json::json!({
                "order": 6,
                "label": "corrupt",
                "dot": c6.rows(),
                "circ": circ.rows(),
            })
            .to_string();
        }
    }
    unreachable!("some relabelling of C6 is incompatible")
}

#[test]
fn verify_theorem_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let out = braceforge(dir.path(), &["verify", "theorem", "--max-order", "15", "--json"]);
    let report: TheoremReport = parse(ok(&out)).unwrap();
    assert!(report.all_match);
    assert_eq!(report.rows.len(), 28);
}

#[test]
fn classify_q8_reports_a_replayable_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = braceforge(dir.path(), &["classify", "Q8", "--json"]);
    let verdict: Verdict = parse(ok(&out)).unwrap();
    assert!(!verdict.good);
    verdict.witness.unwrap().replay().unwrap();
    let text = braceforge(dir.path(), &["classify", "C9"]);
    assert!(String::from_utf8_lossy(ok(&text)).contains("C9: good"));
}

#[test]
fn brace_check_rejects_corrupt_file_with_triple() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corrupt.json");
    std::fs::write(&path, incompatible_c6_brace_json()).unwrap();
    let out = braceforge(dir.path(), &["brace", "check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("brace relation fails at (a, b, c)"), "{stderr}");
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = braceforge(dir.path(), &["classify", "NoSuchGroup"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("available:") && stderr.contains("Dic3"), "{stderr}");
    assert_eq!(braceforge(dir.path(), &[]).status.code(), Some(2));
    assert_eq!(braceforge(dir.path(), &["verify", "theorem", "--max-order", "16"]).status.code(), Some(2));
    assert_eq!(braceforge(dir.path(), &["example", "pq", "--p", "5", "--q", "3"]).status.code(), Some(2));
}

#[test]
fn group_commands() {
    let dir = tempfile::tempdir().unwrap();
    let list: Value = serde_json::from_slice(ok(&braceforge(dir.path(), &["group", "list", "--json"]))).unwrap();
    assert_eq!(list.as_array().unwrap().len(), 28);
    let shown = braceforge(dir.path(), &["group", "show", "q8", "--json"]);
    let q8: FiniteGroup = parse(ok(&shown)).unwrap();
    assert_eq!(q8.order(), 8);
    let file = dir.path().join("q8.json");
    std::fs::write(&file, &shown.stdout).unwrap();
    let again = braceforge(dir.path(), &["group", "show", file.to_str().unwrap(), "--json"]);
    assert_eq!(ok(&again), shown.stdout.as_slice());
}

#[test]
fn brace_enumerate_klein_four() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("v4.json");
    let out = braceforge(
        dir.path(),
        &["brace", "enumerate", "--additive", "C2xC2", "--up-to-iso", "--json", "--out", file.to_str().unwrap()],
    );
    let e: BraceEnumeration = parse(ok(&out)).unwrap();
    assert_eq!(e.len(), 4);
    assert_eq!(e.iso_classes.len(), 2);
    assert_eq!(std::fs::read(&file).unwrap(), out.stdout);
}

#[test]
fn example_then_report() {
    let dir = tempfile::tempdir().unwrap();
    let brace = dir.path().join("q8.json");
    let dot = dir.path().join("q8.dot");
    let ex = braceforge(dir.path(), &["example", "q8", "--json", "--out", brace.to_str().unwrap()]);
    let ex: Value = serde_json::from_slice(ok(&ex)).unwrap();
    assert_eq!(ex["circ_type"], "D8");
    assert!(ex["witness"].is_object());
    let check = braceforge(dir.path(), &["brace", "check", brace.to_str().unwrap(), "--json"]);
    let check: Value = serde_json::from_slice(ok(&check)).unwrap();
    assert_eq!(check["valid"], true);
    let out = braceforge(
        dir.path(),
        &["hg", "report", brace.to_str().unwrap(), "--json", "--dot", dot.to_str().unwrap()],
    );
    let bundle: ReportBundle = parse(ok(&out)).unwrap();
    assert!(!bundle.descriptor.bijective);
    assert_eq!(bundle.descriptor.galois_label, "D8");
    let dot = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(dot.matches("style=").count(), 10);
    assert!(dot.contains("style=dashed"));
    let human = braceforge(dir.path(), &["hg", "report", brace.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(ok(&human)).starts_with("note: "));
    for args in [
        vec!["example", "c2cubed"],
        vec!["example", "cn-even", "--n", "6"],
        vec!["example", "pq", "--p", "7", "--q", "3", "--kappa", "4"],
        vec!["example", "p-odd", "--p", "3", "--n", "2", "--m", "1"],
        vec!["example", "order4"],
    ] {
        ok(&braceforge(dir.path(), &args));
    }
}

#[test]
fn warm_cache_is_at_least_five_times_faster() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "theorem", "--max-order", "12", "--json"];
    let timed = || {
        let start = Instant::now();
        let out = braceforge(dir.path(), &args);
        (start.elapsed(), out)
    };
    let (cold, first) = timed();
    let (warm, second) = (0..3)
        .map(|_| timed())
        .min_by_key(|(t, _)| *t)
        .unwrap();
    assert_eq!(ok(&first), ok(&second));
    let uncached = Command::new(env!("CARGO_BIN_EXE_braceforge"))
        .args(["--no-cache"])
        .args(args)
        .output()
        .unwrap();
    assert_eq!(ok(&uncached), ok(&first));
    assert!(cold >= warm * 5, "cold {cold:?}, warm {warm:?}");
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_braceforge"))
        .args(["classify", "C4"])
        .env("BRACEFORGE_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    ok(&out);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 2);
}
