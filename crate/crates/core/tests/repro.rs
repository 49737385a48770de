mod common;

use castleqec::repro::{manifest, run_target, target, target_names, Source, Verdict};
use castleqec::{Error, GvStatus};
use common::budget;

#[test]
fn names_are_unique_and_resolvable() {
    let names = target_names();
    let mut sorted = names.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), names.len());
    for n in &names {
        assert_eq!(&target(n).unwrap().name, n);
    }
    assert!(matches!(target("nope"), Err(Error::UnknownTarget(_))));
}

#[test]
fn manifest_round_trips_through_json() {
    for t in manifest() {
        let text = serde_json::to_string(&t).unwrap();
        let back: castleqec::repro::Target = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}

#[test]
fn small_targets_pass() {
    for name in ["elliptic-gf4", "elliptic-gf9", "hyper-even", "hermitian-trace"] {
        let rep = run_target(&target(name).unwrap(), budget()).unwrap();
        assert!(rep.passed(), "{name}: {rep:#?}");
        assert!(!rep.rows.is_empty());
    }
}

#[test]
fn norm_trace_tag_is_reported() {
    let rep = run_target(&target("normtrace").unwrap(), budget()).unwrap();
    assert!(!rep.passed());
    let bad: Vec<_> = rep.rows.iter().filter(|r| !r.verdict.ok()).collect();
    assert_eq!(bad.len(), 1);
    let r = bad[0];
    assert_eq!(r.verdict, Verdict::TagMismatch);
    assert_eq!(r.source, Source::Euclid { i: 3 });
    assert_eq!(r.gv_expected, GvStatus::Meets);
    let p = r.computed.as_ref().unwrap();
    assert_eq!((p.n, p.k, p.d), (32, 26, 3));
    assert!(rep.checks.iter().all(|c| c.pass));
}

#[test]
fn tight_budget_never_overstates() {
    let rep = run_target(&target("hyper-even").unwrap(), 16).unwrap();
    for r in &rep.rows {
        if let Some(p) = &r.computed {
            assert!(p.d <= 4, "{}", r.computed_text);
        }
        assert_ne!(r.verdict, Verdict::Mismatch, "{}", r.expected);
    }
}
