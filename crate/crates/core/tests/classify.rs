mod common;

use knotpos::classify::{batch, batch_item_json, classify_entry, fixture_corpus, ClassifyOptions, Source, VerdictKind};
use knotpos::input::parse_entry;
use serde_json::Value;

#[test]
fn corpus_expectations_hold() {
    for e in fixture_corpus() {
        let r = classify_entry(&e, &ClassifyOptions::default()).unwrap();
        for (k, c) in r.expected_check.iter().flatten() {
            assert!(c.ok, "{} {k}: expected {} got {:?}", e.name.as_deref().unwrap(), c.expected, c.actual);
        }
    }
}

#[test]
fn every_claim_is_tagged() {
    for e in fixture_corpus() {
        let v = serde_json::to_value(classify_entry(&e, &ClassifyOptions::default()).unwrap()).unwrap();
        for key in ["s", "twice_genus", "twice_genus4", "bounds"] {
            if !v[key].is_null() {
                assert!(v[key]["theorem"].is_string(), "{key} untagged");
            }
        }
        for verdict in v["verdicts"].as_array().unwrap() {
            assert!(verdict["theorem"].is_string());
        }
    }
}

#[test]
fn deterministic_bytes() {
    let e = parse_entry(r#"{"format":"braid","strands":3,"word":[1,1,1,2,2,2,-1],"name":"ap"}"#).unwrap();
    let a = serde_json::to_string(&classify_entry(&e, &ClassifyOptions::default()).unwrap()).unwrap();
    let b = serde_json::to_string(&classify_entry(&e, &ClassifyOptions::default()).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn cap_exceeded_entry_reports_bounds_only() {
    let e = parse_entry(r#"{"format":"braid","strands":3,"word":[1,1,-2,-1,-2,1,1,-2,-2,1,-2]}"#).unwrap();
    let r = classify_entry(&e, &ClassifyOptions::default()).unwrap();
    assert!(r.s.is_none());
    assert!(r.bounds.is_some());
    assert!(r.caveats.iter().any(|c| c.contains("cap")));
    assert!(r.has_verdict(VerdictKind::Undetermined));
}

#[test]
fn homogeneous_beyond_cap_is_certified() {
    let e = parse_entry(r#"{"format":"braid","strands":3,"word":[1,1,1,1,1,1,-2,-2,-2,-2,-2]}"#).unwrap();
    let r = classify_entry(&e, &ClassifyOptions::default()).unwrap();
    let s = r.s.unwrap();
    assert_eq!(s.source, Source::Certified);
    assert_eq!(s.value, 1); // T(2,6) # mirror T(2,5): 5 − 4
}

#[test]
fn batch_keeps_order() {
    let entries: Vec<Value> = fixture_corpus().iter().map(|e| serde_json::to_value(e).unwrap()).collect();
    let out = batch(&entries, &ClassifyOptions::default());
    assert_eq!(out.len(), entries.len());
    for (e, item) in entries.iter().zip(&out) {
        assert_eq!(batch_item_json(item)["name"], e["name"]);
    }
    assert!(batch(&[], &ClassifyOptions::default()).is_empty());
}

#[test]
fn oracle_option_adds_jones() {
    let e = parse_entry(r#"{"format":"braid","strands":2,"word":[1,1,1]}"#).unwrap();
    let opts = ClassifyOptions { oracle: true, ..Default::default() };
    let r = classify_entry(&e, &opts).unwrap();
    assert_eq!(r.jones_check.unwrap().jones, "t + t^3 - t^4");
}
