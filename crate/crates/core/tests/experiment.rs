use std::time::Instant;

use lievar::experiment::{bundled, find, select, Certification, Registry, Tier};

#[test]
fn bundled_manifests_parse_and_are_unique() {
    let all = bundled();
    let mut ids: Vec<&str> = all.iter().map(|m| m.id.as_str()).collect();
    ids.sort_unstable();
    let n = ids.len();
    ids.dedup();
    assert_eq!(ids.len(), n);
    let reg = Registry::default();
    for m in &all {
        reg.get(m.kind().unwrap()).unwrap();
    }
    assert!(find("thm-2.1-n1-p3").is_ok());
    assert!(find("no-such-manifest").is_err());
}

#[test]
fn quick_tier_passes() {
    let reg = Registry::default();
    for m in select(false) {
        assert_eq!(m.tier, Tier::Quick);
        let t = Instant::now();
        let r = reg.run(&m).unwrap();
        println!("{} {} {} {:?}", m.id, r.pass, r.certification, t.elapsed());
        assert!(r.ok(), "{}: {}", m.id, serde_json::to_string(&r).unwrap());
    }
}

#[test]
fn quoted_verify_examples() {
    let reg = Registry::default();
    let r = reg.run(&find("thm-2.1-n1-p3").unwrap()).unwrap();
    assert!(r.pass);
    assert_eq!(r.observed["exponent"], 3);
    assert_eq!(r.certification, Certification::Full);
    let r = reg.run(&find("lem-1.3-char5").unwrap()).unwrap();
    assert!(r.pass);
    assert!(r.degrees[2].size.is_trivial());
    let r = reg.run(&find("prop-2.5-n2").unwrap()).unwrap();
    assert!(r.pass);
    assert_eq!(r.observed["equal"], true);
}
