//! The catalogue of checked identities must stay in sync with the checks
//! that a full run actually emits, and with the text artifact in docs/.

use std::collections::BTreeSet;

use k3fock::suites::{catalogue_text, run_suite, SuiteConfig, CATALOGUE};

#[test]
fn every_catalogue_entry_has_an_implementing_check() {
    // a weight-0 run is cheap and still emits every check id (skipped checks
    // included), so it exposes the full anchor set
    let cfg = SuiteConfig { n_max: 0, ..SuiteConfig::default() };
    let report = run_suite(&cfg).expect("suite run");
    let emitted: BTreeSet<&str> = report.checks.iter().map(|c| c.eq_anchor.as_str()).collect();
    let registered: BTreeSet<&str> = CATALOGUE.iter().map(|(a, _, _)| *a).collect();
    let orphaned: Vec<&&str> = registered.difference(&emitted).collect();
    assert!(orphaned.is_empty(), "catalogue entries with no implementing check: {orphaned:?}");
    let unregistered: Vec<&&str> = emitted.difference(&registered).collect();
    assert!(unregistered.is_empty(), "checks with unregistered anchors: {unregistered:?}");
}

#[test]
fn each_check_id_maps_to_one_anchor() {
    let cfg = SuiteConfig { n_max: 0, ..SuiteConfig::default() };
    let report = run_suite(&cfg).expect("suite run");
    let mut seen: std::collections::BTreeMap<&str, &str> = Default::default();
    for c in &report.checks {
        if let Some(prev) = seen.insert(c.id.as_str(), c.eq_anchor.as_str()) {
            assert_eq!(prev, c.eq_anchor, "check {} maps to two anchors", c.id);
        }
    }
}

#[test]
fn catalogue_artifact_matches() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/catalogue.txt");
    let on_disk = std::fs::read_to_string(path).expect("docs/catalogue.txt");
    assert_eq!(on_disk, catalogue_text(), "regenerate docs/catalogue.txt with the catalogue subcommand");
}
