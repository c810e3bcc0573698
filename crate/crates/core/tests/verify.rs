//! Property suites through the public runner.

use compasskit::verify::{run_suite, suites, DEFAULT_SEED};

#[test]
fn all_suites_pass_with_the_default_seed() {
    for s in suites() {
        let report = run_suite(s.name, DEFAULT_SEED, 1_000).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.properties.iter().all(|p| p.samples > 0));
    }
}

#[test]
fn angle_sum_seed_7() {
    let r = run_suite("angle-sum", 7, 2_000).unwrap();
    assert!(r.passed());
    assert!(r.properties[0].max_residual < 1e-9);
    assert_eq!(r.properties[0].samples, 2_000);
}

#[test]
fn macro_suite_covers_the_library() {
    let r = run_suite("macros", 3, 400).unwrap();
    assert_eq!(r.properties.len(), compasskit::construct::library().len());
    assert!(r.passed(), "{r}");
}

#[test]
fn reports_are_reproducible() {
    for name in ["power-of-point", "interval", "macros"] {
        let a = run_suite(name, 11, 300).unwrap();
        let b = run_suite(name, 11, 300).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), b.to_string());
    }
}

#[test]
fn suite_names_are_unique() {
    let mut names: Vec<&str> = suites().iter().map(|s| s.name).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), suites().len());
}
