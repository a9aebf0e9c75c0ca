use artinv_core::fixtures;

#[test]
fn builtin_suite_passes() {
    let outcomes = fixtures::run_suite();
    let mut failed = Vec::new();
    for o in &outcomes {
        println!(
            "{:<5} {:<22} {:<60} expected {:<20} got {}",
            if o.passed { "ok" } else { "FAIL" },
            o.fixture,
            o.claim,
            o.expected,
            o.actual
        );
        if !o.passed {
            failed.push(format!("{}: {}", o.fixture, o.claim));
        }
    }
    assert!(failed.is_empty(), "failing expectations: {failed:#?}");
}
