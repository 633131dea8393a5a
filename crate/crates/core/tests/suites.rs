use hodograph_core::verifier::run_suite;

fn assert_suite(name: &str) {
    let reports = run_suite(name).expect("suite runs");
    assert!(!reports.is_empty());
    for r in &reports {
        assert!(r.pass, "{}", r.summary());
        assert!(r.skipped_points as f64 <= 0.05 * r.total_points as f64, "{}", r.summary());
    }
}

#[test]
fn specfun_suite() {
    assert_suite("specfun");
}

#[test]
fn momentum_suite() {
    assert_suite("momentum");
}

#[test]
fn map_suite() {
    assert_suite("map");
}

#[test]
fn potentials_suite() {
    assert_suite("potentials");
}

#[test]
fn psi_suite() {
    assert_suite("psi");
}
