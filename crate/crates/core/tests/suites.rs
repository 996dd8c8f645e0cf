use vcoalg::caps::Caps;
use vcoalg::par::Mode;
use vcoalg::suites::{run_all, run_suite, SUITES};

#[test]
fn every_suite_passes() {
    let caps = Caps::default();
    for r in run_all(200, 5, Mode::Parallel, &caps) {
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.cases, 200);
    }
}

#[test]
fn seed_fixes_results() {
    let caps = Caps::default();
    for s in SUITES {
        let a = run_suite(s, 40, 11, Mode::Sequential, &caps).unwrap();
        let b = run_suite(s, 40, 11, Mode::Parallel, &caps).unwrap();
        assert_eq!(a, b);
    }
}
