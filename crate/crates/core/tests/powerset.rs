mod common;

use vcoalg::caps::Caps;
use vcoalg::gen::{all_vcategories, small_family};
use vcoalg::hausdorff::{generic_powerset_lift, hausdorff_object, powerset_lift};
use vcoalg::{Dist, Lawvere, Quantale, TableQuantale, VCategory};

#[test]
fn generator_counts_match_brute_force() {
    let caps = Caps::default();
    for q in [TableQuantale::boolean(), TableQuantale::godel(3)] {
        for n in 0..=3 {
            let lib: Vec<Vec<_>> = all_vcategories(&q, n, &caps).unwrap().iter().map(|x| x.flat().to_vec()).collect();
            let mut brute = common::structures(&q, n);
            let mut sorted = lib.clone();
            sorted.sort();
            brute.sort();
            assert_eq!(sorted, brute, "{} n={n}", q.name());
        }
    }
}

#[test]
fn generic_lift_equals_hausdorff_lift() {
    let caps = Caps::default();
    let family = small_family(&caps).unwrap();
    assert!(family.len() >= 200);
    for x in &family {
        let generic = generic_powerset_lift(x, &caps).unwrap();
        let direct = powerset_lift(x, &caps).unwrap();
        assert_eq!(generic.flat(), direct.flat());
        let n = 1u64 << x.len();
        for a in 0..n {
            for b in 0..n {
                assert_eq!(direct.a(a as usize, b as usize), common::hausdorff(x, a, b));
            }
        }
    }
}

#[test]
fn hausdorff_object_matches_brute_force() {
    let caps = Caps::default();
    for x in small_family(&caps).unwrap() {
        let h = hausdorff_object(&x, &caps).unwrap();
        let mut sets: Vec<u64> = h.sets.iter().map(|s| s.0).collect();
        sets.sort_unstable();
        assert_eq!(sets, common::increasing_sets(&x));
        for i in 0..h.len() {
            for j in 0..h.len() {
                assert_eq!(h.cat.a(i, j), common::hausdorff(&x, h.sets[i].0, h.sets[j].0));
            }
        }
    }
}

#[test]
fn lawvere_values() {
    // points 0, 1, 3 on the line
    let pts = [0i64, 1, 3];
    let x = VCategory::from_fn(Lawvere, vec!["0".into(), "1".into(), "3".into()], |i, j| {
        Dist::int((pts[i] - pts[j]).abs())
    })
    .unwrap();
    let (a, b) = (0b011, 0b100);
    assert_eq!(common::hausdorff(&x, a, b), Dist::int(2));
    assert_eq!(common::hausdorff(&x, b, a), Dist::int(3));
    assert_eq!(common::hausdorff(&x, a, 0), Lawvere.top());
}
