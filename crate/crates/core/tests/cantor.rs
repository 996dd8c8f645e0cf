mod common;

use vcoalg::caps::Caps;
use vcoalg::gen::small_family;
use vcoalg::hausdorff::{cantor_check, hausdorff_object, NonEmbedding};
use vcoalg::Error;
use vcoalg::{Quantale, TableQuantale, VCategory};

/// Brute force: `φ` is injective and `Ha(A, B) = a(φ A, φ B)` throughout.
fn is_embedding(x: &VCategory<TableQuantale>, sets: &[u64], phi: &[usize]) -> bool {
    let injective = (0..phi.len()).all(|i| (0..i).all(|j| phi[i] != phi[j]));
    injective
        && (0..sets.len())
            .all(|i| (0..sets.len()).all(|j| common::hausdorff(x, sets[i], sets[j]) == x.a(phi[i], phi[j])))
}

#[test]
fn no_embedding_exhaustive() {
    let caps = Caps::default();
    let mut total = 0usize;
    for x in small_family(&caps).unwrap() {
        if x.is_empty() {
            continue;
        }
        let h = hausdorff_object(&x, &caps).unwrap();
        let sets: Vec<u64> = h.sets.iter().map(|s| s.0).collect();
        for phi in common::maps(h.len(), x.len()) {
            assert!(!is_embedding(&x, &sets, &phi));
            let v = cantor_check(&h, &phi, &caps).unwrap();
            assert!(!matches!(v.verdict, NonEmbedding::Contradiction { .. }));
            assert!(v.witness_holds(&h), "{v:?}");
            total += 1;
        }
    }
    assert!(total > 10_000, "{total}");
}

#[test]
fn pigeonhole_on_two_chain() {
    let caps = Caps::default();
    let q = TableQuantale::boolean();
    let c2 = VCategory::from_fn(q.clone(), vec!["0".into(), "1".into()], |i, j| {
        if i <= j {
            q.top()
        } else {
            q.bottom()
        }
    })
    .unwrap();
    let h = hausdorff_object(&c2, &caps).unwrap();
    assert_eq!(h.len(), 3);
    let v = cantor_check(&h, &[0, 1, 0], &caps).unwrap();
    assert!(matches!(v.verdict, NonEmbedding::NotInjective { .. }));
}

#[test]
fn trivial_quantale_rejected() {
    let caps = Caps::default();
    let x = VCategory::point(TableQuantale::trivial());
    let h = hausdorff_object(&x, &caps).unwrap();
    let phi = vec![0; h.len()];
    assert!(matches!(cantor_check(&h, &phi, &caps), Err(Error::TrivialQuantale)));
}
