mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vcoalg::caps::Caps;
use vcoalg::gen::random_vcategory;
use vcoalg::hausdorff::{hausdorff_object, hausdorff_value, up_closure, Subset};
use vcoalg::{Dist, Elt, Lawvere, Quantale, TableQuantale};

fn dist() -> impl Strategy<Value = Dist> {
    prop_oneof![Just(Dist::Inf), (0i64..40, 1i64..5).prop_map(|(a, b)| Dist::ratio(a, b))]
}

proptest! {
    #[test]
    fn lawvere_adjunction(a in dist(), b in dist(), c in dist()) {
        let q = Lawvere;
        prop_assert_eq!(q.leq(q.tensor(a, b), c), q.leq(a, q.hom(b, c)));
        prop_assert_eq!(q.tensor(a, q.join(b, c)), q.join(q.tensor(a, b), q.tensor(a, c)));
    }

    #[test]
    fn lukasiewicz_adjunction(a in 0u16..5, b in 0u16..5, c in 0u16..5) {
        let q = TableQuantale::lukasiewicz(5);
        let (a, b, c) = (Elt(a), Elt(b), Elt(c));
        prop_assert_eq!(q.leq(q.tensor(a, b), c), q.leq(a, q.hom(b, c)));
        prop_assert_eq!(q.tensor(q.tensor(a, b), c), q.tensor(a, q.tensor(b, c)));
    }

    #[test]
    fn lawvere_hausdorff_matches_oracle(seed in any::<u64>(), n in 1usize..5, a in any::<u64>(), b in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_vcategory(&Lawvere, n, 0.6, &mut rng).unwrap();
        prop_assert!(x.is_valid());
        let (a, b) = (a & common::bits(n), b & common::bits(n));
        prop_assert_eq!(hausdorff_value(&x, Subset(a), Subset(b)), common::hausdorff(&x, a, b));
        prop_assert_eq!(up_closure(&x, Subset(a)).0, common::up(&x, a));
        let h = hausdorff_object(&x, &Caps::default()).unwrap();
        prop_assert!(h.cat.is_valid() && h.cat.is_separated());
        prop_assert_eq!(h.len(), common::increasing_sets(&x).len());
    }

    #[test]
    fn godel_structures_valid(seed in any::<u64>(), n in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = TableQuantale::godel(4);
        let x = random_vcategory(&q, n, 0.5, &mut rng).unwrap();
        prop_assert!(x.is_valid());
        let (s, _) = x.separated_reflection().unwrap();
        prop_assert!(s.is_separated() && s.len() <= n);
    }
}
