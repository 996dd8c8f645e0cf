use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vcoalg::caps::Caps;
use vcoalg::coalg::{
    behavior_maps, behavioral_distance, behavioral_distance_via_chain, distance_tables, final_chain, Coalgebra, FTerm,
    FunctorExpr,
};
use vcoalg::gen::{hom_triple, random_coalgebra, random_vcategory, Sample};
use vcoalg::{Dist, Lawvere, Quantale, TableQuantale, VCategory};

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Labels 0, 1/2, 1, 3 on the line; `x` loops at 0, `y → w → z` and `z`
/// loops at 3.
fn worked_example() -> Coalgebra<Lawvere> {
    let pts = [Dist::int(0), Dist::ratio(1, 2), Dist::int(1), Dist::int(3)];
    let labels = VCategory::from_fn(Lawvere, names(&["0", "1/2", "1", "3"]), |i, j| {
        let (a, b) = (pts[i].max(pts[j]), pts[i].min(pts[j]));
        match (a, b) {
            (Dist::Fin(a), Dist::Fin(b)) => Dist::Fin(a - b),
            _ => unreachable!(),
        }
    })
    .unwrap();
    let f = FunctorExpr::Prod(vec![FunctorExpr::Const(labels), FunctorExpr::h_id()]);
    let x = VCategory::discrete(Lawvere, names(&["x", "y", "w", "z"])).unwrap();
    let step = |l: usize, s: usize| FTerm::Tuple(vec![FTerm::Point(l), FTerm::set(vec![FTerm::State(s)])]);
    Coalgebra::new(f, x, &[step(0, 0), step(1, 2), step(2, 3), step(3, 3)], &Caps::default()).unwrap()
}

#[test]
fn worked_example_table() {
    let c = worked_example();
    let h = Dist::ratio;
    let i = Dist::int;
    // pairs xy, xw, xz, yw, yz, wz at depths 0..=4; symmetric
    let expect = [
        [i(0), i(0), i(0), i(0), i(0), i(0)],
        [h(1, 2), i(1), i(3), h(1, 2), h(5, 2), i(2)],
        [i(1), i(3), i(3), i(2), h(5, 2), i(2)],
        [i(3), i(3), i(3), i(2), h(5, 2), i(2)],
        [i(3), i(3), i(3), i(2), h(5, 2), i(2)],
    ];
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let tables = distance_tables(&c, 4);
    for (k, row) in expect.iter().enumerate() {
        for (p, &(a, b)) in pairs.iter().enumerate() {
            assert_eq!(tables[k][a * 4 + b], row[p], "depth {k} pair {a}{b}");
            assert_eq!(tables[k][b * 4 + a], row[p]);
        }
        for s in 0..4 {
            assert_eq!(tables[k][s * 5], Dist::ZERO);
        }
    }
    assert_eq!(
        behavioral_distance(&c, 0, 1, 4),
        vec![i(0), h(1, 2), i(1), i(3), i(3)]
    );
    let chain = final_chain(c.functor(), &Lawvere, 2, &Caps::default()).unwrap();
    for &(a, b) in &pairs {
        let via = behavioral_distance_via_chain(&c, &chain, a, b).unwrap();
        assert_eq!(via, tables[..3].iter().map(|t| t[a * 4 + b]).collect::<Vec<_>>());
    }
}

fn antitone<Q: Quantale>(c: &Coalgebra<Q>, depth: usize) -> bool {
    let q = c.carrier().quantale();
    distance_tables(c, depth).windows(2).all(|w| w[0].iter().zip(&w[1]).all(|(&a, &b)| q.leq(b, a)))
}

fn hom_invariant<Q: Sample>(q: &Q, f: &FunctorExpr<Q>, rng: &mut ChaCha8Rng, depth: usize) {
    let caps = Caps::default();
    let y = random_coalgebra(f, q, rng.gen_range(1..=3), rng, &caps).unwrap();
    let (x, h) = hom_triple(&y, rng.gen_range(1..=3), rng, &caps).unwrap();
    assert!(antitone(&y, depth) && antitone(&x, depth));
    let (dx, dy) = (distance_tables(&x, depth), distance_tables(&y, depth));
    let (n, m) = (x.len(), y.len());
    for k in 0..=depth {
        for a in 0..n {
            for b in 0..n {
                assert_eq!(dx[k][a * n + b], dy[k][h[a] * m + h[b]]);
            }
        }
    }
    let chain = final_chain(f, q, 2, &caps).unwrap();
    let (bx, by) = (behavior_maps(&x, &chain).unwrap(), behavior_maps(&y, &chain).unwrap());
    for k in 0..chain.len() {
        assert!((0..n).all(|s| bx[k][s] == by[k][h[s]]));
    }
}

#[test]
fn hom_triples_preserve_behaviour() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let q2 = TableQuantale::boolean();
    let g3 = TableQuantale::godel(3);
    for case in 0..200 {
        match case % 3 {
            0 => hom_invariant(&q2, &FunctorExpr::h_id(), &mut rng, 5),
            1 => {
                let l = random_vcategory(&g3, 2, 0.5, &mut rng).unwrap();
                let f = FunctorExpr::Prod(vec![FunctorExpr::Const(l), FunctorExpr::h_id()]);
                hom_invariant(&g3, &f, &mut rng, 5)
            }
            _ => {
                let l = random_vcategory(&Lawvere, 2, 0.8, &mut rng).unwrap();
                let f = FunctorExpr::Sum(vec![FunctorExpr::Const(l), FunctorExpr::h_id()]);
                hom_invariant(&Lawvere, &f, &mut rng, 5)
            }
        }
    }
}

#[test]
fn antitone_on_worked_example() {
    assert!(antitone(&worked_example(), 8));
}
