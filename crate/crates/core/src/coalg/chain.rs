use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::par::{self, Mode};
use crate::quantale::Quantale;
use crate::vcat::VCategory;

use super::coalgebra::Coalgebra;
use super::functor::{eval_mor, eval_obj, FObject, FunctorExpr};

/// Level `n` of the final chain `1 ← F1 ← FF1 ← …`.
#[derive(Debug, Clone)]
pub struct ChainLevel<Q: Quantale> {
    pub index: usize,
    /// `F^n 1`, built as `F` applied to the previous level.
    pub obj: FObject<Q>,
    /// `F^n 1 → F^{n-1} 1`; `None` at level 0.
    pub connecting: Option<Vec<usize>>,
}

/// Levels `0..=depth`; when `F` involves `H` the states are named by
/// index. Once a level repeats its predecessor with an identity connecting
/// map, later levels are copies.
pub fn final_chain<Q: Quantale>(f: &FunctorExpr<Q>, q: &Q, depth: usize, caps: &Caps) -> Result<Vec<ChainLevel<Q>>> {
    let at = |level: usize| move |e: Error| Error::AtLevel { level, inner: Box::new(e) };
    let point = VCategory::point(q.clone());
    let mut levels = vec![ChainLevel { index: 0, obj: FObject::base(&point), connecting: None }];
    let mut stable = false;
    for n in 1..=depth {
        let prev = &levels[n - 1];
        if stable {
            let mut copy = prev.clone();
            copy.index = n;
            levels.push(copy);
            continue;
        }
        let mut obj = eval_obj(f, &prev.obj.cat, caps).map_err(at(n))?;
        if f.contains_h() {
            // nested set names grow combinatorially with depth
            let names = (0..obj.len()).map(|i| i.to_string()).collect();
            obj = obj.renamed(names).map_err(at(n))?;
        }
        let connecting = match &prev.connecting {
            None => vec![0; obj.len()],
            Some(c) => eval_mor(c, &obj, &prev.obj).map_err(at(n))?,
        };
        stable = n >= 2 && obj.cat == prev.obj.cat && connecting.iter().enumerate().all(|(i, &v)| i == v);
        levels.push(ChainLevel { index: n, obj, connecting: Some(connecting) });
    }
    Ok(levels)
}

/// `beh_0, …, beh_n` for `n + 1 = chain.len()`: `beh_0 = !` and
/// `beh_{k+1} = F(beh_k) ∘ c`.
pub fn behavior_maps<Q: Quantale>(c: &Coalgebra<Q>, chain: &[ChainLevel<Q>]) -> Result<Vec<Vec<usize>>> {
    let mut out = vec![vec![0; c.len()]];
    for k in 1..chain.len() {
        let fbeh = eval_mor(&out[k - 1], c.fx(), &chain[k].obj)?;
        out.push(c.structure().iter().map(|&t| fbeh[t]).collect());
    }
    Ok(out)
}

/// `beh_n` alone.
pub fn behavior_map<Q: Quantale>(c: &Coalgebra<Q>, n: usize, caps: &Caps) -> Result<Vec<usize>> {
    let chain = final_chain(c.functor(), c.carrier().quantale(), n, caps)?;
    Ok(behavior_maps(c, &chain)?.pop().unwrap())
}

/// Tables `d_k(x, y) = a_{F^k 1}(beh_k x, beh_k y)` for `k = 0..=n`.
///
/// Computed without materialising the chain: `d_0 = ⊤` and `d_{k+1}` is the
/// structure of `F X` re-lifted from `d_k`, read at `(c x, c y)`. Set
/// payloads may be used as stored since the Hausdorff value does not change
/// under up-closure of either argument.
pub fn distance_tables<Q: Quantale>(c: &Coalgebra<Q>, n: usize) -> Vec<Vec<Q::Elem>> {
    let q = c.carrier().quantale();
    let m = c.len();
    let s = c.structure();
    let w = c.fx().len();
    let mut out = vec![vec![q.top(); m * m]];
    for _ in 0..n {
        let lifted = c.fx().lifted_table(out.last().unwrap());
        out.push((0..m * m).map(|i| lifted[s[i / m] * w + s[i % m]]).collect());
    }
    out
}

/// `d_0(x, y), …, d_n(x, y)`; antitone in `k`.
pub fn behavioral_distance<Q: Quantale>(c: &Coalgebra<Q>, x: usize, y: usize, n: usize) -> Vec<Q::Elem> {
    let m = c.len();
    distance_tables(c, n).iter().map(|t| t[x * m + y]).collect()
}

/// `d_k(x, y) ∧ d_k(y, x)`.
pub fn symmetric_behavioral_distance<Q: Quantale>(c: &Coalgebra<Q>, x: usize, y: usize, n: usize) -> Vec<Q::Elem> {
    let q = c.carrier().quantale();
    let m = c.len();
    distance_tables(c, n).iter().map(|t| q.meet(t[x * m + y], t[y * m + x])).collect()
}

/// The same distances read off a materialised chain.
pub fn behavioral_distance_via_chain<Q: Quantale>(
    c: &Coalgebra<Q>,
    chain: &[ChainLevel<Q>],
    x: usize,
    y: usize,
) -> Result<Vec<Q::Elem>> {
    let beh = behavior_maps(c, chain)?;
    Ok(chain.iter().zip(&beh).map(|(l, b)| l.obj.cat.a(b[x], b[y])).collect())
}

/// All pairwise sequences, pairs in row-major order.
pub fn distance_sequences<Q: Quantale>(c: &Coalgebra<Q>, n: usize, mode: Mode) -> Vec<Vec<Q::Elem>> {
    let tables = distance_tables(c, n);
    par::map_range(mode, c.len() * c.len(), |i| tables.iter().map(|t| t[i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::functor::FTerm;
    use crate::quantale::{Dist, Lawvere, TableQuantale};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn set(v: &[usize]) -> FTerm {
        FTerm::set(v.iter().map(|&i| FTerm::State(i)).collect())
    }

    #[test]
    fn h_chain_over_q2_is_chains() {
        let caps = Caps::default();
        let q = TableQuantale::boolean();
        let chain = final_chain(&FunctorExpr::h_id(), &q, 12, &caps).unwrap();
        for (n, l) in chain.iter().enumerate() {
            assert_eq!(l.obj.len(), n + 1);
            let sep = &l.obj.cat;
            assert!(sep.is_separated());
            // total order
            for i in 0..sep.len() {
                for j in 0..sep.len() {
                    assert!(sep.le(i, j) || sep.le(j, i));
                }
            }
            if let Some(c) = &l.connecting {
                let prev = &chain[n - 1].obj.cat;
                // surjective and monotone
                assert_eq!(c.iter().copied().collect::<std::collections::BTreeSet<_>>().len(), prev.len());
                for i in 0..sep.len() {
                    for j in 0..sep.len() {
                        assert!(!sep.le(i, j) || prev.le(c[i], c[j]));
                    }
                }
            }
        }
    }

    #[test]
    fn constant_chain_stabilises() {
        let caps = Caps::default();
        let q = TableQuantale::boolean();
        let a = VCategory::discrete(q.clone(), names(&["a", "b", "c"])).unwrap();
        let chain = final_chain(&FunctorExpr::Const(a.clone()), &q, 5, &caps).unwrap();
        for l in &chain[1..] {
            assert_eq!(l.obj.cat, a);
        }
        assert_eq!(chain[5].index, 5);
    }

    #[test]
    fn lawvere_h_chain_sizes() {
        let caps = Caps::default();
        let chain = final_chain(&FunctorExpr::h_id(), &Lawvere, 3, &caps).unwrap();
        let sizes: Vec<usize> = chain.iter().map(|l| l.obj.len()).collect();
        assert_eq!(sizes, vec![1, 2, 3, 4]);
        assert_eq!(chain[1].obj.cat.a(0, 1), Dist::Inf);
        assert_eq!(chain[1].obj.cat.a(1, 0), Dist::ZERO);
    }

    #[test]
    fn two_state_example() {
        let caps = Caps::default();
        let q = TableQuantale::boolean();
        let x = VCategory::discrete(q.clone(), names(&["x", "y"])).unwrap();
        let c = Coalgebra::new(FunctorExpr::h_id(), x, &[set(&[0]), set(&[])], &caps).unwrap();
        let chain = final_chain(c.functor(), &q, 3, &caps).unwrap();
        let beh = behavior_maps(&c, &chain).unwrap();
        assert_eq!(beh[0], vec![0, 0]);
        let h1 = &chain[1].obj;
        assert_eq!(h1.decode(beh[1][0]), set(&[0]));
        assert_eq!(h1.decode(beh[1][1]), FTerm::Set(vec![]));
        let d = behavioral_distance(&c, 0, 1, 3);
        assert_eq!(d[1], q.top());
        assert_eq!(behavioral_distance(&c, 1, 0, 3)[1], q.bottom());
        for (x, y) in [(0, 1), (1, 0), (0, 0)] {
            assert_eq!(behavioral_distance(&c, x, y, 3), behavioral_distance_via_chain(&c, &chain, x, y).unwrap());
        }
        for k in 1..chain.len() {
            let conn = chain[k].connecting.as_ref().unwrap();
            assert!((0..2).all(|s| conn[beh[k][s]] == beh[k - 1][s]));
        }
    }

    #[test]
    fn lawvere_distinct_loops() {
        // x ↦ (0, {x}), y ↦ (1, {y}) over labels {0, 1} at distance 1
        let caps = Caps::default();
        let l = VCategory::from_fn(Lawvere, names(&["0", "1"]), |i, j| Dist::int((i as i64 - j as i64).abs())).unwrap();
        let f = FunctorExpr::Prod(vec![FunctorExpr::Const(l), FunctorExpr::h_id()]);
        let x = VCategory::discrete(Lawvere, names(&["x", "y"])).unwrap();
        let terms = [
            FTerm::Tuple(vec![FTerm::Point(0), set(&[0])]),
            FTerm::Tuple(vec![FTerm::Point(1), set(&[1])]),
        ];
        let c = Coalgebra::new(f, x, &terms, &caps).unwrap();
        let d = behavioral_distance(&c, 0, 1, 3);
        assert_eq!(d, vec![Dist::ZERO, Dist::int(1), Dist::int(1), Dist::int(1)]);
        let chain = final_chain(c.functor(), &Lawvere, 2, &caps).unwrap();
        assert_eq!(behavioral_distance_via_chain(&c, &chain, 0, 1).unwrap(), d[..3].to_vec());
    }

    #[test]
    fn parallel_matches_sequential() {
        let caps = Caps::default();
        let q = TableQuantale::godel(3);
        let x = VCategory::discrete(q, names(&["a", "b", "c"])).unwrap();
        let c = Coalgebra::new(FunctorExpr::h_id(), x, &[set(&[1]), set(&[2]), set(&[])], &caps).unwrap();
        assert_eq!(distance_sequences(&c, 4, Mode::Sequential), distance_sequences(&c, 4, Mode::Parallel));
    }
}
