//! Brute-force reference computations, written against raw matrices and
//! the quantale operations only.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use vcoalg::caps::Caps;
use vcoalg::coalg::{Coalgebra, FTerm, FunctorExpr};
use vcoalg::gen::random_vcategory;
use vcoalg::omega::ExtNat;
use vcoalg::{Elt, Quantale, TableQuantale, VCategory};

pub fn bits(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

pub fn members(s: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| s >> i & 1 == 1)
}

pub fn up<Q: Quantale>(x: &VCategory<Q>, a: u64) -> u64 {
    let q = x.quantale();
    (0..x.len())
        .filter(|&y| members(a).any(|s| q.leq(q.unit(), x.a(s, y))))
        .fold(0, |acc, y| acc | 1 << y)
}

pub fn increasing_sets<Q: Quantale>(x: &VCategory<Q>) -> Vec<u64> {
    (0..=bits(x.len())).filter(|&s| up(x, s) == s).collect()
}

/// `⋀_{y∈B} ⋁_{x∈A} a(x, y)`.
pub fn hausdorff<Q: Quantale>(x: &VCategory<Q>, a: u64, b: u64) -> Q::Elem {
    let q = x.quantale();
    members(b).fold(q.top(), |m, y| q.meet(m, members(a).fold(q.bottom(), |j, s| q.join(j, x.a(s, y)))))
}

/// All `n × n` matrices over `q` satisfying reflexivity and transitivity.
pub fn structures(q: &TableQuantale, n: usize) -> Vec<Vec<Elt>> {
    let es = q.elements().unwrap();
    let mut out = Vec::new();
    let total = es.len().pow((n * n) as u32);
    for code in 0..total {
        let mut rest = code;
        let m: Vec<Elt> = (0..n * n)
            .map(|_| {
                let e = es[rest % es.len()];
                rest /= es.len();
                e
            })
            .collect();
        let refl = (0..n).all(|i| q.leq(q.unit(), m[i * n + i]));
        let trans = (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| q.leq(q.tensor(m[i * n + j], m[j * n + k]), m[i * n + k])))
        });
        if refl && trans {
            out.push(m);
        }
    }
    out
}

pub fn maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|f| (0..m).map(move |v| [f.clone(), vec![v]].concat())).collect();
    }
    out
}

pub fn is_vfunctor<Q: Quantale>(x: &VCategory<Q>, y: &VCategory<Q>, f: &[usize]) -> bool {
    let q = x.quantale();
    (0..x.len()).all(|i| (0..x.len()).all(|j| q.leq(x.a(i, j), y.a(f[i], f[j]))))
}

/// Largest `S ⊆ agree` with `c(s) = ↑(c(s) ∩ S)` for every `s ∈ S`, where
/// `succ` lists the raw successor sets and `c(s) = ↑ succ(s)`. Also checks
/// that admissible sets are closed under union.
pub fn largest_subcoalgebra<Q: Quantale>(x: &VCategory<Q>, succ: &[u64], agree: u64) -> u64 {
    let closed: Vec<u64> = succ.iter().map(|&s| up(x, s)).collect();
    let ok = |s: u64| members(s).all(|t| closed[t] == up(x, closed[t] & s));
    let admissible: Vec<u64> = (0..=agree).filter(|&s| s & !agree == 0 && ok(s)).collect();
    let best = *admissible.iter().max_by_key(|s| s.count_ones()).unwrap();
    assert!(admissible.iter().all(|&s| s & !best == 0), "admissible sets not closed under union");
    best
}

/// `b(s) = 0` on deadlocks and `1 + max b` over the successors otherwise,
/// `None` standing for `∞`: iterate from 0 and saturate values that reach
/// the carrier size.
pub fn longest_run(next: &[u64]) -> Vec<Option<u64>> {
    let n = next.len() as u64;
    let mut b = vec![0u64; next.len()];
    for _ in 0..2 * next.len() + 1 {
        b = (0..next.len())
            .map(|s| match members(next[s]).map(|t| b[t]).max() {
                None => 0,
                Some(m) => (m + 1).min(n),
            })
            .collect();
    }
    b.into_iter().map(|v| (v < n).then_some(v)).collect()
}

/// Greatest element of `{α | α a V-category, c: α → α, α ≤ ⋀ legs}` among
/// all `|V|^(n·n)` matrices, if one exists.
pub fn greatest_admissible(
    q: &TableQuantale,
    c: &[usize],
    legs: &[(Vec<usize>, VCategory<TableQuantale>)],
) -> Option<Vec<Elt>> {
    let n = c.len();
    let ok: Vec<Vec<Elt>> = structures(q, n)
        .into_iter()
        .filter(|m| (0..n).all(|i| (0..n).all(|j| q.leq(m[i * n + j], m[c[i] * n + c[j]]))))
        .filter(|m| {
            legs.iter().all(|(f, y)| (0..n).all(|i| (0..n).all(|j| q.leq(m[i * n + j], y.a(f[i], f[j])))))
        })
        .collect();
    ok.iter().find(|g| ok.iter().all(|m| (0..n * n).all(|i| q.leq(m[i], g[i])))).cloned()
}

pub fn h_coalgebra(x: VCategory<TableQuantale>, succ: &[u64]) -> Coalgebra<TableQuantale> {
    let terms: Vec<FTerm> = succ.iter().map(|&s| FTerm::set(members(s).map(FTerm::State).collect())).collect();
    Coalgebra::new(FunctorExpr::h_id(), x, &terms, &Caps::default()).unwrap()
}

/// A random preorder on `n` points over two truth values, as a reflexive
/// transitive closure.
pub fn random_preorder(n: usize, p: f64, rng: &mut ChaCha8Rng) -> VCategory<TableQuantale> {
    let q = TableQuantale::boolean();
    let mut le: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j || rng.gen_bool(p)).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                le[i][j] |= le[i][k] && le[k][j];
            }
        }
    }
    let names = (0..n).map(|i| format!("s{i}")).collect();
    VCategory::from_fn(q.clone(), names, |i, j| if le[i][j] { q.top() } else { q.bottom() }).unwrap()
}

/// Successor sets that are unions over everything above, so `c` is
/// monotone on `x`.
pub fn monotone_succ(x: &VCategory<TableQuantale>, rng: &mut ChaCha8Rng, sparse: bool) -> Vec<u64> {
    let n = x.len();
    let seeds: Vec<u64> = (0..n)
        .map(|_| {
            let s = rng.gen::<u64>();
            (if sparse { s & rng.gen::<u64>() } else { s }) & bits(n)
        })
        .collect();
    (0..n).map(|s| (0..n).filter(|&z| x.le(s, z)).fold(0, |a, z| a | seeds[z])).collect()
}

/// Monotone into `(ℕ+∞, ≥)` and `b(s) = code(↑ b[c s])` for up-closed
/// successor sets `closed`.
pub fn is_omega_hom(x: &VCategory<TableQuantale>, closed: &[u64], b: &[ExtNat]) -> bool {
    let n = x.len();
    let mono = (0..n).all(|i| (0..n).all(|j| !x.le(i, j) || b[i] >= b[j]));
    let commutes = (0..n).all(|s| {
        let top = members(closed[s]).map(|t| b[t]).max();
        b[s] == top.map_or(ExtNat::Fin(0), ExtNat::succ)
    });
    mono && commutes
}

pub fn labelled_h() -> FunctorExpr<TableQuantale> {
    let labels = VCategory::discrete(TableQuantale::boolean(), vec!["a".into(), "b".into()]).unwrap();
    FunctorExpr::Prod(vec![FunctorExpr::Const(labels), FunctorExpr::h_id()])
}

/// Successor bits of a set or labelled-set term.
pub fn set_of(t: &FTerm) -> u64 {
    match t {
        FTerm::Set(ms) => ms.iter().fold(0, |a, m| match m {
            FTerm::State(i) => a | 1 << i,
            _ => unreachable!(),
        }),
        FTerm::Tuple(ts) => set_of(&ts[1]),
        _ => unreachable!(),
    }
}

/// A random `H`- or labelled `H`-coalgebra on at most 3 states.
pub fn random_small_coalgebra(rng: &mut ChaCha8Rng, labelled: bool) -> Coalgebra<TableQuantale> {
    let q = TableQuantale::boolean();
    let n = rng.gen_range(1..=3);
    let x = random_vcategory(&q, n, 0.2, rng).unwrap();
    let succ = monotone_succ(&x, rng, false);
    let label = rng.gen_range(0..2);
    let terms: Vec<FTerm> = succ
        .iter()
        .map(|&s| {
            let set = FTerm::set(members(s).map(FTerm::State).collect());
            if labelled {
                FTerm::Tuple(vec![FTerm::Point(label), set])
            } else {
                set
            }
        })
        .collect();
    let f = if labelled { labelled_h() } else { FunctorExpr::h_id() };
    Coalgebra::new(f, x, &terms, &Caps::default()).unwrap()
}
