//! Seeded and exhaustive generators for finite instances.

use rand::Rng;

use crate::caps::Caps;
use crate::coalg::{is_coalg_hom, lift_from, Coalgebra, FTerm, FunctorExpr};
use crate::error::{Error, Result};
use crate::hausdorff::Subset;
use crate::quantale::{Dist, Elt, Lawvere, Quantale, TableQuantale};
use crate::vcat::{fibre_join, VCategory};

pub fn state_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// Every V-category structure on `n` named states, in lexicographic order
/// of the flat matrix over the quantale's element list.
pub fn all_vcategories(q: &TableQuantale, n: usize, caps: &Caps) -> Result<Vec<VCategory<TableQuantale>>> {
    let es = q.elements().ok_or(Error::NotFinite)?;
    let diag: Vec<_> = es.iter().copied().filter(|&e| q.above_unit(e)).collect();
    let off = n * n - n;
    let total = Caps::check_power("candidate structures", es.len(), off, caps.maps)?
        .checked_mul(Caps::check_power("candidate structures", diag.len(), n, caps.maps)?)
        .filter(|&t| t <= caps.maps)
        .ok_or_else(|| Error::cap("candidate structures", caps.maps, usize::MAX))?;
    let mut out = Vec::new();
    for code in 0..total {
        let mut rest = code;
        let mut flat = Vec::with_capacity(n * n);
        for i in 0..n * n {
            if i / n == i % n {
                flat.push(diag[rest % diag.len()]);
                rest /= diag.len();
            } else {
                flat.push(es[rest % es.len()]);
                rest /= es.len();
            }
        }
        let x = VCategory::from_flat(q.clone(), state_names(n), flat)?;
        if x.is_valid() {
            out.push(x);
        }
    }
    Ok(out)
}

/// All V-categories with carriers `0..=3` over two truth values and over
/// the three-element Gödel chain.
pub fn small_family(caps: &Caps) -> Result<Vec<VCategory<TableQuantale>>> {
    let mut out = Vec::new();
    for q in [TableQuantale::boolean(), TableQuantale::godel(3)] {
        for n in 0..=3 {
            out.extend(all_vcategories(&q, n, caps)?);
        }
    }
    Ok(out)
}

/// Quantales that can draw random elements.
pub trait Sample: Quantale {
    fn sample<R: Rng>(&self, rng: &mut R) -> Self::Elem;
}

impl Sample for TableQuantale {
    fn sample<R: Rng>(&self, rng: &mut R) -> Elt {
        Elt(rng.gen_range(0..self.len()) as u16)
    }
}

impl Sample for Lawvere {
    /// Halves in `[0, 4]`, or `∞`.
    fn sample<R: Rng>(&self, rng: &mut R) -> Dist {
        match rng.gen_range(0..10) {
            0 => Dist::Inf,
            k => Dist::ratio(k as i64 - 1, 2),
        }
    }
}

/// A random structure: the least V-category above a sparse random matrix.
pub fn random_vcategory<Q: Sample, R: Rng>(q: &Q, n: usize, density: f64, rng: &mut R) -> Result<VCategory<Q>> {
    let seed: Vec<Q::Elem> =
        (0..n * n).map(|_| if rng.gen_bool(density) { q.sample(rng) } else { q.bottom() }).collect();
    fibre_join(q, state_names(n), &[seed], &Caps::default())
}

/// A random set-level term fitting `f` over `n` states, with at most
/// `max_set` members per set.
pub fn random_term<Q: Quantale, R: Rng>(f: &FunctorExpr<Q>, n: usize, max_set: usize, rng: &mut R) -> Result<FTerm> {
    Ok(match f {
        FunctorExpr::Id if n == 0 => return Err(Error::Shape("no states to refer to".into())),
        FunctorExpr::Id => FTerm::State(rng.gen_range(0..n)),
        FunctorExpr::Const(c) if c.is_empty() => return Err(Error::Shape("empty constant".into())),
        FunctorExpr::Const(c) => FTerm::Point(rng.gen_range(0..c.len())),
        FunctorExpr::Prod(fs) => FTerm::Tuple(fs.iter().map(|g| random_term(g, n, max_set, rng)).collect::<Result<_>>()?),
        FunctorExpr::Sum(fs) if fs.is_empty() => return Err(Error::Shape("empty sum".into())),
        FunctorExpr::Sum(fs) => {
            let b = rng.gen_range(0..fs.len());
            FTerm::inj(b, random_term(&fs[b], n, max_set, rng)?)
        }
        FunctorExpr::H(g) => {
            let k = rng.gen_range(0..=max_set);
            let mut ms = Vec::with_capacity(k);
            for _ in 0..k {
                match random_term(g, n, max_set, rng) {
                    Ok(t) => ms.push(t),
                    Err(_) => break,
                }
            }
            FTerm::set(ms)
        }
    })
}

/// A random coalgebra: random terms on a random carrier, whose structure is
/// then cut down until the terms form a V-functor.
pub fn random_coalgebra<Q: Sample, R: Rng>(
    f: &FunctorExpr<Q>,
    q: &Q,
    n: usize,
    rng: &mut R,
    caps: &Caps,
) -> Result<Coalgebra<Q>> {
    let x = random_vcategory(q, n, 0.3, rng)?;
    let terms = (0..n).map(|_| random_term(f, n, 2, rng)).collect::<Result<Vec<_>>>()?;
    Ok(lift_from(f, x, &terms, caps)?.coalgebra)
}

/// `H`-coalgebra over two truth values on a random preorder, built as
/// `c x = ↑⋃_{x ≤ z} S_z` for random `S_z`, so that `c` is monotone.
pub fn random_h_coalgebra_q2<R: Rng>(n: usize, rng: &mut R, caps: &Caps) -> Result<Coalgebra<TableQuantale>> {
    let q = TableQuantale::boolean();
    let x = random_vcategory(&q, n, 0.25, rng)?;
    let seeds: Vec<Subset> = (0..n).map(|_| Subset((rng.gen::<u64>() & rng.gen::<u64>()) & Subset::full(n).0)).collect();
    let terms: Vec<FTerm> = (0..n)
        .map(|i| {
            let s = (0..n).filter(|&z| x.le(i, z)).fold(Subset::EMPTY, |acc, z| acc.union(seeds[z]));
            FTerm::set(s.iter().map(FTerm::State).collect())
        })
        .collect();
    Coalgebra::new(FunctorExpr::h_id(), x, &terms, caps)
}

/// A homomorphism `h: X → Y` with `X` obtained from `y` by adding `extra`
/// copies of random states. References in `X`'s structure point at either
/// copy at random, and `X` carries the structure pulled back along `h`.
pub fn hom_triple<Q: Quantale, R: Rng>(
    y: &Coalgebra<Q>,
    extra: usize,
    rng: &mut R,
    caps: &Caps,
) -> Result<(Coalgebra<Q>, Vec<usize>)> {
    let m = y.len();
    if m == 0 {
        return Err(Error::Shape("cannot copy states of an empty carrier".into()));
    }
    let mut h: Vec<usize> = (0..m).collect();
    h.extend((0..extra).map(|_| rng.gen_range(0..m)));
    let n = h.len();
    let copies: Vec<Vec<usize>> = (0..m).map(|t| (0..n).filter(|&s| h[s] == t).collect()).collect();
    let q = y.carrier().quantale().clone();
    let mut names = y.carrier().states().to_vec();
    names.extend((m..n).map(|s| format!("{}'{}", y.carrier().state(h[s]), s - m)));
    let carrier = VCategory::from_fn(q, names, |a, b| y.carrier().a(h[a], h[b]))?;
    let terms: Vec<FTerm> = (0..n)
        .map(|s| {
            let picks: Vec<usize> = (0..m).map(|t| copies[t][rng.gen_range(0..copies[t].len())]).collect();
            y.term(h[s]).map_states(&|t| picks[t])
        })
        .collect();
    let x = Coalgebra::new(y.functor().clone(), carrier, &terms, caps)?;
    if !is_coalg_hom(&h, &x, y)? {
        return Err(Error::Internal("copy construction did not give a homomorphism".into()));
    }
    Ok((x, h))
}

/// All maps `{0..n} → {0..m}` in lexicographic order (first state slowest).
pub fn all_maps(n: usize, m: usize, caps: &Caps) -> Result<Vec<Vec<usize>>> {
    let total = Caps::check_power("candidate maps", m, n, caps.maps)?;
    Ok((0..total)
        .map(|mut code| {
            let mut f = vec![0; n];
            for i in (0..n).rev() {
                f[i] = code % m.max(1);
                code /= m.max(1);
            }
            f
        })
        .collect())
}

/// Every coalgebra homomorphism `X → Y`, by exhaustive search.
pub fn coalg_homs<Q: Quantale>(x: &Coalgebra<Q>, y: &Coalgebra<Q>, caps: &Caps) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for f in all_maps(x.len(), y.len(), caps)? {
        if is_coalg_hom(&f, x, y)? {
            out.push(f);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exhaustive_counts() {
        let caps = Caps::default();
        let q = TableQuantale::boolean();
        // preorders on 0, 1, 2, 3 points
        let counts: Vec<usize> = (0..=3).map(|n| all_vcategories(&q, n, &caps).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 29]);
        assert!(small_family(&caps).unwrap().len() >= 200);
    }

    #[test]
    fn maps_enumeration() {
        let caps = Caps::default();
        assert_eq!(all_maps(2, 2, &caps).unwrap(), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(all_maps(0, 3, &caps).unwrap(), vec![Vec::<usize>::new()]);
        assert!(all_maps(3, 0, &caps).unwrap().is_empty());
    }

    #[test]
    fn random_coalgebras_are_valid() {
        let caps = Caps::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let q = TableQuantale::godel(3);
        let f = FunctorExpr::Sum(vec![FunctorExpr::h_id(), FunctorExpr::Prod(vec![FunctorExpr::Id, FunctorExpr::Id])]);
        for _ in 0..20 {
            let c = random_coalgebra(&f, &q, 3, &mut rng, &caps).unwrap();
            assert!(c.is_valid());
            let (x, h) = hom_triple(&c, 2, &mut rng, &caps).unwrap();
            assert!(x.is_valid());
            assert!(is_coalg_hom(&h, &x, &c).unwrap());
        }
        for _ in 0..20 {
            let c = random_h_coalgebra_q2(4, &mut rng, &caps).unwrap();
            assert!(c.is_valid());
        }
    }
}
