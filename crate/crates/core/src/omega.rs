//! The extended naturals `ℕ+∞` ordered by `≥`, which carry the terminal
//! coalgebra of the Hausdorff functor on ordered compact Hausdorff spaces.
//!
//! The closed increasing subsets of `(ℕ+∞, ≥)` are `∅`, the initial
//! segments `{0..m}` and the whole space. The set `ℕ` of all finite values
//! is increasing but not closed, so it has no code. Coding
//! `∅ ↦ 0`, `{0..n−1} ↦ n`, `ℕ+∞ ↦ ∞` identifies `H(ℕ+∞)` with `ℕ+∞`, and the
//! structure map becomes the identity.
//!
//! On finite carriers the topology is discrete, so the lower-Vietoris
//! reading on topological spaces coincides with this model.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::caps::Caps;
use crate::coalg::{behavior_maps, final_chain, Coalgebra, FunctorExpr};
use crate::error::{Error, Result};
use crate::hausdorff::Subset;
use crate::quantale::{Quantale, TableQuantale};
use crate::report::LawReport;
use crate::vcat::{vfunctors_between, VCategory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

impl ExtNat {
    pub fn min(self, n: u64) -> u64 {
        match self {
            ExtNat::Fin(m) => m.min(n),
            ExtNat::Inf => n,
        }
    }

    pub fn succ(self) -> ExtNat {
        match self {
            ExtNat::Fin(m) => ExtNat::Fin(m + 1),
            ExtNat::Inf => ExtNat::Inf,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Fin(_))
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(f, "{n}"),
            ExtNat::Inf => write!(f, "inf"),
        }
    }
}

impl FromStr for ExtNat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" => Ok(ExtNat::Inf),
            t => t.parse().map(ExtNat::Fin).map_err(|_| Error::UnknownElement(s.into())),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Increasing subsets of `(ℕ+∞, ≥)`, i.e. numerically downward closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Upset {
    Empty,
    /// `{0, …, m}`.
    UpTo(u64),
    /// All finite values; increasing but not closed.
    Naturals,
    All,
}

impl Upset {
    pub fn contains(self, x: ExtNat) -> bool {
        match (self, x) {
            (Upset::Empty, _) => false,
            (Upset::UpTo(m), ExtNat::Fin(n)) => n <= m,
            (Upset::UpTo(_), ExtNat::Inf) => false,
            (Upset::Naturals, x) => x.is_finite(),
            (Upset::All, _) => true,
        }
    }

    /// Members of the symbolic `H(ℕ+∞)`. `ℕ` fails because `∞` is a limit
    /// of its points.
    pub fn is_closed(self) -> bool {
        !matches!(self, Upset::Naturals)
    }

    /// `↑` of a finite set of values.
    pub fn up_of<I: IntoIterator<Item = ExtNat>>(values: I) -> Upset {
        match values.into_iter().max() {
            None => Upset::Empty,
            Some(ExtNat::Fin(m)) => Upset::UpTo(m),
            Some(ExtNat::Inf) => Upset::All,
        }
    }
}

/// The closed increasing sets with code at most `n`, plus `ℕ+∞`.
pub fn closed_upsets(n: u64) -> Vec<Upset> {
    let mut v = vec![Upset::Empty];
    v.extend((0..n).map(Upset::UpTo));
    v.push(Upset::All);
    v
}

pub fn omega_code(u: Upset) -> Option<ExtNat> {
    match u {
        Upset::Empty => Some(ExtNat::Fin(0)),
        Upset::UpTo(m) => Some(ExtNat::Fin(m + 1)),
        Upset::Naturals => None,
        Upset::All => Some(ExtNat::Inf),
    }
}

pub fn omega_decode(x: ExtNat) -> Upset {
    match x {
        ExtNat::Fin(0) => Upset::Empty,
        ExtNat::Fin(n) => Upset::UpTo(n - 1),
        ExtNat::Inf => Upset::All,
    }
}

/// The terminal structure `f: ℕ+∞ → H(ℕ+∞)`:
/// `f(0) = ∅`, `f(∞) = ℕ+∞`, `f(n) = ↑(n−1)`.
pub fn omega_structure(x: ExtNat) -> Upset {
    match x {
        ExtNat::Fin(0) => Upset::Empty,
        ExtNat::Fin(n) => Upset::up_of([ExtNat::Fin(n - 1)]),
        ExtNat::Inf => Upset::All,
    }
}

/// `omega_code ∘ omega_structure`; the identity.
pub fn omega_structure_coded(x: ExtNat) -> ExtNat {
    omega_code(omega_structure(x)).expect("structure values are closed")
}

/// The limit leg `ℕ+∞ → {0..n}`, `x ↦ min(x, n)`.
pub fn truncation(n: u64) -> impl Fn(ExtNat) -> u64 {
    move |x| x.min(n)
}

/// Code of an element of level `k` of the `H` chain over two truth values:
/// the number of members of its increasing set (0 at level 0).
pub fn level_code<Q: Quantale>(chain: &[crate::coalg::ChainLevel<Q>], k: usize, i: usize) -> u64 {
    if k == 0 {
        return 0;
    }
    match chain[k].obj.decode(i) {
        crate::coalg::FTerm::Set(ms) => ms.len() as u64,
        _ => unreachable!("H chain levels hold sets"),
    }
}

fn require_q2(q: &TableQuantale) -> Result<()> {
    if *q != TableQuantale::boolean() {
        return Err(Error::Mismatch("operation is defined over the two-element quantale".into()));
    }
    Ok(())
}

/// Checks the truncation legs against the materialised `H` chain over two
/// truth values, for levels `0..=n`: commuting squares, monotone surjective
/// legs, and that each level is the `(k+1)`-chain under its coding.
pub fn verify_chain_commutation(n: usize, caps: &Caps) -> Result<LawReport> {
    if n == 0 {
        return Err(Error::Shape("depth must be at least 1".into()));
    }
    let q = TableQuantale::boolean();
    let chain = final_chain(&FunctorExpr::h_id(), &q, n, caps)?;
    let nn = n as u64;
    let samples: Vec<ExtNat> = (0..=nn + 1).map(ExtNat::Fin).chain([ExtNat::Inf]).collect();
    let mut rep = LawReport::new();

    let bad = (0..nn).find_map(|k| {
        samples.iter().find(|&&x| truncation(k)(ExtNat::Fin(truncation(k + 1)(x))) != truncation(k)(x)).map(|x| (k, *x))
    });
    rep.record("square-commutes", bad.map(|(k, x)| vec![k.to_string(), x.to_string()]));

    let bad = (0..=nn).find(|&k| {
        let t = truncation(k);
        let onto = (0..=k).all(|v| samples.iter().any(|&x| t(x) == v));
        let mono = samples.iter().all(|&x| samples.iter().all(|&y| x < y || t(x) >= t(y)));
        !(onto && mono)
    });
    rep.record("leg-monotone-surjective", bad.map(|k| vec![k.to_string()]));

    let mut level_bad = None;
    for (k, l) in chain.iter().enumerate() {
        let cat = &l.obj.cat;
        let codes: Vec<u64> = (0..cat.len()).map(|i| level_code(&chain, k, i)).collect();
        let mut sorted = codes.clone();
        sorted.sort_unstable();
        let bijective = sorted == (0..=k as u64).collect::<Vec<_>>();
        let ordered = (0..cat.len()).all(|i| (0..cat.len()).all(|j| cat.le(i, j) == (codes[i] >= codes[j])));
        let two_valued = cat.flat().iter().all(|&e| e == q.top() || e == q.bottom());
        let connecting_ok = match &l.connecting {
            None => true,
            Some(c) => (0..cat.len()).all(|i| level_code(&chain, k - 1, c[i]) == codes[i].min(k as u64 - 1)),
        };
        let segments_ok = k == 0
            || (0..cat.len()).all(|i| match l.obj.decode(i) {
                crate::coalg::FTerm::Set(ms) => {
                    let mut mc: Vec<u64> = ms
                        .iter()
                        .map(|m| match m {
                            crate::coalg::FTerm::State(j) => level_code(&chain, k - 1, *j),
                            _ => u64::MAX,
                        })
                        .collect();
                    mc.sort_unstable();
                    mc == (0..codes[i]).collect::<Vec<_>>()
                }
                _ => false,
            });
        if !(bijective && ordered && two_valued && connecting_ok && segments_ok) {
            level_bad = Some(k);
            break;
        }
    }
    rep.record("level-is-chain", level_bad.map(|k| vec![k.to_string()]));
    Ok(rep)
}

fn check_h_q2(c: &Coalgebra<TableQuantale>) -> Result<()> {
    require_q2(c.carrier().quantale())?;
    if *c.functor() != FunctorExpr::h_id() {
        return Err(Error::Mismatch("expected an H-coalgebra".into()));
    }
    Ok(())
}

/// The unique homomorphism into `(ℕ+∞, f)`.
///
/// The thread `beh_k(x)` through the coded chain is `min(b(x), k)`. A
/// finite value is the length of the longest run from `x` into a deadlock,
/// which is below `|X|`, so reading level `|X|` decides every state.
pub fn anamorphism(c: &Coalgebra<TableQuantale>, caps: &Caps) -> Result<Vec<ExtNat>> {
    check_h_q2(c)?;
    let n = c.len().max(1);
    let chain = final_chain(c.functor(), c.carrier().quantale(), n, caps)?;
    let beh = behavior_maps(c, &chain)?;
    Ok((0..c.len())
        .map(|x| {
            let t = level_code(&chain, n, beh[n][x]);
            if t < n as u64 {
                ExtNat::Fin(t)
            } else {
                ExtNat::Inf
            }
        })
        .collect())
}

/// Checks `b` is monotone into `(ℕ+∞, ≥)` and `f ∘ b = H b ∘ c`.
pub fn omega_hom_report(c: &Coalgebra<TableQuantale>, b: &[ExtNat]) -> Result<LawReport> {
    check_h_q2(c)?;
    if b.len() != c.len() {
        return Err(Error::Shape("map does not fit the carrier".into()));
    }
    let x = c.carrier();
    let mut rep = LawReport::new();
    let bad = (0..x.len())
        .flat_map(|i| (0..x.len()).map(move |j| (i, j)))
        .find(|&(i, j)| x.le(i, j) && b[i] < b[j]);
    rep.record("monotone", bad.map(|(i, j)| vec![x.state(i).into(), x.state(j).into()]));
    let succ_set = |s: usize| -> Subset {
        match c.term(s) {
            crate::coalg::FTerm::Set(ms) => Subset::from_indices(ms.iter().map(|m| match m {
                crate::coalg::FTerm::State(i) => *i,
                _ => unreachable!(),
            })),
            _ => unreachable!(),
        }
    };
    let bad = (0..x.len()).find(|&s| Upset::up_of(succ_set(s).iter().map(|y| b[y])) != omega_structure(b[s]));
    rep.record("commutes", bad.map(|s| vec![x.state(s).into()]));
    Ok(rep)
}

pub fn is_omega_hom(c: &Coalgebra<TableQuantale>, b: &[ExtNat]) -> Result<bool> {
    Ok(omega_hom_report(c, b)?.all_pass())
}

/// Every homomorphism with values in `{0..bound, ∞}`, by exhaustive search.
pub fn omega_homs_exhaustive(c: &Coalgebra<TableQuantale>, bound: u64, caps: &Caps) -> Result<Vec<Vec<ExtNat>>> {
    check_h_q2(c)?;
    let values: Vec<ExtNat> = (0..=bound).map(ExtNat::Fin).chain([ExtNat::Inf]).collect();
    let total = Caps::check_power("candidate maps", values.len(), c.len(), caps.maps)?;
    let mut out = Vec::new();
    for code in 0..total {
        let mut rest = code;
        let cand: Vec<ExtNat> = (0..c.len())
            .map(|_| {
                let v = values[rest % values.len()];
                rest /= values.len();
                v
            })
            .collect();
        if is_omega_hom(c, &cand)? {
            out.push(cand);
        }
    }
    Ok(out)
}

/// Change of base along `0 ↦ ⊥`, `1 ↦ ⊤`.
pub fn embed_i<V: Quantale>(x: &VCategory<TableQuantale>, v: &V) -> Result<VCategory<V>> {
    require_q2(x.quantale())?;
    let two = x.quantale();
    VCategory::from_fn(v.clone(), x.states().to_vec(), |i, j| {
        if x.a(i, j) == two.top() {
            v.top()
        } else {
            v.bottom()
        }
    })
}

/// `H(I X) = I(H X)`, as increasing sets and structures.
pub fn embed_commutes_with_h<V: Quantale>(x: &VCategory<TableQuantale>, v: &V, caps: &Caps) -> Result<bool> {
    if v.is_trivial() {
        return Err(Error::TrivialQuantale);
    }
    let hi = crate::hausdorff::hausdorff_object(&embed_i(x, v)?, caps)?;
    let h = crate::hausdorff::hausdorff_object(x, caps)?;
    let ih = embed_i(&h.cat, v)?;
    Ok(hi.sets == h.sets && hi.cat.flat() == ih.flat())
}

/// Outcome of the finite Priestley check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PriestleyCertificate {
    pub holds: bool,
    /// Number of V-functors `X → V^op` in the cone.
    pub cone_size: usize,
    /// Distinct states identified by every map.
    pub unseparated: Option<(String, String)>,
    /// States whose structure differs from the meet along the cone.
    pub not_initial: Option<(String, String)>,
}

/// The cone of all V-functors into `V^op` (`V^op(u, v) = hom(v, u)`)
/// separates points and is initial. Finite-table quantales only.
pub fn is_priestley_finite(x: &VCategory<TableQuantale>, caps: &Caps) -> Result<PriestleyCertificate> {
    let q = x.quantale();
    let es = q.elements().ok_or(Error::NotFinite)?;
    let ids: Vec<String> = es.iter().map(|&e| q.show(e)).collect();
    let vop = VCategory::from_fn(q.clone(), ids, |i, j| q.hom(es[j], es[i]))?;
    let cone = vfunctors_between(x, &vop, caps)?;
    let n = x.len();
    let pairs = || (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
    let name = |(i, j): (usize, usize)| (x.state(i).to_string(), x.state(j).to_string());
    let unseparated = pairs().find(|&(i, j)| i != j && cone.iter().all(|p| p[i] == p[j])).map(name);
    let not_initial = pairs()
        .find(|&(i, j)| x.a(i, j) != q.meet_all(cone.iter().map(|p| vop.a(p[i], p[j]))))
        .map(name);
    Ok(PriestleyCertificate {
        holds: unseparated.is_none() && not_initial.is_none(),
        cone_size: cone.len(),
        unseparated,
        not_initial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::FTerm;
    use crate::quantale::{Dist, Lawvere};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn set(v: &[usize]) -> FTerm {
        FTerm::set(v.iter().map(|&i| FTerm::State(i)).collect())
    }

    fn h_coalg(terms: &[FTerm]) -> Coalgebra<TableQuantale> {
        let st: Vec<String> = (0..terms.len()).map(|i| format!("s{i}")).collect();
        let x = VCategory::discrete(TableQuantale::boolean(), st).unwrap();
        Coalgebra::new(FunctorExpr::h_id(), x, terms, &Caps::default()).unwrap()
    }

    fn c2() -> VCategory<TableQuantale> {
        let q = TableQuantale::boolean();
        let (o, i) = (q.bottom(), q.top());
        VCategory::new(q, names(&["u", "v"]), vec![vec![i, i], vec![o, i]]).unwrap()
    }

    #[test]
    fn structure_cases() {
        assert_eq!(omega_structure(ExtNat::Fin(0)), Upset::Empty);
        assert_eq!(omega_structure(ExtNat::Inf), Upset::All);
        assert_eq!(omega_structure(ExtNat::Fin(5)), Upset::UpTo(4));
        assert_eq!(omega_structure_coded(ExtNat::Fin(5)), ExtNat::Fin(5));
        for x in (0..50).map(ExtNat::Fin).chain([ExtNat::Inf]) {
            assert_eq!(omega_structure_coded(x), x);
            assert_eq!(omega_decode(x), omega_structure(x));
        }
        assert_eq!(truncation(3)(ExtNat::Inf), 3);
        assert!(!Upset::Naturals.is_closed());
        assert!(Upset::Naturals.contains(ExtNat::Fin(7)) && !Upset::Naturals.contains(ExtNat::Inf));
        assert_eq!(omega_code(Upset::Naturals), None);
        assert!(!closed_upsets(10).contains(&Upset::Naturals));
        assert_eq!("inf".parse::<ExtNat>().unwrap(), ExtNat::Inf);
    }

    #[test]
    fn commutation() {
        let caps = Caps::default();
        let r4 = verify_chain_commutation(4, &caps).unwrap();
        assert!(r4.all_pass(), "{r4:?}");
        let rep = verify_chain_commutation(32, &caps).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
    }

    #[test]
    fn anamorphism_examples() {
        let caps = Caps::default();
        let dead = h_coalg(&[set(&[])]);
        assert_eq!(anamorphism(&dead, &caps).unwrap(), vec![ExtNat::Fin(0)]);
        let lp = h_coalg(&[set(&[0])]);
        assert_eq!(anamorphism(&lp, &caps).unwrap(), vec![ExtNat::Inf]);
        let step = h_coalg(&[set(&[1]), set(&[])]);
        let b = anamorphism(&step, &caps).unwrap();
        assert_eq!(b, vec![ExtNat::Fin(1), ExtNat::Fin(0)]);
        assert!(is_omega_hom(&step, &b).unwrap());
        assert_eq!(omega_homs_exhaustive(&step, 3, &caps).unwrap(), vec![b]);
        let mixed = h_coalg(&[set(&[1, 2]), set(&[]), set(&[2])]);
        assert_eq!(anamorphism(&mixed, &caps).unwrap(), vec![ExtNat::Inf, ExtNat::Fin(0), ExtNat::Inf]);
        let path = h_coalg(&[set(&[1]), set(&[2]), set(&[])]);
        assert_eq!(anamorphism(&path, &caps).unwrap(), vec![ExtNat::Fin(2), ExtNat::Fin(1), ExtNat::Fin(0)]);
    }

    #[test]
    fn change_of_base() {
        let caps = Caps::default();
        let i = embed_i(&c2(), &Lawvere).unwrap();
        assert_eq!(i.flat(), &[Dist::ZERO, Dist::ZERO, Dist::Inf, Dist::ZERO]);
        assert!(i.is_valid());
        let d = VCategory::discrete(TableQuantale::boolean(), names(&["a", "b"])).unwrap();
        assert_eq!(embed_i(&d, &Lawvere).unwrap(), VCategory::discrete(Lawvere, names(&["a", "b"])).unwrap());
        assert!(embed_commutes_with_h(&c2(), &Lawvere, &caps).unwrap());
        assert!(embed_commutes_with_h(&c2(), &TableQuantale::godel(3), &caps).unwrap());
    }

    #[test]
    fn priestley_examples() {
        let caps = Caps::default();
        let q = TableQuantale::boolean();
        assert!(is_priestley_finite(&VCategory::point(q.clone()), &caps).unwrap().holds);
        let cert = is_priestley_finite(&c2(), &caps).unwrap();
        assert!(cert.holds);
        assert_eq!(cert.cone_size, 3);
        let ind = VCategory::indiscrete(q, names(&["a", "b"])).unwrap();
        let cert = is_priestley_finite(&ind, &caps).unwrap();
        assert!(!cert.holds && cert.unseparated.is_some());
    }
}
