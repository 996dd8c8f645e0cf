//! Up- and down-closures, increasing subsets and the Hausdorff functor and
//! monad on finite V-categories.
//!
//! For a V-category `(X, a)` the Hausdorff object `H X` is the set of
//! increasing subsets (`A = ↑A`) with
//!
//! ```text
//! Ha(A, B) = ⋀_{y ∈ B} ⋁_{x ∈ A} a(x, y)
//! ```
//!
//! Over the Lawvere quantale this is the non-symmetric Hausdorff distance.
//! The same formula on all subsets gives the powerset lifting
//! ([`powerset_lift`]), which is cross-checked against the lifting induced
//! by the cone of all V-functors into `(V, hom)` ([`generic_powerset_lift`]).

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::quantale::Quantale;
use crate::report::LawReport;
use crate::vcat::{quantale_category, vfunctors_between, VCategory, VFunctor, VRelation};

/// A subset of a carrier of at most 64 states, as a bitset.
///
/// The numeric order of the bits is the canonical order of subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Subset {
        Subset(it.into_iter().fold(0, |m, i| m | (1u64 << i)))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: usize) -> Subset {
        Subset(self.0 | 1 << i)
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn intersection(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    pub fn is_subset(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }

    /// Elements below index `i`.
    fn below(self, i: usize) -> Subset {
        Subset(self.0 & ((1u64 << i) - 1))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn check_bits<Q: Quantale>(x: &VCategory<Q>) -> Result<()> {
    if x.len() > 64 {
        return Err(Error::cap("carrier size for subsets", 64, x.len()));
    }
    Ok(())
}

/// Names a subset by its members' state names, e.g. `{u,v}`.
pub fn subset_name<Q: Quantale>(x: &VCategory<Q>, s: Subset) -> String {
    let parts: Vec<&str> = s.iter().map(|i| x.state(i)).collect();
    format!("{{{}}}", parts.join(","))
}

/// Sorted state names of a subset.
pub fn subset_states<Q: Quantale>(x: &VCategory<Q>, s: Subset) -> Vec<String> {
    let mut v: Vec<String> = s.iter().map(|i| x.state(i).to_string()).collect();
    v.sort();
    v
}

/// `↑A = {y | k ≤ ⋁_{x ∈ A} a(x, y)}`.
pub fn up_closure<Q: Quantale>(x: &VCategory<Q>, a: Subset) -> Subset {
    let q = x.quantale();
    Subset::from_indices(
        (0..x.len()).filter(|&y| q.above_unit(q.join_all(a.iter().map(|s| x.a(s, y))))),
    )
}

/// `↓A = {y | k ≤ ⋁_{x ∈ A} a(y, x)}`, i.e. `↑A` in the dual.
pub fn down_closure<Q: Quantale>(x: &VCategory<Q>, a: Subset) -> Subset {
    let q = x.quantale();
    Subset::from_indices(
        (0..x.len()).filter(|&y| q.above_unit(q.join_all(a.iter().map(|s| x.a(y, s))))),
    )
}

pub fn is_increasing<Q: Quantale>(x: &VCategory<Q>, a: Subset) -> bool {
    up_closure(x, a) == a
}

/// All increasing subsets in canonical (numeric bitset) order.
///
/// Increasing sets are the closed sets of `↑`, so they are listed with
/// Ganter's next-closure walk; the cap bounds the number of results.
pub fn enumerate_increasing<Q: Quantale>(x: &VCategory<Q>, caps: &Caps) -> Result<Vec<Subset>> {
    check_bits(x)?;
    let n = x.len();
    let full = Subset::full(n);
    let mut out = Vec::new();
    let mut cur = up_closure(x, Subset::EMPTY);
    loop {
        out.push(cur);
        if out.len() > caps.increasing {
            return Err(Error::cap("increasing subsets", caps.increasing, out.len()));
        }
        if cur == full {
            break;
        }
        let mut next = None;
        for i in (0..n).rev() {
            if cur.contains(i) {
                continue;
            }
            let cand = up_closure(x, cur.below(i).insert(i));
            if cand.below(i) == cur.below(i) {
                next = Some(cand);
                break;
            }
        }
        match next {
            Some(c) => cur = c,
            None => break,
        }
    }
    out.sort();
    Ok(out)
}

/// `Ha(A, B) = ⋀_{y ∈ B} ⋁_{x ∈ A} a(x, y)` for arbitrary subsets.
pub fn hausdorff_value<Q: Quantale>(x: &VCategory<Q>, a: Subset, b: Subset) -> Q::Elem {
    let q = x.quantale();
    q.meet_all(b.iter().map(|y| q.join_all(a.iter().map(|s| x.a(s, y)))))
}

/// `Ha(A, B) ∧ Ha(B, A)`: over Lawvere, the classical symmetric Hausdorff
/// distance (meet is numeric max).
pub fn symmetric_hausdorff<Q: Quantale>(x: &VCategory<Q>, a: Subset, b: Subset) -> Q::Elem {
    x.quantale().meet(hausdorff_value(x, a, b), hausdorff_value(x, b, a))
}

/// `H X` with its structure, plus an index from subsets to positions.
#[derive(Debug, Clone)]
pub struct HObject<Q: Quantale> {
    pub base: VCategory<Q>,
    pub sets: Vec<Subset>,
    pub cat: VCategory<Q>,
    index: HashMap<Subset, usize>,
}

impl<Q: Quantale> HObject<Q> {
    pub fn index_of(&self, s: Subset) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Position of `↑A` for any subset `A` of the base.
    pub fn closure_index(&self, a: Subset) -> usize {
        self.index[&up_closure(&self.base, a)]
    }
}

pub fn hausdorff_object<Q: Quantale>(x: &VCategory<Q>, caps: &Caps) -> Result<HObject<Q>> {
    let sets = enumerate_increasing(x, caps)?;
    if sets.len() > caps.object {
        return Err(Error::cap("object size", caps.object, sets.len()));
    }
    let names = sets.iter().map(|&s| subset_name(x, s)).collect();
    let cat = VCategory::from_fn(x.quantale().clone(), names, |i, j| hausdorff_value(x, sets[i], sets[j]))?;
    let index = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    Ok(HObject { base: x.clone(), sets, cat, index })
}

/// Direct image of a subset under a map.
pub fn image(map: &[usize], a: Subset) -> Subset {
    Subset::from_indices(a.iter().map(|i| map[i]))
}

/// Preimage of a subset under a map.
pub fn preimage(map: &[usize], b: Subset) -> Subset {
    Subset::from_indices((0..map.len()).filter(|&i| b.contains(map[i])))
}

/// `H f` as an index map between prebuilt objects: `A ↦ ↑f(A)`.
pub fn hausdorff_map_between<Q: Quantale>(map: &[usize], src: &HObject<Q>, tgt: &HObject<Q>) -> Vec<usize> {
    src.sets.iter().map(|&a| tgt.closure_index(image(map, a))).collect()
}

/// `H f: H X → H Y`.
pub fn hausdorff_map<Q: Quantale>(f: &VFunctor<Q>, caps: &Caps) -> Result<VFunctor<Q>> {
    let src = hausdorff_object(&f.source, caps)?;
    let tgt = hausdorff_object(&f.target, caps)?;
    let map = hausdorff_map_between(&f.map, &src, &tgt);
    VFunctor::new(src.cat, tgt.cat, map)
}

/// Unit `η: X → H X`, `x ↦ ↑x`.
pub fn monad_unit<Q: Quantale>(h: &HObject<Q>) -> VFunctor<Q> {
    let map = (0..h.base.len()).map(|x| h.closure_index(Subset::singleton(x))).collect();
    VFunctor { source: h.base.clone(), target: h.cat.clone(), map }
}

/// Multiplication `μ: H H X → H X`, `𝒜 ↦ ⋃𝒜`. `hh` must be `H` of `h.cat`.
pub fn monad_mult<Q: Quantale>(h: &HObject<Q>, hh: &HObject<Q>) -> Result<VFunctor<Q>> {
    if hh.base != h.cat {
        return Err(Error::Mismatch("second object must be H of the first".into()));
    }
    let mut map = Vec::with_capacity(hh.len());
    for &fam in &hh.sets {
        let union = fam.iter().fold(Subset::EMPTY, |u, i| u.union(h.sets[i]));
        let idx = h
            .index_of(union)
            .ok_or_else(|| Error::Internal("union of increasing sets is not increasing".into()))?;
        map.push(idx);
    }
    VFunctor::new(hh.cat.clone(), h.cat.clone(), map)
}

/// The full powerset `(P X, Ha)`, subsets in canonical order.
pub fn powerset_lift<Q: Quantale>(x: &VCategory<Q>, caps: &Caps) -> Result<VCategory<Q>> {
    if x.len() > caps.powerset_carrier {
        return Err(Error::cap("powerset carrier", caps.powerset_carrier, x.len()));
    }
    let all: Vec<Subset> = (0..1u64 << x.len()).map(Subset).collect();
    let names = all.iter().map(|&s| subset_name(x, s)).collect();
    VCategory::from_fn(x.quantale().clone(), names, |i, j| hausdorff_value(x, all[i], all[j]))
}

/// Powerset lifting along the cone of all V-functors `ψ: X → (V, hom)`:
/// `Pa(A, B) = ⋀_ψ hom(⋀_{x∈A} ψx, ⋀_{y∈B} ψy)`.
pub fn generic_powerset_lift<Q: Quantale>(x: &VCategory<Q>, caps: &Caps) -> Result<VCategory<Q>> {
    if x.len() > caps.powerset_carrier {
        return Err(Error::cap("powerset carrier", caps.powerset_carrier, x.len()));
    }
    let q = x.quantale();
    let v = quantale_category(q)?;
    let es = q.elements().ok_or(Error::NotFinite)?;
    let psis = vfunctors_between(x, &v, caps)?;
    let count = 1usize << x.len();
    let meets: Vec<Vec<Q::Elem>> = psis
        .iter()
        .map(|psi| (0..count).map(|s| q.meet_all(Subset(s as u64).iter().map(|i| es[psi[i]]))).collect())
        .collect();
    let names = (0..count).map(|s| subset_name(x, Subset(s as u64))).collect();
    VCategory::from_fn(q.clone(), names, |a, b| q.meet_all(meets.iter().map(|m| q.hom(m[a], m[b]))))
}

/// Lax extension of the powerset functor to V-relations:
/// `P̂r(A, B) = ⋀_{y ∈ B} ⋁_{x ∈ A} r(x, y)`.
pub fn lax_powerset_extension<Q: Quantale>(r: &VRelation<Q>, caps: &Caps) -> Result<VRelation<Q>> {
    let big = r.rows().max(r.cols());
    if big > caps.powerset_carrier {
        return Err(Error::cap("powerset carrier", caps.powerset_carrier, big));
    }
    let q = r.quantale();
    Ok(VRelation::from_fn(q.clone(), 1 << r.rows(), 1 << r.cols(), |a, b| {
        let (a, b) = (Subset(a as u64), Subset(b as u64));
        q.meet_all(b.iter().map(|y| q.join_all(a.iter().map(|x| r.r(x, y)))))
    }))
}

/// Checks the lax-extension axioms of [`lax_powerset_extension`] on one
/// instance: monotonicity for `r ≤ r2`, `P̂s · P̂r ≤ P̂(s · r)`, and
/// `Pf ≤ P̂f`, `(Pf)° ≤ P̂(f°)` for the map `f` with `f_cols` targets.
pub fn check_lax_axioms<Q: Quantale>(
    r: &VRelation<Q>,
    r2: &VRelation<Q>,
    s: &VRelation<Q>,
    f: &[usize],
    f_cols: usize,
    caps: &Caps,
) -> Result<LawReport> {
    let q = r.quantale();
    let mut rep = LawReport::new();
    let ext = |x: &VRelation<Q>| lax_powerset_extension(x, caps);

    let (pr, pr2) = (ext(r)?, ext(r2)?);
    let mono = r.leq(r2) && !pr.leq(&pr2);
    rep.record("monotone", mono.then(|| vec!["r <= r2".into(), "P^r !<= P^r2".into()]));

    let lhs = pr.then(&ext(s)?)?;
    let rhs = ext(&r.then(s)?)?;
    rep.record("lax-composition", (!lhs.leq(&rhs)).then(|| vec!["P^s.P^r !<= P^(s.r)".into()]));

    let g = VRelation::graph(q.clone(), f, f_cols);
    let pf_map: Vec<usize> = (0..1usize << f.len()).map(|a| image(f, Subset(a as u64)).0 as usize).collect();
    let pf = VRelation::graph(q.clone(), &pf_map, 1 << f_cols);
    rep.record("map-below-extension", (!pf.leq(&ext(&g)?)).then(|| vec!["Pf !<= P^f".into()]));
    rep.record(
        "converse-below-extension",
        (!pf.converse().leq(&ext(&g.converse())?)).then(|| vec!["(Pf)° !<= P^(f°)".into()]),
    );
    Ok(rep)
}

/// `x ≺ y` iff `k ≤ a(x, y)` and `a(y, x) = ⊥`.
pub fn strict_less<Q: Quantale>(x: &VCategory<Q>, i: usize, j: usize) -> bool {
    x.le(i, j) && x.a(j, i) == x.quantale().bottom()
}

/// `↟x = {y | x ≺ y}`.
pub fn strict_up<Q: Quantale>(x: &VCategory<Q>, i: usize) -> Subset {
    Subset::from_indices((0..x.len()).filter(|&j| strict_less(x, i, j)))
}

/// Why a candidate map `φ: H X → X` is not an embedding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum NonEmbedding {
    /// `φ A = φ B` with `A ≠ B`.
    NotInjective { first: Subset, second: Subset },
    /// `Ha(A, B) ≠ a(φ A, φ B)`.
    NotInitial { first: Subset, second: Subset },
    /// An embedding was accepted and the greatest fixed point `A` of
    /// `I ↦ ↑φ(I)` gave `x = φ A` with `↑x = ↟x`. Never occurs over a
    /// non-trivial quantale.
    Contradiction { fixed_point: Subset, point: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingVerdict {
    pub phi: Vec<usize>,
    pub verdict: NonEmbedding,
}

impl EmbeddingVerdict {
    /// Replays the witness against `h`. Contradiction verdicts never validate.
    pub fn witness_holds<Q: Quantale>(&self, h: &HObject<Q>) -> bool {
        let x = &h.base;
        let pos = |s: Subset| h.index_of(s);
        match self.verdict {
            NonEmbedding::NotInjective { first, second } => match (pos(first), pos(second)) {
                (Some(i), Some(j)) => i != j && self.phi[i] == self.phi[j],
                _ => false,
            },
            NonEmbedding::NotInitial { first, second } => match (pos(first), pos(second)) {
                (Some(i), Some(j)) => h.cat.a(i, j) != x.a(self.phi[i], self.phi[j]),
                _ => false,
            },
            NonEmbedding::Contradiction { .. } => false,
        }
    }
}

/// Proves that `φ: H X → X` is not an embedding (injective and initial).
///
/// When both properties appear to hold, the greatest fixed point of
/// `I ↦ ↑φ(I)` is computed by descending from the top `∅` of `(H X, ⊇)`,
/// and the resulting contradiction witness is returned. Reaching that
/// branch signals an internal inconsistency.
pub fn cantor_check<Q: Quantale>(h: &HObject<Q>, phi: &[usize], caps: &Caps) -> Result<EmbeddingVerdict> {
    let x = &h.base;
    if x.quantale().is_trivial() {
        return Err(Error::TrivialQuantale);
    }
    if phi.len() != h.len() || phi.iter().any(|&p| p >= x.len()) {
        return Err(Error::Shape("phi must map every element of H X into X".into()));
    }
    let verdict = |v| Ok(EmbeddingVerdict { phi: phi.to_vec(), verdict: v });

    let mut seen: HashMap<usize, usize> = HashMap::new();
    for (i, &p) in phi.iter().enumerate() {
        if let Some(&j) = seen.get(&p) {
            return verdict(NonEmbedding::NotInjective { first: h.sets[j], second: h.sets[i] });
        }
        seen.insert(p, i);
    }
    for i in 0..h.len() {
        for j in 0..h.len() {
            if h.cat.a(i, j) != x.a(phi[i], phi[j]) {
                return verdict(NonEmbedding::NotInitial { first: h.sets[i], second: h.sets[j] });
            }
        }
    }

    let step = |i: usize| h.closure_index(Subset::singleton(phi[i]));
    let mut cur = h
        .index_of(Subset::EMPTY)
        .ok_or_else(|| Error::Internal("empty set is not increasing".into()))?;
    let mut converged = false;
    for _ in 0..=h.len().min(caps.iterations) {
        let next = step(cur);
        if next == cur {
            converged = true;
            break;
        }
        cur = next;
    }
    if !converged {
        return Err(Error::Internal("fixed-point descent did not stabilise".into()));
    }
    let point = phi[cur];
    if up_closure(x, Subset::singleton(point)) != strict_up(x, point) {
        return Err(Error::Internal(
            "embedding accepted but the fixed point does not give the contradiction witness".into(),
        ));
    }
    verdict(NonEmbedding::Contradiction { fixed_point: h.sets[cur], point })
}
