//! Quantales: complete lattices with a commutative unital tensor.
//!
//! Two flavours are provided. [`TableQuantale`] stores explicit operation
//! tables over a finite list of symbolic element ids, so every law can be
//! checked exhaustively. [`Lawvere`] is the extended non-negative rationals
//! `[0, ∞]` ordered by `≥`, with truncated addition as tensor; it is exact
//! (no floating point) and only ever asked for finitary joins and meets.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::report::{AssumptionReport, LawReport};

/// Interface every quantale flavour implements.
///
/// `Elem: Ord` is a canonical storage order used for sorting and hashing; it
/// is unrelated to the lattice order, which is [`Quantale::leq`].
pub trait Quantale: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync {
    type Elem: Copy + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    fn leq(&self, a: Self::Elem, b: Self::Elem) -> bool;
    fn join(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn meet(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn tensor(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// Right adjoint of the tensor: the largest `w` with `a ⊗ w ≤ b`.
    fn hom(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn unit(&self) -> Self::Elem;
    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;

    /// All elements, for finite flavours.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    fn name(&self) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
    fn show(&self, e: Self::Elem) -> String;

    fn join_all<I: IntoIterator<Item = Self::Elem>>(&self, it: I) -> Self::Elem {
        it.into_iter().fold(self.bottom(), |acc, e| self.join(acc, e))
    }

    fn meet_all<I: IntoIterator<Item = Self::Elem>>(&self, it: I) -> Self::Elem {
        it.into_iter().fold(self.top(), |acc, e| self.meet(acc, e))
    }

    /// `k ≤ e`.
    fn above_unit(&self, e: Self::Elem) -> bool {
        self.leq(self.unit(), e)
    }

    /// A quantale is trivial iff `k = ⊥` (then `u = u ⊗ k = u ⊗ ⊥ = ⊥`).
    fn is_trivial(&self) -> bool {
        self.unit() == self.bottom()
    }
}

// ---------------------------------------------------------------------------
// Lawvere

/// An element of `[0, ∞]` with exact rational finite part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dist {
    Fin(Rational64),
    Inf,
}

impl Dist {
    pub const ZERO: Dist = Dist::Fin(Rational64::new_raw(0, 1));

    pub fn int(n: i64) -> Dist {
        assert!(n >= 0, "distances are non-negative");
        Dist::Fin(Rational64::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Dist {
        let r = Rational64::new(num, den);
        assert!(r >= Rational64::from_integer(0), "distances are non-negative");
        Dist::Fin(r)
    }

    pub fn is_inf(self) -> bool {
        matches!(self, Dist::Inf)
    }

    fn add(self, other: Dist) -> Dist {
        match (self, other) {
            (Dist::Fin(a), Dist::Fin(b)) => Dist::Fin(a + b),
            _ => Dist::Inf,
        }
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Inf => f.write_str("inf"),
            Dist::Fin(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Dist::Fin(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl std::str::FromStr for Dist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Dist> {
        let t = s.trim();
        let bad = || Error::UnknownElement(s.to_string());
        if matches!(t, "inf" | "∞" | "infinity") {
            return Ok(Dist::Inf);
        }
        let r = if let Some((n, d)) = t.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Rational64::new(n, d)
        } else if let Some((ip, fp)) = t.split_once('.') {
            if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) || fp.len() > 15 {
                return Err(bad());
            }
            let ip: i64 = if ip.is_empty() { 0 } else { ip.parse().map_err(|_| bad())? };
            let den = 10i64.pow(fp.len() as u32);
            let frac: i64 = fp.parse().map_err(|_| bad())?;
            Rational64::new(ip * den + frac, den)
        } else {
            Rational64::from_integer(t.parse().map_err(|_| bad())?)
        };
        if r < Rational64::from_integer(0) {
            return Err(bad());
        }
        Ok(Dist::Fin(r))
    }
}

/// The Lawvere quantale `([0, ∞], ≥, +, 0)`: `⊥ = ∞`, `⊤ = 0`, joins are
/// numeric infima and meets numeric suprema.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Lawvere;

impl Quantale for Lawvere {
    type Elem = Dist;

    fn leq(&self, a: Dist, b: Dist) -> bool {
        a >= b
    }
    fn join(&self, a: Dist, b: Dist) -> Dist {
        a.min(b)
    }
    fn meet(&self, a: Dist, b: Dist) -> Dist {
        a.max(b)
    }
    fn tensor(&self, a: Dist, b: Dist) -> Dist {
        a.add(b)
    }
    fn hom(&self, a: Dist, b: Dist) -> Dist {
        // smallest numeric w with a + w >= b
        match (a, b) {
            (Dist::Inf, _) => Dist::ZERO,
            (Dist::Fin(_), Dist::Inf) => Dist::Inf,
            (Dist::Fin(x), Dist::Fin(y)) => {
                if y > x {
                    Dist::Fin(y - x)
                } else {
                    Dist::ZERO
                }
            }
        }
    }
    fn unit(&self) -> Dist {
        Dist::ZERO
    }
    fn bottom(&self) -> Dist {
        Dist::Inf
    }
    fn top(&self) -> Dist {
        Dist::ZERO
    }
    fn elements(&self) -> Option<Vec<Dist>> {
        None
    }
    fn name(&self) -> String {
        "lawvere".into()
    }
    fn parse_elem(&self, s: &str) -> Result<Dist> {
        s.parse()
    }
    fn show(&self, e: Dist) -> String {
        e.to_string()
    }
}

// ---------------------------------------------------------------------------
// Finite tables

/// Index of an element of a [`TableQuantale`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Elt(pub u16);

#[derive(Debug)]
struct Tables {
    name: String,
    ids: Vec<String>,
    leq: Vec<bool>,
    join: Vec<Elt>,
    meet: Vec<Elt>,
    tensor: Vec<Elt>,
    hom: Vec<Elt>,
    unit: Elt,
    bottom: Elt,
    top: Elt,
}

/// A finite quantale given by explicit tables. Cloning is cheap.
///
/// The order must be a lattice (construction fails otherwise); the tensor
/// table is accepted as given so that broken tables can be diagnosed by
/// [`check_quantale_laws`].
#[derive(Debug, Clone)]
pub struct TableQuantale(Arc<Tables>);

impl PartialEq for TableQuantale {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ids == other.0.ids
                && self.0.leq == other.0.leq
                && self.0.tensor == other.0.tensor
                && self.0.unit == other.0.unit)
    }
}

impl Eq for TableQuantale {}

impl Hash for TableQuantale {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.ids.hash(state);
        self.0.leq.hash(state);
        self.0.tensor.hash(state);
        self.0.unit.hash(state);
    }
}

impl TableQuantale {
    /// Builds a quantale from an order relation (`leq[i][j]` means
    /// `ids[i] ≤ ids[j]`), a tensor table of element indices and the unit.
    pub fn from_tables(
        name: impl Into<String>,
        ids: Vec<String>,
        leq: Vec<Vec<bool>>,
        tensor: Vec<Vec<usize>>,
        unit: usize,
    ) -> Result<Self> {
        let n = ids.len();
        if n == 0 {
            return Err(Error::Shape("a quantale needs at least one element".into()));
        }
        if n > u16::MAX as usize {
            return Err(Error::Shape("too many elements".into()));
        }
        let distinct: BTreeSet<&String> = ids.iter().collect();
        if distinct.len() != n {
            return Err(Error::Shape("duplicate element ids".into()));
        }
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("order table must be {n}x{n}")));
        }
        if tensor.len() != n || tensor.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("tensor table must be {n}x{n}")));
        }
        if unit >= n || tensor.iter().flatten().any(|&t| t >= n) {
            return Err(Error::Shape("table entry out of range".into()));
        }
        let le = |a: usize, b: usize| leq[a][b];
        for a in 0..n {
            if !le(a, a) {
                return Err(Error::Shape(format!("order is not reflexive at {}", ids[a])));
            }
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    return Err(Error::Shape(format!(
                        "order is not antisymmetric at ({}, {})",
                        ids[a], ids[b]
                    )));
                }
                for c in 0..n {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return Err(Error::Shape(format!(
                            "order is not transitive at ({}, {}, {})",
                            ids[a], ids[b], ids[c]
                        )));
                    }
                }
            }
        }
        let lub = |a: usize, b: usize| -> Option<usize> {
            let ubs: Vec<usize> = (0..n).filter(|&c| le(a, c) && le(b, c)).collect();
            ubs.iter().copied().find(|&c| ubs.iter().all(|&d| le(c, d)))
        };
        let glb = |a: usize, b: usize| -> Option<usize> {
            let lbs: Vec<usize> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
            lbs.iter().copied().find(|&c| lbs.iter().all(|&d| le(d, c)))
        };
        let mut join = Vec::with_capacity(n * n);
        let mut meet = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let j = lub(a, b).ok_or_else(|| {
                    Error::Shape(format!("no join of {} and {}", ids[a], ids[b]))
                })?;
                let m = glb(a, b).ok_or_else(|| {
                    Error::Shape(format!("no meet of {} and {}", ids[a], ids[b]))
                })?;
                join.push(Elt(j as u16));
                meet.push(Elt(m as u16));
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|c| le(b, c))).expect("finite lattice has a bottom");
        let top = (0..n).find(|&t| (0..n).all(|c| le(c, t))).expect("finite lattice has a top");
        let tensor_flat: Vec<Elt> = tensor.iter().flatten().map(|&t| Elt(t as u16)).collect();
        let mut hom = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                let mut acc = bottom;
                for w in 0..n {
                    if le(tensor[u][w], v) {
                        acc = join[acc * n + w].0 as usize;
                    }
                }
                hom.push(Elt(acc as u16));
            }
        }
        Ok(TableQuantale(Arc::new(Tables {
            name: name.into(),
            ids,
            leq: leq.into_iter().flatten().collect(),
            join,
            meet,
            tensor: tensor_flat,
            hom,
            unit: Elt(unit as u16),
            bottom: Elt(bottom as u16),
            top: Elt(top as u16),
        })))
    }

    fn chain(name: String, n: usize, tensor: impl Fn(usize, usize) -> usize) -> Self {
        assert!(n >= 1);
        let ids = (0..n).map(|i| chain_id(i, n)).collect();
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        let tens = (0..n).map(|a| (0..n).map(|b| tensor(a, b)).collect()).collect();
        Self::from_tables(name, ids, leq, tens, n - 1).expect("chains are lattices")
    }

    /// The two-element Boolean quantale `2 = {0 ≤ 1}` with `⊗ = ∧`.
    pub fn boolean() -> Self {
        Self::chain("bool".into(), 2, |a, b| a.min(b))
    }

    /// The Gödel chain `{0, 1/(n−1), …, 1}` with `⊗ = min`.
    pub fn godel(n: usize) -> Self {
        Self::chain(format!("godel:{n}"), n, |a, b| a.min(b))
    }

    /// The Łukasiewicz chain `{0, 1/(n−1), …, 1}` with `u ⊗ v = max(0, u + v − 1)`.
    pub fn lukasiewicz(n: usize) -> Self {
        Self::chain(format!("lukasiewicz:{n}"), n, move |a, b| (a + b).saturating_sub(n - 1))
    }

    /// The one-element quantale, where `k = ⊥`.
    pub fn trivial() -> Self {
        Self::chain("trivial".into(), 1, |_, _| 0)
    }

    pub fn len(&self) -> usize {
        self.0.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ids(&self) -> &[String] {
        &self.0.ids
    }

    pub fn id(&self, e: Elt) -> &str {
        &self.0.ids[e.0 as usize]
    }

    fn ix(&self, a: Elt, b: Elt) -> usize {
        a.0 as usize * self.len() + b.0 as usize
    }
}

fn chain_id(i: usize, n: usize) -> String {
    if n == 1 {
        return "1".into();
    }
    let r = Rational64::new(i as i64, (n - 1) as i64);
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Quantale for TableQuantale {
    type Elem = Elt;

    fn leq(&self, a: Elt, b: Elt) -> bool {
        self.0.leq[self.ix(a, b)]
    }
    fn join(&self, a: Elt, b: Elt) -> Elt {
        self.0.join[self.ix(a, b)]
    }
    fn meet(&self, a: Elt, b: Elt) -> Elt {
        self.0.meet[self.ix(a, b)]
    }
    fn tensor(&self, a: Elt, b: Elt) -> Elt {
        self.0.tensor[self.ix(a, b)]
    }
    fn hom(&self, a: Elt, b: Elt) -> Elt {
        self.0.hom[self.ix(a, b)]
    }
    fn unit(&self) -> Elt {
        self.0.unit
    }
    fn bottom(&self) -> Elt {
        self.0.bottom
    }
    fn top(&self) -> Elt {
        self.0.top
    }
    fn elements(&self) -> Option<Vec<Elt>> {
        Some((0..self.len() as u16).map(Elt).collect())
    }
    fn name(&self) -> String {
        self.0.name.clone()
    }
    fn parse_elem(&self, s: &str) -> Result<Elt> {
        self.0
            .ids
            .iter()
            .position(|id| id == s.trim())
            .map(|i| Elt(i as u16))
            .ok_or_else(|| Error::UnknownElement(s.to_string()))
    }
    fn show(&self, e: Elt) -> String {
        self.id(e).to_string()
    }
}

/// A quantale chosen at run time, e.g. from a descriptor name.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AnyQuantale {
    Table(TableQuantale),
    Lawvere(Lawvere),
}

impl AnyQuantale {
    /// Resolves `"bool"`, `"godel:n"`, `"lukasiewicz:n"`, `"trivial"` and `"lawvere"`.
    pub fn builtin(name: &str) -> Result<AnyQuantale> {
        let bad = || Error::Shape(format!("unknown quantale `{name}`"));
        let chain_len = |rest: &str| -> Result<usize> {
            let n: usize = rest.parse().map_err(|_| bad())?;
            if n == 0 || n > 4096 {
                return Err(bad());
            }
            Ok(n)
        };
        Ok(match name {
            "bool" | "2" => AnyQuantale::Table(TableQuantale::boolean()),
            "trivial" => AnyQuantale::Table(TableQuantale::trivial()),
            "lawvere" => AnyQuantale::Lawvere(Lawvere),
            _ => match name.split_once(':') {
                Some(("godel", n)) => AnyQuantale::Table(TableQuantale::godel(chain_len(n)?)),
                Some(("lukasiewicz", n)) => {
                    AnyQuantale::Table(TableQuantale::lukasiewicz(chain_len(n)?))
                }
                _ => return Err(bad()),
            },
        })
    }

    pub fn name(&self) -> String {
        match self {
            AnyQuantale::Table(q) => q.name(),
            AnyQuantale::Lawvere(q) => q.name(),
        }
    }
}

// ---------------------------------------------------------------------------
// Law checks

fn ids<Q: Quantale>(q: &Q, es: &[Q::Elem]) -> Vec<String> {
    es.iter().map(|&e| q.show(e)).collect()
}

/// Exhaustively checks the lattice axioms, the tensor laws, distributivity
/// of `⊗` over finite joins, and lattice distributivity (which on a finite
/// lattice is equivalent to complete distributivity).
///
/// Infinite (Lawvere) quantales get an analytic report.
pub fn check_quantale_laws<Q: Quantale>(q: &Q) -> LawReport {
    let mut r = LawReport::new();
    let Some(all) = q.elements() else {
        for law in [
            "partial-order",
            "lattice",
            "tensor-associative",
            "tensor-commutative",
            "tensor-unit",
            "tensor-distributes-over-joins",
            "completely-distributive",
        ] {
            r.analytic(law);
        }
        return r;
    };
    let es = &all;

    let mut w = None;
    'po: for &a in es {
        if !q.leq(a, a) {
            w = Some(ids(q, &[a]));
            break;
        }
        for &b in es {
            if a != b && q.leq(a, b) && q.leq(b, a) {
                w = Some(ids(q, &[a, b]));
                break 'po;
            }
            for &c in es {
                if q.leq(a, b) && q.leq(b, c) && !q.leq(a, c) {
                    w = Some(ids(q, &[a, b, c]));
                    break 'po;
                }
            }
        }
    }
    r.record("partial-order", w);

    let mut w = None;
    'lat: for &a in es {
        if !q.leq(q.bottom(), a) || !q.leq(a, q.top()) {
            w = Some(ids(q, &[a]));
            break;
        }
        for &b in es {
            let j = q.join(a, b);
            let m = q.meet(a, b);
            if !q.leq(a, j) || !q.leq(b, j) || !q.leq(m, a) || !q.leq(m, b) {
                w = Some(ids(q, &[a, b]));
                break 'lat;
            }
            for &c in es {
                let least = !(q.leq(a, c) && q.leq(b, c)) || q.leq(j, c);
                let greatest = !(q.leq(c, a) && q.leq(c, b)) || q.leq(c, m);
                if !least || !greatest {
                    w = Some(ids(q, &[a, b, c]));
                    break 'lat;
                }
            }
        }
    }
    r.record("lattice", w);

    let mut w = None;
    'assoc: for &a in es {
        for &b in es {
            for &c in es {
                if q.tensor(q.tensor(a, b), c) != q.tensor(a, q.tensor(b, c)) {
                    w = Some(ids(q, &[a, b, c]));
                    break 'assoc;
                }
            }
        }
    }
    r.record("tensor-associative", w);

    let w = es
        .iter()
        .flat_map(|&a| es.iter().map(move |&b| (a, b)))
        .find(|&(a, b)| q.tensor(a, b) != q.tensor(b, a))
        .map(|(a, b)| ids(q, &[a, b]));
    r.record("tensor-commutative", w);

    let w = es
        .iter()
        .find(|&&a| q.tensor(a, q.unit()) != a || q.tensor(q.unit(), a) != a)
        .map(|&a| ids(q, &[a]));
    r.record("tensor-unit", w);

    let mut w = es
        .iter()
        .find(|&&a| q.tensor(a, q.bottom()) != q.bottom())
        .map(|&a| ids(q, &[a, q.bottom()]));
    if w.is_none() {
        'dist: for &a in es {
            for &b in es {
                for &c in es {
                    if q.tensor(a, q.join(b, c)) != q.join(q.tensor(a, b), q.tensor(a, c)) {
                        w = Some(ids(q, &[a, b, c]));
                        break 'dist;
                    }
                }
            }
        }
    }
    r.record("tensor-distributes-over-joins", w);

    let mut w = None;
    'ld: for &a in es {
        for &b in es {
            for &c in es {
                if q.meet(a, q.join(b, c)) != q.join(q.meet(a, b), q.meet(a, c)) {
                    w = Some(ids(q, &[a, b, c]));
                    break 'ld;
                }
            }
        }
    }
    r.record("completely-distributive", w);
    r
}

/// The totally-below relation of a finite quantale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotallyBelow<E: Ord> {
    pairs: BTreeSet<(E, E)>,
}

impl<E: Ord + Copy> TotallyBelow<E> {
    /// `u ⋘ v`.
    pub fn holds(&self, u: E, v: E) -> bool {
        self.pairs.contains(&(u, v))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (E, E)> + '_ {
        self.pairs.iter().copied()
    }

    /// `⇓v = {u | u ⋘ v}`.
    pub fn below(&self, v: E) -> Vec<E> {
        self.pairs.iter().filter(|p| p.1 == v).map(|p| p.0).collect()
    }
}

/// `u ⋘ v` iff every subset `S` with `v ≤ ⋁S` contains some `s ≥ u`,
/// decided by searching all subsets. The empty subset participates, so
/// `u ⋘ ⊥` never holds.
pub fn totally_below<Q: Quantale>(q: &Q, caps: &Caps) -> Result<TotallyBelow<Q::Elem>> {
    let es = q.elements().ok_or(Error::NotFinite)?;
    let n = es.len();
    if n > caps.totally_below {
        return Err(Error::cap("quantale size for totally-below", caps.totally_below, n));
    }
    let subsets = 1usize << n;
    let mut joins = vec![q.bottom(); subsets];
    for mask in 1..subsets {
        let low = mask.trailing_zeros() as usize;
        joins[mask] = q.join(joins[mask & (mask - 1)], es[low]);
    }
    let up: Vec<usize> = es
        .iter()
        .map(|&u| (0..n).filter(|&i| q.leq(u, es[i])).fold(0, |m, i| m | (1 << i)))
        .collect();
    let mut pairs = BTreeSet::new();
    for (ui, &u) in es.iter().enumerate() {
        for &v in &es {
            let ok = (0..subsets).all(|mask| !q.leq(v, joins[mask]) || mask & up[ui] != 0);
            if ok {
                pairs.insert((u, v));
            }
        }
    }
    Ok(TotallyBelow { pairs })
}

/// Checks that `⇓k` is directed (non-empty, pairwise upper bounds inside),
/// that the quantale is non-trivial, and that `k ≤ u ⊗ v` implies both
/// `k ≤ u` and `k ≤ v`. Lawvere gets an analytic report.
pub fn check_assumptions<Q: Quantale>(q: &Q, caps: &Caps) -> Result<AssumptionReport> {
    let mut r = AssumptionReport::new();
    let Some(es) = q.elements() else {
        r.analytic("unit-approximated");
        r.analytic("non-trivial");
        r.analytic("unit-integral");
        return Ok(r);
    };
    let tb = totally_below(q, caps)?;
    let below_k = tb.below(q.unit());
    let directed = if below_k.is_empty() {
        Some(vec!["<empty>".to_string()])
    } else {
        below_k
            .iter()
            .flat_map(|&u| below_k.iter().map(move |&v| (u, v)))
            .find(|&(u, v)| !below_k.iter().any(|&w| q.leq(u, w) && q.leq(v, w)))
            .map(|(u, v)| ids(q, &[u, v]))
    };
    r.record("unit-approximated", directed);
    r.record(
        "non-trivial",
        q.is_trivial().then(|| ids(q, &[q.unit(), q.bottom()])),
    );
    let integral = es
        .iter()
        .flat_map(|&u| es.iter().map(move |&v| (u, v)))
        .find(|&(u, v)| {
            q.above_unit(q.tensor(u, v)) && !(q.above_unit(u) && q.above_unit(v))
        })
        .map(|(u, v)| ids(q, &[u, v]));
    r.record("unit-integral", integral);
    Ok(r)
}
