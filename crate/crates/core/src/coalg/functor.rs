use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hausdorff::{image, up_closure, Subset};
use crate::quantale::Quantale;
use crate::vcat::{VCategory, VFunctor};

/// Hausdorff polynomial functors: the identity, constants, finite
/// products and sums, and composition with `H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FunctorExpr<Q: Quantale> {
    Id,
    Const(VCategory<Q>),
    Prod(Vec<FunctorExpr<Q>>),
    Sum(Vec<FunctorExpr<Q>>),
    /// `H ∘ F`.
    H(Box<FunctorExpr<Q>>),
}

impl<Q: Quantale> FunctorExpr<Q> {
    pub fn h(inner: FunctorExpr<Q>) -> Self {
        FunctorExpr::H(Box::new(inner))
    }

    /// `H ∘ Id`.
    pub fn h_id() -> Self {
        Self::h(FunctorExpr::Id)
    }

    pub fn contains_h(&self) -> bool {
        match self {
            FunctorExpr::Id | FunctorExpr::Const(_) => false,
            FunctorExpr::Prod(fs) | FunctorExpr::Sum(fs) => fs.iter().any(|f| f.contains_h()),
            FunctorExpr::H(_) => true,
        }
    }

    /// Quantale of the first constant leaf, if any.
    pub fn const_quantale(&self) -> Option<&Q> {
        match self {
            FunctorExpr::Id => None,
            FunctorExpr::Const(c) => Some(c.quantale()),
            FunctorExpr::Prod(fs) | FunctorExpr::Sum(fs) => fs.iter().find_map(|f| f.const_quantale()),
            FunctorExpr::H(f) => f.const_quantale(),
        }
    }

    fn check_quantale(&self, q: &Q) -> Result<()> {
        match self {
            FunctorExpr::Id => Ok(()),
            FunctorExpr::Const(c) if c.quantale() == q => Ok(()),
            FunctorExpr::Const(_) => Err(Error::Mismatch("constant over a different quantale".into())),
            FunctorExpr::Prod(fs) | FunctorExpr::Sum(fs) => fs.iter().try_for_each(|f| f.check_quantale(q)),
            FunctorExpr::H(f) => f.check_quantale(q),
        }
    }

    /// Checks that `t` has the shape of an element of the set-level functor
    /// on `n` states, where `H` is read as the full powerset.
    pub fn fits(&self, t: &FTerm, n: usize) -> Result<()> {
        let bad = |what: &str| Err(Error::Shape(format!("expected {what}, found {t}")));
        match (self, t) {
            (FunctorExpr::Id, FTerm::State(i)) if *i < n => Ok(()),
            (FunctorExpr::Id, FTerm::State(i)) => Err(Error::UnknownState(i.to_string())),
            (FunctorExpr::Id, _) => bad("a state"),
            (FunctorExpr::Const(c), FTerm::Point(i)) if *i < c.len() => Ok(()),
            (FunctorExpr::Const(_), FTerm::Point(i)) => Err(Error::UnknownState(i.to_string())),
            (FunctorExpr::Const(_), _) => bad("a constant point"),
            (FunctorExpr::Prod(fs), FTerm::Tuple(ts)) if fs.len() == ts.len() => {
                fs.iter().zip(ts).try_for_each(|(f, t)| f.fits(t, n))
            }
            (FunctorExpr::Prod(fs), _) => bad(&format!("a {}-tuple", fs.len())),
            (FunctorExpr::Sum(fs), FTerm::Inj(b, t)) if *b < fs.len() => fs[*b].fits(t, n),
            (FunctorExpr::Sum(_), _) => bad("an injection"),
            (FunctorExpr::H(f), FTerm::Set(ts)) => ts.iter().try_for_each(|t| f.fits(t, n)),
            (FunctorExpr::H(_), _) => bad("a set"),
        }
    }

    /// Lifted structure between two set-level terms, with `base` on states
    /// and the full-powerset Hausdorff formula for `H`.
    pub fn set_value(&self, q: &Q, base: &dyn Fn(usize, usize) -> Q::Elem, s: &FTerm, t: &FTerm) -> Q::Elem {
        match (self, s, t) {
            (FunctorExpr::Id, FTerm::State(i), FTerm::State(j)) => base(*i, *j),
            (FunctorExpr::Const(c), FTerm::Point(i), FTerm::Point(j)) => c.a(*i, *j),
            (FunctorExpr::Prod(fs), FTerm::Tuple(a), FTerm::Tuple(b)) => {
                q.meet_all(fs.iter().zip(a.iter().zip(b)).map(|(f, (x, y))| f.set_value(q, base, x, y)))
            }
            (FunctorExpr::Sum(fs), FTerm::Inj(i, x), FTerm::Inj(j, y)) => {
                if i == j {
                    fs[*i].set_value(q, base, x, y)
                } else {
                    q.bottom()
                }
            }
            (FunctorExpr::H(f), FTerm::Set(a), FTerm::Set(b)) => {
                q.meet_all(b.iter().map(|y| q.join_all(a.iter().map(|x| f.set_value(q, base, x, y)))))
            }
            _ => panic!("set_value on terms that do not fit the functor"),
        }
    }
}

impl<Q: Quantale> fmt::Display for FunctorExpr<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, fs: &[FunctorExpr<Q>], sep: &str, empty: &str| {
            if fs.is_empty() {
                return write!(f, "{empty}");
            }
            write!(f, "(")?;
            for (i, g) in fs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {sep} ")?;
                }
                write!(f, "{g}")?;
            }
            write!(f, ")")
        };
        match self {
            FunctorExpr::Id => write!(f, "Id"),
            FunctorExpr::Const(c) => write!(f, "Const[{}]", c.len()),
            FunctorExpr::Prod(fs) => list(f, fs, "×", "1"),
            FunctorExpr::Sum(fs) => list(f, fs, "+", "0"),
            FunctorExpr::H(g) => write!(f, "H({g})"),
        }
    }
}

/// A structural element of `F X`. Indices refer to carrier states
/// ([`FTerm::State`]) or to points of a constant ([`FTerm::Point`]). The
/// unit of the empty product is `Tuple(vec![])`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FTerm {
    State(usize),
    Point(usize),
    Tuple(Vec<FTerm>),
    Inj(usize, Box<FTerm>),
    Set(Vec<FTerm>),
}

impl FTerm {
    /// A set term in canonical form: sorted, without repeats.
    pub fn set(mut members: Vec<FTerm>) -> FTerm {
        members.sort();
        members.dedup();
        FTerm::Set(members)
    }

    pub fn inj(branch: usize, t: FTerm) -> FTerm {
        FTerm::Inj(branch, Box::new(t))
    }

    /// Relabels states along `f` (direct image on sets, no closure).
    pub fn map_states(&self, f: &dyn Fn(usize) -> usize) -> FTerm {
        match self {
            FTerm::State(i) => FTerm::State(f(*i)),
            FTerm::Point(i) => FTerm::Point(*i),
            FTerm::Tuple(ts) => FTerm::Tuple(ts.iter().map(|t| t.map_states(f)).collect()),
            FTerm::Inj(b, t) => FTerm::inj(*b, t.map_states(f)),
            FTerm::Set(ts) => FTerm::set(ts.iter().map(|t| t.map_states(f)).collect()),
        }
    }

    /// Canonical form: every set sorted and deduplicated.
    pub fn canonical(&self) -> FTerm {
        self.map_states(&|i| i)
    }

    /// All states mentioned anywhere in the term.
    pub fn states(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_states(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_states(&self, out: &mut Vec<usize>) {
        match self {
            FTerm::State(i) => out.push(*i),
            FTerm::Point(_) => {}
            FTerm::Tuple(ts) | FTerm::Set(ts) => ts.iter().for_each(|t| t.collect_states(out)),
            FTerm::Inj(_, t) => t.collect_states(out),
        }
    }
}

impl fmt::Display for FTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seq = |f: &mut fmt::Formatter<'_>, ts: &[FTerm], open: &str, close: &str| {
            write!(f, "{open}")?;
            for (i, t) in ts.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{t}")?;
            }
            write!(f, "{close}")
        };
        match self {
            FTerm::State(i) => write!(f, "s{i}"),
            FTerm::Point(i) => write!(f, "p{i}"),
            FTerm::Tuple(ts) => seq(f, ts, "(", ")"),
            FTerm::Inj(b, t) => write!(f, "in{b}({t})"),
            FTerm::Set(ts) => seq(f, ts, "{", "}"),
        }
    }
}

/// `F X` materialised: the V-category plus the shape needed to decode its
/// elements. Elements are addressed by index; nested values are never
/// expanded unless [`FObject::decode`] is called.
#[derive(Debug, Clone)]
pub struct FObject<Q: Quantale> {
    pub cat: VCategory<Q>,
    node: Node<Q>,
}

#[derive(Debug, Clone)]
enum Node<Q: Quantale> {
    Base,
    Const,
    Prod(Vec<FObject<Q>>),
    Sum { parts: Vec<FObject<Q>>, offsets: Vec<usize> },
    H { inner: Box<FObject<Q>>, sets: Vec<Subset>, index: HashMap<Subset, usize> },
}

fn prod_coords(sizes: &[usize], mut i: usize) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for k in (0..sizes.len()).rev() {
        out[k] = i % sizes[k];
        i /= sizes[k];
    }
    out
}

fn prod_index(sizes: &[usize], coords: &[usize]) -> usize {
    coords.iter().zip(sizes).fold(0, |acc, (&c, &n)| acc * n + c)
}

fn combine<Q: Quantale>(q: &Q, node: &Node<Q>, leaf: &[Q::Elem], tables: &[Vec<Q::Elem>]) -> Vec<Q::Elem> {
    match node {
        Node::Base | Node::Const => leaf.to_vec(),
        Node::Prod(parts) => {
            let sizes: Vec<usize> = parts.iter().map(|p| p.len()).collect();
            let n: usize = sizes.iter().product();
            let coords: Vec<Vec<usize>> = (0..n).map(|i| prod_coords(&sizes, i)).collect();
            let mut out = Vec::with_capacity(n * n);
            for ci in &coords {
                for cj in &coords {
                    out.push(q.meet_all((0..sizes.len()).map(|k| tables[k][ci[k] * sizes[k] + cj[k]])));
                }
            }
            out
        }
        Node::Sum { parts, offsets } => {
            let n = offsets.last().copied().unwrap_or(0);
            let mut out = vec![q.bottom(); n * n];
            for (k, p) in parts.iter().enumerate() {
                let (m, off) = (p.len(), offsets[k]);
                for i in 0..m {
                    for j in 0..m {
                        out[(off + i) * n + off + j] = tables[k][i * m + j];
                    }
                }
            }
            out
        }
        Node::H { inner, sets, .. } => {
            let m = inner.len();
            let t = &tables[0];
            let mut out = Vec::with_capacity(sets.len() * sets.len());
            for a in sets {
                for b in sets {
                    out.push(q.meet_all(b.iter().map(|y| q.join_all(a.iter().map(|x| t[x * m + y])))));
                }
            }
            out
        }
    }
}

impl<Q: Quantale> FObject<Q> {
    /// `X` itself, as the value of `Id`.
    pub fn base(x: &VCategory<Q>) -> Self {
        FObject { cat: x.clone(), node: Node::Base }
    }

    pub fn len(&self) -> usize {
        self.cat.len()
    }

    /// Same object with the states of its V-category renamed.
    pub fn renamed(self, names: Vec<String>) -> Result<Self> {
        let cat = VCategory::from_flat(self.cat.quantale().clone(), names, self.cat.flat().to_vec())?;
        Ok(FObject { cat, node: self.node })
    }

    pub fn is_empty(&self) -> bool {
        self.cat.is_empty()
    }

    fn children(&self) -> Vec<&FObject<Q>> {
        match &self.node {
            Node::Base | Node::Const => Vec::new(),
            Node::Prod(parts) | Node::Sum { parts, .. } => parts.iter().collect(),
            Node::H { inner, .. } => vec![inner],
        }
    }

    /// The structure this object would carry if the carrier's structure
    /// were `base` (a flat `n × n` table), keeping the same elements.
    pub fn lifted_table(&self, base: &[Q::Elem]) -> Vec<Q::Elem> {
        let q = self.cat.quantale();
        match &self.node {
            Node::Base => base.to_vec(),
            Node::Const => self.cat.flat().to_vec(),
            _ => {
                let tables: Vec<Vec<Q::Elem>> = self.children().iter().map(|c| c.lifted_table(base)).collect();
                combine(q, &self.node, &[], &tables)
            }
        }
    }

    /// Expands element `i` into a structural term.
    pub fn decode(&self, i: usize) -> FTerm {
        match &self.node {
            Node::Base => FTerm::State(i),
            Node::Const => FTerm::Point(i),
            Node::Prod(parts) => {
                let sizes: Vec<usize> = parts.iter().map(|p| p.len()).collect();
                FTerm::Tuple(prod_coords(&sizes, i).iter().zip(parts).map(|(&c, p)| p.decode(c)).collect())
            }
            Node::Sum { parts, offsets } => {
                let b = offsets.partition_point(|&o| o <= i) - 1;
                FTerm::inj(b, parts[b].decode(i - offsets[b]))
            }
            Node::H { inner, sets, .. } => FTerm::set(sets[i].iter().map(|j| inner.decode(j)).collect()),
        }
    }

    /// Index of a term; set members are up-closed first, so any generating
    /// set of an increasing subset is accepted.
    pub fn locate(&self, t: &FTerm) -> Result<usize> {
        let bad = |what: &str| Err(Error::Shape(format!("expected {what}, found {t}")));
        match (&self.node, t) {
            (Node::Base, FTerm::State(i)) | (Node::Const, FTerm::Point(i)) => {
                if *i < self.len() {
                    Ok(*i)
                } else {
                    Err(Error::UnknownState(i.to_string()))
                }
            }
            (Node::Base, _) => bad("a state"),
            (Node::Const, _) => bad("a constant point"),
            (Node::Prod(parts), FTerm::Tuple(ts)) if ts.len() == parts.len() => {
                let coords = parts.iter().zip(ts).map(|(p, t)| p.locate(t)).collect::<Result<Vec<_>>>()?;
                let sizes: Vec<usize> = parts.iter().map(|p| p.len()).collect();
                Ok(prod_index(&sizes, &coords))
            }
            (Node::Prod(parts), _) => bad(&format!("a {}-tuple", parts.len())),
            (Node::Sum { parts, offsets }, FTerm::Inj(b, t)) if *b < parts.len() => {
                Ok(offsets[*b] + parts[*b].locate(t)?)
            }
            (Node::Sum { .. }, _) => bad("an injection"),
            (Node::H { inner, index, .. }, FTerm::Set(ts)) => {
                let members = ts.iter().map(|t| inner.locate(t)).collect::<Result<Vec<_>>>()?;
                let up = up_closure(&inner.cat, Subset::from_indices(members));
                index.get(&up).copied().ok_or_else(|| Error::Internal("closed set missing from H".into()))
            }
            (Node::H { .. }, _) => bad("a set"),
        }
    }

    /// True iff element `i` lies in the image of `F S → F X` for the
    /// subset `S = keep` with the induced structure. A closed set is in the
    /// image when it is the up-closure of its members that are.
    pub fn within(&self, i: usize, keep: &dyn Fn(usize) -> bool) -> bool {
        match &self.node {
            Node::Base => keep(i),
            Node::Const => true,
            Node::Prod(parts) => {
                let sizes: Vec<usize> = parts.iter().map(|p| p.len()).collect();
                prod_coords(&sizes, i).iter().zip(parts).all(|(&c, p)| p.within(c, keep))
            }
            Node::Sum { parts, offsets } => {
                let b = offsets.partition_point(|&o| o <= i) - 1;
                parts[b].within(i - offsets[b], keep)
            }
            Node::H { inner, sets, .. } => {
                let inside = Subset::from_indices(sets[i].iter().filter(|&j| inner.within(j, keep)));
                up_closure(&inner.cat, inside) == sets[i]
            }
        }
    }

    /// Decodes element `i`, dropping set members outside the image of
    /// `F S`. For elements satisfying [`FObject::within`] the result only
    /// mentions states in `keep` and locates to the preimage of `i`.
    pub fn decode_within(&self, i: usize, keep: &dyn Fn(usize) -> bool) -> FTerm {
        match &self.node {
            Node::Base => FTerm::State(i),
            Node::Const => FTerm::Point(i),
            Node::Prod(parts) => {
                let sizes: Vec<usize> = parts.iter().map(|p| p.len()).collect();
                FTerm::Tuple(prod_coords(&sizes, i).iter().zip(parts).map(|(&c, p)| p.decode_within(c, keep)).collect())
            }
            Node::Sum { parts, offsets } => {
                let b = offsets.partition_point(|&o| o <= i) - 1;
                FTerm::inj(b, parts[b].decode_within(i - offsets[b], keep))
            }
            Node::H { inner, sets, .. } => FTerm::set(
                sets[i].iter().filter(|&j| inner.within(j, keep)).map(|j| inner.decode_within(j, keep)).collect(),
            ),
        }
    }
}

/// `F X`.
pub fn eval_obj<Q: Quantale>(f: &FunctorExpr<Q>, x: &VCategory<Q>, caps: &Caps) -> Result<FObject<Q>> {
    f.check_quantale(x.quantale())?;
    build(f, x, caps)
}

fn build<Q: Quantale>(f: &FunctorExpr<Q>, x: &VCategory<Q>, caps: &Caps) -> Result<FObject<Q>> {
    let q = x.quantale();
    let node = match f {
        FunctorExpr::Id => return Ok(FObject::base(x)),
        FunctorExpr::Const(c) => return Ok(FObject { cat: c.clone(), node: Node::Const }),
        FunctorExpr::Prod(fs) => {
            let parts = fs.iter().map(|g| build(g, x, caps)).collect::<Result<Vec<_>>>()?;
            let mut n: usize = 1;
            for p in &parts {
                n = n.checked_mul(p.len()).filter(|&v| v <= caps.object).ok_or_else(|| {
                    Error::cap("object size", caps.object, n.saturating_mul(p.len()))
                })?;
            }
            Node::Prod(parts)
        }
        FunctorExpr::Sum(fs) => {
            let parts = fs.iter().map(|g| build(g, x, caps)).collect::<Result<Vec<_>>>()?;
            let mut offsets = vec![0];
            for p in &parts {
                offsets.push(offsets.last().unwrap() + p.len());
            }
            let n = *offsets.last().unwrap();
            if n > caps.object {
                return Err(Error::cap("object size", caps.object, n));
            }
            Node::Sum { parts, offsets }
        }
        FunctorExpr::H(g) => {
            let inner = build(g, x, caps)?;
            let h = crate::hausdorff::hausdorff_object(&inner.cat, caps)?;
            let index = h.sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
            Node::H { inner: Box::new(inner), sets: h.sets, index }
        }
    };
    let child_objs: Vec<&FObject<Q>> = match &node {
        Node::Prod(parts) | Node::Sum { parts, .. } => parts.iter().collect(),
        Node::H { inner, .. } => vec![inner],
        _ => unreachable!(),
    };
    let tables: Vec<Vec<Q::Elem>> = child_objs.iter().map(|c| c.cat.flat().to_vec()).collect();
    let flat = combine(q, &node, &[], &tables);
    let names = names_for(&node, x);
    let cat = VCategory::from_flat(q.clone(), names, flat)?;
    Ok(FObject { cat, node })
}

fn names_for<Q: Quantale>(node: &Node<Q>, _x: &VCategory<Q>) -> Vec<String> {
    match node {
        Node::Base | Node::Const => unreachable!(),
        Node::Prod(parts) => {
            let sizes: Vec<usize> = parts.iter().map(|p| p.len()).collect();
            let n: usize = sizes.iter().product();
            (0..n)
                .map(|i| {
                    let cs: Vec<&str> = prod_coords(&sizes, i).iter().zip(parts).map(|(&c, p)| p.cat.state(c)).collect();
                    format!("({})", cs.join(","))
                })
                .collect()
        }
        Node::Sum { parts, .. } => parts
            .iter()
            .enumerate()
            .flat_map(|(b, p)| p.cat.states().iter().map(move |s| format!("in{b}:{s}")))
            .collect(),
        Node::H { inner, sets, .. } => sets
            .iter()
            .map(|s| {
                let ms: Vec<&str> = s.iter().map(|j| inner.cat.state(j)).collect();
                format!("{{{}}}", ms.join(","))
            })
            .collect(),
    }
}

/// `F f` as an index map `F X → F Y`, for objects built from the same
/// expression over the source and target of `f`.
pub fn eval_mor<Q: Quantale>(f: &[usize], src: &FObject<Q>, tgt: &FObject<Q>) -> Result<Vec<usize>> {
    let shape = || Error::Mismatch("objects come from different functor expressions".into());
    match (&src.node, &tgt.node) {
        (Node::Base, Node::Base) => {
            if f.len() != src.len() || f.iter().any(|&v| v >= tgt.len()) {
                return Err(Error::Shape("map does not fit the carriers".into()));
            }
            Ok(f.to_vec())
        }
        (Node::Const, Node::Const) if src.cat == tgt.cat => Ok((0..src.len()).collect()),
        (Node::Prod(a), Node::Prod(b)) if a.len() == b.len() => {
            let maps = a.iter().zip(b).map(|(s, t)| eval_mor(f, s, t)).collect::<Result<Vec<_>>>()?;
            let sa: Vec<usize> = a.iter().map(|p| p.len()).collect();
            let sb: Vec<usize> = b.iter().map(|p| p.len()).collect();
            Ok((0..src.len())
                .map(|i| {
                    let c: Vec<usize> = prod_coords(&sa, i).iter().zip(&maps).map(|(&c, m)| m[c]).collect();
                    prod_index(&sb, &c)
                })
                .collect())
        }
        (Node::Sum { parts: a, offsets: oa }, Node::Sum { parts: b, offsets: ob }) if a.len() == b.len() => {
            let mut out = Vec::with_capacity(src.len());
            for k in 0..a.len() {
                let m = eval_mor(f, &a[k], &b[k])?;
                out.extend(m.into_iter().map(|v| ob[k] + v));
            }
            debug_assert_eq!(out.len(), *oa.last().unwrap());
            Ok(out)
        }
        (Node::H { inner: a, sets, .. }, Node::H { inner: b, index, .. }) => {
            let m = eval_mor(f, a, b)?;
            sets.iter()
                .map(|&s| {
                    let up = up_closure(&b.cat, image(&m, s));
                    index.get(&up).copied().ok_or_else(|| Error::Internal("closed set missing from H".into()))
                })
                .collect()
        }
        _ => Err(shape()),
    }
}

/// `F f` as a V-functor, building both functor values.
pub fn eval_functor<Q: Quantale>(fe: &FunctorExpr<Q>, f: &VFunctor<Q>, caps: &Caps) -> Result<VFunctor<Q>> {
    let src = eval_obj(fe, &f.source, caps)?;
    let tgt = eval_obj(fe, &f.target, caps)?;
    let map = eval_mor(&f.map, &src, &tgt)?;
    VFunctor::new(src.cat, tgt.cat, map)
}
