//! Finite V-categories, V-functors and V-relations, with the standard
//! constructions: duals, symmetrisation, tensor and internal hom, initial
//! lifts of cones, joins in a fibre and the separated reflection.
//!
//! A V-category `(X, a)` is a finite carrier with a matrix `a: X × X → V`
//! such that `k ≤ a(x,x)` and `a(x,y) ⊗ a(y,z) ≤ a(x,z)`. The empty carrier
//! is legal everywhere.

use std::collections::HashSet;
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::quantale::Quantale;
use crate::report::LawReport;

/// A finite V-category. States are named; structure is a row-major matrix.
///
/// Equality is structural (quantale, state names in carrier order, matrix).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VCategory<Q: Quantale> {
    q: Q,
    states: Arc<[String]>,
    m: Arc<[Q::Elem]>,
}

impl<Q: Quantale> VCategory<Q> {
    /// Builds a category from a matrix given row by row. Only the shape is
    /// validated here; use [`VCategory::check`] for the laws.
    pub fn new(q: Q, states: Vec<String>, matrix: Vec<Vec<Q::Elem>>) -> Result<Self> {
        let n = states.len();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("structure matrix must be {n}x{n}")));
        }
        Self::from_flat(q, states, matrix.into_iter().flatten().collect())
    }

    pub fn from_flat(q: Q, states: Vec<String>, flat: Vec<Q::Elem>) -> Result<Self> {
        let n = states.len();
        if flat.len() != n * n {
            return Err(Error::Shape(format!("structure matrix must have {} entries", n * n)));
        }
        let distinct: HashSet<&String> = states.iter().collect();
        if distinct.len() != n {
            return Err(Error::Shape("duplicate state names".into()));
        }
        Ok(VCategory { q, states: states.into(), m: flat.into() })
    }

    pub fn from_fn(q: Q, states: Vec<String>, f: impl Fn(usize, usize) -> Q::Elem) -> Result<Self> {
        let n = states.len();
        let flat = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Self::from_flat(q, states, flat)
    }

    /// `k` on the diagonal, `⊥` elsewhere.
    pub fn discrete(q: Q, states: Vec<String>) -> Result<Self> {
        let (k, bot) = (q.unit(), q.bottom());
        Self::from_fn(q, states, |i, j| if i == j { k } else { bot })
    }

    /// Constantly `⊤`.
    pub fn indiscrete(q: Q, states: Vec<String>) -> Result<Self> {
        let top = q.top();
        Self::from_fn(q, states, |_, _| top)
    }

    /// The terminal one-point category, with structure `⊤`.
    pub fn point(q: Q) -> Self {
        Self::indiscrete(q, vec!["*".into()]).expect("one state")
    }

    /// The empty category.
    pub fn empty(q: Q) -> Self {
        Self::from_flat(q, Vec::new(), Vec::new()).expect("empty")
    }

    pub fn quantale(&self) -> &Q {
        &self.q
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &str {
        &self.states[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    /// `a(x, y)`.
    #[inline]
    pub fn a(&self, x: usize, y: usize) -> Q::Elem {
        self.m[x * self.len() + y]
    }

    pub fn flat(&self) -> &[Q::Elem] {
        &self.m
    }

    pub fn rows(&self) -> Vec<Vec<Q::Elem>> {
        let n = self.len();
        (0..n).map(|i| self.m[i * n..(i + 1) * n].to_vec()).collect()
    }

    /// Same carrier, different structure.
    pub fn with_flat(&self, flat: Vec<Q::Elem>) -> Result<Self> {
        Self::from_flat(self.q.clone(), self.states.to_vec(), flat)
    }

    /// Checks reflexivity and the tensor triangle inequality.
    pub fn check(&self) -> LawReport {
        let q = &self.q;
        let n = self.len();
        let mut r = LawReport::new();
        let refl = (0..n).find(|&x| !q.above_unit(self.a(x, x)));
        r.record("reflexivity", refl.map(|x| vec![self.states[x].clone()]));
        let mut trans = None;
        'outer: for x in 0..n {
            for y in 0..n {
                let axy = self.a(x, y);
                for z in 0..n {
                    if !q.leq(q.tensor(axy, self.a(y, z)), self.a(x, z)) {
                        trans = Some(vec![
                            self.states[x].clone(),
                            self.states[y].clone(),
                            self.states[z].clone(),
                        ]);
                        break 'outer;
                    }
                }
            }
        }
        r.record("transitivity", trans);
        r
    }

    pub fn is_valid(&self) -> bool {
        self.check().all_pass()
    }

    /// `a°(x, y) = a(y, x)`.
    pub fn dual(&self) -> Self {
        VCategory::from_fn(self.q.clone(), self.states.to_vec(), |i, j| self.a(j, i)).expect("same shape")
    }

    /// `a_s(x, y) = a(x, y) ∧ a(y, x)`.
    pub fn symmetrize(&self) -> Self {
        let q = &self.q;
        VCategory::from_fn(q.clone(), self.states.to_vec(), |i, j| q.meet(self.a(i, j), self.a(j, i)))
            .expect("same shape")
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.a(i, j) == self.a(j, i)))
    }

    /// Underlying order: `x ≤ y` whenever `k ≤ a(x, y)`.
    #[inline]
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.q.above_unit(self.a(x, y))
    }

    pub fn underlying_order(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        (0..n).map(|i| (0..n).map(|j| self.le(i, j)).collect()).collect()
    }

    /// The underlying order is antisymmetric.
    pub fn is_separated(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| i == j || !(self.le(i, j) && self.le(j, i))))
    }

    /// Quotient by `x ∼ y ⟺ x ≤ y ≤ x` with `ã([x],[y]) = a(x,y)`.
    ///
    /// Classes are represented by their least carrier index and keep that
    /// state's name. Independence from the representative is verified.
    pub fn separated_reflection(&self) -> Result<(VCategory<Q>, VFunctor<Q>)> {
        let n = self.len();
        let mut class = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if class[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for y in x..n {
                if self.le(x, y) && self.le(y, x) {
                    class[y] = c;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.a(x, y) != self.a(reps[class[x]], reps[class[y]]) {
                    return Err(Error::Internal(format!(
                        "quotient structure depends on representatives at ({}, {})",
                        self.states[x], self.states[y]
                    )));
                }
            }
        }
        let names = reps.iter().map(|&r| self.states[r].clone()).collect();
        let quotient = VCategory::from_fn(self.q.clone(), names, |i, j| self.a(reps[i], reps[j]))?;
        let proj = VFunctor::new(self.clone(), quotient.clone(), class)?;
        Ok((quotient, proj))
    }

    /// Restriction of the structure to the given carrier indices.
    pub fn restrict(&self, keep: &[usize]) -> Result<Self> {
        let names = keep.iter().map(|&i| self.states[i].clone()).collect();
        VCategory::from_fn(self.q.clone(), names, |i, j| self.a(keep[i], keep[j]))
    }

    /// Pointwise order on structures over the same carrier.
    pub fn structure_leq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.m.iter().zip(other.m.iter()).all(|(&a, &b)| self.q.leq(a, b))
    }
}

/// The finite quantale as a V-category with structure `hom`.
pub fn quantale_category<Q: Quantale>(q: &Q) -> Result<VCategory<Q>> {
    let es = q.elements().ok_or(Error::NotFinite)?;
    let names = es.iter().map(|&e| q.show(e)).collect();
    VCategory::from_fn(q.clone(), names, |i, j| q.hom(es[i], es[j]))
}

/// `(X,a) ⊗ (Y,b)` on `X × Y` with `a(x,x′) ⊗ b(y,y′)`. Pairs are ordered
/// with the first component varying slowest.
pub fn tensor<Q: Quantale>(x: &VCategory<Q>, y: &VCategory<Q>) -> Result<VCategory<Q>> {
    same_quantale(x, y)?;
    let q = x.quantale();
    let ny = y.len();
    let names = pair_names(x, y);
    VCategory::from_fn(q.clone(), names, |i, j| {
        q.tensor(x.a(i / ny, j / ny), y.a(i % ny, j % ny))
    })
}

/// Cartesian product on `X × Y` with the pointwise meet `a(x,x′) ∧ b(y,y′)`.
pub fn product<Q: Quantale>(x: &VCategory<Q>, y: &VCategory<Q>) -> Result<VCategory<Q>> {
    same_quantale(x, y)?;
    let q = x.quantale();
    let ny = y.len();
    VCategory::from_fn(q.clone(), pair_names(x, y), |i, j| {
        q.meet(x.a(i / ny, j / ny), y.a(i % ny, j % ny))
    })
}

fn pair_names<Q: Quantale>(x: &VCategory<Q>, y: &VCategory<Q>) -> Vec<String> {
    x.states()
        .iter()
        .flat_map(|a| y.states().iter().map(move |b| format!("({a},{b})")))
        .collect()
}

fn same_quantale<Q: Quantale>(x: &VCategory<Q>, y: &VCategory<Q>) -> Result<()> {
    if x.quantale() != y.quantale() {
        return Err(Error::Mismatch("V-categories over different quantales".into()));
    }
    Ok(())
}

/// `[X, Y]`: all V-functors `X → Y` with `[f,g] = ⋀ₓ b(f x, g x)`.
pub fn internal_hom<Q: Quantale>(
    x: &VCategory<Q>,
    y: &VCategory<Q>,
    caps: &Caps,
) -> Result<(VCategory<Q>, Vec<Vec<usize>>)> {
    same_quantale(x, y)?;
    let q = x.quantale();
    let maps = vfunctors_between(x, y, caps)?;
    let names = maps
        .iter()
        .map(|f| {
            let parts: Vec<String> = f
                .iter()
                .enumerate()
                .map(|(i, &fi)| format!("{}->{}", x.state(i), y.state(fi)))
                .collect();
            format!("[{}]", parts.join(","))
        })
        .collect();
    let cat = VCategory::from_fn(q.clone(), names, |i, j| {
        q.meet_all((0..x.len()).map(|p| y.a(maps[i][p], maps[j][p])))
    })?;
    Ok((cat, maps))
}

/// Initial structure `a(x,y) = ⋀ᵢ aᵢ(fᵢ x, fᵢ y)` on `states` along a cone.
/// The empty cone yields the indiscrete `⊤` structure.
pub fn initial_structure<Q: Quantale>(
    q: &Q,
    states: Vec<String>,
    cone: &[(Vec<usize>, VCategory<Q>)],
) -> Result<VCategory<Q>> {
    let n = states.len();
    for (f, t) in cone {
        if t.quantale() != q {
            return Err(Error::Mismatch("cone leg over a different quantale".into()));
        }
        if f.len() != n || f.iter().any(|&v| v >= t.len()) {
            return Err(Error::Shape("cone leg is not a map on the carrier".into()));
        }
    }
    VCategory::from_fn(q.clone(), states, |x, y| {
        q.meet_all(cone.iter().map(|(f, t)| t.a(f[x], f[y])))
    })
}

/// True iff the source structure equals the meet along the cone legs.
pub fn is_initial_cone<Q: Quantale>(source: &VCategory<Q>, cone: &[(Vec<usize>, VCategory<Q>)]) -> bool {
    match initial_structure(source.quantale(), source.states().to_vec(), cone) {
        Ok(lift) => lift.flat() == source.flat(),
        Err(_) => false,
    }
}

/// Least V-category structure pointwise above every input, obtained by
/// closing the pointwise join under `a ∨ (a ⊗∘ a) ∨ diag(k)`.
pub fn fibre_join<Q: Quantale>(
    q: &Q,
    states: Vec<String>,
    structures: &[Vec<Q::Elem>],
    caps: &Caps,
) -> Result<VCategory<Q>> {
    let n = states.len();
    if structures.iter().any(|s| s.len() != n * n) {
        return Err(Error::Shape("structure has the wrong size".into()));
    }
    let mut a: Vec<Q::Elem> = (0..n * n)
        .map(|i| {
            let base = if i / n == i % n { q.unit() } else { q.bottom() };
            structures.iter().fold(base, |acc, s| q.join(acc, s[i]))
        })
        .collect();
    for _ in 0..caps.iterations {
        let mut next = a.clone();
        for x in 0..n {
            for z in 0..n {
                let comp = q.join_all((0..n).map(|y| q.tensor(a[x * n + y], a[y * n + z])));
                next[x * n + z] = q.join(next[x * n + z], comp);
            }
        }
        if next == a {
            return VCategory::from_flat(q.clone(), states, a);
        }
        a = next;
    }
    Err(Error::cap("fibre join iterations", caps.iterations, caps.iterations + 1))
}

/// All V-functors `X → Y`, by backtracking. Fails when `|Y|^|X|` exceeds
/// the map cap.
pub fn vfunctors_between<Q: Quantale>(
    x: &VCategory<Q>,
    y: &VCategory<Q>,
    caps: &Caps,
) -> Result<Vec<Vec<usize>>> {
    same_quantale(x, y)?;
    Caps::check_power("candidate maps", y.len(), x.len(), caps.maps)?;
    let q = x.quantale();
    let n = x.len();
    let mut out = Vec::new();
    let mut f = vec![0usize; n];
    fn go<Q: Quantale>(
        q: &Q,
        x: &VCategory<Q>,
        y: &VCategory<Q>,
        i: usize,
        f: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == x.len() {
            out.push(f.clone());
            return;
        }
        for v in 0..y.len() {
            f[i] = v;
            let ok = (0..=i).all(|j| {
                q.leq(x.a(i, j), y.a(v, f[j])) && q.leq(x.a(j, i), y.a(f[j], v))
            });
            if ok {
                go(q, x, y, i + 1, f, out);
            }
        }
    }
    go(q, x, y, 0, &mut f, &mut out);
    Ok(out)
}

/// A map between V-categories over one quantale. Construction checks only
/// that the map is total; [`VFunctor::check`] checks monotonicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VFunctor<Q: Quantale> {
    pub source: VCategory<Q>,
    pub target: VCategory<Q>,
    pub map: Vec<usize>,
}

impl<Q: Quantale> VFunctor<Q> {
    pub fn new(source: VCategory<Q>, target: VCategory<Q>, map: Vec<usize>) -> Result<Self> {
        same_quantale(&source, &target)?;
        if map.len() != source.len() || map.iter().any(|&v| v >= target.len()) {
            return Err(Error::Shape("map is not total into the target".into()));
        }
        Ok(VFunctor { source, target, map })
    }

    pub fn identity(x: &VCategory<Q>) -> Self {
        VFunctor { source: x.clone(), target: x.clone(), map: (0..x.len()).collect() }
    }

    pub fn constant(x: &VCategory<Q>, y: &VCategory<Q>, point: usize) -> Result<Self> {
        Self::new(x.clone(), y.clone(), vec![point; x.len()])
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &VFunctor<Q>) -> Result<Self> {
        if self.target != g.source {
            return Err(Error::Mismatch("composable functors need matching middle object".into()));
        }
        let map = self.map.iter().map(|&v| g.map[v]).collect();
        Ok(VFunctor { source: self.source.clone(), target: g.target.clone(), map })
    }

    /// Checks `a(x,y) ≤ b(f x, f y)`; the witness is the offending pair.
    pub fn check(&self) -> LawReport {
        let q = self.source.quantale();
        let n = self.source.len();
        let mut r = LawReport::new();
        let bad = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| !q.leq(self.source.a(x, y), self.target.a(self.map[x], self.map[y])));
        r.record(
            "v-functor",
            bad.map(|(x, y)| vec![self.source.state(x).to_string(), self.source.state(y).to_string()]),
        );
        r
    }

    pub fn is_valid(&self) -> bool {
        self.check().all_pass()
    }

    /// `a(x,y) = b(f x, f y)` for all `x, y`.
    pub fn is_initial(&self) -> bool {
        is_initial_cone(&self.source, &[(self.map.clone(), self.target.clone())])
    }

    pub fn is_injective(&self) -> bool {
        let set: HashSet<usize> = self.map.iter().copied().collect();
        set.len() == self.map.len()
    }
}

/// A V-relation `r: X ⇸ Y`: any matrix `X × Y → V`, no laws.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VRelation<Q: Quantale> {
    q: Q,
    rows: usize,
    cols: usize,
    m: Vec<Q::Elem>,
}

impl<Q: Quantale> VRelation<Q> {
    pub fn from_fn(q: Q, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Q::Elem) -> Self {
        let m = (0..rows * cols).map(|i| f(i / cols.max(1), i % cols.max(1))).collect();
        VRelation { q, rows, cols, m }
    }

    /// Graph of a map `f: X → Y`: `k` on `(x, f x)`, `⊥` elsewhere.
    pub fn graph(q: Q, f: &[usize], cols: usize) -> Self {
        let (k, bot) = (q.unit(), q.bottom());
        Self::from_fn(q, f.len(), cols, |x, y| if f[x] == y { k } else { bot })
    }

    pub fn of_category(x: &VCategory<Q>) -> Self {
        Self::from_fn(x.quantale().clone(), x.len(), x.len(), |i, j| x.a(i, j))
    }

    pub fn quantale(&self) -> &Q {
        &self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn r(&self, x: usize, y: usize) -> Q::Elem {
        self.m[x * self.cols + y]
    }

    pub fn converse(&self) -> Self {
        Self::from_fn(self.q.clone(), self.cols, self.rows, |y, x| self.r(x, y))
    }

    /// `(s · r)(x, z) = ⋁_y r(x, y) ⊗ s(y, z)` for `r = self`.
    pub fn then(&self, s: &VRelation<Q>) -> Result<Self> {
        if self.cols != s.rows {
            return Err(Error::Mismatch("relations are not composable".into()));
        }
        let q = &self.q;
        Ok(Self::from_fn(q.clone(), self.rows, s.cols, |x, z| {
            q.join_all((0..self.cols).map(|y| q.tensor(self.r(x, y), s.r(y, z))))
        }))
    }

    /// Pointwise order.
    pub fn leq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.m.iter().zip(&other.m).all(|(&a, &b)| self.q.leq(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{Dist, Lawvere, TableQuantale};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn c2() -> VCategory<TableQuantale> {
        let q = TableQuantale::boolean();
        let (o, i) = (q.bottom(), q.top());
        VCategory::new(q, names(&["u", "v"]), vec![vec![i, i], vec![o, i]]).unwrap()
    }

    fn line() -> VCategory<Lawvere> {
        let pts = [0i64, 1, 3];
        VCategory::from_fn(Lawvere, names(&["0", "1", "3"]), |i, j| Dist::int((pts[i] - pts[j]).abs()))
            .unwrap()
    }

    #[test]
    fn law_checks() {
        let q = TableQuantale::boolean();
        assert!(VCategory::discrete(q.clone(), names(&["a", "b", "c"])).unwrap().is_valid());
        assert!(line().is_valid());
        let broken =
            VCategory::new(q.clone(), names(&["u", "v"]), vec![vec![q.bottom(), q.top()], vec![q.bottom(), q.top()]])
                .unwrap();
        let r = broken.check();
        assert_eq!(r.get("reflexivity").unwrap().witness, vec!["u".to_string()]);
    }

    #[test]
    fn dual_and_symmetrize() {
        let l = line();
        assert_eq!(l.dual(), l);
        let s = c2().symmetrize();
        assert_eq!(s, VCategory::discrete(TableQuantale::boolean(), names(&["u", "v"])).unwrap());
        let asym =
            VCategory::from_fn(Lawvere, names(&["0", "2"]), |i, j| Dist::int((2 * j as i64 - 2 * i as i64).max(0)))
                .unwrap();
        assert!(asym.is_valid());
        assert_eq!(asym.symmetrize().a(0, 1), Dist::int(2));
    }

    #[test]
    fn order_and_separation() {
        let q = TableQuantale::boolean();
        let ind = VCategory::indiscrete(q, names(&["x", "y"])).unwrap();
        assert!(!ind.is_separated());
        assert!(c2().is_separated());
        assert_eq!(c2().underlying_order(), vec![vec![true, true], vec![false, true]]);
        let l = line();
        let order = l.underlying_order();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(order[i][j], i == j);
            }
        }
    }

    #[test]
    fn separated_reflection_cases() {
        let q = TableQuantale::boolean();
        let (sep, p) = c2().separated_reflection().unwrap();
        assert_eq!(sep, c2());
        assert_eq!(p.map, vec![0, 1]);
        let ind = VCategory::indiscrete(q.clone(), names(&["x", "y"])).unwrap();
        let (one, _) = ind.separated_reflection().unwrap();
        assert_eq!(one.len(), 1);
        // u ~ v, w apart, u ≤ w
        let (o, i) = (q.bottom(), q.top());
        let x = VCategory::new(
            q,
            names(&["u", "v", "w"]),
            vec![vec![i, i, i], vec![i, i, i], vec![o, o, i]],
        )
        .unwrap();
        assert!(x.is_valid());
        let (s, proj) = x.separated_reflection().unwrap();
        assert_eq!(s.states(), &names(&["u", "w"])[..]);
        assert_eq!(s.rows(), vec![vec![i, i], vec![o, i]]);
        assert_eq!(proj.map, vec![0, 0, 1]);
        assert!(proj.is_initial() && s.is_separated());
    }

    #[test]
    fn tensor_unit_and_internal_hom() {
        let caps = Caps::default();
        let q = TableQuantale::boolean();
        let unit = VCategory::discrete(q.clone(), names(&["*"])).unwrap();
        let t = tensor(&c2(), &unit).unwrap();
        assert_eq!(t.flat(), c2().flat());
        let (h, maps) = internal_hom(&c2(), &c2(), &caps).unwrap();
        assert_eq!(maps, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert!(h.is_valid());
        // pointwise order: const u ≤ id ≤ const v
        assert!(h.le(0, 1) && h.le(1, 2) && !h.le(2, 0));

        let l = line();
        let (lh, lmaps) = internal_hom(&VCategory::discrete(Lawvere, names(&["p", "q"])).unwrap(), &l, &caps).unwrap();
        let f = lmaps.iter().position(|m| m == &vec![0, 1]).unwrap();
        let g = lmaps.iter().position(|m| m == &vec![2, 2]).unwrap();
        // sup of pointwise distances |0-3|, |1-3|
        assert_eq!(lh.a(f, g), Dist::int(3));
    }

    #[test]
    fn initial_structures() {
        let q = TableQuantale::boolean();
        let st = names(&["u", "v"]);
        let lifted = initial_structure(&q, st.clone(), &[(vec![0, 1], c2())]).unwrap();
        assert_eq!(lifted.flat(), c2().flat());
        let empty = initial_structure(&q, st.clone(), &[]).unwrap();
        assert!(empty.flat().iter().all(|&e| e == q.top()));
        let two = initial_structure(&q, st, &[(vec![0, 1], c2()), (vec![1, 1], c2())]).unwrap();
        assert_eq!(two.flat(), c2().flat());
        let swap_const = initial_structure(&q, names(&["a", "b"]), &[(vec![1, 0], c2()), (vec![0, 0], c2())]).unwrap();
        let (o, i) = (q.bottom(), q.top());
        assert_eq!(swap_const.rows(), vec![vec![i, o], vec![i, i]]);
        assert!(is_initial_cone(&swap_const, &[(vec![1, 0], c2()), (vec![0, 0], c2())]));
        assert!(!is_initial_cone(&c2(), &[(vec![0, 0], VCategory::point(q))]));
    }

    #[test]
    fn fibre_join_closes_transitively() {
        let caps = Caps::default();
        let q = TableQuantale::boolean();
        let (o, i) = (q.bottom(), q.top());
        let up = vec![i, i, o, i];
        let down = vec![i, o, i, i];
        let j = fibre_join(&q, names(&["u", "v"]), &[up.clone(), down], &caps).unwrap();
        assert!(j.flat().iter().all(|&e| e == i));
        let single = fibre_join(&q, names(&["u", "v"]), &[up.clone()], &caps).unwrap();
        assert_eq!(single.flat(), &up[..]);
        let d = vec![i, o, o, i];
        let dj = fibre_join(&q, names(&["u", "v"]), &[d.clone(), d.clone()], &caps).unwrap();
        assert_eq!(dj.flat(), &d[..]);
    }

    #[test]
    fn vfunctor_checks_and_enumeration() {
        let caps = Caps::default();
        let q = TableQuantale::boolean();
        assert!(VFunctor::identity(&c2()).is_valid());
        let swap = VFunctor::new(c2(), c2(), vec![1, 0]).unwrap();
        let r = swap.check();
        assert_eq!(r.get("v-functor").unwrap().witness, names(&["u", "v"]));
        let disc = VCategory::discrete(q.clone(), names(&["a", "b"])).unwrap();
        assert_eq!(vfunctors_between(&c2(), &c2(), &caps).unwrap().len(), 3);
        assert_eq!(vfunctors_between(&c2(), &disc, &caps).unwrap(), vec![vec![0, 0], vec![1, 1]]);
        let pt = VCategory::discrete(q.clone(), names(&["*"])).unwrap();
        assert_eq!(vfunctors_between(&pt, &c2(), &caps).unwrap().len(), 2);
        let small = Caps { maps: 3, ..caps };
        assert!(vfunctors_between(&c2(), &c2(), &small).unwrap_err().is_cap());
        assert!(VFunctor::constant(&c2(), &c2(), 1).unwrap().is_valid());
    }

    #[test]
    fn empty_carrier_is_legal() {
        let q = TableQuantale::boolean();
        let e = VCategory::empty(q.clone());
        assert!(e.is_valid() && e.is_separated());
        let caps = Caps::default();
        assert_eq!(vfunctors_between(&e, &c2(), &caps).unwrap(), vec![Vec::<usize>::new()]);
        assert!(vfunctors_between(&c2(), &e, &caps).unwrap().is_empty());
    }

    #[test]
    fn relation_composition() {
        let q = TableQuantale::boolean();
        let r = VRelation::graph(q.clone(), &[1, 0], 2);
        let s = VRelation::graph(q.clone(), &[1, 1], 2);
        let rs = r.then(&s).unwrap();
        assert_eq!(rs, VRelation::graph(q, &[1, 1], 2));
        assert_eq!(r.converse().converse(), r);
    }
}
