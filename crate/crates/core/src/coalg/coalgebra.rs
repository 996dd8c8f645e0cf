use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::quantale::Quantale;
use crate::report::LawReport;
use crate::vcat::{initial_structure, VCategory};

use super::functor::{eval_mor, eval_obj, FObject, FTerm, FunctorExpr};

/// A coalgebra `c: X → F X`, with `c x` stored as an index into `F X`.
#[derive(Debug, Clone)]
pub struct Coalgebra<Q: Quantale> {
    functor: FunctorExpr<Q>,
    carrier: VCategory<Q>,
    fx: FObject<Q>,
    structure: Vec<usize>,
}

impl<Q: Quantale> Coalgebra<Q> {
    /// Builds `F X` and locates every term in it. Set payloads may be any
    /// generating set; they are closed up in the evaluated object.
    pub fn new(functor: FunctorExpr<Q>, carrier: VCategory<Q>, terms: &[FTerm], caps: &Caps) -> Result<Self> {
        if terms.len() != carrier.len() {
            return Err(Error::Shape(format!(
                "structure has {} entries for {} states",
                terms.len(),
                carrier.len()
            )));
        }
        let fx = eval_obj(&functor, &carrier, caps)?;
        let structure = terms.iter().map(|t| fx.locate(t)).collect::<Result<Vec<_>>>()?;
        Ok(Coalgebra { functor, carrier, fx, structure })
    }

    /// From an index map into a prebuilt `F X`.
    pub fn from_indices(functor: FunctorExpr<Q>, carrier: VCategory<Q>, caps: &Caps, structure: Vec<usize>) -> Result<Self> {
        let fx = eval_obj(&functor, &carrier, caps)?;
        if structure.len() != carrier.len() || structure.iter().any(|&i| i >= fx.len()) {
            return Err(Error::Shape("structure map does not fit F X".into()));
        }
        Ok(Coalgebra { functor, carrier, fx, structure })
    }

    pub fn functor(&self) -> &FunctorExpr<Q> {
        &self.functor
    }

    pub fn carrier(&self) -> &VCategory<Q> {
        &self.carrier
    }

    pub fn fx(&self) -> &FObject<Q> {
        &self.fx
    }

    pub fn structure(&self) -> &[usize] {
        &self.structure
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    /// `c x` as a structural term (sets up-closed, sorted).
    pub fn term(&self, x: usize) -> FTerm {
        self.fx.decode(self.structure[x])
    }

    pub fn terms(&self) -> Vec<FTerm> {
        (0..self.len()).map(|x| self.term(x)).collect()
    }

    /// Carrier laws plus `a(x, y) ≤ Fa(c x, c y)`.
    pub fn check(&self) -> LawReport {
        let mut rep = self.carrier.check();
        let q = self.carrier.quantale();
        let n = self.len();
        let bad = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| !q.leq(self.carrier.a(x, y), self.fx.cat.a(self.structure[x], self.structure[y])));
        rep.record(
            "structure-v-functor",
            bad.map(|(x, y)| vec![self.carrier.state(x).into(), self.carrier.state(y).into()]),
        );
        rep
    }

    pub fn is_valid(&self) -> bool {
        self.check().all_pass()
    }
}

/// Checks that `h: X → Y` is a V-functor with `d ∘ h = F h ∘ c`.
pub fn coalg_hom_report<Q: Quantale>(h: &[usize], x: &Coalgebra<Q>, y: &Coalgebra<Q>) -> Result<LawReport> {
    if x.functor != y.functor {
        return Err(Error::Mismatch("coalgebras for different functors".into()));
    }
    if h.len() != x.len() || h.iter().any(|&v| v >= y.len()) {
        return Err(Error::Shape("map does not fit the carriers".into()));
    }
    let q = x.carrier.quantale();
    let n = x.len();
    let mut rep = LawReport::new();
    let bad = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| !q.leq(x.carrier.a(a, b), y.carrier.a(h[a], h[b])));
    rep.record(
        "v-functor",
        bad.map(|(a, b)| vec![x.carrier.state(a).into(), x.carrier.state(b).into()]),
    );
    let fh = eval_mor(h, &x.fx, &y.fx)?;
    let bad = (0..n).find(|&s| fh[x.structure[s]] != y.structure[h[s]]);
    rep.record("commutes", bad.map(|s| vec![x.carrier.state(s).into()]));
    Ok(rep)
}

pub fn is_coalg_hom<Q: Quantale>(h: &[usize], x: &Coalgebra<Q>, y: &Coalgebra<Q>) -> Result<bool> {
    Ok(coalg_hom_report(h, x, y)?.all_pass())
}

/// The equaliser of two homomorphisms and its inclusion.
#[derive(Debug, Clone)]
pub struct Equalizer<Q: Quantale> {
    pub coalgebra: Coalgebra<Q>,
    pub inclusion: Vec<usize>,
    pub rounds: usize,
}

/// Largest sub-coalgebra of `x` on which `f` and `g` agree.
///
/// Starts from the agreement set and repeatedly drops states whose
/// structure leaves the image of `F S` for the current set `S`. The
/// carrier is the restriction of `x`'s structure.
pub fn equalizer<Q: Quantale>(
    x: &Coalgebra<Q>,
    y: &Coalgebra<Q>,
    f: &[usize],
    g: &[usize],
    caps: &Caps,
) -> Result<Equalizer<Q>> {
    if x.functor != y.functor {
        return Err(Error::Mismatch("coalgebras for different functors".into()));
    }
    for m in [f, g] {
        if m.len() != x.len() || m.iter().any(|&v| v >= y.len()) {
            return Err(Error::Shape("map does not fit the carriers".into()));
        }
    }
    let mut keep: Vec<bool> = (0..x.len()).map(|s| f[s] == g[s]).collect();
    let mut rounds = 0;
    loop {
        let next: Vec<bool> =
            (0..x.len()).map(|s| keep[s] && x.fx.within(x.structure[s], &|t| keep[t])).collect();
        if next == keep {
            break;
        }
        keep = next;
        rounds += 1;
    }
    let inclusion: Vec<usize> = (0..x.len()).filter(|&s| keep[s]).collect();
    let mut pos = vec![usize::MAX; x.len()];
    for (i, &s) in inclusion.iter().enumerate() {
        pos[s] = i;
    }
    let carrier = x.carrier.restrict(&inclusion)?;
    let terms: Vec<FTerm> =
        inclusion.iter().map(|&s| x.fx.decode_within(x.structure[s], &|t| keep[t]).map_states(&|t| pos[t])).collect();
    let coalgebra = Coalgebra::new(x.functor.clone(), carrier, &terms, caps)?;
    Ok(Equalizer { coalgebra, inclusion, rounds })
}

/// Result of lifting a set-level coalgebra along a cone.
#[derive(Debug, Clone)]
pub struct InitialLift<Q: Quantale> {
    /// `(X, α_c)`.
    pub structure: VCategory<Q>,
    /// The coalgebra on `(X, α_c)`, set payloads closed up.
    pub coalgebra: Coalgebra<Q>,
    /// Every structure of the descent, starting with the initial lift of
    /// the cone and ending with `α_c`.
    pub descent: Vec<VCategory<Q>>,
}

/// Greatest structure `α` on the set `states` below the initial lift of
/// the cone for which `c: (X, α) → F(X, α)` is a V-functor.
///
/// `c` is read at the set level, with `H` interpreted as the full powerset
/// and its Hausdorff lifting. The descent is
/// `a₀ = ⋀ᵢ aᵢ(fᵢ −, fᵢ −)`, `a_{k+1}(x, y) = a_k(x, y) ∧ F̄a_k(c x, c y)`.
/// Each cone leg `(fᵢ, Yᵢ)` must satisfy `dᵢ(fᵢ x) = F fᵢ (c x)`, with sets
/// closed up in `Yᵢ`.
pub fn initial_lift_coalgebra<Q: Quantale>(
    functor: &FunctorExpr<Q>,
    q: &Q,
    states: Vec<String>,
    c: &[FTerm],
    cone: &[(Vec<usize>, Coalgebra<Q>)],
    caps: &Caps,
) -> Result<InitialLift<Q>> {
    let n = states.len();
    if c.len() != n {
        return Err(Error::Shape(format!("structure has {} entries for {} states", c.len(), n)));
    }
    for t in c {
        functor.fits(t, n)?;
    }
    for (f, y) in cone {
        if &y.functor != functor {
            return Err(Error::Mismatch("cone leg for a different functor".into()));
        }
        if f.len() != n || f.iter().any(|&v| v >= y.len()) {
            return Err(Error::Shape("cone leg is not a map on the carrier".into()));
        }
        for s in 0..n {
            let image = y.fx.locate(&c[s].map_states(&|t| f[t]))?;
            if image != y.structure[f[s]] {
                return Err(Error::Mismatch(format!("cone leg is not a coalgebra morphism at state {}", states[s])));
            }
        }
    }
    let legs: Vec<(Vec<usize>, VCategory<Q>)> = cone.iter().map(|(f, y)| (f.clone(), y.carrier.clone())).collect();
    lift_from(functor, initial_structure(q, states, &legs)?, c, caps)
}

/// The descent of [`initial_lift_coalgebra`] from an arbitrary starting
/// structure: the greatest structure below `start` making `c` a V-functor.
pub fn lift_from<Q: Quantale>(
    functor: &FunctorExpr<Q>,
    start: VCategory<Q>,
    c: &[FTerm],
    caps: &Caps,
) -> Result<InitialLift<Q>> {
    let n = start.len();
    if c.len() != n {
        return Err(Error::Shape(format!("structure has {} entries for {} states", c.len(), n)));
    }
    for t in c {
        functor.fits(t, n)?;
    }
    let q = start.quantale().clone();
    let states = start.states().to_vec();
    let mut cur = start;
    let mut descent = vec![cur.clone()];
    for _ in 0..caps.iterations {
        let base = |x: usize, y: usize| cur.a(x, y);
        let next = VCategory::from_fn(q.clone(), states.clone(), |x, y| {
            q.meet(cur.a(x, y), functor.set_value(&q, &base, &c[x], &c[y]))
        })?;
        if next == cur {
            let coalgebra = Coalgebra::new(functor.clone(), cur.clone(), c, caps)?;
            return Ok(InitialLift { structure: cur, coalgebra, descent });
        }
        descent.push(next.clone());
        cur = next;
    }
    Err(Error::Internal("initial-lift descent did not terminate".into()))
}
