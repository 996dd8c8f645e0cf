//! Seeded randomized law suites over small instances.
//!
//! Each case draws its quantale from a fixed rotation (two truth values,
//! the three-element Gödel and Łukasiewicz chains, Lawvere) and its
//! instance from a generator seeded by `(seed, suite, case)`, so results do
//! not depend on execution order or thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::caps::Caps;
use crate::coalg::{
    behavior_maps, behavioral_distance_via_chain, distance_tables, eval_mor, eval_obj, final_chain,
    FunctorExpr,
};
use crate::error::{Error, Result};
use crate::gen::{hom_triple, random_coalgebra, random_vcategory, state_names, Sample};
use crate::hausdorff::{
    check_lax_axioms, down_closure, hausdorff_map_between, hausdorff_object, hausdorff_value, image, is_increasing,
    monad_mult, monad_unit, powerset_lift, preimage, symmetric_hausdorff, up_closure, Subset,
};
use crate::par::{self, Mode};
use crate::quantale::{Lawvere, Quantale, TableQuantale};
use crate::report::LawReport;
use crate::vcat::{initial_structure, internal_hom, product, tensor, vfunctors_between, VCategory, VFunctor, VRelation};

pub const SUITES: &[&str] = &[
    "vcat-constructions",
    "monad",
    "hausdorff-formulas",
    "closures",
    "initiality",
    "lax-extension",
    "functor-laws",
    "behaviour",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseFailure {
    pub case: usize,
    pub quantale: String,
    pub law: String,
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub cases: usize,
    pub checks: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<CaseFailure>,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

trait Suite: Sync {
    fn run<Q: Sample>(&self, q: &Q, rng: &mut ChaCha8Rng, caps: &Caps) -> Result<LawReport>;
}

fn case_rng(seed: u64, suite: usize, case: usize) -> ChaCha8Rng {
    let mixed = seed ^ ((suite as u64 + 1) << 48) ^ (case as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    ChaCha8Rng::seed_from_u64(mixed)
}

fn dispatch<S: Suite>(s: &S, case: usize, rng: &mut ChaCha8Rng, caps: &Caps) -> (String, Result<LawReport>) {
    match case % 4 {
        0 => {
            let q = TableQuantale::boolean();
            (q.name(), s.run(&q, rng, caps))
        }
        1 => {
            let q = TableQuantale::godel(3);
            (q.name(), s.run(&q, rng, caps))
        }
        2 => {
            let q = TableQuantale::lukasiewicz(3);
            (q.name(), s.run(&q, rng, caps))
        }
        _ => (Lawvere.name(), s.run(&Lawvere, rng, caps)),
    }
}

fn run_with<S: Suite>(s: &S, index: usize, cases: usize, seed: u64, mode: Mode, caps: &Caps) -> SuiteSummary {
    let results = par::map_range(mode, cases, |case| {
        let mut rng = case_rng(seed, index, case);
        dispatch(s, case, &mut rng, caps)
    });
    let mut checks = 0;
    let mut failures = 0;
    let mut first_failure = None;
    for (case, (quantale, res)) in results.into_iter().enumerate() {
        let rep = res.unwrap_or_else(|e| {
            let mut r = LawReport::new();
            r.fail("error", vec![e.to_string()]);
            r
        });
        checks += rep.entries.len();
        for e in rep.failures() {
            failures += 1;
            if first_failure.is_none() {
                first_failure =
                    Some(CaseFailure { case, quantale: quantale.clone(), law: e.law.clone(), witness: e.witness.clone() });
            }
        }
    }
    SuiteSummary { suite: SUITES[index].to_string(), cases, checks, failures, first_failure }
}

/// Runs one named suite.
pub fn run_suite(name: &str, cases: usize, seed: u64, mode: Mode, caps: &Caps) -> Result<SuiteSummary> {
    let index = SUITES.iter().position(|s| *s == name).ok_or_else(|| Error::Shape(format!("unknown suite `{name}`")))?;
    Ok(match index {
        0 => run_with(&Constructions, index, cases, seed, mode, caps),
        1 => run_with(&Monad, index, cases, seed, mode, caps),
        2 => run_with(&Formulas, index, cases, seed, mode, caps),
        3 => run_with(&Closures, index, cases, seed, mode, caps),
        4 => run_with(&Initiality, index, cases, seed, mode, caps),
        5 => run_with(&Lax, index, cases, seed, mode, caps),
        6 => run_with(&FunctorLaws, index, cases, seed, mode, caps),
        _ => run_with(&Behaviour, index, cases, seed, mode, caps),
    })
}

pub fn run_all(cases: usize, seed: u64, mode: Mode, caps: &Caps) -> Vec<SuiteSummary> {
    SUITES.iter().map(|s| run_suite(s, cases, seed, mode, caps).expect("listed suite")).collect()
}

fn show<Q: Quantale>(x: &VCategory<Q>) -> String {
    let q = x.quantale();
    let rows: Vec<String> = x
        .rows()
        .iter()
        .map(|r| r.iter().map(|&e| q.show(e)).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

fn check(rep: &mut LawReport, law: &str, ok: bool, ctx: impl FnOnce() -> Vec<String>) {
    rep.record(law, (!ok).then(ctx));
}

fn random_subset<R: Rng>(n: usize, rng: &mut R) -> Subset {
    Subset(rng.gen::<u64>() & Subset::full(n).0)
}

fn pick<'a, T, R: Rng>(items: &'a [T], rng: &mut R) -> Option<&'a T> {
    (!items.is_empty()).then(|| &items[rng.gen_range(0..items.len())])
}

fn random_functor_into<Q: Sample, R: Rng>(x: &VCategory<Q>, y: &VCategory<Q>, rng: &mut R, caps: &Caps) -> Result<Vec<usize>> {
    let all = vfunctors_between(x, y, caps)?;
    pick(&all, rng).cloned().ok_or_else(|| Error::Internal("no V-functor between integral instances".into()))
}

struct Constructions;

impl Suite for Constructions {
    fn run<Q: Sample>(&self, q: &Q, rng: &mut ChaCha8Rng, caps: &Caps) -> Result<LawReport> {
        let x = random_vcategory(q, rng.gen_range(1..=3), 0.4, rng)?;
        let y = random_vcategory(q, rng.gen_range(1..=3), 0.4, rng)?;
        let ctx = || vec![show(&x), show(&y)];
        let mut rep = LawReport::new();
        check(&mut rep, "dual", x.dual().is_valid(), ctx);
        let s = x.symmetrize();
        check(&mut rep, "symmetrize", s.is_valid() && s.is_symmetric() && s.structure_leq(&x), ctx);
        let t = tensor(&x, &y)?;
        check(&mut rep, "tensor", t.is_valid(), ctx);
        let p = product(&x, &y)?;
        check(&mut rep, "product", p.is_valid(), ctx);
        let (hom, maps) = internal_hom(&x, &y, caps)?;
        check(&mut rep, "internal-hom", hom.is_valid(), ctx);
        // evaluation [X, Y] ⊗ X → Y
        let th = tensor(&hom, &x)?;
        let ev = VFunctor::new(th, y.clone(), (0..maps.len() * x.len()).map(|i| maps[i / x.len()][i % x.len()]).collect())?;
        check(&mut rep, "evaluation", ev.is_valid(), ctx);
        let h = hausdorff_object(&x, caps)?;
        check(&mut rep, "hausdorff", h.cat.is_valid() && h.cat.is_separated(), ctx);
        let sum = eval_obj(&FunctorExpr::Sum(vec![FunctorExpr::Id, FunctorExpr::Const(y.clone())]), &x, caps)?;
        check(&mut rep, "sum", sum.cat.is_valid(), ctx);
        let (sep, proj) = x.separated_reflection()?;
        check(&mut rep, "separated-reflection", sep.is_valid() && sep.is_separated() && proj.is_valid(), ctx);
        let f = VFunctor::new(x.clone(), y.clone(), random_functor_into(&x, &y, rng, caps)?)?;
        let g = VFunctor::new(y.clone(), x.clone(), random_functor_into(&y, &x, rng, caps)?)?;
        check(&mut rep, "identity", VFunctor::identity(&x).is_valid(), ctx);
        check(&mut rep, "composition", f.then(&g)?.is_valid() && g.then(&f)?.is_valid(), ctx);
        Ok(rep)
    }
}

struct Monad;

impl Suite for Monad {
    fn run<Q: Sample>(&self, q: &Q, rng: &mut ChaCha8Rng, caps: &Caps) -> Result<LawReport> {
        let n = if rng.gen_bool(0.25) { 3 } else { rng.gen_range(1..=2) };
        let x = random_vcategory(q, n, 0.4, rng)?;
        let y = random_vcategory(q, rng.gen_range(1..=2), 0.4, rng)?;
        let ctx = || vec![show(&x), show(&y)];
        let mut rep = LawReport::new();

        let h = hausdorff_object(&x, caps)?;
        let hh = hausdorff_object(&h.cat, caps)?;
        let hhh = hausdorff_object(&hh.cat, caps)?;
        let eta = monad_unit(&h);
        let eta_h = monad_unit(&hh);
        let mu = monad_mult(&h, &hh)?;
        let mu_h = monad_mult(&hh, &hhh)?;
        let h_eta = hausdorff_map_between(&eta.map, &h, &hh);
        let h_mu = hausdorff_map_between(&mu.map, &hhh, &hh);
        check(&mut rep, "unit-v-functor", eta.is_valid() && eta_h.is_valid(), ctx);
        check(&mut rep, "mult-v-functor", mu.is_valid() && mu_h.is_valid(), ctx);
        let id: Vec<usize> = (0..h.len()).collect();
        check(&mut rep, "left-unit", eta_h.map.iter().map(|&i| mu.map[i]).eq(id.iter().copied()), ctx);
        check(&mut rep, "right-unit", h_eta.iter().map(|&i| mu.map[i]).eq(id.iter().copied()), ctx);
        let assoc = (0..hhh.len()).all(|i| mu.map[h_mu[i]] == mu.map[mu_h.map[i]]);
        check(&mut rep, "associativity", assoc, ctx);

        let f = random_functor_into(&x, &y, rng, caps)?;
        let hy = hausdorff_object(&y, caps)?;
        let hhy = hausdorff_object(&hy.cat, caps)?;
        let hf = hausdorff_map_between(&f, &h, &hy);
        let hhf = hausdorff_map_between(&hf, &hh, &hhy);
        let eta_y = monad_unit(&hy);
        let mu_y = monad_mult(&hy, &hhy)?;
        check(&mut rep, "unit-natural", (0..x.len()).all(|s| hf[eta.map[s]] == eta_y.map[f[s]]), ctx);
        check(&mut rep, "mult-natural", (0..hh.len()).all(|i| hf[mu.map[i]] == mu_y.map[hhf[i]]), ctx);

        let union_pre = (0..hh.len()).all(|i| {
            let fam = hh.sets[i];
            h.sets[mu.map[i]] == Subset::from_indices((0..x.len()).filter(|&s| fam.contains(eta.map[s])))
        });
        check(&mut rep, "union-is-preimage", union_pre, ctx);
        let adj = (0..hh.len()).all(|i| (0..h.len()).all(|a| h.cat.le(mu.map[i], a) == hh.cat.le(i, h_eta[a])));
        check(&mut rep, "mult-left-adjoint", adj, ctx);
        check(&mut rep, "kz", (0..h.len()).all(|a| hh.cat.le(eta_h.map[a], h_eta[a])), ctx);
        Ok(rep)
    }
}

struct Formulas;

impl Suite for Formulas {
    fn run<Q: Sample>(&self, q: &Q, rng: &mut ChaCha8Rng, caps: &Caps) -> Result<LawReport> {
        let n = rng.gen_range(1..=4);
        let x = random_vcategory(q, n, 0.4, rng)?;
        let (a, b) = (random_subset(n, rng), random_subset(n, rng));
        let ctx = || vec![show(&x), a.to_string(), b.to_string()];
        let mut rep = LawReport::new();
        let v = hausdorff_value(&x, a, b);
        check(&mut rep, "unit-iff-contained", q.above_unit(v) == b.is_subset(up_closure(&x, a)), ctx);
        check(&mut rep, "close-right", hausdorff_value(&x, a, up_closure(&x, b)) == v, ctx);
        check(&mut rep, "close-left", hausdorff_value(&x, up_closure(&x, a), b) == v, ctx);
        check(&mut rep, "symmetric", symmetric_hausdorff(&x, a, b) == symmetric_hausdorff(&x, b, a), ctx);
        let h = hausdorff_object(&x, caps)?;
        let order = (0..h.len()).all(|i| (0..h.len()).all(|j| h.cat.le(i, j) == h.sets[j].is_subset(h.sets[i])));
        check(&mut rep, "separated-containment", h.cat.is_separated() && order, ctx);
        if n <= 3 {
            check(&mut rep, "powerset-structure", powerset_lift(&x, caps)?.is_valid(), ctx);
        }
        Ok(rep)
    }
}

/// `X` with a V-functor `f: X → Y`: the structure on `X` is the meet of the
/// initial structure along a random map with a random structure.
fn functor_pair<Q: Sample, R: Rng>(q: &Q, rng: &mut R) -> Result<(VCategory<Q>, VCategory<Q>, Vec<usize>)> {
    let y = random_vcategory(q, rng.gen_range(1..=3), 0.4, rng)?;
    let n = rng.gen_range(1..=4);
    let f: Vec<usize> = (0..n).map(|_| rng.gen_range(0..y.len())).collect();
    let init = initial_structure(q, state_names(n), &[(f.clone(), y.clone())])?;
    let other = random_vcategory(q, n, 0.5, rng)?;
    let x = VCategory::from_fn(q.clone(), state_names(n), |i, j| q.meet(init.a(i, j), other.a(i, j)))?;
    Ok((x, y, f))
}

struct Closures;

impl Suite for Closures {
    fn run<Q: Sample>(&self, q: &Q, rng: &mut ChaCha8Rng, _caps: &Caps) -> Result<LawReport> {
        let (x, y, f) = functor_pair(q, rng)?;
        let (n, m) = (x.len(), y.len());
        let (a, b) = (random_subset(n, rng), random_subset(n, rng));
        let c = random_subset(m, rng);
        let ctx = || vec![show(&x), show(&y), format!("{f:?}"), a.to_string(), b.to_string(), c.to_string()];
        let mut rep = LawReport::new();
        check(&mut rep, "v-functor", VFunctor::new(x.clone(), y.clone(), f.clone())?.is_valid(), ctx);
        let (ua, da) = (up_closure(&x, a), down_closure(&x, a));
        check(&mut rep, "extensive", a.is_subset(ua) && a.is_subset(da), ctx);
        check(&mut rep, "idempotent", up_closure(&x, ua).is_subset(ua) && down_closure(&x, da).is_subset(da), ctx);
        let (ub, db) = (up_closure(&x, b), down_closure(&x, b));
        let inter = is_increasing(&x, ua.intersection(ub)) && down_closure(&x, da.intersection(db)) == da.intersection(db);
        check(&mut rep, "intersection", inter, ctx);
        let (uc, dc) = (up_closure(&y, c), down_closure(&y, c));
        let pre = is_increasing(&x, preimage(&f, uc)) && down_closure(&x, preimage(&f, dc)) == preimage(&f, dc);
        check(&mut rep, "preimage", pre, ctx);
        check(&mut rep, "image-up", image(&f, ua).is_subset(up_closure(&y, image(&f, a))), ctx);
        check(&mut rep, "image-down", image(&f, da).is_subset(down_closure(&y, image(&f, a))), ctx);
        Ok(rep)
    }
}

struct Initiality;

impl Suite for Initiality {
    fn run<Q: Sample>(&self, q: &Q, rng: &mut ChaCha8Rng, caps: &Caps) -> Result<LawReport> {
        let y = random_vcategory(q, rng.gen_range(1..=3), 0.4, rng)?;
        let n = rng.gen_range(1..=4);
        let f: Vec<usize> = (0..n).map(|_| rng.gen_range(0..y.len())).collect();
        let x = initial_structure(q, state_names(n), &[(f.clone(), y.clone())])?;
        let ctx = || vec![show(&y), format!("{f:?}")];
        let mut rep = LawReport::new();
        let fx = VFunctor::new(x.clone(), y.clone(), f.clone())?;
        check(&mut rep, "initial", fx.is_valid() && fx.is_initial(), ctx);
        let hx = hausdorff_object(&x, caps)?;
        let hy = hausdorff_object(&y, caps)?;
        let hf = VFunctor::new(hx.cat.clone(), hy.cat.clone(), hausdorff_map_between(&f, &hx, &hy))?;
        check(&mut rep, "h-preserves-initial", hf.is_valid() && hf.is_initial(), ctx);
        if fx.is_injective() {
            check(&mut rep, "h-preserves-initial-mono", hf.is_injective(), ctx);
        }
        Ok(rep)
    }
}

struct Lax;

impl Suite for Lax {
    fn run<Q: Sample>(&self, q: &Q, rng: &mut ChaCha8Rng, caps: &Caps) -> Result<LawReport> {
        let (n, m, p) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3));
        let rel = |rows: usize, cols: usize, rng: &mut ChaCha8Rng| {
            let v: Vec<Q::Elem> = (0..rows * cols).map(|_| q.sample(rng)).collect();
            VRelation::from_fn(q.clone(), rows, cols, |i, j| v[i * cols + j])
        };
        let r = rel(n, m, rng);
        let bump = rel(n, m, rng);
        let r2 = VRelation::from_fn(q.clone(), n, m, |i, j| q.join(r.r(i, j), bump.r(i, j)));
        let s = rel(m, p, rng);
        let f: Vec<usize> = (0..n).map(|_| rng.gen_range(0..m)).collect();
        check_lax_axioms(&r, &r2, &s, &f, m, caps)
    }
}

/// Hausdorff polynomial functors with at most two levels of nesting.
fn random_functor<Q: Sample, R: Rng>(q: &Q, rng: &mut R, depth: usize) -> Result<FunctorExpr<Q>> {
    let leaf = |rng: &mut R| -> Result<FunctorExpr<Q>> {
        Ok(match rng.gen_range(0..3) {
            0 => FunctorExpr::Id,
            1 => FunctorExpr::Const(random_vcategory(q, rng.gen_range(1..=2), 0.5, rng)?),
            _ => FunctorExpr::h_id(),
        })
    };
    if depth == 0 {
        return leaf(rng);
    }
    Ok(match rng.gen_range(0..4) {
        0 => leaf(rng)?,
        1 => FunctorExpr::h(random_functor(q, rng, depth - 1)?),
        2 => FunctorExpr::Prod(vec![random_functor(q, rng, depth - 1)?, random_functor(q, rng, depth - 1)?]),
        _ => FunctorExpr::Sum(vec![random_functor(q, rng, depth - 1)?, random_functor(q, rng, depth - 1)?]),
    })
}

struct FunctorLaws;

impl Suite for FunctorLaws {
    fn run<Q: Sample>(&self, q: &Q, rng: &mut ChaCha8Rng, caps: &Caps) -> Result<LawReport> {
        let fe = random_functor(q, rng, 1)?;
        let x = random_vcategory(q, rng.gen_range(1..=2), 0.4, rng)?;
        let y = random_vcategory(q, rng.gen_range(1..=2), 0.4, rng)?;
        let z = random_vcategory(q, rng.gen_range(1..=2), 0.4, rng)?;
        let f = random_functor_into(&x, &y, rng, caps)?;
        let g = random_functor_into(&y, &z, rng, caps)?;
        let ctx = || vec![fe.to_string(), show(&x), show(&y), show(&z)];
        let (fx, fy, fz) = (eval_obj(&fe, &x, caps)?, eval_obj(&fe, &y, caps)?, eval_obj(&fe, &z, caps)?);
        let mut rep = LawReport::new();
        check(&mut rep, "object", fx.cat.is_valid(), ctx);
        let id: Vec<usize> = (0..x.len()).collect();
        check(&mut rep, "identity", eval_mor(&id, &fx, &fx)? == (0..fx.len()).collect::<Vec<_>>(), ctx);
        let ff = eval_mor(&f, &fx, &fy)?;
        let fg = eval_mor(&g, &fy, &fz)?;
        let gf: Vec<usize> = f.iter().map(|&v| g[v]).collect();
        let fgf = eval_mor(&gf, &fx, &fz)?;
        check(&mut rep, "composition", ff.iter().map(|&i| fg[i]).eq(fgf.iter().copied()), ctx);
        check(&mut rep, "morphism", VFunctor::new(fx.cat.clone(), fy.cat.clone(), ff)?.is_valid(), ctx);
        Ok(rep)
    }
}

struct Behaviour;

impl Suite for Behaviour {
    fn run<Q: Sample>(&self, q: &Q, rng: &mut ChaCha8Rng, caps: &Caps) -> Result<LawReport> {
        let fe = random_functor(q, rng, 1)?;
        let y = random_coalgebra(&fe, q, rng.gen_range(1..=3), rng, caps)?;
        let (x, h) = hom_triple(&y, rng.gen_range(1..=2), rng, caps)?;
        let ctx = || vec![fe.to_string(), show(y.carrier()), format!("{h:?}")];
        let mut rep = LawReport::new();
        let depth = 4;
        let (dx, dy) = (distance_tables(&x, depth), distance_tables(&y, depth));
        let (n, m) = (x.len(), y.len());
        let anti = dx.windows(2).all(|w| (0..n * n).all(|i| q.leq(w[1][i], w[0][i])));
        check(&mut rep, "antitone", anti, ctx);
        let inv = (0..=depth).all(|k| (0..n * n).all(|i| dx[k][i] == dy[k][h[i / n] * m + h[i % n]]));
        check(&mut rep, "hom-invariant-distance", inv, ctx);

        match final_chain(&fe, q, 2, caps) {
            Ok(chain) => {
                let bx = behavior_maps(&x, &chain)?;
                let by = behavior_maps(&y, &chain)?;
                check(&mut rep, "hom-invariant-behaviour", (0..chain.len()).all(|k| (0..n).all(|s| bx[k][s] == by[k][h[s]])), ctx);
                let func = (0..chain.len()).all(|k| {
                    let c = &chain[k].obj.cat;
                    (0..n).all(|a| (0..n).all(|b| q.leq(x.carrier().a(a, b), c.a(bx[k][a], bx[k][b]))))
                });
                check(&mut rep, "behaviour-v-functor", func, ctx);
                let nat = (1..chain.len()).all(|k| {
                    let conn = chain[k].connecting.as_ref().expect("positive level");
                    (0..n).all(|s| conn[bx[k][s]] == bx[k - 1][s])
                });
                check(&mut rep, "behaviour-natural", nat, ctx);
                let agree = (0..n).all(|a| {
                    (0..n).all(|b| {
                        behavioral_distance_via_chain(&x, &chain, a, b)
                            .map(|v| v.iter().enumerate().all(|(k, &e)| e == dx[k][a * n + b]))
                            .unwrap_or(false)
                    })
                });
                check(&mut rep, "chain-agrees", agree, ctx);
            }
            Err(e) if e.is_cap() => {}
            Err(e) => return Err(e),
        }
        Ok(rep)
    }
}
