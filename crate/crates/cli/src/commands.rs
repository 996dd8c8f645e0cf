use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use vcoalg::coalg::{
    coalg_hom_report, distance_sequences, equalizer, final_chain, initial_lift_coalgebra, lift_from, Coalgebra,
};
use vcoalg::gen::all_maps;
use vcoalg::hausdorff::{
    cantor_check, hausdorff_object, hausdorff_value, subset_states, symmetric_hausdorff, up_closure, EmbeddingVerdict,
    HObject, NonEmbedding, Subset,
};
use vcoalg::omega::{anamorphism, omega_homs_exhaustive, omega_hom_report, omega_structure_coded, verify_chain_commutation, ExtNat};
use vcoalg::quantale::check_quantale_laws;
use vcoalg::suites::{run_all, run_suite};
use vcoalg::{AnyQuantale, LawReport, Quantale, TableQuantale, VCategory};

use crate::input::{self, Kind, RawCoalgebra};
use crate::{CliError, Command, Config, Outcome};

type Res<T> = Result<T, CliError>;

macro_rules! with_q {
    ($any:expr, $q:ident => $body:expr) => {
        match $any {
            AnyQuantale::Table($q) => $body,
            AnyQuantale::Lawvere($q) => $body,
        }
    };
}

pub fn dispatch(cmd: &Command, cfg: &Config) -> Res<Outcome> {
    match cmd {
        Command::Check { paths } => check(paths, cfg),
        Command::Hausdorff { category, a, b } => {
            let (q, f) = input::category_file(category, &input::read(category)?)?;
            with_q!(&q, q => hausdorff(&valid_category(q, &f)?, a, b))
        }
        Command::Chain { quantale, functor, depth } => {
            let q = input::quantale_arg(quantale)?;
            with_q!(&q, q => chain(q, functor, *depth, cfg))
        }
        Command::Behave { coalgebra, depth } => {
            let (q, f) = input::coalgebra_file(coalgebra, &input::read(coalgebra)?)?;
            with_q!(&q, q => behave(&valid_coalgebra(q, &f, cfg)?, *depth, cfg))
        }
        Command::Equalize { coalgebra, target, f, g } => {
            let (qx, fx) = input::coalgebra_file(coalgebra, &input::read(coalgebra)?)?;
            let (qy, fy) = input::coalgebra_file(target, &input::read(target)?)?;
            if qx != qy {
                return Err(CliError::Input("coalgebras over different quantales".into()));
            }
            with_q!(&qx, q => equalize(&valid_coalgebra(q, &fx, cfg)?, &valid_coalgebra(q, &fy, cfg)?, f, g, cfg))
        }
        Command::Lift { coalgebra, cone, leg } => lift(coalgebra, cone, leg, cfg),
        Command::Cantor { category, phi } => {
            let (q, f) = input::category_file(category, &input::read(category)?)?;
            with_q!(&q, q => cantor(&valid_category(q, &f)?, phi.as_deref(), cfg))
        }
        Command::OmegaVerify { depth } => omega_verify(*depth, cfg),
        Command::Ana { coalgebra } => {
            let (q, f) = input::coalgebra_file(coalgebra, &input::read(coalgebra)?)?;
            match &q {
                AnyQuantale::Table(t) if *t == TableQuantale::boolean() => ana(&valid_coalgebra(t, &f, cfg)?, cfg),
                _ => Err(CliError::Input("ana expects an H-coalgebra over bool".into())),
            }
        }
        Command::Suite { cases, suite } => run_suites(*cases, suite.as_deref(), cfg),
    }
}

fn laws_message(r: &LawReport) -> String {
    r.failures().map(|e| format!("{} [{}]", e.law, e.witness.join(", "))).collect::<Vec<_>>().join("; ")
}

fn valid_category<Q: Quantale>(q: &Q, f: &input::CategoryFile) -> Res<VCategory<Q>> {
    let x = input::carrier(q, &f.states, &f.matrix, q.bottom())?;
    let r = x.check();
    if !r.all_pass() {
        return Err(CliError::Input(format!("not a V-category: {}", laws_message(&r))));
    }
    Ok(x)
}

fn build_coalgebra<Q: Quantale>(q: &Q, raw: &RawCoalgebra<Q>, cfg: &Config) -> Res<Coalgebra<Q>> {
    Ok(Coalgebra::new(raw.functor.clone(), raw.carrier(q)?, &raw.terms, &cfg.caps)?)
}

fn valid_coalgebra<Q: Quantale>(q: &Q, f: &input::CoalgebraFile, cfg: &Config) -> Res<Coalgebra<Q>> {
    let c = build_coalgebra(q, &input::raw_coalgebra(q, f)?, cfg)?;
    let r = c.check();
    if !r.all_pass() {
        return Err(CliError::Input(format!("not a coalgebra: {}", laws_message(&r))));
    }
    Ok(c)
}

fn prefixed(r: LawReport, prefix: &str) -> LawReport {
    let mut out = r;
    for e in &mut out.entries {
        e.law = format!("{prefix}{}", e.law);
    }
    out
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn check(paths: &[PathBuf], cfg: &Config) -> Res<Outcome> {
    if paths.is_empty() {
        return Err(CliError::Input("no files given".into()));
    }
    let mut checks = LawReport::new();
    let mut files = Vec::new();
    for p in paths {
        let text = input::read(p)?;
        let kind = input::kind_of(p, &text)?;
        let rep = match kind {
            Kind::Quantale => {
                let q = input::quantale_file(p, &text)?;
                with_q!(&q, q => check_quantale_laws(q))
            }
            Kind::Category => {
                let (q, f) = input::category_file(p, &text)?;
                with_q!(&q, q => category_laws(&input::carrier(q, &f.states, &f.matrix, q.bottom())?, cfg)?)
            }
            Kind::Coalgebra => {
                let (q, f) = input::coalgebra_file(p, &text)?;
                with_q!(&q, q => build_coalgebra(q, &input::raw_coalgebra(q, &f)?, cfg)?.check())
            }
        };
        let kind_name = match kind {
            Kind::Quantale => "quantale",
            Kind::Category => "category",
            Kind::Coalgebra => "coalgebra",
        };
        files.push(json!({"file": path_str(p), "kind": kind_name, "passed": rep.all_pass()}));
        checks.extend(prefixed(rep, &format!("{}: ", path_str(p))));
    }
    Ok(Outcome { checks, result: json!({ "files": files }), table: None })
}

fn category_laws<Q: Quantale>(x: &VCategory<Q>, cfg: &Config) -> Res<LawReport> {
    let mut r = x.check();
    if r.all_pass() {
        let h = hausdorff_object(x, &cfg.caps)?;
        r.record("hausdorff-v-category", (!h.cat.is_valid()).then(Vec::new));
        r.record("hausdorff-separated", (!h.cat.is_separated()).then(Vec::new));
    }
    Ok(r)
}

fn subset_arg<Q: Quantale>(x: &VCategory<Q>, arg: &str) -> Res<Subset> {
    Ok(Subset::from_indices(input::subset(arg, x.states())?))
}

fn hausdorff<Q: Quantale>(x: &VCategory<Q>, a: &str, b: &str) -> Res<Outcome> {
    let q = x.quantale();
    let (sa, sb) = (subset_arg(x, a)?, subset_arg(x, b)?);
    let result = json!({
        "a": subset_states(x, sa),
        "b": subset_states(x, sb),
        "h_ab": q.show(hausdorff_value(x, sa, sb)),
        "h_ba": q.show(hausdorff_value(x, sb, sa)),
        "symmetric": q.show(symmetric_hausdorff(x, sa, sb)),
        "up_a": subset_states(x, up_closure(x, sa)),
        "up_b": subset_states(x, up_closure(x, sb)),
    });
    Ok(Outcome { checks: LawReport::new(), result, table: None })
}

fn chain<Q: Quantale>(q: &Q, functor: &str, depth: usize, cfg: &Config) -> Res<Outcome> {
    let f = input::functor_arg(q, functor)?;
    let levels = final_chain(&f, q, depth, &cfg.caps)?;
    let mut checks = LawReport::new();
    let bad = levels.iter().find(|l| !l.obj.cat.is_valid()).map(|l| vec![l.index.to_string()]);
    checks.record("levels-v-categories", bad);
    let bad = levels.iter().skip(1).find(|l| {
        let c = l.connecting.as_ref().expect("positive level");
        let prev = &levels[l.index - 1].obj.cat;
        let cat = &l.obj.cat;
        !(0..cat.len()).all(|i| (0..cat.len()).all(|j| q.leq(cat.a(i, j), prev.a(c[i], c[j]))))
    });
    checks.record("connecting-v-functors", bad.map(|l| vec![l.index.to_string()]));
    let rows: Vec<Value> = levels
        .iter()
        .map(|l| {
            let mut v = json!({"level": l.index, "size": l.obj.len()});
            if l.obj.len() <= 256 {
                v["elements"] = json!((0..l.obj.len()).map(|i| l.obj.decode(i).to_string()).collect::<Vec<_>>());
            }
            if let Some(c) = &l.connecting {
                v["connecting"] = json!(c);
            }
            v
        })
        .collect();
    let sizes: Vec<usize> = levels.iter().map(|l| l.obj.len()).collect();
    let table = std::iter::once(vec!["level".to_string(), "size".to_string()])
        .chain(sizes.iter().enumerate().map(|(k, s)| vec![k.to_string(), s.to_string()]))
        .collect();
    Ok(Outcome {
        checks,
        result: json!({"functor": f.to_string(), "quantale": q.name(), "sizes": sizes, "levels": rows}),
        table: Some(table),
    })
}

fn behave<Q: Quantale>(c: &Coalgebra<Q>, depth: usize, cfg: &Config) -> Res<Outcome> {
    let q = c.carrier().quantale();
    let n = c.len();
    let seqs = distance_sequences(c, depth, cfg.mode);
    let mut checks = LawReport::new();
    let bad = seqs.iter().enumerate().find_map(|(i, s)| {
        s.windows(2).position(|w| !q.leq(w[1], w[0])).map(|k| {
            vec![c.carrier().state(i / n).to_string(), c.carrier().state(i % n).to_string(), k.to_string()]
        })
    });
    checks.record("antitone", bad);
    let mut header = vec!["from".to_string(), "to".to_string()];
    header.extend((0..=depth).map(|k| format!("d{k}")));
    let mut table = vec![header];
    let mut pairs = Vec::new();
    for (i, s) in seqs.iter().enumerate() {
        let (a, b) = (c.carrier().state(i / n).to_string(), c.carrier().state(i % n).to_string());
        let vals: Vec<String> = s.iter().map(|&e| q.show(e)).collect();
        let mut row = vec![a.clone(), b.clone()];
        row.extend(vals.iter().cloned());
        table.push(row);
        pairs.push(json!({"from": a, "to": b, "distances": vals}));
    }
    Ok(Outcome { checks, result: json!({"depth": depth, "pairs": pairs}), table: Some(table) })
}

fn show_terms<Q: Quantale>(c: &Coalgebra<Q>) -> Vec<Value> {
    let names = c.carrier().states();
    (0..c.len())
        .map(|s| {
            let t = c.term(s);
            json!({"state": names[s], "term": t.to_string()})
        })
        .collect()
}

fn equalize<Q: Quantale>(x: &Coalgebra<Q>, y: &Coalgebra<Q>, f: &str, g: &str, cfg: &Config) -> Res<Outcome> {
    let fm = input::state_map(f, x.carrier().states(), y.carrier().states())?;
    let gm = input::state_map(g, x.carrier().states(), y.carrier().states())?;
    let mut checks = prefixed(coalg_hom_report(&fm, x, y)?, "f: ");
    checks.extend(prefixed(coalg_hom_report(&gm, x, y)?, "g: "));
    let e = equalizer(x, y, &fm, &gm, &cfg.caps)?;
    let states: Vec<&str> = e.inclusion.iter().map(|&s| x.carrier().state(s)).collect();
    Ok(Outcome {
        checks,
        result: json!({"states": states, "rounds": e.rounds, "structure": show_terms(&e.coalgebra)}),
        table: None,
    })
}

fn matrix_json<Q: Quantale>(x: &VCategory<Q>) -> Vec<Vec<String>> {
    let q = x.quantale();
    x.rows().iter().map(|r| r.iter().map(|&e| q.show(e)).collect()).collect()
}

fn lift(path: &Path, cone: &[PathBuf], legs: &[String], cfg: &Config) -> Res<Outcome> {
    if cone.len() != legs.len() {
        return Err(CliError::Input("each --cone needs a matching --leg".into()));
    }
    let (q, f) = input::coalgebra_file(path, &input::read(path)?)?;
    let mut files = Vec::new();
    for p in cone {
        let (qy, fy) = input::coalgebra_file(p, &input::read(p)?)?;
        if qy != q {
            return Err(CliError::Input(format!("{}: different quantale", path_str(p))));
        }
        files.push(fy);
    }
    with_q!(&q, q => {
        let raw = input::raw_coalgebra(q, &f)?;
        let mut legs_built = Vec::new();
        for (fy, leg) in files.iter().zip(legs) {
            let y = valid_coalgebra(q, fy, cfg)?;
            let m = input::state_map(leg, &raw.states, y.carrier().states())?;
            legs_built.push((m, y));
        }
        let mut lifted = initial_lift_coalgebra(&raw.functor, q, raw.states.clone(), &raw.terms, &legs_built, &cfg.caps)?;
        if let Some(start) = &raw.matrix {
            let init = &lifted.descent[0];
            let meet = VCategory::from_fn(q.clone(), raw.states.clone(), |i, j| q.meet(init.a(i, j), start.a(i, j)))?;
            lifted = lift_from(&raw.functor, meet, &raw.terms, &cfg.caps)?;
        }
        Ok(Outcome {
            checks: lifted.coalgebra.check(),
            result: json!({
                "states": raw.states,
                "matrix": matrix_json(&lifted.structure),
                "descent_steps": lifted.descent.len() - 1,
            }),
            table: None,
        })
    })
}

fn verdict_json<Q: Quantale>(h: &HObject<Q>, v: &EmbeddingVerdict) -> Value {
    let x = &h.base;
    let phi: Vec<&str> = v.phi.iter().map(|&p| x.state(p)).collect();
    let body = match &v.verdict {
        NonEmbedding::NotInjective { first, second } => {
            json!({"verdict": "not-injective", "first": subset_states(x, *first), "second": subset_states(x, *second)})
        }
        NonEmbedding::NotInitial { first, second } => {
            json!({"verdict": "not-initial", "first": subset_states(x, *first), "second": subset_states(x, *second)})
        }
        NonEmbedding::Contradiction { fixed_point, point } => {
            json!({"verdict": "contradiction", "fixed_point": subset_states(x, *fixed_point), "point": x.state(*point)})
        }
    };
    json!({"phi": phi, "witness": body})
}

fn cantor<Q: Quantale>(x: &VCategory<Q>, phi: Option<&str>, cfg: &Config) -> Res<Outcome> {
    let h = hausdorff_object(x, &cfg.caps)?;
    let sets: Vec<Vec<String>> = h.sets.iter().map(|&s| subset_states(x, s)).collect();
    let phis = match phi {
        Some(p) => {
            let m = input::subset_list(p, x.states())?;
            if m.len() != h.len() {
                return Err(CliError::Input(format!("phi needs {} images, got {}", h.len(), m.len())));
            }
            vec![m]
        }
        None => all_maps(h.len(), x.len(), &cfg.caps)?,
    };
    let (mut injective_fail, mut initial_fail) = (0usize, 0usize);
    let mut bad_witness = None;
    let mut contradiction = None;
    let mut first = None;
    for p in &phis {
        let v = cantor_check(&h, p, &cfg.caps)?;
        match v.verdict {
            NonEmbedding::NotInjective { .. } => injective_fail += 1,
            NonEmbedding::NotInitial { .. } => initial_fail += 1,
            NonEmbedding::Contradiction { .. } => {
                contradiction.get_or_insert_with(|| p.iter().map(|&i| x.state(i).to_string()).collect::<Vec<_>>());
            }
        }
        if !v.witness_holds(&h) && bad_witness.is_none() {
            bad_witness = Some(p.iter().map(|&i| x.state(i).to_string()).collect::<Vec<_>>());
        }
        first.get_or_insert_with(|| verdict_json(&h, &v));
    }
    let mut checks = LawReport::new();
    checks.record("witness-replays", bad_witness);
    checks.record("no-contradiction", contradiction);
    Ok(Outcome {
        checks,
        result: json!({
            "sets": sets,
            "maps_checked": phis.len(),
            "not_injective": injective_fail,
            "not_initial": initial_fail,
            "first": first,
        }),
        table: None,
    })
}

fn omega_verify(depth: usize, cfg: &Config) -> Res<Outcome> {
    let mut checks = verify_chain_commutation(depth, &cfg.caps)?;
    let samples: Vec<ExtNat> = (0..=depth as u64 + 1).map(ExtNat::Fin).chain([ExtNat::Inf]).collect();
    let bad = samples.iter().find(|&&x| omega_structure_coded(x) != x).map(|x| vec![x.to_string()]);
    checks.record("structure-coded-identity", bad);
    Ok(Outcome { checks, result: json!({"depth": depth}), table: None })
}

fn ana(c: &Coalgebra<TableQuantale>, cfg: &Config) -> Res<Outcome> {
    let b = anamorphism(c, &cfg.caps)?;
    let mut checks = omega_hom_report(c, &b)?;
    if c.len() <= 3 {
        let homs = omega_homs_exhaustive(c, 3, &cfg.caps)?;
        checks.record("unique", (homs != vec![b.clone()]).then(|| vec![homs.len().to_string()]));
    }
    let values: serde_json::Map<String, Value> =
        (0..c.len()).map(|s| (c.carrier().state(s).to_string(), json!(b[s].to_string()))).collect();
    let table = std::iter::once(vec!["state".to_string(), "value".to_string()])
        .chain((0..c.len()).map(|s| vec![c.carrier().state(s).to_string(), b[s].to_string()]))
        .collect();
    Ok(Outcome { checks, result: json!({"behaviour": values}), table: Some(table) })
}

fn run_suites(cases: usize, suite: Option<&str>, cfg: &Config) -> Res<Outcome> {
    let summaries = match suite {
        Some(s) => vec![run_suite(s, cases, cfg.seed, cfg.mode, &cfg.caps)?],
        None => run_all(cases, cfg.seed, cfg.mode, &cfg.caps),
    };
    let mut checks = LawReport::new();
    for s in &summaries {
        let w = s.first_failure.as_ref().map(|f| {
            let mut v = vec![format!("case {}", f.case), f.quantale.clone(), f.law.clone()];
            v.extend(f.witness.iter().cloned());
            v
        });
        checks.record(s.suite.clone(), w);
    }
    let mut table = vec![["suite", "cases", "checks", "failures"].map(String::from).to_vec()];
    table.extend(
        summaries.iter().map(|s| vec![s.suite.clone(), s.cases.to_string(), s.checks.to_string(), s.failures.to_string()]),
    );
    Ok(Outcome { checks, result: json!({"seed": cfg.seed, "suites": summaries}), table: Some(table) })
}
