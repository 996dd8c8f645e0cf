//! JSON input files.
//!
//! Every file may carry `"version": 1`; unknown fields are rejected.
//! Matrix entries are element ids (`"1/2"`, `"inf"`, or a table element
//! name); plain numbers are accepted for the Lawvere quantale.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use vcoalg::coalg::{FTerm, FunctorExpr};
use vcoalg::{AnyQuantale, Quantale, TableQuantale, VCategory};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum QuantaleSpec {
    Name(String),
    Table(TableSpec),
}

/// A finite quantale given by its order and tensor tables.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    pub name: String,
    pub elements: Vec<String>,
    /// `leq[i][j]` iff `elements[i] ≤ elements[j]`.
    pub leq: Vec<Vec<bool>>,
    pub tensor: Vec<Vec<String>>,
    pub unit: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ElemJson {
    Num(serde_json::Number),
    Str(String),
}

impl ElemJson {
    fn text(&self) -> String {
        match self {
            ElemJson::Num(n) => n.to_string(),
            ElemJson::Str(s) => s.clone(),
        }
    }
}

/// States with an optional matrix.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarrierJson {
    pub states: Vec<String>,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<ElemJson>>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantaleFile {
    #[serde(default)]
    pub version: Option<u32>,
    pub quantale: QuantaleSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    #[serde(default)]
    pub version: Option<u32>,
    pub quantale: QuantaleSpec,
    pub states: Vec<String>,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<ElemJson>>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum FunctorJson {
    Id,
    Const(CarrierJson),
    Prod(Vec<FunctorJson>),
    Sum(Vec<FunctorJson>),
    #[serde(rename = "H")]
    H(Box<FunctorJson>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum TermJson {
    State(String),
    Point(String),
    Tuple(Vec<TermJson>),
    Inj(InjJson),
    Set(Vec<TermJson>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InjJson {
    pub index: usize,
    pub term: Box<TermJson>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoalgebraFile {
    #[serde(default)]
    pub version: Option<u32>,
    pub quantale: QuantaleSpec,
    pub functor: FunctorJson,
    pub carrier: CarrierJson,
    pub structure: BTreeMap<String, TermJson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Quantale,
    Category,
    Coalgebra,
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn check_version(path: &Path, v: Option<u32>) -> Result<(), CliError> {
    match v {
        None | Some(SCHEMA_VERSION) => Ok(()),
        Some(v) => Err(CliError::Input(format!("{}: unsupported schema version {v}", path.display()))),
    }
}

/// Classifies a file by its top-level keys.
pub fn kind_of(path: &Path, text: &str) -> Result<Kind, CliError> {
    let v: serde_json::Value = parse(path, text)?;
    let obj = v.as_object().ok_or_else(|| CliError::Input(format!("{}: expected a JSON object", path.display())))?;
    Ok(if obj.contains_key("structure") {
        Kind::Coalgebra
    } else if obj.contains_key("states") {
        Kind::Category
    } else {
        Kind::Quantale
    })
}

pub fn quantale_file(path: &Path, text: &str) -> Result<AnyQuantale, CliError> {
    let f: QuantaleFile = parse(path, text)?;
    check_version(path, f.version)?;
    resolve_quantale(&f.quantale)
}

/// A builtin name, or a path to a quantale file when it ends in `.json`.
pub fn quantale_arg(arg: &str) -> Result<AnyQuantale, CliError> {
    if arg.ends_with(".json") {
        let p = Path::new(arg);
        quantale_file(p, &read(p)?)
    } else {
        Ok(AnyQuantale::builtin(arg)?)
    }
}

pub fn resolve_quantale(spec: &QuantaleSpec) -> Result<AnyQuantale, CliError> {
    match spec {
        QuantaleSpec::Name(n) => Ok(AnyQuantale::builtin(n)?),
        QuantaleSpec::Table(t) => {
            let pos = |id: &str| {
                t.elements.iter().position(|e| e == id).ok_or_else(|| CliError::Input(format!("unknown element `{id}`")))
            };
            let tensor = t
                .tensor
                .iter()
                .map(|row| row.iter().map(|id| pos(id)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            Ok(AnyQuantale::Table(TableQuantale::from_tables(
                t.name.clone(),
                t.elements.clone(),
                t.leq.clone(),
                tensor,
                pos(&t.unit)?,
            )?))
        }
    }
}

/// Builds the matrix without checking the V-category laws. A missing
/// matrix gives `fallback` off the diagonal and `k` on it.
pub fn carrier<Q: Quantale>(
    q: &Q,
    states: &[String],
    matrix: &Option<Vec<Vec<ElemJson>>>,
    fallback: Q::Elem,
) -> Result<VCategory<Q>, CliError> {
    let n = states.len();
    let m = match matrix {
        None => (0..n).map(|i| (0..n).map(|j| if i == j { q.unit() } else { fallback }).collect()).collect(),
        Some(rows) => rows
            .iter()
            .map(|r| r.iter().map(|e| q.parse_elem(&e.text())).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?,
    };
    Ok(VCategory::new(q.clone(), states.to_vec(), m)?)
}

pub fn category_file(path: &Path, text: &str) -> Result<(AnyQuantale, CategoryFile), CliError> {
    let f: CategoryFile = parse(path, text)?;
    check_version(path, f.version)?;
    Ok((resolve_quantale(&f.quantale)?, f))
}

pub fn functor<Q: Quantale>(q: &Q, f: &FunctorJson) -> Result<FunctorExpr<Q>, CliError> {
    Ok(match f {
        FunctorJson::Id => FunctorExpr::Id,
        FunctorJson::Const(c) => FunctorExpr::Const(carrier(q, &c.states, &c.matrix, q.bottom())?),
        FunctorJson::Prod(fs) => FunctorExpr::Prod(fs.iter().map(|g| functor(q, g)).collect::<Result<_, _>>()?),
        FunctorJson::Sum(fs) => FunctorExpr::Sum(fs.iter().map(|g| functor(q, g)).collect::<Result<_, _>>()?),
        FunctorJson::H(g) => FunctorExpr::h(functor(q, g)?),
    })
}

/// `"H"`, `"id"`, or inline JSON.
pub fn functor_arg<Q: Quantale>(q: &Q, arg: &str) -> Result<FunctorExpr<Q>, CliError> {
    match arg.trim() {
        "H" => Ok(FunctorExpr::h_id()),
        "id" | "Id" => Ok(FunctorExpr::Id),
        s => {
            let j: FunctorJson =
                serde_json::from_str(s).map_err(|e| CliError::Input(format!("--functor: {e}")))?;
            functor(q, &j)
        }
    }
}

fn index(names: &[String], name: &str, what: &str) -> Result<usize, CliError> {
    names.iter().position(|s| s == name).ok_or_else(|| CliError::Input(format!("unknown {what} `{name}`")))
}

/// Resolves a term against the functor, naming states of `states` and
/// points of the constants.
pub fn term<Q: Quantale>(f: &FunctorExpr<Q>, states: &[String], t: &TermJson) -> Result<FTerm, CliError> {
    let bad = |want: &str| Err(CliError::Input(format!("expected {want} for functor {f}")));
    match (f, t) {
        (FunctorExpr::Id, TermJson::State(s)) => Ok(FTerm::State(index(states, s, "state")?)),
        (FunctorExpr::Id, _) => bad("a state"),
        (FunctorExpr::Const(c), TermJson::Point(p)) => Ok(FTerm::Point(index(c.states(), p, "point")?)),
        (FunctorExpr::Const(_), _) => bad("a point"),
        (FunctorExpr::Prod(fs), TermJson::Tuple(ts)) if fs.len() == ts.len() => {
            Ok(FTerm::Tuple(fs.iter().zip(ts).map(|(g, t)| term(g, states, t)).collect::<Result<_, _>>()?))
        }
        (FunctorExpr::Prod(fs), _) => bad(&format!("a {}-tuple", fs.len())),
        (FunctorExpr::Sum(fs), TermJson::Inj(InjJson { index, term: t })) if *index < fs.len() => {
            Ok(FTerm::inj(*index, term(&fs[*index], states, t)?))
        }
        (FunctorExpr::Sum(_), _) => bad("an injection"),
        (FunctorExpr::H(g), TermJson::Set(ms)) => {
            Ok(FTerm::set(ms.iter().map(|m| term(g, states, m)).collect::<Result<_, _>>()?))
        }
        (FunctorExpr::H(_), _) => bad("a set"),
    }
}

/// A coalgebra file resolved against its quantale, not yet validated.
pub struct RawCoalgebra<Q: Quantale> {
    pub functor: FunctorExpr<Q>,
    pub states: Vec<String>,
    pub matrix: Option<VCategory<Q>>,
    pub terms: Vec<FTerm>,
}

impl<Q: Quantale> RawCoalgebra<Q> {
    /// The carrier, discrete when no matrix was given.
    pub fn carrier(&self, q: &Q) -> Result<VCategory<Q>, CliError> {
        match &self.matrix {
            Some(m) => Ok(m.clone()),
            None => Ok(VCategory::discrete(q.clone(), self.states.clone())?),
        }
    }
}

pub fn coalgebra_file(path: &Path, text: &str) -> Result<(AnyQuantale, CoalgebraFile), CliError> {
    let f: CoalgebraFile = parse(path, text)?;
    check_version(path, f.version)?;
    Ok((resolve_quantale(&f.quantale)?, f))
}

pub fn raw_coalgebra<Q: Quantale>(q: &Q, f: &CoalgebraFile) -> Result<RawCoalgebra<Q>, CliError> {
    let functor = functor(q, &f.functor)?;
    let states = f.carrier.states.clone();
    let matrix = match &f.carrier.matrix {
        Some(_) => Some(carrier(q, &states, &f.carrier.matrix, q.bottom())?),
        None => None,
    };
    for s in f.structure.keys() {
        index(&states, s, "state")?;
    }
    let terms = states
        .iter()
        .map(|s| {
            let t = f.structure.get(s).ok_or_else(|| CliError::Input(format!("no structure given for state `{s}`")))?;
            term(&functor, &states, t)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RawCoalgebra { functor, states, matrix, terms })
}

/// `"x:a,y:b"` as a map from `src` to `tgt` indices; every source state
/// must appear exactly once.
pub fn state_map(arg: &str, src: &[String], tgt: &[String]) -> Result<Vec<usize>, CliError> {
    let mut out = vec![None; src.len()];
    for pair in arg.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (a, b) = pair.split_once(':').ok_or_else(|| CliError::Input(format!("expected `from:to`, got `{pair}`")))?;
        let i = index(src, a.trim(), "state")?;
        if out[i].replace(index(tgt, b.trim(), "state")?).is_some() {
            return Err(CliError::Input(format!("state `{a}` mapped twice")));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| CliError::Input(format!("state `{}` is not mapped", src[i]))))
        .collect()
}

/// Comma-separated state names as indices.
pub fn subset(arg: &str, states: &[String]) -> Result<Vec<usize>, CliError> {
    arg.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| index(states, s, "state")).collect()
}

/// Comma-separated state names in order, repeats allowed.
pub fn subset_list(arg: &str, states: &[String]) -> Result<Vec<usize>, CliError> {
    subset(arg, states)
}
