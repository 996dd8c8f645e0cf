use serde::Serialize;

/// One checked law. A failing entry always carries a witness tuple
/// (element ids or state names) that violates the law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawEntry {
    pub law: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
    /// Asserted from the known structure rather than checked exhaustively.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub analytic: bool,
}

/// Ordered collection of law verdicts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub entries: Vec<LawEntry>,
}

/// Report over the algebraic assumptions on a quantale.
pub type AssumptionReport = LawReport;

impl LawReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, law: impl Into<String>) {
        self.entries.push(LawEntry {
            law: law.into(),
            holds: true,
            witness: Vec::new(),
            analytic: false,
        });
    }

    pub fn fail(&mut self, law: impl Into<String>, witness: Vec<String>) {
        self.entries.push(LawEntry {
            law: law.into(),
            holds: false,
            witness,
            analytic: false,
        });
    }

    pub fn analytic(&mut self, law: impl Into<String>) {
        self.entries.push(LawEntry {
            law: law.into(),
            holds: true,
            witness: Vec::new(),
            analytic: true,
        });
    }

    /// Records `law` as passing when `witness` is `None`.
    pub fn record(&mut self, law: impl Into<String>, witness: Option<Vec<String>>) {
        match witness {
            None => self.pass(law),
            Some(w) => self.fail(law, w),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }

    pub fn get(&self, law: &str) -> Option<&LawEntry> {
        self.entries.iter().find(|e| e.law == law)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawEntry> {
        self.entries.iter().filter(|e| !e.holds)
    }

    pub fn extend(&mut self, other: LawReport) {
        self.entries.extend(other.entries);
    }
}
