//! Theorem-driven classification: run the engines on one diagram, apply the
//! positivity certificates in a fixed order, and report every link-level
//! claim together with the result that justifies it.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bounds::{almost_positive_analysis, bounds_report, AlmostPositiveReport, BoundsReport};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::input::InputEntry;
use crate::khovanov::{self, kauffman_bracket_oracle};
use crate::lee;

/// The results a report may cite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// A positive diagram is given; positive diagrams have `s = c − O + 1`.
    PositiveDiagram,
    /// `L(D) ≤ s ≤ U(D)`.
    KawamuraLobbBounds,
    /// `Δ(D) = 0` forces `s = L(D) = U(D)`.
    HomogeneousEquality,
    /// A homogeneous link is positive iff `s = 2g₄ + ♯L − 1`.
    PositivityCharacterization,
    /// Genus, 4-genus and s of a link with an almost positive diagram.
    AlmostPositiveGenus,
    /// Almost positive links are not homogeneous.
    AlmostPositiveNotHomogeneous,
    /// `s = 1 − χ(F)` and `g = g₄` for strongly quasipositive closures.
    StronglyQuasipositive,
    /// s read off the Lee filtration.
    LeeFiltration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Computed,
    Certified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub value: i64,
    pub source: Source,
    pub theorem: Theorem,
}

impl Fact {
    fn certified(value: i64, theorem: Theorem) -> Self {
        Fact { value, source: Source::Certified, theorem }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Positive,
    NotPositive,
    NotHomogeneous,
    StronglyQuasipositiveCertified,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub verdict: VerdictKind,
    pub theorem: Theorem,
    /// Set when the verdict holds only under a hypothesis.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub connected: bool,
    pub positive_diagram: bool,
    pub negative_diagram: bool,
    pub almost_positive_diagram: bool,
    /// Absent for split diagrams.
    pub homogeneous_diagram: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaggedBounds {
    #[serde(flatten)]
    pub bounds: BoundsReport,
    pub theorem: Theorem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JonesCheck {
    pub jones: String,
    pub agrees_with_bracket: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedCheck {
    pub expected: i64,
    pub actual: Option<i64>,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub name: Option<String>,
    pub input_form: String,
    pub components: usize,
    pub crossings: usize,
    pub writhe: i32,
    pub s: Option<Fact>,
    pub bounds: Option<TaggedBounds>,
    /// 2g(L).
    pub twice_genus: Option<Fact>,
    /// 2g₄(L).
    pub twice_genus4: Option<Fact>,
    pub flags: Flags,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub almost_positive: Option<AlmostPositiveReport>,
    pub verdicts: Vec<Verdict>,
    pub caveats: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jones_check: Option<JonesCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_check: Option<BTreeMap<String, ExpectedCheck>>,
}

impl ClassificationReport {
    pub fn has_verdict(&self, v: VerdictKind) -> bool {
        self.verdicts.iter().any(|x| x.verdict == v)
    }

    /// Value of a numeric field by the name used in `expected` blocks.
    pub fn field(&self, key: &str) -> Option<i64> {
        let b = self.bounds.as_ref().map(|b| &b.bounds);
        match key {
            "s" => self.s.as_ref().map(|f| f.value),
            "components" => Some(self.components as i64),
            "crossings" => Some(self.crossings as i64),
            "writhe" => Some(self.writhe as i64),
            "lower" => b.map(|b| b.lower),
            "upper" => b.map(|b| b.upper),
            "delta" => b.map(|b| b.delta),
            "twice_canonical_genus" => b.map(|b| b.twice_canonical_genus),
            "twice_genus" => self.twice_genus.as_ref().map(|f| f.value),
            "twice_genus4" => self.twice_genus4.as_ref().map(|f| f.value),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Largest crossing number for which s is computed from Lee homology.
    pub s_cap: usize,
    /// Largest crossing number for the Jones cross-check.
    pub homology_cap: usize,
    /// Compare the Jones polynomial from Khovanov homology with the bracket.
    pub oracle: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            s_cap: lee::DEFAULT_CROSSING_CAP,
            homology_cap: khovanov::DEFAULT_CROSSING_CAP,
            oracle: false,
        }
    }
}

const POSITIVE_OR_ALMOST: &str = "link is positive or almost positive";

pub fn classify(d: &Diagram, options: &ClassifyOptions) -> Result<ClassificationReport> {
    classify_with(d, "pd", None, options)
}

fn classify_with(
    d: &Diagram,
    form: &str,
    band: Option<&crate::braid::BandWord>,
    options: &ClassifyOptions,
) -> Result<ClassificationReport> {
    let stats = d.stats();
    let l = stats.components as i64;
    let connected = stats.connected;
    let mut caveats = Vec::new();
    if !connected {
        caveats.push("split diagram: bounds and diagram certificates skipped".to_string());
    }
    let bounds = if connected { Some(bounds_report(d)?) } else { None };
    let positive_diagram = stats.negative == 0;
    let almost_positive_diagram = stats.negative == 1;
    let almost_positive = if connected && almost_positive_diagram { Some(almost_positive_analysis(d)?) } else { None };
    let sqp = match band {
        Some(b) => match b.sqp_invariants() {
            Ok(v) => Some(v),
            Err(Error::SplitClosure) => {
                caveats.push("band closure is split: strongly quasipositive certificate refused".into());
                None
            }
            Err(e) => return Err(e),
        },
        None => None,
    };

    // s: computed when within the cap, otherwise the strongest certificate.
    let mut s = None;
    if stats.crossings <= options.s_cap {
        let r = lee::s_invariant(d, options.s_cap)?;
        s = Some(Fact { value: r.s as i64, source: Source::Computed, theorem: Theorem::LeeFiltration });
    } else {
        caveats.push(format!(
            "{} crossings exceed the s cap of {}: s not computed from homology",
            stats.crossings, options.s_cap
        ));
    }
    let mut certificates = Vec::new();
    if let Some(b) = &bounds {
        if positive_diagram {
            certificates.push(Fact::certified(b.lower, Theorem::PositiveDiagram));
        } else if b.delta == 0 {
            certificates.push(Fact::certified(b.lower, Theorem::HomogeneousEquality));
        }
    }
    if let Some(a) = &almost_positive {
        certificates.push(Fact::certified(a.s, Theorem::AlmostPositiveGenus));
    }
    if let Some(q) = &sqp {
        certificates.push(Fact::certified(q.s, Theorem::StronglyQuasipositive));
    }
    for c in &certificates {
        if let Some(sc) = &s {
            if sc.value != c.value {
                return Err(Error::invariant(format!(
                    "computed s = {} but {:?} certifies {}",
                    sc.value, c.theorem, c.value
                )));
            }
        }
    }
    if s.is_none() {
        s = certificates.first().cloned();
    }
    if let (Some(sv), Some(b)) = (&s, &bounds) {
        if sv.value < b.lower || sv.value > b.upper {
            return Err(Error::invariant(format!("s = {} outside [{}, {}]", sv.value, b.lower, b.upper)));
        }
    }

    let mut verdicts = Vec::new();
    let mut genus = None;
    let verdict = |v, theorem| Verdict { verdict: v, theorem, condition: None };
    if positive_diagram {
        verdicts.push(verdict(VerdictKind::Positive, Theorem::PositiveDiagram));
        if let Some(b) = &bounds {
            genus = Some((b.twice_canonical_genus, Theorem::PositiveDiagram));
        }
    } else if let (Some(b), Some(sv)) = (bounds.as_ref().filter(|b| b.is_homogeneous), &s) {
        if sv.value == b.twice_canonical_genus + l - 1 {
            verdicts.push(verdict(VerdictKind::Positive, Theorem::PositivityCharacterization));
            genus = Some((b.twice_canonical_genus, Theorem::PositivityCharacterization));
        } else {
            verdicts.push(verdict(VerdictKind::NotPositive, Theorem::PositivityCharacterization));
        }
    } else if let Some(a) = &almost_positive {
        verdicts.push(Verdict {
            verdict: VerdictKind::NotHomogeneous,
            theorem: Theorem::AlmostPositiveNotHomogeneous,
            condition: Some("if this link is not positive".into()),
        });
        genus = Some((a.twice_genus, Theorem::AlmostPositiveGenus));
        caveats.push(POSITIVE_OR_ALMOST.into());
    }
    if let Some(q) = &sqp {
        verdicts.push(verdict(VerdictKind::StronglyQuasipositiveCertified, Theorem::StronglyQuasipositive));
        if genus.is_none() {
            genus = Some((q.twice_genus, Theorem::StronglyQuasipositive));
        }
    }
    if verdicts.is_empty() {
        verdicts.push(verdict(VerdictKind::Undetermined, Theorem::KawamuraLobbBounds));
    }

    let jones_check = if options.oracle {
        if stats.crossings <= options.homology_cap {
            let v = khovanov::jones_polynomial(d, options.homology_cap)?;
            let agrees = v == kauffman_bracket_oracle(d)?;
            if !agrees {
                return Err(Error::invariant("Jones polynomial from homology disagrees with the bracket"));
            }
            Some(JonesCheck { jones: v.display_with("t", 2), agrees_with_bracket: agrees })
        } else {
            caveats.push(format!("oracle skipped: above the homology cap of {}", options.homology_cap));
            None
        }
    } else {
        None
    };

    Ok(ClassificationReport {
        name: d.name().map(str::to_string),
        input_form: form.to_string(),
        components: stats.components,
        crossings: stats.crossings,
        writhe: stats.writhe,
        s,
        flags: Flags {
            connected,
            positive_diagram,
            negative_diagram: stats.positive == 0,
            almost_positive_diagram,
            homogeneous_diagram: bounds.as_ref().map(|b| b.is_homogeneous),
        },
        bounds: bounds.map(|b| TaggedBounds { bounds: b, theorem: Theorem::KawamuraLobbBounds }),
        twice_genus: genus.map(|(v, t)| Fact::certified(v, t)),
        twice_genus4: genus.map(|(v, t)| Fact::certified(v, t)),
        almost_positive,
        verdicts,
        caveats,
        jones_check,
        expected_check: None,
    })
}

/// Classifies one input object and checks its `expected` block.
pub fn classify_entry(entry: &InputEntry, options: &ClassifyOptions) -> Result<ClassificationReport> {
    let d = entry.to_diagram()?;
    let band = entry.diagram.band_word()?;
    let mut report = classify_with(&d, entry.diagram.form(), band.as_ref(), options)?;
    if let Some(expected) = &entry.expected {
        let checks = expected
            .iter()
            .map(|(k, e)| {
                let actual = report.field(k);
                let check = ExpectedCheck {
                    expected: e.value,
                    actual,
                    ok: actual == Some(e.value),
                    provenance: e.provenance.clone(),
                };
                (k.clone(), check)
            })
            .collect();
        report.expected_check = Some(checks);
    }
    Ok(report)
}

/// A failed batch entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryError {
    pub index: usize,
    pub name: Option<String>,
    /// `"input"` or `"invariant"`.
    pub kind: String,
    pub error: String,
}

pub type BatchItem = std::result::Result<ClassificationReport, EntryError>;

/// Classifies every entry independently, in parallel on the current rayon
/// pool; results come back in input order.
pub fn batch(entries: &[Value], options: &ClassifyOptions) -> Vec<BatchItem> {
    entries
        .par_iter()
        .enumerate()
        .map(|(index, v)| {
            let name = v.get("name").and_then(Value::as_str).map(str::to_string);
            InputEntry::from_value(v.clone())
                .and_then(|e| classify_entry(&e, options))
                .map_err(|e| EntryError {
                    index,
                    name,
                    kind: if e.is_invariant() { "invariant" } else { "input" }.into(),
                    error: e.to_string(),
                })
        })
        .collect()
}

pub fn batch_item_json(item: &BatchItem) -> Value {
    match item {
        Ok(r) => serde_json::to_value(r),
        Err(e) => serde_json::to_value(e),
    }
    .expect("reports serialize")
}

/// The bundled fixture corpus.
pub fn fixture_corpus() -> Vec<InputEntry> {
    serde_json::from_str(include_str!("corpus.json")).expect("bundled corpus parses")
}
