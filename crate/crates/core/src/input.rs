//! JSON input objects: PD codes, braid words and band words.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::braid::{BandWord, BraidWord};
use crate::diagram::{Diagram, PdCode};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "format", rename_all = "lowercase")]
pub enum DiagramInput {
    Pd {
        crossings: Vec<Vec<i64>>,
        /// Crossingless unknotted components drawn alongside.
        #[serde(default, skip_serializing_if = "is_zero")]
        loops: usize,
    },
    Braid { strands: usize, word: Vec<i32> },
    Band { strands: usize, bands: Vec<(usize, usize)> },
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

impl DiagramInput {
    pub fn form(&self) -> &'static str {
        match self {
            DiagramInput::Pd { .. } => "pd",
            DiagramInput::Braid { .. } => "braid",
            DiagramInput::Band { .. } => "band",
        }
    }

    pub fn band_word(&self) -> Result<Option<BandWord>> {
        match self {
            DiagramInput::Band { strands, bands } => Ok(Some(BandWord::new(*strands, bands.clone())?)),
            _ => Ok(None),
        }
    }

    pub fn to_diagram(&self) -> Result<Diagram> {
        match self {
            DiagramInput::Pd { crossings, loops } => PdCode::from_tuples(crossings, *loops)?.to_diagram(),
            DiagramInput::Braid { strands, word } => Ok(BraidWord::new(*strands, word.clone())?.closure()),
            DiagramInput::Band { strands, bands } => {
                Ok(BandWord::new(*strands, bands.clone())?.to_braid().closure())
            }
        }
    }
}

/// One expected value and where it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedValue {
    pub value: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

/// One entry of a corpus file or a single input document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub diagram: DiagramInput,
    /// Keyed by field name, e.g. `"s"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<std::collections::BTreeMap<String, ExpectedValue>>,
}

impl InputEntry {
    pub fn from_value(v: Value) -> Result<Self> {
        serde_json::from_value(v).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn to_diagram(&self) -> Result<Diagram> {
        let d = self.diagram.to_diagram()?;
        Ok(match &self.name {
            Some(n) => d.with_name(n),
            None => d,
        })
    }
}

pub fn parse_entry(text: &str) -> Result<InputEntry> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
    InputEntry::from_value(v)
}

/// A corpus is a JSON array of input objects. Entries are kept as raw
/// values so that one malformed entry does not reject the file.
pub fn parse_corpus(text: &str) -> Result<Vec<Value>> {
    match serde_json::from_str::<Value>(text).map_err(|e| Error::Input(e.to_string()))? {
        Value::Array(items) => Ok(items),
        _ => Err(Error::Input("corpus must be a JSON array".into())),
    }
}
