use serde::{Deserialize, Serialize};

use super::{Diagram, End, OrientationHints, RawCrossing};
use crate::error::{Error, Result};

/// Planar-diagram code.
///
/// Each tuple lists the four edge labels counterclockwise starting at the
/// incoming under edge; the under strand leaves through the third entry and
/// the crossing is positive iff the over strand runs from the fourth entry to
/// the second. `loops` counts extra crossingless circles; an empty crossing
/// list with `loops == 0` is read as the unknot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdCode {
    pub crossings: Vec<[usize; 4]>,
    #[serde(default)]
    pub loops: usize,
}

impl PdCode {
    /// Parses loosely-typed tuples, rejecting any crossing that is not a 4-tuple.
    pub fn from_tuples(tuples: &[Vec<i64>], loops: usize) -> Result<Self> {
        let mut crossings = Vec::with_capacity(tuples.len());
        for (i, t) in tuples.iter().enumerate() {
            if t.len() != 4 {
                return Err(Error::MalformedCrossing {
                    index: i,
                    reason: format!("expected 4 entries, found {}", t.len()),
                });
            }
            let mut x = [0usize; 4];
            for (k, &v) in t.iter().enumerate() {
                if v < 0 {
                    return Err(Error::MalformedCrossing {
                        index: i,
                        reason: format!("negative edge label {v}"),
                    });
                }
                x[k] = v as usize;
            }
            crossings.push(x);
        }
        Ok(PdCode { crossings, loops })
    }

    pub fn to_diagram(&self) -> Result<Diagram> {
        if self.crossings.is_empty() {
            return Ok(Diagram::unlink(self.loops.max(1)));
        }
        let raw: Vec<RawCrossing> = self
            .crossings
            .iter()
            .map(|&slots| RawCrossing { slots, under_pair: 0 })
            .collect();
        let mut hints = OrientationHints::default();
        for c in 0..raw.len() {
            hints.fixed.push((End::new(c, 0), true));
        }
        // Components that only pass over: orient by label order, as in the
        // usual convention where labels increase along the orientation.
        for (c, x) in self.crossings.iter().enumerate() {
            let (b, d) = (x[1], x[3]);
            let d_to_b = b == d + 1 || d > b + 1;
            hints.soft.push((End::new(c, 3), d_to_b));
        }
        Diagram::assemble(&raw, hints, vec![false; self.loops], Vec::new())
    }
}

impl Diagram {
    pub fn from_pd(pd: &PdCode) -> Result<Self> {
        pd.to_diagram()
    }
}
