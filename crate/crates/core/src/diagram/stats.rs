use serde::Serialize;

use super::{CrossingId, Diagram, Sign};
use crate::error::{Error, Result};

/// Combinatorial statistics of a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramStats {
    pub writhe: i32,
    pub crossings: usize,
    pub positive: usize,
    pub negative: usize,
    /// O(D): Seifert circles.
    pub seifert_circles: usize,
    /// O₊(D): components after smoothing every negative crossing.
    pub o_plus: usize,
    /// O₋(D): components after smoothing every positive crossing.
    pub o_minus: usize,
    /// O_<(D): circles adjacent to no positive crossing.
    pub strongly_negative: usize,
    /// O_>(D): circles adjacent to no negative crossing.
    pub strongly_positive: usize,
    /// |S_D^+|: components of the positive Seifert subgraph.
    pub s_plus_components: usize,
    /// |S_D^-|: components of the negative Seifert subgraph.
    pub s_minus_components: usize,
    pub connected: bool,
    pub components: usize,
}

impl Diagram {
    pub fn stats(&self) -> DiagramStats {
        let g = self.seifert_graph();
        let o = g.vertex_count;
        let o_plus = g.component_count_with(Sign::is_positive);
        let o_minus = g.component_count_with(|s| !s.is_positive());
        let touches_pos = g.touches(Sign::Positive);
        let touches_neg = g.touches(Sign::Negative);
        let strongly_negative = touches_pos.iter().filter(|&&t| !t).count();
        let strongly_positive = touches_neg.iter().filter(|&&t| !t).count();
        DiagramStats {
            writhe: self.writhe(),
            crossings: self.crossing_count(),
            positive: self.positive_count(),
            negative: self.negative_count(),
            seifert_circles: o,
            o_plus,
            o_minus,
            strongly_negative,
            strongly_positive,
            s_plus_components: o_plus - strongly_negative,
            s_minus_components: o_minus - strongly_positive,
            connected: self.is_connected(),
            components: self.component_count(),
        }
    }

    /// Symmetric linking-number matrix; the diagonal is zero.
    pub fn linking_matrix(&self) -> Vec<Vec<i32>> {
        let k = self.component_count();
        let mut twice = vec![vec![0i32; k]; k];
        for c in 0..self.crossing_count() {
            let (a, b) = self.strand_components(c);
            if a != b {
                let s = self.sign(c).value();
                twice[a][b] += s;
                twice[b][a] += s;
            }
        }
        twice
            .into_iter()
            .map(|row| row.into_iter().map(|v| v / 2).collect())
            .collect()
    }

    /// A crossing is nugatory iff smoothing it along the orientation
    /// disconnects the diagram.
    pub fn is_nugatory(&self, c: CrossingId) -> Result<bool> {
        if c >= self.crossing_count() {
            return Err(Error::NoSuchCrossing(c));
        }
        let smoothed = self.smooth_crossing(c, super::SmoothingMode::Oriented)?;
        Ok(smoothed.part_count() == self.part_count() + 1)
    }
}
