//! Braid words, positive embedded bands and their closures.

use serde::{Deserialize, Serialize};

use crate::diagram::{Corner, Diagram, End, OrientationHints, RawCrossing, UnionFind};
use crate::error::{Error, Result};

/// A word in the braid group: entry `±i` stands for `σ_i^{±1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    word: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidBraid("a braid needs at least one strand".into()));
        }
        for &g in &word {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidBraid(format!(
                    "generator {g} out of range for {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, word })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn word(&self) -> &[i32] {
        &self.word
    }

    /// Permutation of strand positions induced by the word.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &g in &self.word {
            let i = g.unsigned_abs() as usize;
            at.swap(i - 1, i);
        }
        at
    }

    /// Components of the closure: cycles of the permutation.
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut uf = UnionFind::new(self.strands);
        let mut count = self.strands;
        for (p, &q) in perm.iter().enumerate() {
            if uf.union(p, q) {
                count -= 1;
            }
        }
        count
    }

    /// Round closure: strands run upwards, closing arcs pass on the right,
    /// and the face left of the leftmost strand of each part is unbounded.
    pub fn closure(&self) -> Diagram {
        let n = self.strands;
        let mut cur: Vec<usize> = (0..n).collect();
        let mut next = n;
        let mut raw: Vec<RawCrossing> = Vec::with_capacity(self.word.len());
        let mut hints = OrientationHints::default();
        // First crossing met by each bottom edge, as (crossing, slot).
        let mut first_hit: Vec<Option<End>> = vec![None; n];

        for (c, &g) in self.word.iter().enumerate() {
            let i = g.unsigned_abs() as usize;
            let (l, r) = (i - 1, i);
            let (bl, br) = (cur[l], cur[r]);
            let (tl, tr) = (next, next + 1);
            next += 2;
            // Slots counterclockwise; slot 0 is the incoming under edge.
            let (slots, bl_slot, br_slot, over_in) = if g > 0 {
                ([br, tr, tl, bl], 3u8, 0u8, 3u8)
            } else {
                ([bl, br, tr, tl], 0u8, 1u8, 1u8)
            };
            raw.push(RawCrossing { slots, under_pair: 0 });
            hints.fixed.push((End::new(c, 0), true));
            hints.fixed.push((End::new(c, over_in), true));
            if bl < n && first_hit[bl].is_none() {
                first_hit[bl] = Some(End::new(c, bl_slot));
            }
            if br < n && first_hit[br].is_none() {
                first_hit[br] = Some(End::new(c, br_slot));
            }
            cur[l] = tl;
            cur[r] = tr;
        }

        let loops: Vec<bool> = (0..n).filter(|&p| cur[p] == p).map(|_| true).collect();
        if raw.is_empty() {
            return Diagram::from_loops(loops);
        }
        let mut top_to_bottom = std::collections::HashMap::new();
        for (p, &t) in cur.iter().enumerate() {
            if t != p {
                top_to_bottom.insert(t, p);
            }
        }
        for x in &mut raw {
            for s in &mut x.slots {
                if let Some(&b) = top_to_bottom.get(s) {
                    *s = b;
                }
            }
        }
        let outer: Vec<Corner> = first_hit
            .iter()
            .flatten()
            .map(|h| End::new(h.crossing, h.slot + 3))
            .collect();
        Diagram::assemble(&raw, hints, loops, outer).expect("braid closures are valid planar diagrams")
    }
}

/// A product of positive embedded bands `σ_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandWord {
    strands: usize,
    bands: Vec<(usize, usize)>,
}

impl BandWord {
    pub fn new(strands: usize, bands: Vec<(usize, usize)>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidBand("a band word needs at least one strand".into()));
        }
        for &(i, j) in &bands {
            if !(1 <= i && i < j && j <= strands) {
                return Err(Error::InvalidBand(format!("({i}, {j}) with {strands} strands")));
            }
        }
        Ok(BandWord { strands, bands })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn bands(&self) -> &[(usize, usize)] {
        &self.bands
    }

    /// Expands `σ_{i,j} = (σ_i ⋯ σ_{j-2}) σ_{j-1} (σ_i ⋯ σ_{j-2})⁻¹`.
    pub fn to_braid(&self) -> BraidWord {
        let mut word = Vec::new();
        for &(i, j) in &self.bands {
            let (i, j) = (i as i32, j as i32);
            word.extend(i..=j - 2);
            word.push(j - 1);
            word.extend((i..=j - 2).rev().map(|g| -g));
        }
        BraidWord { strands: self.strands, word }
    }

    /// Euler characteristic of the quasipositive surface: strands minus bands.
    pub fn euler_characteristic(&self) -> i64 {
        self.strands as i64 - self.bands.len() as i64
    }

    /// Whether the quasipositive surface is connected.
    pub fn surface_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.strands);
        let mut count = self.strands;
        for &(i, j) in &self.bands {
            if uf.union(i - 1, j - 1) {
                count -= 1;
            }
        }
        count == 1
    }

    /// s, genus and 4-genus certified by the strongly quasipositive
    /// structure of a non-split closure.
    pub fn sqp_invariants(&self) -> Result<SqpInvariants> {
        let diagram = self.to_braid().closure();
        if !diagram.is_connected() || !self.surface_connected() {
            return Err(Error::SplitClosure);
        }
        let components = diagram.component_count() as i64;
        let chi = self.euler_characteristic();
        let s = 1 - chi;
        let twice_genus = s - (components - 1);
        Ok(SqpInvariants {
            s,
            twice_genus,
            twice_genus4: twice_genus,
            components: components as usize,
            euler_characteristic: chi,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SqpInvariants {
    pub s: i64,
    pub twice_genus: i64,
    pub twice_genus4: i64,
    pub components: usize,
    pub euler_characteristic: i64,
}
