//! Oriented link diagrams.
//!
//! A diagram is stored as a planar 4-valent graph: every crossing lists the
//! edges at its four slots in counterclockwise order, and every edge knows the
//! crossing slot it leaves from (tail) and the one it enters (head). Slot order
//! is physical, so the rotation system (and with it the planar embedding) is
//! preserved by mirroring, crossing changes and orientation reversal.
//! Crossingless components are kept separately as free loops.

mod ops;
mod pd;
mod seifert;
mod stats;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use ops::{Compose, SmoothingMode, SumSite, Transform};
pub use pd::PdCode;
pub use seifert::{Block, BlockSign, Faces, SeifertCircle, SeifertGraph, SeifertState};
pub use stats::DiagramStats;

pub type EdgeId = usize;
pub type CrossingId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_positive() { "+" } else { "-" })
    }
}

/// A crossing slot: the `slot`-th endpoint (counterclockwise) of a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct End {
    pub crossing: CrossingId,
    pub slot: u8,
}

impl End {
    pub fn new(crossing: CrossingId, slot: u8) -> Self {
        End { crossing, slot: slot % 4 }
    }
}

/// The region of the plane between slot `slot` and slot `slot + 1` of a crossing.
pub type Corner = End;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub tail: End,
    pub head: End,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    slots: [EdgeId; 4],
    under_in: u8,
    over_in: u8,
}

impl Crossing {
    /// Edges at the four slots, counterclockwise, in physical order.
    pub fn slots(&self) -> [EdgeId; 4] {
        self.slots
    }

    pub fn edge_at(&self, slot: u8) -> EdgeId {
        self.slots[(slot % 4) as usize]
    }

    pub fn under_in(&self) -> u8 {
        self.under_in
    }

    pub fn under_out(&self) -> u8 {
        (self.under_in + 2) % 4
    }

    pub fn over_in(&self) -> u8 {
        self.over_in
    }

    pub fn over_out(&self) -> u8 {
        (self.over_in + 2) % 4
    }

    pub fn is_incoming(&self, slot: u8) -> bool {
        let s = slot % 4;
        s == self.under_in || s == self.over_in
    }

    /// Positive iff the over strand enters from the slot just before the
    /// incoming under slot (clockwise neighbour).
    pub fn sign(&self) -> Sign {
        if self.over_in == (self.under_in + 3) % 4 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    /// PD tuple: slots counterclockwise starting at the incoming under edge.
    pub fn pd(&self) -> [EdgeId; 4] {
        let u = self.under_in as usize;
        [
            self.slots[u],
            self.slots[(u + 1) % 4],
            self.slots[(u + 2) % 4],
            self.slots[(u + 3) % 4],
        ]
    }

    /// Slot pairs joined by the 0-smoothing: (a,b) and (c,d) in PD order.
    pub fn zero_pairs(&self) -> [(u8, u8); 2] {
        let u = self.under_in;
        [(u, (u + 1) % 4), ((u + 2) % 4, (u + 3) % 4)]
    }

    /// Slot pairs joined by the 1-smoothing: (a,d) and (b,c) in PD order.
    pub fn one_pairs(&self) -> [(u8, u8); 2] {
        let u = self.under_in;
        [(u, (u + 3) % 4), ((u + 1) % 4, (u + 2) % 4)]
    }

    /// Which smoothing (0 or 1) is compatible with the orientation.
    pub fn oriented_resolution(&self) -> u8 {
        match self.sign() {
            Sign::Positive => 0,
            Sign::Negative => 1,
        }
    }
}

/// An oriented link diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    edges: Vec<Edge>,
    /// Edge-carrying components, each listed in traversal order.
    components: Vec<Vec<EdgeId>>,
    edge_component: Vec<usize>,
    /// Crossingless components; the flag is `true` for a clockwise circle.
    loops: Vec<bool>,
    /// Outer-face hints; the first hint lying in a connected part selects
    /// that part's unbounded face.
    outer: Vec<Corner>,
    name: Option<String>,
}

/// Raw crossing data handed to [`Diagram::assemble`]: edge labels at the four
/// physical slots and which opposite pair carries the under strand.
#[derive(Clone, Debug)]
pub(crate) struct RawCrossing {
    pub slots: [usize; 4],
    /// 0 if the under strand uses slots 0 and 2, 1 if it uses 1 and 3.
    pub under_pair: u8,
}

/// Orientation information for [`Diagram::assemble`].
#[derive(Default)]
pub(crate) struct OrientationHints {
    /// Slots known to be incoming (`true`) or outgoing (`false`).
    pub fixed: Vec<(End, bool)>,
    /// Tried in order for components the fixed data leaves undetermined.
    pub soft: Vec<(End, bool)>,
}

impl Diagram {
    /// The crossingless unknot.
    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// `k` crossingless, unnested circles.
    pub fn unlink(k: usize) -> Self {
        Diagram {
            crossings: Vec::new(),
            edges: Vec::new(),
            components: Vec::new(),
            edge_component: Vec::new(),
            loops: vec![false; k],
            outer: Vec::new(),
            name: None,
        }
    }

    /// Crossingless circles with the given orientations (`true` = clockwise).
    pub fn from_loops(loops: Vec<bool>) -> Self {
        Diagram { loops, ..Self::unlink(0) }
    }

    /// Builds a diagram from raw planar data, solving for edge directions,
    /// relabelling edges in traversal order and checking planarity.
    pub(crate) fn assemble(
        raw: &[RawCrossing],
        hints: OrientationHints,
        loops: Vec<bool>,
        outer: Vec<Corner>,
    ) -> Result<Self> {
        let n = raw.len();
        let mut occurrences: BTreeMap<usize, Vec<End>> = BTreeMap::new();
        for (c, x) in raw.iter().enumerate() {
            if x.under_pair > 1 {
                return Err(Error::MalformedCrossing {
                    index: c,
                    reason: "under pair must be 0 or 1".into(),
                });
            }
            for s in 0..4u8 {
                occurrences.entry(x.slots[s as usize]).or_default().push(End::new(c, s));
            }
        }
        for (label, occ) in &occurrences {
            if occ.len() != 2 {
                return Err(Error::InconsistentPd(format!(
                    "edge {label} appears {} times (expected 2)",
                    occ.len()
                )));
            }
        }
        let other_end = |e: End| -> End {
            let occ = &occurrences[&raw[e.crossing].slots[e.slot as usize]];
            if occ[0] == e {
                occ[1]
            } else {
                occ[0]
            }
        };

        // incoming[c][s]
        let mut incoming: Vec<[Option<bool>; 4]> = vec![[None; 4]; n];
        let assign = |incoming: &mut Vec<[Option<bool>; 4]>, start: End, value: bool| -> Result<()> {
            let mut queue = VecDeque::from([(start, value)]);
            while let Some((e, v)) = queue.pop_front() {
                match incoming[e.crossing][e.slot as usize] {
                    Some(old) if old == v => continue,
                    Some(_) => {
                        return Err(Error::InconsistentPd(format!(
                            "conflicting orientation at crossing {} slot {}",
                            e.crossing, e.slot
                        )))
                    }
                    None => {}
                }
                incoming[e.crossing][e.slot as usize] = Some(v);
                queue.push_back((End::new(e.crossing, e.slot + 2), !v));
                queue.push_back((other_end(e), !v));
            }
            Ok(())
        };
        for (end, v) in hints.fixed {
            assign(&mut incoming, end, v)?;
        }
        for (end, v) in hints.soft {
            if incoming[end.crossing][end.slot as usize].is_none() {
                assign(&mut incoming, end, v)?;
            }
        }
        for c in 0..n {
            for s in 0..4u8 {
                if incoming[c][s as usize].is_none() {
                    assign(&mut incoming, End::new(c, s), true)?;
                }
            }
        }

        // Edge directions, keyed by original label.
        let mut head_of: BTreeMap<usize, End> = BTreeMap::new();
        let mut tail_of: BTreeMap<usize, End> = BTreeMap::new();
        for (label, occ) in &occurrences {
            let (h, t) = if incoming[occ[0].crossing][occ[0].slot as usize] == Some(true) {
                (occ[0], occ[1])
            } else {
                (occ[1], occ[0])
            };
            head_of.insert(*label, h);
            tail_of.insert(*label, t);
        }
        let successor = |label: usize| -> usize {
            let h = head_of[&label];
            raw[h.crossing].slots[((h.slot + 2) % 4) as usize]
        };

        // Relabel in traversal order, components ordered by smallest label.
        let mut new_id: BTreeMap<usize, EdgeId> = BTreeMap::new();
        let mut components: Vec<Vec<EdgeId>> = Vec::new();
        for &label in occurrences.keys() {
            if new_id.contains_key(&label) {
                continue;
            }
            let mut comp = Vec::new();
            let mut cur = label;
            loop {
                let id = new_id.len();
                new_id.insert(cur, id);
                comp.push(id);
                cur = successor(cur);
                if cur == label {
                    break;
                }
                if new_id.contains_key(&cur) {
                    return Err(Error::InconsistentPd("strands do not close into cycles".into()));
                }
            }
            components.push(comp);
        }
        let mut edges = vec![
            Edge {
                tail: End::new(0, 0),
                head: End::new(0, 0)
            };
            new_id.len()
        ];
        for (label, id) in &new_id {
            edges[*id] = Edge { tail: tail_of[label], head: head_of[label] };
        }
        let mut edge_component = vec![0; edges.len()];
        for (k, comp) in components.iter().enumerate() {
            for &e in comp {
                edge_component[e] = k;
            }
        }

        let mut crossings = Vec::with_capacity(n);
        for (c, x) in raw.iter().enumerate() {
            let slots = x.slots.map(|l| new_id[&l]);
            let inc = |s: u8| incoming[c][s as usize] == Some(true);
            let p = x.under_pair;
            let under_in = if inc(p) { p } else { p + 2 };
            let over_in = if inc(p + 1) { p + 1 } else { (p + 3) % 4 };
            if inc((under_in + 2) % 4) || inc((over_in + 2) % 4) {
                return Err(Error::InconsistentPd(format!(
                    "strand through crossing {c} is not consistently oriented"
                )));
            }
            crossings.push(Crossing { slots, under_in, over_in });
        }

        let d = Diagram {
            crossings,
            edges,
            components,
            edge_component,
            loops,
            outer: outer.into_iter().filter(|c| c.crossing < n).collect(),
            name: None,
        };
        d.check_planar()?;
        Ok(d)
    }

    fn check_planar(&self) -> Result<()> {
        let faces = self.faces();
        let parts = self.crossing_parts();
        let nparts = parts.iter().copied().max().map_or(0, |m| m + 1);
        let mut verts = vec![0i64; nparts];
        let mut face_count = vec![0i64; nparts];
        for c in 0..self.crossings.len() {
            verts[parts[c]] += 1;
        }
        for f in 0..faces.count() {
            face_count[parts[faces.corners(f)[0].crossing]] += 1;
        }
        for p in 0..nparts {
            // V - E + F with E = 2V
            let chi = verts[p] - 2 * verts[p] + face_count[p];
            if chi != 2 {
                return Err(Error::NonPlanar(format!(
                    "connected part {p} has Euler characteristic {chi}"
                )));
            }
        }
        Ok(())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn outer_hints(&self) -> &[Corner] {
        &self.outer
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, c: CrossingId) -> Result<&Crossing> {
        self.crossings.get(c).ok_or(Error::NoSuchCrossing(c))
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The edge that follows `e` through the crossing at its head.
    pub fn successor(&self, e: EdgeId) -> EdgeId {
        let h = self.edges[e].head;
        self.crossings[h.crossing].edge_at(h.slot + 2)
    }

    /// Number of link components (edge components plus free loops).
    pub fn component_count(&self) -> usize {
        self.components.len() + self.loops.len()
    }

    pub fn edge_components(&self) -> &[Vec<EdgeId>] {
        &self.components
    }

    pub fn component_of_edge(&self, e: EdgeId) -> usize {
        self.edge_component[e]
    }

    /// Free loops, `true` when clockwise. Loop `k` is component
    /// `edge_components().len() + k`.
    pub fn free_loops(&self) -> &[bool] {
        &self.loops
    }

    pub fn sign(&self, c: CrossingId) -> Sign {
        self.crossings[c].sign()
    }

    pub fn signs(&self) -> Vec<Sign> {
        self.crossings.iter().map(Crossing::sign).collect()
    }

    pub fn positive_count(&self) -> usize {
        self.crossings.iter().filter(|x| x.sign().is_positive()).count()
    }

    pub fn negative_count(&self) -> usize {
        self.crossing_count() - self.positive_count()
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(|x| x.sign().value()).sum()
    }

    /// Components of the two strands through crossing `c`: (under, over).
    pub fn strand_components(&self, c: CrossingId) -> (usize, usize) {
        let x = &self.crossings[c];
        (
            self.edge_component[x.edge_at(x.under_in)],
            self.edge_component[x.edge_at(x.over_in)],
        )
    }

    /// PD tuples with 1-based edge labels.
    pub fn pd_code(&self) -> PdCode {
        PdCode {
            crossings: self.crossings.iter().map(|x| x.pd().map(|e| e + 1)).collect(),
            loops: self.loops.len(),
        }
    }

    /// Connected part index of every crossing (parts of the planar graph).
    pub(crate) fn crossing_parts(&self) -> Vec<usize> {
        let n = self.crossings.len();
        let mut uf = UnionFind::new(n);
        for e in &self.edges {
            uf.union(e.tail.crossing, e.head.crossing);
        }
        uf.labels()
    }

    /// Number of connected parts of the diagram, counting free loops.
    pub fn part_count(&self) -> usize {
        let parts = self.crossing_parts();
        parts.iter().copied().max().map_or(0, |m| m + 1) + self.loops.len()
    }

    /// Connected as a planar curve (a lone free loop counts as connected).
    pub fn is_connected(&self) -> bool {
        self.part_count() <= 1
    }

    pub fn is_split_diagram(&self) -> bool {
        !self.is_connected()
    }

    pub fn faces(&self) -> Faces {
        Faces::new(self)
    }
}

/// Minimal union-find used by several modules.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Dense class labels ordered by smallest member.
    pub fn labels(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for i in 0..n {
            let r = self.find(i);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out[i] = label[r];
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;

    fn closure(n: usize, w: &[i32]) -> Diagram {
        BraidWord::new(n, w.to_vec()).unwrap().closure()
    }

    #[test]
    fn positive_trefoil_basics() {
        let d = closure(2, &[1, 1, 1]);
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert!(d.signs().iter().all(|s| s.is_positive()));
        assert_eq!(d.writhe(), 3);
        assert!(d.is_connected());
    }

    #[test]
    fn hopf_has_two_components() {
        let d = closure(2, &[1, 1]);
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(d.component_count(), 2);
    }

    #[test]
    fn successor_cycles_cover_edges() {
        let d = closure(3, &[1, -2, 1, -2]);
        let mut seen = vec![false; d.edge_count()];
        for comp in d.edge_components() {
            for w in comp.windows(2) {
                assert_eq!(d.successor(w[0]), w[1]);
            }
            assert_eq!(d.successor(*comp.last().unwrap()), comp[0]);
            for &e in comp {
                assert!(!seen[e]);
                seen[e] = true;
            }
        }
        assert!(seen.into_iter().all(|b| b));
    }

    #[test]
    fn every_crossing_has_two_in_two_out() {
        let d = closure(3, &[1, -2, 1, -2]);
        for (c, x) in d.crossings().iter().enumerate() {
            let ins = (0..4).filter(|&s| x.is_incoming(s)).count();
            assert_eq!(ins, 2);
            for s in 0..4u8 {
                let e = d.edges()[x.edge_at(s)];
                let here = End::new(c, s);
                assert_eq!(x.is_incoming(s), e.head == here);
                assert_eq!(!x.is_incoming(s), e.tail == here);
            }
        }
    }

    #[test]
    fn unknot_is_a_free_loop() {
        let d = Diagram::unknot();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.component_count(), 1);
        assert!(d.is_connected());
        let u = Diagram::unlink(2);
        assert!(u.is_split_diagram());
    }
}
