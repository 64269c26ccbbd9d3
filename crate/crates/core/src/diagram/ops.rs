use serde::{Deserialize, Serialize};

use super::{Corner, CrossingId, Diagram, EdgeId, End, OrientationHints, RawCrossing, UnionFind};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SmoothingMode {
    Zero,
    One,
    /// The smoothing compatible with the orientation.
    Oriented,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    Mirror,
    ReverseComponent(usize),
    CrossingChange(CrossingId),
}

/// Where a connected sum is performed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumSite {
    Edge(EdgeId),
    Loop(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Compose {
    DisjointUnion,
    ConnectedSum(SumSite, SumSite),
}

impl Diagram {
    pub fn transform(&self, op: Transform) -> Result<Diagram> {
        let mut d = self.clone();
        match op {
            Transform::Mirror => {
                for x in &mut d.crossings {
                    std::mem::swap(&mut x.under_in, &mut x.over_in);
                }
            }
            Transform::CrossingChange(c) => {
                let x = d.crossings.get_mut(c).ok_or(Error::NoSuchCrossing(c))?;
                std::mem::swap(&mut x.under_in, &mut x.over_in);
            }
            Transform::ReverseComponent(k) => {
                let ne = d.components.len();
                if k >= d.component_count() {
                    return Err(Error::NoSuchComponent(k));
                }
                if k >= ne {
                    let l = &mut d.loops[k - ne];
                    *l = !*l;
                    return Ok(d);
                }
                let comp = d.components[k].clone();
                for &e in &comp {
                    let edge = &mut d.edges[e];
                    std::mem::swap(&mut edge.tail, &mut edge.head);
                }
                let mut rev = comp;
                rev.reverse();
                d.components[k] = rev;
                let edges = d.edges.clone();
                for (c, x) in d.crossings.iter_mut().enumerate() {
                    let slots = x.slots;
                    let inc = |s: u8| edges[slots[(s % 4) as usize]].head == End::new(c, s);
                    let upair = x.under_in % 2;
                    x.under_in = if inc(upair) { upair } else { upair + 2 };
                    let opair = 1 - upair;
                    x.over_in = if inc(opair) { opair } else { opair + 2 };
                }
            }
        }
        Ok(d)
    }

    pub fn mirror(&self) -> Diagram {
        self.transform(Transform::Mirror).expect("mirror is total")
    }

    /// Replaces crossing `c` by the requested smoothing. Components whose
    /// orientation no longer agrees are re-oriented from their first edge.
    pub fn smooth_crossing(&self, c: CrossingId, mode: SmoothingMode) -> Result<Diagram> {
        let x = self.crossing(c)?;
        let pairs = match mode {
            SmoothingMode::Zero => x.zero_pairs(),
            SmoothingMode::One => x.one_pairs(),
            SmoothingMode::Oriented => {
                if x.oriented_resolution() == 0 {
                    x.zero_pairs()
                } else {
                    x.one_pairs()
                }
            }
        };
        let mut uf = UnionFind::new(self.edge_count());
        for (p, q) in pairs {
            uf.union(x.edge_at(p), x.edge_at(q));
        }
        let remap = |i: usize| if i > c { i - 1 } else { i };

        let mut raw = Vec::with_capacity(self.crossing_count() - 1);
        let mut hints = OrientationHints::default();
        let mut touched = vec![false; self.edge_count()];
        for (i, y) in self.crossings.iter().enumerate() {
            if i == c {
                continue;
            }
            let slots = y.slots.map(|e| uf.find(e));
            for &e in &y.slots {
                touched[uf.find(e)] = true;
            }
            raw.push(RawCrossing { slots, under_pair: y.under_in % 2 });
        }
        // Keep each surviving edge's old direction where possible, trying
        // edges in id order so the lowest edge decides a component.
        let mut soft: Vec<(EdgeId, End, bool)> = Vec::new();
        for (i, y) in self.crossings.iter().enumerate() {
            if i == c {
                continue;
            }
            for s in 0..4u8 {
                soft.push((y.edge_at(s), End::new(remap(i), s), y.is_incoming(s)));
            }
        }
        soft.sort_by_key(|&(e, end, _)| (e, end));
        hints.soft = soft.into_iter().map(|(_, end, v)| (end, v)).collect();

        let mut new_loops = 0;
        let mut counted = vec![false; self.edge_count()];
        for &e in &x.slots {
            let r = uf.find(e);
            if !touched[r] && !counted[r] {
                counted[r] = true;
                new_loops += 1;
            }
        }
        let mut loops = self.loops.clone();
        loops.extend(std::iter::repeat_n(false, new_loops));
        let outer: Vec<Corner> = self
            .outer
            .iter()
            .filter(|h| h.crossing != c)
            .map(|h| End::new(remap(h.crossing), h.slot))
            .collect();
        let mut d = Diagram::assemble(&raw, hints, loops, outer)?;
        d.name = self.name.clone();
        Ok(d)
    }

    pub fn compose(&self, other: &Diagram, mode: Compose) -> Result<Diagram> {
        let offset_c = self.crossing_count();
        let offset_e = self.edge_count();
        let mut raw: Vec<RawCrossing> = Vec::with_capacity(offset_c + other.crossing_count());
        let mut hints = OrientationHints::default();
        for (base_c, base_e, d) in [(0, 0, self), (offset_c, offset_e, other)] {
            for (i, x) in d.crossings.iter().enumerate() {
                raw.push(RawCrossing { slots: x.slots.map(|e| e + base_e), under_pair: x.under_in % 2 });
                hints.fixed.push((End::new(base_c + i, x.under_in), true));
                hints.fixed.push((End::new(base_c + i, x.over_in), true));
            }
        }
        let mut loops: Vec<bool> = self.loops.iter().chain(other.loops.iter()).copied().collect();
        let mut outer: Vec<Corner> = self.outer.clone();
        outer.extend(other.outer.iter().map(|h| End::new(h.crossing + offset_c, h.slot)));

        if let Compose::ConnectedSum(a, b) = mode {
            match (a, b) {
                (SumSite::Loop(i), _) => {
                    if i >= self.loops.len() {
                        return Err(Error::NoSuchComponent(self.components.len() + i));
                    }
                    check_site(other, b)?;
                    loops.remove(i);
                }
                (_, SumSite::Loop(j)) => {
                    check_site(self, a)?;
                    if j >= other.loops.len() {
                        return Err(Error::NoSuchComponent(other.components.len() + j));
                    }
                    loops.remove(self.loops.len() + j);
                }
                (SumSite::Edge(e1), SumSite::Edge(e2)) => {
                    if e1 >= self.edge_count() {
                        return Err(Error::NoSuchEdge(e1));
                    }
                    if e2 >= other.edge_count() {
                        return Err(Error::NoSuchEdge(e2));
                    }
                    // e1: x -> y, e2: u -> v  becomes  x -> v (label e1), u -> y (label e2)
                    let h1 = self.edges[e1].head;
                    let h2 = other.edges[e2].head;
                    raw[h1.crossing].slots[h1.slot as usize] = e2 + offset_e;
                    raw[h2.crossing + offset_c].slots[h2.slot as usize] = e1;
                }
            }
        }
        if raw.is_empty() {
            return Ok(Diagram::from_loops(loops));
        }
        Diagram::assemble(&raw, hints, loops, outer)
    }

    pub fn disjoint_union(&self, other: &Diagram) -> Diagram {
        self.compose(other, Compose::DisjointUnion).expect("disjoint union of valid diagrams")
    }
}

fn check_site(d: &Diagram, site: SumSite) -> Result<()> {
    match site {
        SumSite::Edge(e) if e >= d.edge_count() => Err(Error::NoSuchEdge(e)),
        SumSite::Loop(i) if i >= d.loops.len() => Err(Error::NoSuchComponent(d.components.len() + i)),
        _ => Ok(()),
    }
}
