use crate::diagram::{CrossingId, Diagram, EdgeId};
use crate::error::{Error, Result};

/// Generators of `V^⊗k` are bitmasks: bit `c` set means circle `c` carries `X`.
pub type Monomial = u32;

/// Most circles a resolution may have (one bit per circle in a [`Monomial`]).
pub const MAX_CIRCLES: usize = 31;

/// One resolution `D_ε` of the cube.
#[derive(Clone, Debug)]
pub struct CubeVertex {
    /// Bit `k` is the smoothing chosen at crossing `k`.
    pub state: u32,
    /// Circle of each edge. Circles are numbered by smallest edge id, with
    /// free loops last.
    pub circle_of_edge: Vec<u8>,
    pub circles: usize,
    /// Smallest edge on each non-loop circle.
    pub representatives: Vec<EdgeId>,
}

impl CubeVertex {
    pub fn height(&self) -> u32 {
        self.state.count_ones()
    }

    pub fn generator_count(&self) -> usize {
        1 << self.circles
    }

    /// Quantum degree of a monomial before shifting: `#1 − #X`.
    pub fn degree(&self, m: Monomial) -> i32 {
        self.circles as i32 - 2 * m.count_ones() as i32
    }
}

/// The change of circles along a cube edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// Circles `a` and `b` join into `target`.
    Merge { a: u8, b: u8, target: u8 },
    /// Circle `source` splits into `left` and `right`.
    Split { source: u8, left: u8, right: u8 },
}

#[derive(Clone, Debug)]
pub struct CubeEdge {
    pub kind: EdgeKind,
    /// Image of every source circle (both halves of a split go to `left`).
    pub image: Vec<u8>,
    /// `(−1)^{number of 1's in front of the changed crossing}`.
    pub sign: i64,
}

#[derive(Clone, Debug)]
pub struct Cube {
    crossings: usize,
    n_plus: usize,
    n_minus: usize,
    vertices: Vec<CubeVertex>,
    diagram: Diagram,
}

impl Cube {
    pub fn new(d: &Diagram) -> Result<Cube> {
        let n = d.crossing_count();
        if n >= 31 {
            return Err(Error::CapExceeded { crossings: n, cap: 30 });
        }
        let mut vertices = Vec::with_capacity(1 << n);
        for state in 0..(1u32 << n) {
            vertices.push(resolve(d, state)?);
        }
        Ok(Cube {
            crossings: n,
            n_plus: d.positive_count(),
            n_minus: d.negative_count(),
            vertices,
            diagram: d.clone(),
        })
    }

    pub fn crossings(&self) -> usize {
        self.crossings
    }

    pub fn n_plus(&self) -> usize {
        self.n_plus
    }

    pub fn n_minus(&self) -> usize {
        self.n_minus
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn vertices(&self) -> &[CubeVertex] {
        &self.vertices
    }

    pub fn vertex(&self, state: u32) -> &CubeVertex {
        &self.vertices[state as usize]
    }

    /// Homological degree `i = |ε| − n₋`.
    pub fn homological_degree(&self, state: u32) -> i32 {
        state.count_ones() as i32 - self.n_minus as i32
    }

    /// Quantum grading `j = deg(v) + |ε| + n₊ − 2n₋`.
    pub fn q_grading(&self, state: u32, m: Monomial) -> i32 {
        let v = self.vertex(state);
        v.degree(m) + v.height() as i32 + self.n_plus as i32 - 2 * self.n_minus as i32
    }

    /// The edge from `state` (which must have bit `k` clear) to `state | 1 << k`.
    pub fn edge(&self, state: u32, k: CrossingId) -> Result<CubeEdge> {
        debug_assert_eq!(state >> k & 1, 0);
        let src = self.vertex(state);
        let dst = self.vertex(state | 1 << k);
        let x = self.diagram.crossing(k)?;
        let mut image: Vec<u8> = src.representatives.iter().map(|&e| dst.circle_of_edge[e]).collect();
        let (src_loops, dst_loops) = (src.representatives.len(), dst.representatives.len());
        image.extend((0..src.circles - src_loops).map(|l| (dst_loops + l) as u8));

        let [p, q] = x.zero_pairs();
        let a = src.circle_of_edge[x.edge_at(p.0)];
        let b = src.circle_of_edge[x.edge_at(q.0)];
        let kind = if a != b {
            if dst.circles + 1 != src.circles || image[a as usize] != image[b as usize] {
                return Err(Error::invariant(format!("merge at crossing {k} does not join two circles")));
            }
            EdgeKind::Merge { a, b, target: image[a as usize] }
        } else {
            let [p1, q1] = x.one_pairs();
            let left = dst.circle_of_edge[x.edge_at(p1.0)];
            let right = dst.circle_of_edge[x.edge_at(q1.0)];
            if dst.circles != src.circles + 1 || left == right {
                return Err(Error::invariant(format!("split at crossing {k} does not yield two circles")));
            }
            image[a as usize] = left;
            EdgeKind::Split { source: a, left, right }
        };
        let before = (state & ((1u32 << k) - 1)).count_ones();
        Ok(CubeEdge { kind, image, sign: if before.is_multiple_of(2) { 1 } else { -1 } })
    }
}

impl CubeEdge {
    /// Image of a monomial under the signed edge map, as `(monomial, coefficient)`
    /// terms. With `lee` the Φ part of the Lee differential is added.
    pub fn apply(&self, m: Monomial, lee: bool) -> Vec<(Monomial, i64)> {
        let bit = |c: u8| m >> c & 1 == 1;
        let mut base: Monomial = 0;
        for (c, &t) in self.image.iter().enumerate() {
            let skip = match self.kind {
                EdgeKind::Merge { a, b, .. } => c as u8 == a || c as u8 == b,
                EdgeKind::Split { source, .. } => c as u8 == source,
            };
            if !skip && bit(c as u8) {
                base |= 1 << t;
            }
        }
        let s = self.sign;
        match self.kind {
            EdgeKind::Merge { a, b, target } => match (bit(a), bit(b)) {
                (false, false) => vec![(base, s)],
                (true, true) if lee => vec![(base, s)],
                (true, true) => vec![],
                _ => vec![(base | 1 << target, s)],
            },
            EdgeKind::Split { source, left, right } => {
                let (l, r) = (1 << left, 1 << right);
                if bit(source) {
                    let mut out = vec![(base | l | r, s)];
                    if lee {
                        out.push((base, s));
                    }
                    out
                } else {
                    vec![(base | r, s), (base | l, s)]
                }
            }
        }
    }
}

/// Circles of the resolution `state`.
pub(crate) fn resolve(d: &Diagram, state: u32) -> Result<CubeVertex> {
    let ne = d.edge_count();
    let mut uf = crate::diagram::UnionFind::new(ne);
    for (k, x) in d.crossings().iter().enumerate() {
        let pairs = if state >> k & 1 == 0 { x.zero_pairs() } else { x.one_pairs() };
        for (p, q) in pairs {
            uf.union(x.edge_at(p), x.edge_at(q));
        }
    }
    let mut label_of_root = vec![u8::MAX; ne];
    let mut circle_of_edge = vec![0u8; ne];
    let mut representatives = Vec::new();
    for e in 0..ne {
        let r = uf.find(e);
        if label_of_root[r] == u8::MAX {
            label_of_root[r] = representatives.len() as u8;
            representatives.push(e);
        }
        circle_of_edge[e] = label_of_root[r];
    }
    let circles = representatives.len() + d.free_loops().len();
    if circles > MAX_CIRCLES {
        return Err(Error::Input(format!("resolution with {circles} circles exceeds {MAX_CIRCLES}")));
    }
    Ok(CubeVertex { state, circle_of_edge, circles, representatives })
}
