use serde::Serialize;

use super::{Corner, CrossingId, Diagram, EdgeId, End, Sign, UnionFind};

/// Faces of the planar graph underlying a diagram (free loops excluded).
#[derive(Clone, Debug)]
pub struct Faces {
    corner_face: Vec<[usize; 4]>,
    faces: Vec<Vec<Corner>>,
}

impl Faces {
    pub(crate) fn new(d: &Diagram) -> Self {
        let n = d.crossing_count();
        let mut corner_face = vec![[usize::MAX; 4]; n];
        let mut faces = Vec::new();
        for c in 0..n {
            for s in 0..4u8 {
                if corner_face[c][s as usize] != usize::MAX {
                    continue;
                }
                let f = faces.len();
                let mut corners = Vec::new();
                let mut cur = End::new(c, s);
                while corner_face[cur.crossing][cur.slot as usize] == usize::MAX {
                    corner_face[cur.crossing][cur.slot as usize] = f;
                    corners.push(cur);
                    let leave = End::new(cur.crossing, cur.slot + 1);
                    cur = other_end(d, leave);
                }
                faces.push(corners);
            }
        }
        Faces { corner_face, faces }
    }

    pub fn count(&self) -> usize {
        self.faces.len()
    }

    pub fn corners(&self, f: usize) -> &[Corner] {
        &self.faces[f]
    }

    pub fn face_of(&self, corner: Corner) -> usize {
        self.corner_face[corner.crossing][corner.slot as usize]
    }

    /// Face on the left of edge `e` when travelling along its orientation.
    pub fn left_of(&self, d: &Diagram, e: EdgeId) -> usize {
        let h = d.edges()[e].head;
        self.face_of(End::new(h.crossing, h.slot + 3))
    }

    pub fn right_of(&self, d: &Diagram, e: EdgeId) -> usize {
        let h = d.edges()[e].head;
        self.face_of(h)
    }
}

fn other_end(d: &Diagram, end: End) -> End {
    let e = d.crossings()[end.crossing].edge_at(end.slot);
    let edge = d.edges()[e];
    if edge.tail == end {
        edge.head
    } else {
        edge.tail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertCircle {
    /// Edges in traversal order; empty for a free loop.
    pub edges: Vec<EdgeId>,
    /// Number of circles of the same connected part strictly containing it.
    pub depth: usize,
    pub clockwise: bool,
    /// Index into [`Diagram::free_loops`] when the circle is a free loop.
    pub free_loop: Option<usize>,
}

/// The oriented resolution of a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertState {
    pub circles: Vec<SeifertCircle>,
    pub edge_circle: Vec<usize>,
    /// For every crossing: circle through its incoming under edge, circle
    /// through its incoming over edge.
    pub crossing_circles: Vec<(usize, usize)>,
}

impl SeifertState {
    pub fn count(&self) -> usize {
        self.circles.len()
    }

    pub fn circles_at(&self, c: CrossingId) -> (usize, usize) {
        self.crossing_circles[c]
    }

    /// The Lee labelling rule: `a` when depth plus the clockwise bit is even.
    pub fn is_a_labelled(&self, circle: usize) -> bool {
        let c = &self.circles[circle];
        (c.depth + usize::from(c.clockwise)).is_multiple_of(2)
    }
}

impl Diagram {
    /// Next edge along the Seifert circle through `e`.
    pub fn seifert_successor(&self, e: EdgeId) -> EdgeId {
        let h = self.edges()[e].head;
        let x = &self.crossings()[h.crossing];
        let next = if x.is_incoming(h.slot + 1) { h.slot + 3 } else { h.slot + 1 };
        x.edge_at(next)
    }

    pub fn seifert_state(&self) -> SeifertState {
        let ne = self.edge_count();
        let mut edge_circle = vec![usize::MAX; ne];
        let mut circles = Vec::new();
        for start in 0..ne {
            if edge_circle[start] != usize::MAX {
                continue;
            }
            let id = circles.len();
            let mut edges = Vec::new();
            let mut e = start;
            while edge_circle[e] == usize::MAX {
                edge_circle[e] = id;
                edges.push(e);
                e = self.seifert_successor(e);
            }
            circles.push(SeifertCircle { edges, depth: 0, clockwise: false, free_loop: None });
        }

        if !circles.is_empty() {
            let faces = self.faces();
            let parts = self.crossing_parts();
            let nparts = parts.iter().copied().max().map_or(0, |m| m + 1);
            let outer = self.outer_faces(&faces, &parts, nparts);
            let circle_part: Vec<usize> = circles
                .iter()
                .map(|c| parts[self.edges()[c.edges[0]].head.crossing])
                .collect();
            let outside: Vec<Vec<bool>> = circles
                .iter()
                .enumerate()
                .map(|(i, _)| self.outside_of(&faces, &edge_circle, i, outer[circle_part[i]]))
                .collect();
            for i in 0..circles.len() {
                let probe = faces.left_of(self, circles[i].edges[0]);
                circles[i].clockwise = outside[i][probe];
                circles[i].depth = (0..circles.len())
                    .filter(|&j| j != i && circle_part[j] == circle_part[i] && !outside[j][probe])
                    .count();
            }
        }
        for (k, &cw) in self.free_loops().iter().enumerate() {
            circles.push(SeifertCircle { edges: Vec::new(), depth: 0, clockwise: cw, free_loop: Some(k) });
        }

        let crossing_circles = self
            .crossings()
            .iter()
            .map(|x| (edge_circle[x.edge_at(x.under_in())], edge_circle[x.edge_at(x.over_in())]))
            .collect();
        SeifertState { circles, edge_circle, crossing_circles }
    }

    /// Unbounded face of every connected part.
    fn outer_faces(&self, faces: &Faces, parts: &[usize], nparts: usize) -> Vec<usize> {
        let mut hinted: Vec<Option<usize>> = vec![None; nparts];
        for hint in self.outer_hints() {
            if hint.crossing < parts.len() {
                hinted[parts[hint.crossing]].get_or_insert(faces.face_of(*hint));
            }
        }
        // Parts without hints take their largest face.
        let mut largest: Vec<Option<usize>> = vec![None; nparts];
        for f in 0..faces.count() {
            let p = parts[faces.corners(f)[0].crossing];
            match largest[p] {
                Some(g) if faces.corners(g).len() >= faces.corners(f).len() => {}
                _ => largest[p] = Some(f),
            }
        }
        (0..nparts)
            .map(|p| hinted[p].or(largest[p]).expect("every part has a face"))
            .collect()
    }

    /// Faces on the same side of circle `circle` as `outer`.
    fn outside_of(&self, faces: &Faces, edge_circle: &[usize], circle: usize, outer: usize) -> Vec<bool> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); faces.count()];
        for e in 0..self.edge_count() {
            if edge_circle[e] == circle {
                continue;
            }
            let (l, r) = (faces.left_of(self, e), faces.right_of(self, e));
            adj[l].push(r);
            adj[r].push(l);
        }
        let mut seen = vec![false; faces.count()];
        let mut stack = vec![outer];
        seen[outer] = true;
        while let Some(f) = stack.pop() {
            for &g in &adj[f] {
                if !seen[g] {
                    seen[g] = true;
                    stack.push(g);
                }
            }
        }
        seen
    }

    pub fn seifert_graph(&self) -> SeifertGraph {
        SeifertGraph::new(self, &self.seifert_state())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockSign {
    Positive,
    Negative,
    Mixed,
}

/// A maximal 2-connected subgraph, given by its edges (crossing ids).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub crossings: Vec<CrossingId>,
    pub sign: BlockSign,
}

/// Signed multigraph on the Seifert circles, one edge per crossing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertGraph {
    pub vertex_count: usize,
    /// (circle, circle, sign), indexed by crossing.
    pub edges: Vec<(usize, usize, Sign)>,
    pub blocks: Vec<Block>,
}

impl SeifertGraph {
    pub fn new(d: &Diagram, state: &SeifertState) -> Self {
        let edges: Vec<(usize, usize, Sign)> = state
            .crossing_circles
            .iter()
            .zip(d.signs())
            .map(|(&(u, v), s)| (u, v, s))
            .collect();
        let vertex_count = state.count();
        let blocks = biconnected_blocks(vertex_count, &edges)
            .into_iter()
            .map(|mut crossings| {
                crossings.sort_unstable();
                let pos = crossings.iter().filter(|&&c| edges[c].2.is_positive()).count();
                let sign = if pos == crossings.len() {
                    BlockSign::Positive
                } else if pos == 0 {
                    BlockSign::Negative
                } else {
                    BlockSign::Mixed
                };
                Block { crossings, sign }
            })
            .collect();
        SeifertGraph { vertex_count, edges, blocks }
    }

    /// Connected components of the subgraph keeping only edges with `keep`.
    pub fn component_count_with(&self, keep: impl Fn(Sign) -> bool) -> usize {
        let mut uf = UnionFind::new(self.vertex_count);
        let mut count = self.vertex_count;
        for &(u, v, s) in &self.edges {
            if keep(s) && uf.union(u, v) {
                count -= 1;
            }
        }
        count
    }

    pub fn component_count(&self) -> usize {
        self.component_count_with(|_| true)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Vertices touching at least one edge of sign `s`.
    pub fn touches(&self, s: Sign) -> Vec<bool> {
        let mut t = vec![false; self.vertex_count];
        for &(u, v, sign) in &self.edges {
            if sign == s {
                t[u] = true;
                t[v] = true;
            }
        }
        t
    }
}

/// Edge sets of the blocks of an undirected multigraph (Hopcroft–Tarjan with
/// an explicit stack; parallel edges form 2-connected blocks).
fn biconnected_blocks(nv: usize, edges: &[(usize, usize, Sign)]) -> Vec<Vec<usize>> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for (i, &(u, v, _)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        if u != v {
            adj[v].push((u, i));
        }
    }
    let mut disc = vec![usize::MAX; nv];
    let mut low = vec![0usize; nv];
    let mut timer = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut used = vec![false; edges.len()];
    let mut blocks = Vec::new();

    for root in 0..nv {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, parent edge, next adjacency index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, pe, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let (w, e) = adj[v][*idx];
                *idx += 1;
                if e == pe || used[e] {
                    continue;
                }
                used[e] = true;
                edge_stack.push(e);
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == pe {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}
