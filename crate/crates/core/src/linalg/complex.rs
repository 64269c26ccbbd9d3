use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::sparse::{axpy, SparseVec};
use super::{Rational, SparseMatrix};
use crate::error::{Error, Result};

/// How the differential interacts with the q-levels of the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FiltrationKind {
    /// Every entry preserves q.
    Graded,
    /// Every entry raises q or keeps it.
    Filtered,
}

/// A cochain complex `dⁱ : Cⁱ → Cⁱ⁺¹` over ℚ whose bases carry q-levels.
#[derive(Clone, Debug)]
pub struct FilteredChainComplex {
    kind: FiltrationKind,
    groups: BTreeMap<i32, Vec<i32>>,
    differentials: BTreeMap<i32, SparseMatrix>,
}

/// Filtered degree of a homology class; a boundary has no finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FilteredDegree {
    Finite(i32),
    Null,
}

impl FilteredDegree {
    pub fn finite(self) -> Option<i32> {
        match self {
            FilteredDegree::Finite(n) => Some(n),
            FilteredDegree::Null => None,
        }
    }
}

impl Serialize for FilteredDegree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FilteredDegree::Finite(n) => s.serialize_i32(*n),
            FilteredDegree::Null => s.serialize_str("null_class"),
        }
    }
}

/// Homology ranks keyed by `(i, j)`. Single-graded tables use `j = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyTable {
    ranks: BTreeMap<(i32, i32), usize>,
    q_graded: bool,
    /// Filtered degrees of designated cycles, by name.
    pub filtration: BTreeMap<String, FilteredDegree>,
}

impl HomologyTable {
    pub fn new(q_graded: bool) -> Self {
        HomologyTable { q_graded, ..Default::default() }
    }

    pub fn is_q_graded(&self) -> bool {
        self.q_graded
    }

    pub fn set(&mut self, i: i32, j: i32, rank: usize) {
        if rank == 0 {
            self.ranks.remove(&(i, j));
        } else {
            self.ranks.insert((i, j), rank);
        }
    }

    pub fn rank(&self, i: i32, j: i32) -> usize {
        self.ranks.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Rank in homological degree `i`, summed over q.
    pub fn rank_at(&self, i: i32) -> usize {
        self.ranks.range((i, i32::MIN)..=(i, i32::MAX)).map(|(_, r)| r).sum()
    }

    pub fn total(&self) -> usize {
        self.ranks.values().sum()
    }

    /// Nonzero entries as `(i, j, rank)`, sorted.
    pub fn entries(&self) -> impl Iterator<Item = (i32, i32, usize)> + '_ {
        self.ranks.iter().map(|(&(i, j), &r)| (i, j, r))
    }

    pub fn degrees(&self) -> BTreeSet<i32> {
        self.ranks.keys().map(|k| k.0).collect()
    }
}

impl FilteredChainComplex {
    pub fn new(kind: FiltrationKind) -> Self {
        FilteredChainComplex { kind, groups: BTreeMap::new(), differentials: BTreeMap::new() }
    }

    pub fn kind(&self) -> FiltrationKind {
        self.kind
    }

    /// Sets the basis of `Cⁱ`, given by the q-level of each generator.
    pub fn set_group(&mut self, i: i32, q_levels: Vec<i32>) {
        self.groups.insert(i, q_levels);
    }

    /// Sets `dⁱ : Cⁱ → Cⁱ⁺¹`, checking shape and filtration compatibility.
    pub fn set_differential(&mut self, i: i32, d: SparseMatrix) -> Result<()> {
        let (src, dst) = (self.dim(i), self.dim(i + 1));
        if d.cols() != src || d.rows() != dst {
            return Err(Error::invariant(format!(
                "d^{i} is {}x{}, expected {dst}x{src}",
                d.rows(),
                d.cols()
            )));
        }
        let qs = self.q_levels(i);
        let qt = self.q_levels(i + 1);
        for (r, c, _) in d.entries() {
            let ok = match self.kind {
                FiltrationKind::Graded => qt[r] == qs[c],
                FiltrationKind::Filtered => qt[r] >= qs[c],
            };
            if !ok {
                return Err(Error::invariant(format!(
                    "d^{i} maps q-level {} to {} ({:?} complex)",
                    qs[c], qt[r], self.kind
                )));
            }
        }
        self.differentials.insert(i, d);
        Ok(())
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.groups.keys().copied()
    }

    pub fn dim(&self, i: i32) -> usize {
        self.groups.get(&i).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.groups.values().map(Vec::len).sum()
    }

    pub fn q_levels(&self, i: i32) -> &[i32] {
        self.groups.get(&i).map_or(&[], Vec::as_slice)
    }

    /// `dⁱ`, or the zero map when none was set.
    pub fn differential(&self, i: i32) -> SparseMatrix {
        self.differentials
            .get(&i)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zero(self.dim(i + 1), self.dim(i)))
    }

    fn differential_ref(&self, i: i32) -> Option<&SparseMatrix> {
        self.differentials.get(&i)
    }

    pub fn check_d_squared(&self) -> Result<()> {
        for (&i, d) in &self.differentials {
            if let Some(next) = self.differentials.get(&(i + 1)) {
                if !next.mul(d).is_zero() {
                    return Err(Error::invariant(format!("d^{} ∘ d^{i} ≠ 0", i + 1)));
                }
            }
        }
        Ok(())
    }

    /// Ranks of homology, per `(i, q)` for graded complexes and per `i`
    /// otherwise. Independent blocks are reduced in parallel.
    pub fn homology_ranks(&self) -> Result<HomologyTable> {
        self.check_d_squared()?;
        match self.kind {
            FiltrationKind::Graded => Ok(self.graded_ranks()),
            FiltrationKind::Filtered => Ok(self.ungraded_ranks()),
        }
    }

    fn ungraded_ranks(&self) -> HomologyTable {
        let degrees: Vec<i32> = self.degrees().collect();
        let ranks: HashMap<i32, usize> = self
            .differentials
            .par_iter()
            .map(|(&i, d)| (i, d.rank()))
            .collect();
        let mut table = HomologyTable::new(false);
        for i in degrees {
            let r_out = ranks.get(&i).copied().unwrap_or(0);
            let r_in = ranks.get(&(i - 1)).copied().unwrap_or(0);
            table.set(i, 0, self.dim(i) - r_out - r_in);
        }
        table
    }

    fn graded_ranks(&self) -> HomologyTable {
        // Basis indices of each (i, q) block.
        let mut blocks: BTreeMap<(i32, i32), Vec<usize>> = BTreeMap::new();
        for (&i, qs) in &self.groups {
            for (k, &q) in qs.iter().enumerate() {
                blocks.entry((i, q)).or_default().push(k);
            }
        }
        // rank of dⁱ restricted to the q block.
        let keys: Vec<(i32, i32)> = blocks
            .keys()
            .copied()
            .filter(|(i, _)| self.differentials.contains_key(i))
            .collect();
        let ranks: HashMap<(i32, i32), usize> = keys
            .par_iter()
            .map(|&(i, q)| {
                let d = self.differential_ref(i).expect("filtered above");
                let empty = Vec::new();
                let rows = blocks.get(&(i + 1, q)).unwrap_or(&empty);
                ((i, q), d.submatrix(rows, &blocks[&(i, q)]).rank())
            })
            .collect();
        let mut table = HomologyTable::new(true);
        for (&(i, q), basis) in &blocks {
            let r_out = ranks.get(&(i, q)).copied().unwrap_or(0);
            let r_in = ranks.get(&(i - 1, q)).copied().unwrap_or(0);
            table.set(i, q, basis.len() - r_out - r_in);
        }
        table
    }

    fn check_cycle(&self, i: i32, z: &SparseVec) -> Result<()> {
        if z.last().is_some_and(|e| e.0 >= self.dim(i)) {
            return Err(Error::Input(format!("chain has an index outside C^{i}")));
        }
        if let Some(d) = self.differential_ref(i) {
            if !d.mul_sparse(z).is_empty() {
                return Err(Error::NotACycle);
            }
        }
        Ok(())
    }

    /// Largest n such that `z + d(c)` lies in filtration level n for some
    /// chain c, i.e. the largest n for which `z` is congruent modulo
    /// boundaries to a chain supported on q-levels ≥ n.
    ///
    /// Levels are decided in descending order by a single reduction: the
    /// columns of `dⁱ⁻¹` are brought to echelon form with respect to the
    /// basis ordered by ascending q, after which `z` is reduced from its
    /// lowest entry upwards; the first entry that cannot be cleared is the
    /// lowest level any representative must touch.
    pub fn filtered_degree_of_class(&self, i: i32, z: &SparseVec) -> Result<FilteredDegree> {
        self.check_cycle(i, z)?;
        let qs = self.q_levels(i);
        let mut order: Vec<usize> = (0..qs.len()).collect();
        order.sort_by_key(|&k| (qs[k], k));
        let mut pos = vec![0; qs.len()];
        for (p, &k) in order.iter().enumerate() {
            pos[k] = p;
        }
        let relabel = |v: &SparseVec| -> SparseVec {
            let mut w: SparseVec = v.iter().map(|(k, x)| (pos[*k], x.clone())).collect();
            w.sort_by_key(|e| e.0);
            w
        };

        let mut pivots: HashMap<usize, SparseVec> = HashMap::new();
        if let Some(d) = self.differential_ref(i - 1) {
            for c in 0..d.cols() {
                let mut col = relabel(d.column(c));
                reduce(&mut col, &pivots);
                if let Some(&(low, _)) = col.first() {
                    pivots.insert(low, col);
                }
            }
        }
        let mut v = relabel(z);
        reduce(&mut v, &pivots);
        Ok(match v.first() {
            Some(&(low, _)) => FilteredDegree::Finite(qs[order[low]]),
            None => FilteredDegree::Null,
        })
    }

    /// The same quantity by direct feasibility tests: for n descending from
    /// the top q-level, `z` is feasible at n iff its part below n lies in
    /// the span of the parts of `dⁱ⁻¹` below n. Slow; used to cross-check.
    pub fn filtered_degree_by_feasibility(&self, i: i32, z: &SparseVec) -> Result<FilteredDegree> {
        self.check_cycle(i, z)?;
        let qs = self.q_levels(i);
        let d = self.differential(i - 1);
        let levels: BTreeSet<i32> = qs.iter().copied().collect();
        let cols: Vec<usize> = (0..d.cols()).collect();
        let feasible = |n: i32| -> bool {
            let rows: Vec<usize> = (0..qs.len()).filter(|&k| qs[k] < n).collect();
            let mut below = d.submatrix(&rows, &cols);
            let r = below.rank();
            let mut row_pos = vec![usize::MAX; qs.len()];
            for (p, &k) in rows.iter().enumerate() {
                row_pos[k] = p;
            }
            let zc: SparseVec = z
                .iter()
                .filter(|(k, _)| row_pos[*k] != usize::MAX)
                .map(|(k, x)| (row_pos[*k], x.clone()))
                .collect();
            below.push_column(zc);
            below.rank() == r
        };
        let top = levels.iter().next_back().copied().unwrap_or(0);
        if feasible(top + 1) {
            return Ok(FilteredDegree::Null);
        }
        for &n in levels.iter().rev() {
            if feasible(n) {
                return Ok(FilteredDegree::Finite(n));
            }
        }
        Err(Error::invariant("no feasible filtration level for a nonzero class"))
    }
}

/// Clears entries of `v` from the lowest index upwards using columns keyed
/// by their lowest index.
fn reduce(v: &mut SparseVec, pivots: &HashMap<usize, SparseVec>) {
    while let Some((low, x)) = v.first().cloned() {
        let Some(p) = pivots.get(&low) else {
            return;
        };
        let f = -(&x / &p[0].1);
        *v = axpy(v, &f, p);
    }
}

/// Builds a sparse chain from `(index, coefficient)` pairs.
pub fn chain(entries: impl IntoIterator<Item = (usize, i64)>) -> SparseVec {
    super::sparse::normalize(entries.into_iter().map(|(k, c)| (k, Rational::from_integer(c))).collect())
}

/// `a + f·b`.
pub fn chain_sum(a: &SparseVec, f: &Rational, b: &SparseVec) -> SparseVec {
    axpy(a, f, b)
}
