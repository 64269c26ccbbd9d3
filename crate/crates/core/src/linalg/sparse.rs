use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_traits::Zero;

use super::Rational;

/// Sparse vector: `(index, value)` pairs sorted by index, no zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// Below this many cells elimination runs on a dense copy.
const DENSE_CUTOFF: usize = 1 << 12;

/// Column-compressed sparse matrix with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for (i, col) in m.columns.iter_mut().enumerate() {
            col.push((i, Rational::from_integer(1)));
        }
        m
    }

    /// Duplicate positions are summed; zero results are dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut columns: Vec<SparseVec> = vec![Vec::new(); cols];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            columns[c].push((r, v));
        }
        for col in &mut columns {
            *col = normalize(std::mem::take(col));
        }
        SparseMatrix { rows, cols, columns }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        Self::from_triplets(
            nrows,
            ncols,
            rows.iter().enumerate().flat_map(|(r, row)| {
                assert_eq!(row.len(), ncols, "ragged dense matrix");
                row.iter().enumerate().map(move |(c, &v)| (r, c, Rational::from_integer(v)))
            }),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.columns[c].binary_search_by_key(&r, |e| e.0) {
            Ok(k) => self.columns[c][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut columns: Vec<SparseVec> = vec![Vec::new(); self.rows];
        for (r, c, v) in self.entries() {
            columns[r].push((c, v.clone()));
        }
        SparseMatrix { rows: self.cols, cols: self.rows, columns }
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        let mut y = vec![Rational::zero(); self.rows];
        for (c, xc) in x.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for (r, v) in &self.columns[c] {
                y[*r] = &y[*r] + &(v * xc);
            }
        }
        y
    }

    pub fn mul_sparse(&self, x: &SparseVec) -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for (c, xc) in x {
            for (r, v) in &self.columns[*c] {
                acc.push((*r, v * xc));
            }
        }
        normalize(acc)
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            columns: other.columns.iter().map(|col| self.mul_sparse(col)).collect(),
        }
    }

    /// The submatrix on the given rows and columns, renumbered in the order given.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut row_pos = vec![usize::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            row_pos[r] = k;
        }
        let columns = cols
            .iter()
            .map(|&c| {
                let mut col: SparseVec = self.columns[c]
                    .iter()
                    .filter(|(r, _)| row_pos[*r] != usize::MAX)
                    .map(|(r, v)| (row_pos[*r], v.clone()))
                    .collect();
                col.sort_by_key(|e| e.0);
                col
            })
            .collect();
        SparseMatrix { rows: rows.len(), cols: cols.len(), columns }
    }

    /// Appends a column.
    pub fn push_column(&mut self, col: SparseVec) {
        let col = normalize(col);
        assert!(col.last().is_none_or(|e| e.0 < self.rows));
        self.columns.push(col);
        self.cols += 1;
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if self.rows * self.cols <= DENSE_CUTOFF {
            return dense_rank(self.to_dense());
        }
        // Eliminate along the shorter dimension's lines.
        if self.cols <= self.rows {
            markowitz_rank(self.columns.clone(), self.rows)
        } else {
            markowitz_rank(self.transpose().columns, self.cols)
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            d[r][c] = v.clone();
        }
        d
    }
}

/// Sorts, sums duplicates and drops zeros.
pub(crate) fn normalize(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = &*y + &x,
            _ => out.push((i, x)),
        }
        if out.last().is_some_and(|e| e.1.is_zero()) {
            out.pop();
        }
    }
    out
}

/// `a + f·b` on sorted sparse vectors.
pub(crate) fn axpy(a: &SparseVec, f: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ka = a.get(i).map_or(usize::MAX, |e| e.0);
        let kb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ka < kb {
            out.push(a[i].clone());
            i += 1;
        } else if kb < ka {
            out.push((kb, f * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(f * &b[j].1);
            if !v.is_zero() {
                out.push((ka, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn dense_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].recip();
        for r in rank + 1..rows {
            if m[r][c].is_zero() {
                continue;
            }
            let f = -(&m[r][c] * &inv);
            for k in c..cols {
                if !m[rank][k].is_zero() {
                    let v = &m[r][k] + &(&f * &m[rank][k]);
                    m[r][k] = v;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Gaussian elimination on sparse lines with Markowitz-style pivoting:
/// the sparsest remaining line is eliminated next, on the index touched by
/// the fewest other lines, preferring ±1 entries.
fn markowitz_rank(mut lines: Vec<SparseVec>, width: usize) -> usize {
    let n = lines.len();
    let mut alive = vec![true; n];
    // Lines that may contain each index; entries go stale as fill cancels.
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); width];
    let mut heap = BinaryHeap::with_capacity(n);
    for (l, line) in lines.iter().enumerate() {
        for (k, _) in line {
            occurs[*k].push(l);
        }
        heap.push(Reverse((line.len(), l)));
    }
    let mut rank = 0;
    while let Some(Reverse((len, l))) = heap.pop() {
        if !alive[l] || lines[l].len() != len {
            continue;
        }
        alive[l] = false;
        if len == 0 {
            continue;
        }
        let pivot_line = std::mem::take(&mut lines[l]);
        let (pk, pv) = pivot_line
            .iter()
            .min_by_key(|(k, v)| (occurs[*k].len(), !v.is_unit()))
            .map(|(k, v)| (*k, v.clone()))
            .expect("nonempty line");
        rank += 1;
        let inv = pv.recip();
        let mut targets = std::mem::take(&mut occurs[pk]);
        targets.sort_unstable();
        targets.dedup();
        for t in targets {
            if !alive[t] {
                continue;
            }
            let Ok(pos) = lines[t].binary_search_by_key(&pk, |e| e.0) else {
                continue;
            };
            let f = -(&lines[t][pos].1 * &inv);
            let updated = axpy(&lines[t], &f, &pivot_line);
            for (k, _) in &updated {
                if lines[t].binary_search_by_key(k, |e| e.0).is_err() {
                    occurs[*k].push(t);
                }
            }
            lines[t] = updated;
            heap.push(Reverse((lines[t].len(), t)));
        }
    }
    rank
}
