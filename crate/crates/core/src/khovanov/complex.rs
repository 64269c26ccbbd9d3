use std::collections::BTreeMap;

use super::cube::{Cube, Monomial};
use crate::diagram::Diagram;
use crate::error::Result;
use crate::linalg::{FilteredChainComplex, FiltrationKind, Rational, SparseMatrix};

/// Which differential to put on the cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theory {
    Khovanov,
    /// `d_Kh + d_Φ`, filtered by q.
    Lee,
}

/// The cube of resolutions assembled into a chain complex.
///
/// Generators of `Cⁱ` are ordered by state, then by monomial.
#[derive(Clone, Debug)]
pub struct CubeComplex {
    cube: Cube,
    complex: FilteredChainComplex,
    /// Offset of each vertex's first generator inside its chain group.
    offsets: Vec<usize>,
}

impl CubeComplex {
    pub fn build(d: &Diagram, theory: Theory) -> Result<CubeComplex> {
        let cube = Cube::new(d)?;
        let n = cube.crossings();
        let kind = match theory {
            Theory::Khovanov => FiltrationKind::Graded,
            Theory::Lee => FiltrationKind::Filtered,
        };

        let mut offsets = vec![0usize; 1 << n];
        let mut by_height: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
        for state in 0..(1u32 << n) {
            by_height[state.count_ones() as usize].push(state);
        }
        let mut complex = FilteredChainComplex::new(kind);
        for states in &by_height {
            let mut qs = Vec::new();
            for &s in states {
                offsets[s as usize] = qs.len();
                let v = cube.vertex(s);
                qs.extend((0..v.generator_count() as Monomial).map(|m| cube.q_grading(s, m)));
            }
            if let Some(&s) = states.first() {
                complex.set_group(cube.homological_degree(s), qs);
            }
        }

        let lee = theory == Theory::Lee;
        for (h, states) in by_height.iter().enumerate().take(n) {
            let mut triplets = Vec::new();
            for &s in states {
                for k in (0..n).filter(|&k| s >> k & 1 == 0) {
                    let t = s | 1 << k;
                    let edge = cube.edge(s, k)?;
                    for m in 0..cube.vertex(s).generator_count() as Monomial {
                        let col = offsets[s as usize] + m as usize;
                        for (m2, c) in edge.apply(m, lee) {
                            triplets.push((offsets[t as usize] + m2 as usize, col, Rational::from_integer(c)));
                        }
                    }
                }
            }
            let i = h as i32 - cube.n_minus() as i32;
            let (rows, cols) = (complex.dim(i + 1), complex.dim(i));
            complex.set_differential(i, SparseMatrix::from_triplets(rows, cols, triplets))?;
        }
        complex.check_d_squared()?;
        Ok(CubeComplex { cube, complex, offsets })
    }

    pub fn cube(&self) -> &Cube {
        &self.cube
    }

    pub fn complex(&self) -> &FilteredChainComplex {
        &self.complex
    }

    /// Homological degree and index of a generator.
    pub fn index_of(&self, state: u32, m: Monomial) -> (i32, usize) {
        (self.cube.homological_degree(state), self.offsets[state as usize] + m as usize)
    }

    /// Total generator count per homological degree.
    pub fn dimensions(&self) -> BTreeMap<i32, usize> {
        self.complex.degrees().map(|i| (i, self.complex.dim(i))).collect()
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
    fn unknot_complex() {
        let c = CubeComplex::build(&Diagram::unknot(), Theory::Khovanov).unwrap();
        assert_eq!(c.dimensions(), BTreeMap::from([(0, 2)]));
        assert_eq!(c.complex().q_levels(0), &[1, -1]);
    }

    #[test]
    fn one_crossing_dimensions() {
        let c = CubeComplex::build(&closure(2, &[1]), Theory::Khovanov).unwrap();
        assert_eq!(c.dimensions(), BTreeMap::from([(0, 4), (1, 2)]));
        let c = CubeComplex::build(&closure(2, &[-1]), Theory::Khovanov).unwrap();
        assert_eq!(c.dimensions(), BTreeMap::from([(-1, 2), (0, 4)]));
    }

    #[test]
    fn lee_part_raises_q_by_four() {
        let d = closure(3, &[1, -2, 1, -2]);
        let kh = CubeComplex::build(&d, Theory::Khovanov).unwrap();
        let lee = CubeComplex::build(&d, Theory::Lee).unwrap();
        for i in kh.complex().degrees() {
            let (a, b) = (kh.complex().differential(i), lee.complex().differential(i));
            let qs = lee.complex().q_levels(i);
            let qt = lee.complex().q_levels(i + 1);
            for (r, c, v) in b.entries() {
                if a.get(r, c) != *v {
                    assert_eq!(qt[r], qs[c] + 4);
                }
            }
        }
    }
}
