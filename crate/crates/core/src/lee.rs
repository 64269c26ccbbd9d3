//! Lee homology, Lee's canonical generators and the s-invariant.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::diagram::{Diagram, Transform};
use crate::error::{Error, Result};
use crate::khovanov::{check_cap, Cube, CubeComplex, EdgeKind, Monomial, Theory};
use crate::linalg::{
    FilteredChainComplex, FilteredDegree, FiltrationKind, HomologyTable, Rational, SparseMatrix, SparseVec,
};

pub const DEFAULT_CROSSING_CAP: usize = 10;

/// The Lee complex: same generators as Khovanov's, differential `d_Kh + d_Φ`.
pub fn build_lee_complex(d: &Diagram) -> Result<CubeComplex> {
    CubeComplex::build(d, Theory::Lee)
}

/// Lee's canonical cycle for one orientation of the diagram.
#[derive(Clone, Debug)]
pub struct CanonicalClass {
    /// Per component: `true` if reversed relative to the input orientation.
    pub reversed: Vec<bool>,
    /// Cube vertex of the oriented resolution.
    pub state: u32,
    /// `a`/`b` label of every circle of that resolution (`true` = `a`).
    pub labels: Vec<bool>,
    /// `i(𝔬)`.
    pub degree: i32,
    /// The cycle in the monomial basis of `C^{degree}`.
    pub cycle: SparseVec,
}

impl CanonicalClass {
    /// Components reversed relative to the input orientation.
    pub fn reoriented(&self) -> Vec<usize> {
        self.reversed.iter().enumerate().filter(|(_, &r)| r).map(|(k, _)| k).collect()
    }
}

/// `i(𝔬) = Σ_{j∈E, k∉E} 2·lk(L_j, L_k)`.
pub fn reorientation_degree(lk: &[Vec<i32>], reversed: &[bool]) -> i32 {
    let mut total = 0;
    for j in 0..lk.len() {
        for k in 0..lk.len() {
            if reversed[j] && !reversed[k] {
                total += 2 * lk[j][k];
            }
        }
    }
    total
}

/// Builds `𝔰_𝔬` for the orientation that reverses the flagged components.
pub fn canonical_class(lee: &CubeComplex, reversed: &[bool]) -> Result<CanonicalClass> {
    let cube = lee.cube();
    let d = cube.diagram();
    if reversed.len() != d.component_count() {
        return Err(Error::Input(format!(
            "orientation has {} flags for {} components",
            reversed.len(),
            d.component_count()
        )));
    }
    let mut oriented = d.clone();
    for (k, &r) in reversed.iter().enumerate() {
        if r {
            oriented = oriented.transform(Transform::ReverseComponent(k))?;
        }
    }
    let state = (0..oriented.crossing_count())
        .filter(|&c| !oriented.sign(c).is_positive())
        .fold(0u32, |s, c| s | 1 << c);
    let seifert = oriented.seifert_state();
    let vertex = cube.vertex(state);
    if seifert.count() != vertex.circles {
        return Err(Error::invariant("oriented resolution and Seifert circles disagree"));
    }
    let mut labels = vec![true; vertex.circles];
    for (k, circle) in seifert.circles.iter().enumerate() {
        let idx = match circle.free_loop {
            Some(l) => vertex.representatives.len() + l,
            None => vertex.circle_of_edge[circle.edges[0]] as usize,
        };
        labels[idx] = seifert.is_a_labelled(k);
    }
    for c in 0..oriented.crossing_count() {
        let (u, o) = seifert.circles_at(c);
        if seifert.is_a_labelled(u) == seifert.is_a_labelled(o) {
            return Err(Error::invariant(format!("circles meeting at crossing {c} share a label")));
        }
    }

    // a = X + 1, b = X − 1: a `b` circle contributes −1 to its `1` term.
    let (degree, offset) = lee.index_of(state, 0);
    let cycle: SparseVec = (0..vertex.generator_count() as Monomial)
        .map(|m| {
            let negatives = labels.iter().enumerate().filter(|&(c, &a)| !a && m >> c & 1 == 0).count();
            let v = if negatives % 2 == 0 { 1 } else { -1 };
            (offset + m as usize, Rational::from_integer(v))
        })
        .collect();

    let expected = reorientation_degree(&d.linking_matrix(), reversed);
    if degree != expected {
        return Err(Error::invariant(format!("canonical class in degree {degree}, expected {expected}")));
    }
    if !lee.complex().differential(degree).mul_sparse(&cycle).is_empty() {
        return Err(Error::invariant("canonical generator is not a Lee cycle"));
    }
    Ok(CanonicalClass { reversed: reversed.to_vec(), state, labels, degree, cycle })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SInvariantResult {
    pub s: i32,
    /// Filtered degree of `𝔰_𝔬 + 𝔰_𝔬̄`.
    pub deg_plus: i32,
    /// Filtered degree of `𝔰_𝔬 − 𝔰_𝔬̄`.
    pub deg_minus: i32,
    pub components: usize,
    pub parity_ok: bool,
    pub split: bool,
}

impl SInvariantResult {
    pub fn to_json(&self) -> Value {
        json!({"s": self.s, "deg_plus": self.deg_plus, "deg_minus": self.deg_minus, "components": self.components})
    }
}

/// The s-invariant from the filtered degrees of `𝔰_𝔬 ± 𝔰_𝔬̄`.
pub fn s_invariant(d: &Diagram, cap: usize) -> Result<SInvariantResult> {
    check_cap(d, cap)?;
    let lee = build_lee_complex(d)?;
    s_invariant_of(&lee)
}

pub fn s_invariant_of(lee: &CubeComplex) -> Result<SInvariantResult> {
    let d = lee.cube().diagram();
    let l = d.component_count();
    let o = canonical_class(lee, &vec![false; l])?;
    let obar = canonical_class(lee, &vec![true; l])?;
    let combine = |sign: i64| -> SparseVec {
        let f = Rational::from_integer(sign);
        crate::linalg::chain_sum(&o.cycle, &f, &obar.cycle)
    };
    let (plus, minus) = (combine(1), combine(-1));
    let (dp, dm) = rayon::join(
        || lee.complex().filtered_degree_of_class(0, &plus),
        || lee.complex().filtered_degree_of_class(0, &minus),
    );
    let (FilteredDegree::Finite(dp), FilteredDegree::Finite(dm)) = (dp?, dm?) else {
        return Err(Error::invariant("a canonical class combination is a boundary"));
    };
    if (dp - dm).abs() != 2 {
        return Err(Error::invariant(format!("filtered degrees {dp} and {dm} do not differ by 2")));
    }
    let s = (dp + dm) / 2;
    let parity_ok = (s - (l as i32 - 1)).rem_euclid(2) == 0;
    if !parity_ok {
        return Err(Error::invariant(format!("s = {s} has the wrong parity for {l} components")));
    }
    Ok(SInvariantResult { s, deg_plus: dp, deg_minus: dm, components: l, parity_ok, split: !d.is_connected() })
}

/// Lee homology dimensions per homological degree.
///
/// Computed in the basis of `a = X + 1`, `b = X − 1` at every vertex, where
/// the Lee maps are diagonal: `a⊗a ↦ 2a`, `b⊗b ↦ −2b`, `a⊗b ↦ 0`,
/// `a ↦ a⊗a`, `b ↦ b⊗b`.
pub fn lee_homology(d: &Diagram, cap: usize) -> Result<HomologyTable> {
    check_cap(d, cap)?;
    idempotent_complex(&Cube::new(d)?)?.homology_ranks()
}

/// Lee homology from the monomial-basis complex; slower, used as a check.
pub fn lee_homology_monomial(d: &Diagram, cap: usize) -> Result<HomologyTable> {
    check_cap(d, cap)?;
    build_lee_complex(d)?.complex().homology_ranks()
}

fn idempotent_complex(cube: &Cube) -> Result<FilteredChainComplex> {
    let n = cube.crossings();
    let mut complex = FilteredChainComplex::new(FiltrationKind::Filtered);
    let mut offsets = vec![0usize; 1 << n];
    let mut dims = vec![0usize; n + 1];
    for state in 0..(1u32 << n) {
        let h = state.count_ones() as usize;
        offsets[state as usize] = dims[h];
        dims[h] += cube.vertex(state).generator_count();
    }
    for (h, &dim) in dims.iter().enumerate() {
        complex.set_group(h as i32 - cube.n_minus() as i32, vec![0; dim]);
    }
    // Bit set = `b`.
    let mut triplets: Vec<Vec<(usize, usize, Rational)>> = vec![Vec::new(); n];
    for state in 0..(1u32 << n) {
        let h = state.count_ones() as usize;
        for k in (0..n).filter(|&k| state >> k & 1 == 0) {
            let t = state | 1 << k;
            let edge = cube.edge(state, k)?;
            for m in 0..cube.vertex(state).generator_count() as Monomial {
                let bit = |c: u8| m >> c & 1;
                let mut base: Monomial = 0;
                for (c, &img) in edge.image.iter().enumerate() {
                    base |= bit(c as u8) << img;
                }
                let (target, coeff) = match edge.kind {
                    EdgeKind::Merge { a, b, .. } => match (bit(a), bit(b)) {
                        (0, 0) => (base, 2),
                        (1, 1) => (base, -2),
                        _ => continue,
                    },
                    EdgeKind::Split { source, left, right } => {
                        let b = bit(source);
                        (base & !(1 << left) | b << left | b << right, 1)
                    }
                };
                let row = offsets[t as usize] + target as usize;
                let col = offsets[state as usize] + m as usize;
                triplets[h].push((row, col, Rational::from_integer(coeff * edge.sign)));
            }
        }
    }
    for (h, entries) in triplets.into_iter().enumerate() {
        let i = h as i32 - cube.n_minus() as i32;
        let m = SparseMatrix::from_triplets(complex.dim(i + 1), complex.dim(i), entries);
        complex.set_differential(i, m)?;
    }
    Ok(complex)
}

/// `dim H^i_Lee = 2·#{E ⊂ {2,…,n} : Σ_{j∈E, k∉E} 2·lk(L_j, L_k) = i}`.
pub fn lee_dimension_formula(lk: &[Vec<i32>]) -> BTreeMap<i32, usize> {
    let n = lk.len();
    let mut dims = BTreeMap::new();
    if n == 0 {
        return dims;
    }
    for subset in 0..(1u64 << (n - 1)) {
        let reversed: Vec<bool> = (0..n).map(|j| j > 0 && subset >> (j - 1) & 1 == 1).collect();
        *dims.entry(reorientation_degree(lk, &reversed)).or_insert(0) += 2;
    }
    dims
}
