//! Rational Khovanov homology via the cube of resolutions, the Jones
//! polynomial as its graded Euler characteristic, and a Kauffman-bracket
//! state sum used as an independent check.

mod complex;
mod cube;

use serde_json::{json, Value};

pub use complex::{CubeComplex, Theory};
pub use cube::{Cube, CubeEdge, CubeVertex, EdgeKind, Monomial, MAX_CIRCLES};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::linalg::HomologyTable;
use crate::poly::Laurent;

pub const DEFAULT_CROSSING_CAP: usize = 12;
pub const BRACKET_CROSSING_CAP: usize = 14;

pub(crate) fn check_cap(d: &Diagram, cap: usize) -> Result<()> {
    if d.crossing_count() > cap {
        return Err(Error::CapExceeded { crossings: d.crossing_count(), cap });
    }
    Ok(())
}

/// `H_Kh^{i,j}(D; ℚ)`.
pub fn khovanov_homology(d: &Diagram, cap: usize) -> Result<HomologyTable> {
    check_cap(d, cap)?;
    CubeComplex::build(d, Theory::Khovanov)?.complex().homology_ranks()
}

/// `Σ (−1)^i q^j rank H^{i,j}`.
pub fn graded_euler_characteristic(h: &HomologyTable) -> Laurent {
    Laurent::from_terms(h.entries().map(|(i, j, r)| (j, if i % 2 == 0 { r as i64 } else { -(r as i64) })))
}

/// Jones polynomial from a homology table, in powers of `t^{1/2}`
/// (exponent `k` stands for `t^{k/2}`).
pub fn jones_from_homology(h: &HomologyTable) -> Result<Laurent> {
    let chi = graded_euler_characteristic(h);
    let q_plus_inv = Laurent::from_terms([(1, 1), (-1, 1)]);
    let reduced = chi
        .div_exact(&q_plus_inv)
        .ok_or_else(|| Error::invariant("Euler characteristic not divisible by q + q⁻¹"))?;
    // q = −t^{1/2}
    Ok(reduced.substitute(-1, 1))
}

pub fn jones_polynomial(d: &Diagram, cap: usize) -> Result<Laurent> {
    jones_from_homology(&khovanov_homology(d, cap)?)
}

/// Normalized Jones polynomial by the bracket state sum
/// `V = (−A³)^{−w} ⟨D⟩` at `A = t^{−1/4}`, same exponent convention as
/// [`jones_polynomial`].
pub fn kauffman_bracket_oracle(d: &Diagram) -> Result<Laurent> {
    check_cap(d, BRACKET_CROSSING_CAP)?;
    let n = d.crossing_count();
    let loop_poly = Laurent::from_terms([(2, -1), (-2, -1)]);
    let mut bracket = Laurent::zero();
    // ⟨D⟩ = Σ_states A^{#A − #B} δ^{loops − 1}; the A-smoothing is the 0-smoothing.
    let mut by_loops: Vec<Vec<i64>> = Vec::new();
    for state in 0..(1u32 << n) {
        let loops = cube::resolve(d, state)?.circles;
        let ones = state.count_ones() as usize;
        if by_loops.len() <= loops {
            by_loops.resize(loops + 1, vec![0; n + 1]);
        }
        by_loops[loops][ones] += 1;
    }
    for (loops, counts) in by_loops.iter().enumerate() {
        let delta = loop_poly.pow(loops.saturating_sub(1) as u32);
        for (ones, &count) in counts.iter().enumerate() {
            if count != 0 {
                let a = Laurent::monomial(count, n as i32 - 2 * ones as i32);
                bracket = &bracket + &(&a * &delta);
            }
        }
    }
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let v_a = &Laurent::monomial(sign, -3 * w) * &bracket;
    // A^k = t^{−k/4} = (t^{1/2})^{−k/2}
    v_a.substitute(1, -1)
        .compress(2)
        .ok_or_else(|| Error::invariant("bracket has odd powers of A²"))
}

/// `{"bigraded":[{"i":..,"j":..,"rank":..},...]}`
pub fn homology_json(h: &HomologyTable) -> Value {
    let entries: Vec<Value> = h.entries().map(|(i, j, r)| json!({"i": i, "j": j, "rank": r})).collect();
    json!({ "bigraded": entries })
}
