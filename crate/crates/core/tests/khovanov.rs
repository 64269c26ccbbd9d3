mod common;

use common::{closure, corpus, random_braid};
use knotpos::khovanov::{
    graded_euler_characteristic, jones_polynomial, kauffman_bracket_oracle, khovanov_homology, CubeComplex, Theory,
};
use knotpos::poly::Laurent;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn table(n: usize, w: &[i32]) -> Vec<(i32, i32, usize)> {
    khovanov_homology(&closure(n, w), 12).unwrap().entries().collect()
}

#[test]
fn figure_eight_table() {
    assert_eq!(
        table(3, &[1, -2, 1, -2]),
        vec![(-2, -5, 1), (-1, -1, 1), (0, -1, 1), (0, 1, 1), (1, 1, 1), (2, 5, 1)]
    );
}

#[test]
fn hopf_tables() {
    assert_eq!(table(2, &[1, 1]), vec![(0, 0, 1), (0, 2, 1), (2, 4, 1), (2, 6, 1)]);
    assert_eq!(table(2, &[-1, -1]), vec![(-2, -6, 1), (-2, -4, 1), (0, -2, 1), (0, 0, 1)]);
}

#[test]
fn mirror_dualizes_table() {
    let d = closure(3, &[1, 1, -2, 1, -2]);
    let h = khovanov_homology(&d, 12).unwrap();
    let m = khovanov_homology(&d.mirror(), 12).unwrap();
    // Over ℚ: H^{i,j}(D̄) ≅ H^{−i,−j}(D).
    let mut flipped: Vec<_> = h.entries().map(|(i, j, r)| (-i, -j, r)).collect();
    flipped.sort();
    assert_eq!(m.entries().collect::<Vec<_>>(), flipped);
}

#[test]
fn reidemeister_invariance() {
    // σ₁σ₂σ₁⁻¹... variants of the trefoil and unknot.
    let trefoil = table(2, &[1, 1, 1]);
    assert_eq!(table(3, &[1, 1, 1, 2]), trefoil);
    assert_eq!(table(3, &[1, 2, 1, 2, -1]), table(3, &[1, 2, 1, -1, 2]));
    assert_eq!(table(3, &[1, -2]), table(1, &[]));
}

#[test]
fn euler_characteristic_is_dimension_count() {
    let d = closure(3, &[1, -2, 1, 1]);
    let c = CubeComplex::build(&d, Theory::Khovanov).unwrap();
    let h = khovanov_homology(&d, 12).unwrap();
    let chi_chain: i64 = c.dimensions().iter().map(|(&i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
    assert_eq!(graded_euler_characteristic(&h).terms().map(|(_, c)| c).sum::<i64>(), chi_chain);
}

#[test]
fn jones_matches_bracket_on_corpus_and_random_braids() {
    for f in corpus() {
        if f.diagram.crossing_count() <= 10 {
            assert_eq!(jones_polynomial(&f.diagram, 12).unwrap(), kauffman_bracket_oracle(&f.diagram).unwrap(), "{}", f.name);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let d = random_braid(&mut rng, 4, 7).closure();
        assert_eq!(jones_polynomial(&d, 12).unwrap(), kauffman_bracket_oracle(&d).unwrap());
    }
}

#[test]
fn unknot_jones_is_one() {
    assert_eq!(jones_polynomial(&closure(3, &[1, 2]), 12).unwrap(), Laurent::one());
}
