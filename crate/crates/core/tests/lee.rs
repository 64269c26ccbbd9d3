mod common;

use common::{closure, random_braid};
use knotpos::lee::{lee_dimension_formula, lee_homology, lee_homology_monomial, s_invariant};
use knotpos::linalg::FilteredDegree;
use knotpos::{Diagram, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn s(d: &Diagram) -> i32 {
    s_invariant(d, 10).unwrap().s
}

#[test]
fn small_values() {
    assert_eq!(s(&Diagram::unknot()), 0);
    assert_eq!(s(&closure(2, &[1, 1, 1])), 2);
    assert_eq!(s(&closure(2, &[-1, -1, -1])), -2);
    assert_eq!(s(&closure(2, &[1, 1])), 1);
    assert_eq!(s(&closure(2, &[-1, -1])), -1);
    assert_eq!(s(&Diagram::unlink(2)), -1);
    assert_eq!(s(&Diagram::unlink(3)), -2);
    assert_eq!(s(&closure(2, &[1; 5])), 4);
}

#[test]
fn torus_knot_t35() {
    // T(3,5) = (σ₁σ₂)⁵ has s = 2g = (3−1)(5−1) = 8.
    assert_eq!(s(&closure(3, &[1, 2, 1, 2, 1, 2, 1, 2, 1, 2])), 8);
}

#[test]
fn distinguished_degrees() {
    let r = s_invariant(&closure(2, &[1, 1, 1]), 10).unwrap();
    assert_eq!((r.deg_plus.min(r.deg_minus), r.deg_plus.max(r.deg_minus)), (1, 3));
    assert!(r.parity_ok && !r.split);
}

#[test]
fn cap_exceeded() {
    assert_eq!(
        s_invariant(&closure(2, &[1; 11]), 10),
        Err(Error::CapExceeded { crossings: 11, cap: 10 })
    );
}

#[test]
fn lee_dimensions_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let d = random_braid(&mut rng, 4, 6).closure();
        let h = lee_homology(&d, 10).unwrap();
        let expected = lee_dimension_formula(&d.linking_matrix());
        let got: std::collections::BTreeMap<i32, usize> = h.degrees().into_iter().map(|i| (i, h.rank_at(i))).collect();
        assert_eq!(got, expected);
        assert_eq!(h.total(), 1 << d.component_count());
    }
}

#[test]
fn monomial_and_diagonal_bases_agree() {
    for d in [closure(3, &[1, -2, 1, -2]), closure(3, &[1, 1, 2, 2]), closure(2, &[-1, -1, -1])] {
        let a = lee_homology(&d, 10).unwrap();
        let b = lee_homology_monomial(&d, 10).unwrap();
        assert_eq!(a.total(), b.total());
        for i in a.degrees() {
            assert_eq!(a.rank_at(i), b.rank_at(i));
        }
    }
}

#[test]
fn s_identities_on_random_knots() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut knots = 0;
    while knots < 10 {
        let b = random_braid(&mut rng, 3, 8);
        let d = b.closure();
        if d.component_count() != 1 {
            continue;
        }
        knots += 1;
        let v = s(&d);
        assert_eq!(s(&d.mirror()), -v);
        assert_eq!(v % 2, 0);
        for c in 0..d.crossing_count() {
            let changed = d.transform(knotpos::diagram::Transform::CrossingChange(c)).unwrap();
            let (plus, minus) = if d.sign(c).is_positive() { (v, s(&changed)) } else { (s(&changed), v) };
            assert!((0..=2).contains(&(plus - minus)), "{:?} at {c}", b.word());
        }
    }
}

#[test]
fn feasibility_route_agrees_on_canonical_classes() {
    let d = closure(3, &[1, 1, -2, 1, -2]);
    let lee = knotpos::lee::build_lee_complex(&d).unwrap();
    let o = knotpos::lee::canonical_class(&lee, &vec![false; d.component_count()]).unwrap();
    let fast = lee.complex().filtered_degree_of_class(0, &o.cycle).unwrap();
    let slow = lee.complex().filtered_degree_by_feasibility(0, &o.cycle).unwrap();
    assert_eq!(fast, slow);
    assert!(matches!(fast, FilteredDegree::Finite(_)));
}
