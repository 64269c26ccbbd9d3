#![allow(dead_code)]

use knotpos::classify::fixture_corpus;
use knotpos::{BraidWord, Diagram};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn closure(n: usize, w: &[i32]) -> Diagram {
    BraidWord::new(n, w.to_vec()).unwrap().closure()
}

pub struct Fixture {
    pub name: String,
    pub diagram: Diagram,
    pub expected_s: Option<i64>,
    pub form: &'static str,
}

pub fn corpus() -> Vec<Fixture> {
    fixture_corpus()
        .into_iter()
        .map(|e| Fixture {
            name: e.name.clone().unwrap(),
            diagram: e.to_diagram().unwrap(),
            expected_s: e.expected.as_ref().and_then(|x| x.get("s")).map(|v| v.value),
            form: e.diagram.form(),
        })
        .collect()
}

pub fn fixture(name: &str) -> Diagram {
    corpus().into_iter().find(|f| f.name == name).unwrap().diagram
}

/// A random word in `σ₁^{±1}, …, σ_{n−1}^{±1}`.
pub fn random_braid(rng: &mut ChaCha8Rng, strands: usize, len: usize) -> BraidWord {
    let word = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) { g } else { -g }
        })
        .collect();
    BraidWord::new(strands, word).unwrap()
}

/// Rank by textbook Gaussian elimination over big rationals.
pub fn dense_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                for k in c..cols {
                    let t = &f * &a[rank][k];
                    a[r][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}
