//! Acceptance run: one PASS/FAIL line per criterion. Tolerances and budgets
//! are the constants below; every comparison is exact.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{closure, corpus, dense_rank, random_braid, Fixture};
use knotpos::bounds::{almost_positive_analysis, kawamura_lobb_bounds};
use knotpos::classify::fixture_corpus;
use knotpos::diagram::{BlockSign, Compose, SumSite, Transform};
use knotpos::input::DiagramInput;
use knotpos::khovanov::{jones_polynomial, kauffman_bracket_oracle, khovanov_homology, CubeComplex, Theory};
use knotpos::lee::{canonical_class, lee_dimension_formula, lee_homology, s_invariant};
use knotpos::linalg::{FilteredChainComplex, FiltrationKind, Rational, SparseMatrix};
use knotpos::{BandWord, Diagram};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const S_CAP: usize = 10;
const KH_CAP: usize = 12;
const BUDGET_EXACT_S: Duration = Duration::from_secs(5);
const BUDGET_LEE_DIMS: Duration = Duration::from_secs(60);
const BUDGET_JONES: Duration = Duration::from_secs(120);
const BUDGET_PERF: Duration = Duration::from_secs(60);
const MEMORY_PERF_BYTES: u64 = 2 << 30;
const LEE_DIMS_MAX_CROSSINGS: usize = 9;
const JONES_MAX_CROSSINGS: usize = 10;
const STRUCTURE_MAX_CROSSINGS: usize = 8;
const RANDOM_BRAIDS: usize = 200;
const RANDOM_BRAID_MAX_CROSSINGS: usize = 8;
const RANDOM_COMPLEXES: usize = 50;
const RANDOM_COMPLEX_MAX_DIM: usize = 200;
const MIN_SQP_FIXTURES: usize = 5;
const MIN_ALMOST_POSITIVE_FIXTURES: usize = 2;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn s_of(d: &Diagram) -> Result<i64, String> {
    s_invariant(d, S_CAP).map(|r| r.s as i64).map_err(|e| e.to_string())
}

fn within_budget(start: Instant, budget: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t <= budget, || format!("took {t:.2?}, budget {budget:?}"))?;
    Ok(t)
}

fn exact_s_values() -> Outcome {
    let start = Instant::now();
    let cases: [(&str, Diagram, i64); 7] = [
        ("unknot", Diagram::unknot(), 0),
        ("σ₁³", closure(2, &[1, 1, 1]), 2),
        ("σ₁⁻³", closure(2, &[-1, -1, -1]), -2),
        ("σ₁²", closure(2, &[1, 1]), 1),
        ("σ₁⁻²", closure(2, &[-1, -1]), -1),
        ("figure-eight", closure(3, &[1, -2, 1, -2]), 0),
        ("2-unlink", Diagram::unlink(2), -1),
    ];
    for (name, d, want) in &cases {
        let got = s_of(d)?;
        ensure(got == *want, || format!("{name}: s = {got}, expected {want}"))?;
    }
    let t = within_budget(start, BUDGET_EXACT_S)?;
    Ok(format!("{} diagrams in {t:.2?}", cases.len()))
}

fn lee_dimensions(corpus: &[Fixture]) -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for f in corpus.iter().filter(|f| f.diagram.crossing_count() <= LEE_DIMS_MAX_CROSSINGS) {
        let h = lee_homology(&f.diagram, LEE_DIMS_MAX_CROSSINGS).map_err(|e| e.to_string())?;
        let l = f.diagram.component_count();
        ensure(h.total() == 1 << l, || format!("{}: dim {} ≠ 2^{l}", f.name, h.total()))?;
        let got: BTreeMap<i32, usize> = h.degrees().into_iter().map(|i| (i, h.rank_at(i))).collect();
        let want = lee_dimension_formula(&f.diagram.linking_matrix());
        ensure(got == want, || format!("{}: per-degree {got:?} ≠ formula {want:?}", f.name))?;
        n += 1;
    }
    let t = within_budget(start, BUDGET_LEE_DIMS)?;
    Ok(format!("{n} diagrams in {t:.2?}"))
}

fn jones_vs_bracket(corpus: &[Fixture]) -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for f in corpus.iter().filter(|f| f.diagram.crossing_count() <= JONES_MAX_CROSSINGS) {
        let v = jones_polynomial(&f.diagram, KH_CAP).map_err(|e| e.to_string())?;
        let b = kauffman_bracket_oracle(&f.diagram).map_err(|e| e.to_string())?;
        ensure(v == b, || format!("{}: {} ≠ {}", f.name, v.display_with("t", 2), b.display_with("t", 2)))?;
        n += 1;
    }
    let t = within_budget(start, BUDGET_JONES)?;
    Ok(format!("{n} diagrams in {t:.2?}"))
}

fn sandwich(corpus: &[Fixture]) -> Outcome {
    let mut n = 0;
    for f in corpus.iter().filter(|f| f.diagram.is_connected() && f.diagram.crossing_count() <= S_CAP) {
        let d = &f.diagram;
        let (l, u) = kawamura_lobb_bounds(d).map_err(|e| e.to_string())?;
        let s = s_of(d)?;
        ensure(l <= s && s <= u, || format!("{}: {l} ≤ {s} ≤ {u} fails", f.name))?;
        if d.negative_count() == 0 || d.positive_count() == 0 {
            ensure(l == s && s == u, || format!("{}: signed diagram but L={l}, s={s}, U={u}", f.name))?;
        }
        n += 1;
    }
    Ok(format!("{n} diagrams"))
}

fn homogeneity_duality(corpus: &[Fixture]) -> Outcome {
    let check = |d: &Diagram, what: &str| -> Result<(), String> {
        let st = d.stats();
        let delta = st.seifert_circles as i64 + 1 - st.o_plus as i64 - st.o_minus as i64;
        let uniform = d.seifert_graph().blocks.iter().all(|b| b.sign != BlockSign::Mixed);
        ensure(uniform == (delta == 0), || format!("{what}: blocks uniform = {uniform}, Δ = {delta}"))
    };
    let mut n = 0;
    for f in corpus.iter().filter(|f| f.diagram.is_connected()) {
        check(&f.diagram, &f.name)?;
        n += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut random = 0;
    while random < RANDOM_BRAIDS {
        let strands = rng.gen_range(2..=5);
        let len = rng.gen_range(1..=RANDOM_BRAID_MAX_CROSSINGS);
        let b = random_braid(&mut rng, strands, len);
        let d = b.closure();
        if d.is_connected() {
            check(&d, &format!("{:?}", b.word()))?;
            random += 1;
        }
    }
    Ok(format!("{n} corpus + {random} random closures"))
}

fn structural_checks(corpus: &[Fixture]) -> Outcome {
    let (mut n, mut phi_entries) = (0, 0);
    for f in corpus.iter().filter(|f| f.diagram.crossing_count() <= STRUCTURE_MAX_CROSSINGS) {
        let d = &f.diagram;
        let err = |e: knotpos::Error| format!("{}: {e}", f.name);
        let kh = CubeComplex::build(d, Theory::Khovanov).map_err(err)?;
        let lee = CubeComplex::build(d, Theory::Lee).map_err(err)?;
        kh.complex().check_d_squared().map_err(err)?;
        lee.complex().check_d_squared().map_err(err)?;
        for i in kh.complex().degrees() {
            let (qs, qt) = (kh.complex().q_levels(i), kh.complex().q_levels(i + 1));
            let dk = kh.complex().differential(i);
            let dl = lee.complex().differential(i);
            for (r, c, _) in dk.entries() {
                ensure(qt[r] == qs[c], || format!("{}: d_Kh moves q at degree {i}", f.name))?;
            }
            let mut phi: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
            for (r, c, v) in dl.entries() {
                phi.insert((r, c), v.clone());
            }
            for (r, c, v) in dk.entries() {
                let e = phi.entry((r, c)).or_insert_with(Rational::zero);
                *e = &*e - v;
            }
            for ((r, c), v) in &phi {
                if !v.is_zero() {
                    phi_entries += 1;
                    ensure(qt[*r] - qs[*c] == 4, || format!("{}: Φ entry raises q by {}", f.name, qt[*r] - qs[*c]))?;
                }
            }
        }
        let l = d.component_count();
        for mask in 0..1u32 << l {
            let reversed: Vec<bool> = (0..l).map(|k| mask >> k & 1 == 1).collect();
            let class = canonical_class(&lee, &reversed).map_err(err)?;
            let dz = lee.complex().differential(class.degree).mul_sparse(&class.cycle);
            ensure(dz.is_empty(), || format!("{}: d(𝔰_𝔬) ≠ 0 for {reversed:?}", f.name))?;
        }
        let r = s_invariant(d, STRUCTURE_MAX_CROSSINGS).map_err(err)?;
        ensure((r.deg_plus - r.deg_minus).abs() == 2, || format!("{}: degrees {} {}", f.name, r.deg_plus, r.deg_minus))?;
        ensure((r.s - (l as i32 - 1)).rem_euclid(2) == 0, || format!("{}: parity", f.name))?;
        n += 1;
    }
    ensure(phi_entries > 0, || "no Φ entries seen".into())?;
    Ok(format!("{n} diagrams, {phi_entries} Φ entries"))
}

fn behavioral_identities(corpus: &[Fixture]) -> Outcome {
    let small: Vec<&Fixture> = corpus
        .iter()
        .filter(|f| f.diagram.is_connected() && f.diagram.crossing_count() <= 5)
        .collect();
    let (mut unions, mut sums, mut mirrors, mut changes) = (0, 0, 0, 0);
    for a in &small {
        for b in &small {
            if a.diagram.crossing_count() + b.diagram.crossing_count() > S_CAP {
                continue;
            }
            let (sa, sb) = (s_of(&a.diagram)?, s_of(&b.diagram)?);
            let u = s_of(&a.diagram.disjoint_union(&b.diagram))?;
            ensure(u == sa + sb - 1, || format!("{} ⊔ {}: {u} ≠ {sa} + {sb} − 1", a.name, b.name))?;
            unions += 1;
            if a.diagram.component_count() == 1 && b.diagram.component_count() == 1 {
                let site = |d: &Diagram| if d.crossing_count() == 0 { SumSite::Loop(0) } else { SumSite::Edge(0) };
                let sum = a
                    .diagram
                    .compose(&b.diagram, Compose::ConnectedSum(site(&a.diagram), site(&b.diagram)))
                    .map_err(|e| e.to_string())?;
                let s = s_of(&sum)?;
                ensure(s == sa + sb, || format!("{} # {}: {s} ≠ {sa} + {sb}", a.name, b.name))?;
                sums += 1;
            }
        }
    }
    for f in corpus.iter().filter(|f| f.diagram.crossing_count() <= S_CAP) {
        let d = &f.diagram;
        let s = s_of(d)?;
        if d.component_count() == 1 {
            let m = s_of(&d.mirror())?;
            ensure(s + m == 0, || format!("{}: s + s(mirror) = {}", f.name, s + m))?;
            mirrors += 1;
        }
        if d.crossing_count() <= STRUCTURE_MAX_CROSSINGS {
            for c in 0..d.crossing_count() {
                let changed = d.transform(Transform::CrossingChange(c)).map_err(|e| e.to_string())?;
                let sc = s_of(&changed)?;
                let gap = if d.sign(c).is_positive() { s - sc } else { sc - s };
                ensure((0..=2).contains(&gap), || format!("{}: crossing {c} changes s by {gap}", f.name))?;
                changes += 1;
            }
        }
    }
    Ok(format!("{unions} unions, {sums} sums, {mirrors} mirrors, {changes} crossing changes"))
}

fn strongly_quasipositive() -> Outcome {
    let mut n = 0;
    for e in fixture_corpus() {
        let DiagramInput::Band { strands, bands } = &e.diagram else { continue };
        let w = BandWord::new(*strands, bands.clone()).map_err(|e| e.to_string())?;
        let d = w.to_braid().closure();
        if d.crossing_count() > S_CAP || w.sqp_invariants().is_err() {
            continue;
        }
        let s = s_of(&d)?;
        let want = bands.len() as i64 - *strands as i64 + 1;
        ensure(s == want, || format!("{}: s = {s}, m − n + 1 = {want}", e.name.as_deref().unwrap_or("?")))?;
        n += 1;
    }
    ensure(n >= MIN_SQP_FIXTURES, || format!("only {n} band fixtures"))?;
    Ok(format!("{n} band words"))
}

fn almost_positive(corpus: &[Fixture]) -> Outcome {
    let (mut case1, mut case2) = (0, 0);
    for f in corpus.iter().filter(|f| f.diagram.negative_count() == 1 && f.diagram.is_connected()) {
        if f.diagram.crossing_count() > S_CAP {
            continue;
        }
        let a = almost_positive_analysis(&f.diagram).map_err(|e| e.to_string())?;
        let l = f.diagram.component_count() as i64;
        let formula = a.twice_canonical_genus + l - if a.shares_circles_with_positive { 3 } else { 1 };
        let s = s_of(&f.diagram)?;
        ensure(s == a.s && s == formula, || format!("{}: s = {s}, certified {}", f.name, a.s))?;
        if a.shares_circles_with_positive { case2 += 1 } else { case1 += 1 }
    }
    ensure(case1 + case2 >= MIN_ALMOST_POSITIVE_FIXTURES, || format!("only {} fixtures", case1 + case2))?;
    Ok(format!("{case1} case-1 and {case2} case-2 fixtures"))
}

fn khovanov_support(corpus: &[Fixture]) -> Outcome {
    let mut n = 0;
    for f in corpus.iter().filter(|f| f.diagram.component_count() == 1 && f.diagram.crossing_count() <= S_CAP) {
        let h = khovanov_homology(&f.diagram, KH_CAP).map_err(|e| e.to_string())?;
        let s = s_of(&f.diagram)? as i32;
        for j in [s - 1, s + 1] {
            ensure(h.rank(0, j) > 0, || format!("{}: H^(0,{j}) = 0 with s = {s}", f.name))?;
        }
        n += 1;
    }
    Ok(format!("{n} knots"))
}

/// A random complex `C⁰ → C¹ → C² → C³` built in normal form and then
/// scrambled by integral changes of basis; returns it with its true Betti
/// numbers and the dense matrices.
fn random_complex(rng: &mut ChaCha8Rng) -> (Vec<Vec<Vec<i64>>>, Vec<usize>, Vec<usize>) {
    let degrees = 4;
    loop {
        let h: Vec<usize> = (0..degrees).map(|_| rng.gen_range(0..8)).collect();
        // a[i] = rank of dⁱ
        let mut a: Vec<usize> = (0..degrees - 1).map(|_| rng.gen_range(0..30)).collect();
        a.push(0);
        let dims: Vec<usize> = (0..degrees).map(|i| a[i] + h[i] + if i > 0 { a[i - 1] } else { 0 }).collect();
        if dims.iter().sum::<usize>() > RANDOM_COMPLEX_MAX_DIM {
            continue;
        }
        // Basis of Cⁱ: [A_i (maps onto B_{i+1}), H_i, B_i].
        let mut d: Vec<Vec<Vec<i64>>> = (0..degrees - 1)
            .map(|i| {
                let mut m = vec![vec![0i64; dims[i]]; dims[i + 1]];
                for k in 0..a[i] {
                    m[a[i + 1] + h[i + 1] + k][k] = *[1, -1, 2, 3].get(rng.gen_range(0..4)).unwrap();
                }
                m
            })
            .collect();
        for i in 0..degrees {
            for _ in 0..2 * dims[i] {
                if dims[i] < 2 {
                    break;
                }
                let (j, k) = (rng.gen_range(0..dims[i]), rng.gen_range(0..dims[i]));
                if j == k {
                    continue;
                }
                let c = if rng.gen_bool(0.5) { 1 } else { -1 };
                // new basis e'_j = e_j + c·e_k: column k of dⁱ −= c·column j,
                // row j of dⁱ⁻¹ += c·row k.
                let fits = (i == degrees - 1 || d[i].iter().all(|r| r[k].checked_sub(c * r[j]).is_some_and(|x| x.abs() < 1 << 40)))
                    && (i == 0 || d[i - 1][k].iter().zip(&d[i - 1][j]).all(|(x, y)| y.checked_add(c * x).is_some_and(|v| v.abs() < 1 << 40)));
                if !fits {
                    continue;
                }
                if i < degrees - 1 {
                    for r in d[i].iter_mut() {
                        r[k] -= c * r[j];
                    }
                }
                if i > 0 {
                    let src = d[i - 1][k].clone();
                    for (y, x) in d[i - 1][j].iter_mut().zip(src) {
                        *y += c * x;
                    }
                }
            }
        }
        return (d, dims, h);
    }
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut total = 0;
    for _ in 0..RANDOM_COMPLEXES {
        let (d, dims, h) = random_complex(&mut rng);
        let mut c = FilteredChainComplex::new(FiltrationKind::Graded);
        for (i, &n) in dims.iter().enumerate() {
            c.set_group(i as i32, vec![0; n]);
        }
        for (i, m) in d.iter().enumerate() {
            let sm = if m.is_empty() { SparseMatrix::zero(dims[i + 1], dims[i]) } else { SparseMatrix::from_dense(m) };
            c.set_differential(i as i32, sm).map_err(|e| e.to_string())?;
        }
        c.check_d_squared().map_err(|e| e.to_string())?;
        let sparse = c.homology_ranks().map_err(|e| e.to_string())?;
        let ranks: Vec<usize> = d.iter().map(|m| if m.is_empty() { 0 } else { dense_rank(m) }).collect();
        for i in 0..dims.len() {
            let dense = dims[i] - ranks.get(i).copied().unwrap_or(0) - if i > 0 { ranks[i - 1] } else { 0 };
            let got = sparse.rank_at(i as i32);
            ensure(got == dense && dense == h[i], || format!("degree {i}: sparse {got}, dense {dense}, built {}", h[i]))?;
        }
        total += dims.iter().sum::<usize>();
    }
    Ok(format!("{RANDOM_COMPLEXES} complexes, {total} generators in all"))
}

fn peak_memory_bytes() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse::<u64>().ok().map(|kb| kb * 1024)
}

fn performance() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for (name, d) in [
        ("(σ₁σ₂⁻¹)⁵", closure(3, &[1, -2, 1, -2, 1, -2, 1, -2, 1, -2])),
        ("T(3,5)", closure(3, &[1, 2, 1, 2, 1, 2, 1, 2, 1, 2])),
    ] {
        let h = khovanov_homology(&d, KH_CAP).map_err(|e| e.to_string())?;
        let s = s_of(&d)?;
        parts.push(format!("{name}: rank {} s={s}", h.total()));
    }
    let t = within_budget(start, BUDGET_PERF)?;
    let mem = peak_memory_bytes();
    if let Some(m) = mem {
        ensure(m <= MEMORY_PERF_BYTES, || format!("peak memory {m} bytes"))?;
    }
    let mem = mem.map_or("peak memory unavailable".to_string(), |m| format!("peak {} MiB", m >> 20));
    Ok(format!("{} in {t:.2?}, {mem}", parts.join(", ")))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("exact s-values", Box::new(exact_s_values)),
        ("Lee dimensions", Box::new(|| lee_dimensions(&corpus))),
        ("Jones = bracket", Box::new(|| jones_vs_bracket(&corpus))),
        ("sandwich L ≤ s ≤ U", Box::new(|| sandwich(&corpus))),
        ("homogeneity ⇔ Δ = 0", Box::new(|| homogeneity_duality(&corpus))),
        ("Lee structure", Box::new(|| structural_checks(&corpus))),
        ("behavioral identities", Box::new(|| behavioral_identities(&corpus))),
        ("strongly quasipositive s", Box::new(strongly_quasipositive)),
        ("almost positive s", Box::new(|| almost_positive(&corpus))),
        ("H^(0, s±1) ≠ 0", Box::new(|| khovanov_support(&corpus))),
        ("sparse = dense ranks", Box::new(oracle_equivalence)),
        ("10-crossing performance", Box::new(performance)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
