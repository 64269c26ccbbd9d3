//! Diagrammatic bounds on s: Kawamura–Lobb, Kawamura's circle bounds,
//! Δ(D) and homogeneity, the canonical genus, and the almost positive case
//! analysis.

use serde::Serialize;

use crate::classify::Theorem;
use crate::diagram::{BlockSign, Compose, CrossingId, Diagram, DiagramStats, Sign, SumSite};
use crate::error::{Error, Result};

fn require_connected(d: &Diagram) -> Result<()> {
    if d.is_connected() {
        Ok(())
    } else {
        Err(Error::SplitDiagram)
    }
}

fn lobb_from_stats(s: &DiagramStats) -> (i64, i64) {
    let (w, o) = (s.writhe as i64, s.seifert_circles as i64);
    let lower = w - o + 1 + 2 * (s.o_plus as i64 - 1);
    let upper = w + o - 1 - 2 * (s.o_minus as i64 - 1);
    (lower, upper)
}

/// `(L(D), U(D))`.
pub fn kawamura_lobb_bounds(d: &Diagram) -> Result<(i64, i64)> {
    require_connected(d)?;
    Ok(lobb_from_stats(&d.stats()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KawamuraBounds {
    pub lower: i64,
    pub upper: i64,
    pub s_plus_components: usize,
    pub s_minus_components: usize,
    /// Both signed Seifert subgraphs connected and nonempty.
    pub good: bool,
    pub hypothesis_met: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Bounds from strongly negative and strongly positive circles.
///
/// They need a diagram with crossings of both signs; otherwise the
/// Kawamura–Lobb values are returned with a note.
pub fn kawamura_bounds(d: &Diagram) -> Result<KawamuraBounds> {
    require_connected(d)?;
    let s = d.stats();
    let (w, o) = (s.writhe as i64, s.seifert_circles as i64);
    let good = s.s_plus_components == 1 && s.s_minus_components == 1;
    let hypothesis_met = s.positive > 0 && s.negative > 0;
    let (lower, upper, note) = if hypothesis_met {
        (w - o + 1 + 2 * s.strongly_negative as i64, w + o - 1 - 2 * s.strongly_positive as i64, None)
    } else {
        let (l, u) = lobb_from_stats(&s);
        (l, u, Some("hypothesis not met: diagram is positive or negative; Kawamura–Lobb values returned".into()))
    };
    Ok(KawamuraBounds {
        lower,
        upper,
        s_plus_components: s.s_plus_components,
        s_minus_components: s.s_minus_components,
        good,
        hypothesis_met,
        note,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Homogeneity {
    pub is_homogeneous: bool,
    pub delta: i64,
    pub block_signs: Vec<BlockSign>,
}

/// Homogeneity from the signs of the Seifert graph's blocks, checked
/// against `Δ(D) = 0`.
pub fn homogeneity(d: &Diagram) -> Result<Homogeneity> {
    require_connected(d)?;
    let s = d.stats();
    let delta = s.seifert_circles as i64 + 1 - s.o_plus as i64 - s.o_minus as i64;
    let block_signs: Vec<BlockSign> = d.seifert_graph().blocks.iter().map(|b| b.sign).collect();
    let is_homogeneous = block_signs.iter().all(|&b| b != BlockSign::Mixed);
    if is_homogeneous != (delta == 0) {
        return Err(Error::invariant(format!(
            "block signs say homogeneous = {is_homogeneous} but Δ(D) = {delta}"
        )));
    }
    Ok(Homogeneity { is_homogeneous, delta, block_signs })
}

/// `2g(D) = 2 − ♯L + c(D) − O(D)`.
pub fn canonical_genus(d: &Diagram) -> Result<i64> {
    require_connected(d)?;
    let s = d.stats();
    Ok(2 - s.components as i64 + s.crossings as i64 - s.seifert_circles as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub lower: i64,
    pub upper: i64,
    pub kawamura_lower: i64,
    pub kawamura_upper: i64,
    pub delta: i64,
    pub twice_canonical_genus: i64,
    pub is_homogeneous: bool,
    pub is_good: bool,
    pub block_signs: Vec<BlockSign>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kawamura_note: Option<String>,
}

pub fn bounds_report(d: &Diagram) -> Result<BoundsReport> {
    let (lower, upper) = kawamura_lobb_bounds(d)?;
    let k = kawamura_bounds(d)?;
    let h = homogeneity(d)?;
    if h.delta * 2 != upper - lower {
        return Err(Error::invariant("Δ(D) is not half the gap between the bounds"));
    }
    if k.lower > lower || upper > k.upper {
        return Err(Error::invariant("Kawamura bounds are sharper than Kawamura–Lobb"));
    }
    Ok(BoundsReport {
        lower,
        upper,
        kawamura_lower: k.lower,
        kawamura_upper: k.upper,
        delta: h.delta,
        twice_canonical_genus: canonical_genus(d)?,
        is_homogeneous: h.is_homogeneous,
        is_good: k.good,
        block_signs: h.block_signs,
        kawamura_note: k.note,
    })
}

/// Measured values around a connected sum `D₁ * D₂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarAdditivity {
    pub bounds: [(i64, i64); 3],
    pub seifert_circles: [usize; 3],
    pub o_plus: [usize; 3],
    pub o_minus: [usize; 3],
    pub writhe: [i32; 3],
    pub holds: bool,
}

/// Builds `D₁ * D₂` at the given sites and checks that L and U add and that
/// `O`, `O₊`, `O₋` each add minus one.
pub fn star_additivity_check(d1: &Diagram, d2: &Diagram, a: SumSite, b: SumSite) -> Result<StarAdditivity> {
    let sum = d1.compose(d2, Compose::ConnectedSum(a, b))?;
    let stats = [d1.stats(), d2.stats(), sum.stats()];
    let bounds = [
        kawamura_lobb_bounds(d1)?,
        kawamura_lobb_bounds(d2)?,
        kawamura_lobb_bounds(&sum)?,
    ];
    let adds = |f: &dyn Fn(&DiagramStats) -> usize| f(&stats[2]) + 1 == f(&stats[0]) + f(&stats[1]);
    let holds = bounds[2].0 == bounds[0].0 + bounds[1].0
        && bounds[2].1 == bounds[0].1 + bounds[1].1
        && adds(&|s| s.seifert_circles)
        && adds(&|s| s.o_plus)
        && adds(&|s| s.o_minus)
        && stats[2].writhe == stats[0].writhe + stats[1].writhe;
    Ok(StarAdditivity {
        bounds,
        seifert_circles: stats.each_ref().map(|s| s.seifert_circles),
        o_plus: stats.each_ref().map(|s| s.o_plus),
        o_minus: stats.each_ref().map(|s| s.o_minus),
        writhe: stats.each_ref().map(|s| s.writhe),
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlmostPositiveReport {
    pub negative_crossing: CrossingId,
    pub circles: (usize, usize),
    /// Some positive crossing joins the same two Seifert circles.
    pub shares_circles_with_positive: bool,
    pub twice_canonical_genus: i64,
    pub twice_genus: i64,
    pub twice_genus4: i64,
    pub s: i64,
    pub theorem: Theorem,
    pub note: String,
}

pub fn almost_positive_analysis(d: &Diagram) -> Result<AlmostPositiveReport> {
    let negatives: Vec<CrossingId> = (0..d.crossing_count()).filter(|&c| d.sign(c) == Sign::Negative).collect();
    if negatives.len() != 1 {
        return Err(Error::NotAlmostPositive(negatives.len()));
    }
    require_connected(d)?;
    let p = negatives[0];
    let state = d.seifert_state();
    let pair = |c: CrossingId| {
        let (a, b) = state.circles_at(c);
        (a.min(b), a.max(b))
    };
    let circles = pair(p);
    let shares = (0..d.crossing_count()).any(|c| c != p && pair(c) == circles);
    let g2 = canonical_genus(d)?;
    let l = d.component_count() as i64;
    let twice_genus = if shares { g2 - 2 } else { g2 };
    Ok(AlmostPositiveReport {
        negative_crossing: p,
        circles,
        shares_circles_with_positive: shares,
        twice_canonical_genus: g2,
        twice_genus,
        twice_genus4: twice_genus,
        s: twice_genus + l - 1,
        theorem: Theorem::AlmostPositiveGenus,
        note: "link is positive or almost positive".into(),
    })
}
