//! Embedded representatives, arrangements, tightening and region analysis.

mod arrangement;
mod config;

pub use arrangement::{Arrangement, Crossing, EdgeKind, RegionKind, RegionReport, VertexKind};
pub use config::{Config, End, Strand};

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{domain, input, Result};
use crate::model::{ArcClass, Puncture, Side, Surface};

/// A single arc drawn in the two-disk chord model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedArc {
    pub class: ArcClass,
    pub strand: Strand,
    /// Per gap, the crossing indices of the strand in circle order.
    pub orders: Vec<Vec<usize>>,
}

impl EmbeddedArc {
    pub fn surface(&self) -> Surface {
        self.class.surface()
    }

    /// Circle parameter of crossing `i`: gap `g` spans `(g, g + 1)` and its
    /// `m` points sit at the fractions `1/(m+1), ..., m/(m+1)`.
    pub fn parameter(&self, i: usize) -> Ratio<i64> {
        let g = self.strand.seq[i];
        let m = self.orders[g].len() as i64;
        let rank = self.orders[g].iter().position(|&j| j == i).unwrap() as i64;
        Ratio::from_integer(g as i64) + Ratio::new(rank + 1, m + 1)
    }

    /// Chords in strand order as `(disk, from, to)` circle parameters.
    pub fn chords(&self) -> Vec<(Side, Ratio<i64>, Ratio<i64>)> {
        let st = &self.strand;
        let at = |k: usize, end: usize| {
            if k == usize::MAX {
                Ratio::from_integer(end as i64)
            } else {
                self.parameter(k)
            }
        };
        (0..=st.len())
            .map(|k| {
                let a = if k == 0 { at(usize::MAX, st.start) } else { at(k - 1, 0) };
                let b = if k == st.len() { at(usize::MAX, st.end) } else { at(k, 0) };
                (st.chord_side(k), a, b)
            })
            .collect()
    }
}

/// Canonical representative: the first per-gap order found by the
/// depth-first realizability search.
pub fn embed(c: &ArcClass) -> Result<EmbeddedArc> {
    match c.realization() {
        Some(orders) => Ok(EmbeddedArc { class: c.clone(), strand: Strand::from_class(c), orders }),
        None => domain(format!("class {c} has no simple representative")),
    }
}

fn same_surface(mut it: impl Iterator<Item = Surface>) -> Result<Option<Surface>> {
    let Some(first) = it.next() else { return Ok(None) };
    if it.any(|s| s != first) {
        return input("arcs live on different surfaces");
    }
    Ok(Some(first))
}

/// Draws the arcs with their own representatives, stacked in each gap.
pub fn build_arrangement(arcs: &[EmbeddedArc]) -> Result<Arrangement> {
    let Some(surface) = same_surface(arcs.iter().map(|a| a.surface()))? else {
        return input("empty arrangement");
    };
    let mut orders = vec![Vec::new(); surface.n()];
    for (s, a) in arcs.iter().enumerate() {
        for (g, pts) in a.orders.iter().enumerate() {
            orders[g].extend(pts.iter().map(|&i| (s, i)));
        }
    }
    let strands = arcs.iter().map(|a| a.strand.clone()).collect();
    Ok(Arrangement::new(Config::new(surface, strands, orders)))
}

/// Two arcs drawn together in minimal position.
#[derive(Clone, Debug)]
pub struct Tightened {
    pub config: Config,
    pub crossings: usize,
    /// Crossing count before and after every empty-region removal.
    pub trace: Vec<usize>,
}

/// Stacks the two representatives and removes empty bigons and half-bigons
/// between them until none is left.
pub fn tighten(a: &EmbeddedArc, b: &EmbeddedArc) -> Result<Tightened> {
    same_surface([a.surface(), b.surface()].into_iter())?;
    let arr = build_arrangement(&[a.clone(), b.clone()])?;
    let mut config = arr.config;
    let trace = config.tighten_pair(0, 1);
    Ok(Tightened { crossings: *trace.last().unwrap(), config, trace })
}

/// Geometric intersection number of two classes.
pub fn intersection_number(c1: &ArcClass, c2: &ArcClass) -> Result<usize> {
    same_surface([c1.surface(), c2.surface()].into_iter())?;
    Ok(tighten(&embed(c1)?, &embed(c2)?)?.crossings)
}

pub fn is_homotopic(c1: &ArcClass, c2: &ArcClass) -> bool {
    c1 == c2
}

/// Geometric homotopy test on raw strands: their minimal-position drawings
/// are disjoint and cobound a region containing no puncture.
pub fn strands_cobound_empty_strip(surface: Surface, a: Strand, b: Strand) -> bool {
    let config = Config::canonical(surface, vec![a, b]);
    if config.crossings(0, 1) > 0 {
        return false;
    }
    let arr = Arrangement::new(config);
    arr.regions.iter().any(|r| r.kind == RegionKind::Strip && r.interior_punctures.is_empty())
}

/// Geometric cross-check of [`is_homotopic`].
pub fn homotopy_certificate(c1: &ArcClass, c2: &ArcClass) -> bool {
    c1.surface() == c2.surface()
        && strands_cobound_empty_strip(c1.surface(), Strand::from_class(c1), Strand::from_class(c2))
}

#[derive(Clone, Debug, Serialize)]
pub struct Complement {
    pub arrangement_crossings: usize,
    pub regions: Vec<RegionReport>,
    /// Punctures inside a half-bigon or strip region with a corner at `p`.
    pub p_isolated: Vec<Puncture>,
}

/// Simultaneous minimal-position drawing of a system.
pub fn system_arrangement(system: &[ArcClass]) -> Result<Arrangement> {
    let Some(surface) = same_surface(system.iter().map(|c| c.surface()))? else {
        return input("empty system");
    };
    for c in system {
        if !c.is_realizable() {
            return domain(format!("class {c} has no simple representative"));
        }
    }
    let strands = system.iter().map(Strand::from_class).collect();
    Ok(Arrangement::new(Config::canonical(surface, strands)))
}

pub fn complement_regions(system: &[ArcClass]) -> Result<Complement> {
    let arr = system_arrangement(system)?;
    Ok(complement_of(&arr))
}

pub fn complement_of(arr: &Arrangement) -> Complement {
    let mut p_isolated: Vec<Puncture> = arr
        .regions
        .iter()
        .filter(|r| matches!(r.kind, RegionKind::HalfBigon | RegionKind::Strip))
        .filter(|r| r.boundary_punctures.contains(&Puncture::P))
        .flat_map(|r| r.interior_punctures.iter().copied())
        .collect();
    p_isolated.sort();
    p_isolated.dedup();
    Complement { arrangement_crossings: arr.crossing_count(), regions: arr.regions.clone(), p_isolated }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RConfiguration {
    DisjointStrip,
    OneCrossingHalfBigon,
    TwoCrossingBigon,
    TwoCrossingDoubleHalfBigon,
    NotRHomotopic,
}

/// Shape of the region between two classes that become homotopic once `r`
/// is forgotten.
pub fn r_homotopic_configuration(c1: &ArcClass, c2: &ArcClass, r: Puncture) -> Result<RConfiguration> {
    let surface = c1.surface();
    same_surface([surface, c2.surface()].into_iter())?;
    surface.check_inner(r)?;
    if c1 == c2 {
        return input("the two classes are equal");
    }
    let i = intersection_number(c1, c2)?;
    if i > 2 {
        return domain(format!("classes cross {i} times"));
    }
    if c1.forget_puncture(r)? != c2.forget_puncture(r)? {
        return Ok(RConfiguration::NotRHomotopic);
    }
    let arr = system_arrangement(&[c1.clone(), c2.clone()])?;
    for idx in arr.regions_containing(&[r]) {
        let reg = &arr.regions[idx];
        let kind = match (reg.kind, i) {
            (RegionKind::Strip, 0) => RConfiguration::DisjointStrip,
            (RegionKind::HalfBigon, 1) => RConfiguration::OneCrossingHalfBigon,
            (RegionKind::Bigon, 2) => RConfiguration::TwoCrossingBigon,
            (RegionKind::HalfBigon, 2) => RConfiguration::TwoCrossingDoubleHalfBigon,
            _ => continue,
        };
        return Ok(kind);
    }
    domain(format!("no region of {c1} and {c2} isolates {r}"))
}

/// Minimal crossing count of two reduced strands with arbitrary ends, such as
/// an arc against the test arc along a gap.
pub fn strand_crossings(surface: Surface, a: &Strand, b: &Strand) -> usize {
    Config::canonical(surface, vec![a.clone(), b.clone()]).crossings(0, 1)
}

/// Arc in the upper disk joining `r_k` and `r_{k+1}`; it is homotopic to gap `G_{k+1}`.
pub fn gamma(surface: Surface, k: usize) -> Strand {
    assert!(k >= 1 && k + 2 < surface.n(), "gamma_{k} needs r_k and r_(k+1)");
    Strand { start: k + 1, end: k + 2, side: Side::Upper, seq: Vec::new() }
}
