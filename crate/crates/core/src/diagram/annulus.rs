use std::collections::{BTreeMap, HashSet};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{AnnularDiagram, PlanarMap};
use crate::error::{input, Result};

type Q = Ratio<i128>;

/// Arc across the annulus from slot `inner` of boundary 0 to slot `outer` of
/// boundary 1, turning `winding` extra times around.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AnnulusArc {
    pub inner: usize,
    pub outer: usize,
    pub winding: i64,
}

/// Arcs drawn as straight segments in the flat annulus `R/Z x [0, 1]`: slot
/// `s` of either boundary sits at angle `s / m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AnnulusArcSpec {
    pub arcs: Vec<AnnulusArc>,
}

impl AnnulusArcSpec {
    pub fn new(arcs: Vec<AnnulusArc>) -> Result<AnnulusArcSpec> {
        let m = arcs.len();
        for side in [0, 1] {
            let mut used = vec![false; m];
            for a in &arcs {
                let s = if side == 0 { a.inner } else { a.outer };
                if s >= m || std::mem::replace(&mut used[s], true) {
                    return input("boundary slots must be distinct and below the arc count");
                }
            }
        }
        Ok(AnnulusArcSpec { arcs })
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Crossings of the taut representatives of arcs `i` and `j`: lifts of
    /// `j` shifted by `z` meet `i` when `z` separates the angle differences
    /// at the two boundaries.
    pub fn crossings(&self, i: usize, j: usize) -> usize {
        let m = self.len() as i64;
        let (a, b) = (self.arcs[i], self.arcs[j]);
        let d0 = a.inner as i64 - b.inner as i64;
        let d1 = a.outer as i64 - b.outer as i64 + m * (a.winding - b.winding);
        let (lo, hi) = (d0.min(d1), d0.max(d1));
        (hi.div_euclid(m) - lo.div_euclid(m)) as usize
    }

    pub fn max_crossing(&self) -> usize {
        let m = self.len();
        (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).map(|(i, j)| self.crossings(i, j)).max().unwrap_or(0)
    }

    /// Endpoint angles, moved inside their slots by `attempt` so that no
    /// three segments meet at a point.
    fn ends(&self, attempt: i128) -> Vec<(Q, Q)> {
        let m = self.len() as i128;
        let jitter = |i: usize, side: i128| {
            let h = (i as i128 * 7919 + side * 104_729 + attempt * 1_299_709) % 997;
            Q::new(h + 1, 2000)
        };
        self.arcs
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let start = (Q::from_integer(a.inner as i128) + jitter(i, 0)) / m;
                let end = (Q::from_integer(a.outer as i128) + jitter(i, 1)) / m + Q::from_integer(a.winding as i128);
                (start, end)
            })
            .collect()
    }

    /// Crossing points `(height, arc, arc)` for one choice of endpoints;
    /// `None` when three segments are concurrent.
    fn crossing_points(&self, ends: &[(Q, Q)]) -> Option<Vec<(Q, usize, usize)>> {
        let m = self.len();
        let mut points = Vec::new();
        let mut seen = HashSet::new();
        for i in 0..m {
            for j in i + 1..m {
                let (ai, bi) = ends[i];
                let (aj, bj) = ends[j];
                let (di, dj) = (bi - ai, bj - aj);
                let (x0, x1) = (ai - aj, bi - bj);
                let lo = x0.min(x1).floor().to_integer() + 1;
                let hi = x0.max(x1).ceil().to_integer() - 1;
                for z in lo..=hi {
                    let y = (aj + Q::from_integer(z) - ai) / (di - dj);
                    let x = ai + di * y;
                    if !seen.insert((y, x - x.floor())) {
                        return None;
                    }
                    points.push((y, i, j));
                }
            }
        }
        Some(points)
    }

    /// Map on the sphere obtained by shrinking boundary 0 to `p` and
    /// boundary 1 to `q`.
    pub fn planar_map(&self) -> PlanarMap {
        let m = self.len();
        let (ends, points) = (0..)
            .find_map(|attempt| {
                let ends = self.ends(attempt);
                self.crossing_points(&ends).map(|p| (ends, p))
            })
            .unwrap();
        // Vertices along every arc in order of height: 0 is p, 1 is q.
        let mut along: Vec<Vec<(Q, usize)>> = vec![Vec::new(); m];
        for (k, &(y, i, j)) in points.iter().enumerate() {
            along[i].push((y, k + 2));
            along[j].push((y, k + 2));
        }
        let mut edges = 0;
        // Per arc and per crossing: outgoing forward dart, outgoing backward dart.
        let mut at: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        let mut first = vec![0; m];
        let mut last = vec![0; m];
        for (i, list) in along.iter_mut().enumerate() {
            list.sort();
            let count = list.len() + 1;
            first[i] = 2 * edges;
            last[i] = 2 * (edges + count - 1) + 1;
            for (k, &(_, v)) in list.iter().enumerate() {
                at.insert((i, v), (2 * (edges + k + 1), 2 * (edges + k) + 1));
            }
            edges += count;
        }
        let mut next = vec![0; 2 * edges];
        for (k, &(_, i, j)) in points.iter().enumerate() {
            let v = k + 2;
            let slope = |a: usize| ends[a].1 - ends[a].0;
            let (s, t) = if slope(i) > slope(j) { (i, j) } else { (j, i) };
            let (fs, bs) = at[&(s, v)];
            let (ft, bt) = at[&(t, v)];
            next[fs] = ft;
            next[ft] = bs;
            next[bs] = bt;
            next[bt] = fs;
        }
        let cyclic = |next: &mut Vec<usize>, darts: &[usize]| {
            for k in 0..darts.len() {
                next[darts[k]] = darts[(k + 1) % darts.len()];
            }
        };
        let mut by_inner: Vec<usize> = (0..m).collect();
        by_inner.sort_by(|&a, &b| ends[b].0.cmp(&ends[a].0));
        cyclic(&mut next, &by_inner.iter().map(|&a| first[a]).collect::<Vec<_>>());
        let mut by_outer: Vec<usize> = (0..m).collect();
        by_outer.sort_by_key(|&a| self.arcs[a].outer);
        cyclic(&mut next, &by_outer.iter().map(|&a| last[a]).collect::<Vec<_>>());
        PlanarMap { next, p_dart: first[0], q_dart: last[0] }
    }

    pub fn diagram(&self) -> AnnularDiagram {
        self.planar_map().dual().expect("dual of a planar map")
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (k, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Specs with `1..=m_max` arcs and windings in `-w_max..=w_max`. Rotating
/// either boundary and twisting the annulus are symmetries, so arc 0 runs
/// from slot 0 to slot 0 without winding.
fn specs(m_max: usize, w_max: i64) -> Vec<AnnulusArcSpec> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        let rest: Vec<usize> = (1..m).collect();
        let windings = (2 * w_max + 1).pow(m as u32 - 1);
        for perm in permutations(&rest) {
            for code in 0..windings {
                let mut c = code;
                let mut arcs = vec![AnnulusArc { inner: 0, outer: 0, winding: 0 }];
                for (k, &outer) in perm.iter().enumerate() {
                    arcs.push(AnnulusArc { inner: k + 1, outer, winding: c % (2 * w_max + 1) - w_max });
                    c /= 2 * w_max + 1;
                }
                out.push(AnnulusArcSpec { arcs });
            }
        }
    }
    out
}

/// Dual diagrams of taut annulus systems whose arcs meet pairwise at most
/// `k` times, one per isomorphism class, in enumeration order.
pub fn enumerate_taut_annulus_diagrams(m_max: usize, w_max: i64, k: usize) -> Vec<(AnnulusArcSpec, AnnularDiagram)> {
    let built: Vec<(AnnulusArcSpec, AnnularDiagram, Vec<usize>)> = specs(m_max, w_max)
        .into_par_iter()
        .filter(|s| s.max_crossing() <= k)
        .map(|s| {
            let d = s.diagram();
            let code = d.canonical_code();
            (s, d, code)
        })
        .collect();
    let mut seen = HashSet::new();
    built.into_iter().filter(|(_, _, code)| seen.insert(code.clone())).map(|(s, d, _)| (s, d)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CornerTheoremReport {
    pub m_max: usize,
    pub w_max: i64,
    pub diagrams: usize,
    pub cycles: usize,
    pub with_squares: usize,
    /// Diagrams that are not 1-system diagrams although their arcs meet at
    /// most once; expected empty.
    pub malformed: Vec<AnnulusArcSpec>,
    /// Diagrams with squares missing a corner on some boundary path.
    pub violations: Vec<AnnulusArcSpec>,
}

impl CornerTheoremReport {
    pub fn holds(&self) -> bool {
        self.malformed.is_empty() && self.violations.is_empty()
    }
}

pub fn verify_corner_theorem(m_max: usize, w_max: i64) -> CornerTheoremReport {
    let all = enumerate_taut_annulus_diagrams(m_max, w_max, 1);
    let mut report = CornerTheoremReport {
        m_max,
        w_max,
        diagrams: all.len(),
        cycles: 0,
        with_squares: 0,
        malformed: Vec::new(),
        violations: Vec::new(),
    };
    for (spec, d) in all {
        if !d.is_k_system_diagram(1).0 {
            report.malformed.push(spec);
        } else if d.square_count() == 0 {
            report.cycles += 1;
        } else {
            report.with_squares += 1;
            if d.corners(0).is_empty() || d.corners(1).is_empty() {
                report.violations.push(spec);
            }
        }
    }
    report
}
