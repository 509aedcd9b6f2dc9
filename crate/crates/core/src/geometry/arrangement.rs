//! Planar map of a drawn configuration: chords are straight segments between
//! points of a convex curve (one copy per disk), cut at their crossings; the
//! reference circle subdivides the sphere further into cells, and cells glued
//! across circle edges form the complementary regions of the arcs.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serialize;

use super::config::{Config, End};
use crate::model::{Puncture, Side};

type Q = Ratio<i128>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    /// Slot `idx` of the circle order (a puncture or a crossing point with a gap).
    Circle(usize),
    /// Entry of [`Arrangement::crossings`].
    Crossing(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Circle,
    /// Piece of chord `chord` of strand `strand`.
    Chord { strand: usize, chord: usize },
}

/// Transversal crossing of chord `a.1` of strand `a.0` with chord `b.1` of strand `b.0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub side: Side,
    pub a: (usize, usize),
    pub b: (usize, usize),
    pub point: (Q, Q),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RegionKind {
    Bigon,
    HalfBigon,
    Strip,
    Other,
}

/// A complementary region of the union of the arcs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionReport {
    pub kind: RegionKind,
    /// Punctures met as corners of the boundary, with multiplicity, in boundary order.
    pub boundary_punctures: Vec<Puncture>,
    /// Punctures not on any arc that lie inside the region.
    pub interior_punctures: Vec<Puncture>,
    /// Strands carrying the boundary sides, one per side, in boundary order.
    pub bounding_arcs: Vec<usize>,
    /// Number of corners at arc crossings.
    pub crossing_corners: usize,
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    pub config: Config,
    pub crossings: Vec<Crossing>,
    pub vertices: Vec<VertexKind>,
    /// Dart `d` and `d ^ 1` form one edge.
    pub dart_origin: Vec<usize>,
    pub dart_edge: Vec<EdgeKind>,
    /// Counterclockwise successor of a dart around its origin.
    pub sigma: Vec<usize>,
    /// Cell on the left of each dart.
    pub dart_cell: Vec<usize>,
    pub cell_count: usize,
    /// Region of each cell.
    pub cell_region: Vec<usize>,
    pub regions: Vec<RegionReport>,
    /// Circle slots in order: each is a puncture position or a point.
    pub slots: Vec<End>,
}

struct Builder {
    vertices: Vec<VertexKind>,
    origin: Vec<usize>,
    edge: Vec<EdgeKind>,
    /// For chord darts, the circle slot the dart points towards.
    aim: Vec<usize>,
}

impl Builder {
    fn add_edge(&mut self, u: usize, v: usize, kind: EdgeKind, aim_uv: usize, aim_vu: usize) {
        self.origin.extend([u, v]);
        self.edge.extend([kind, kind]);
        self.aim.extend([aim_uv, aim_vu]);
    }
}

fn cross(a: (Q, Q), b: (Q, Q)) -> Q {
    a.0 * b.1 - a.1 * b.0
}

fn sub(a: (Q, Q), b: (Q, Q)) -> (Q, Q) {
    (a.0 - b.0, a.1 - b.1)
}

impl Arrangement {
    pub fn new(config: Config) -> Arrangement {
        for attempt in 0.. {
            if let Some(a) = Arrangement::try_build(&config, attempt) {
                return a;
            }
        }
        unreachable!()
    }

    /// Fails if three chords meet in a point for this choice of slot positions.
    fn try_build(config: &Config, attempt: i128) -> Option<Arrangement> {
        let surface = config.surface;
        let n = surface.n();
        let mut slots = Vec::new();
        for g in 0..n {
            slots.push(End::Puncture(g));
            slots.extend(config.orders[g].iter().map(|&(s, i)| End::Point(s, i)));
        }
        let total = slots.len();
        let slot_of = |e: End| -> usize {
            let key = config.key(e);
            slots.binary_search_by(|x| config.key(*x).cmp(&key)).unwrap()
        };
        let place = |j: usize| -> (Q, Q) {
            let j = j as i128;
            let jitter = if attempt == 0 { 0 } else { (j * 7919 + attempt * 104_729) % 997 };
            let t = Q::from_integer(j) + Q::new(jitter, 2 * 997);
            (t, t * t)
        };

        // Chords per disk, as (strand, chord, from slot, to slot).
        let mut chords = Vec::new();
        for (s, st) in config.strands.iter().enumerate() {
            for k in 0..=st.len() {
                let (a, b) = config.chord(s, k);
                chords.push((s, k, st.chord_side(k), slot_of(a), slot_of(b)));
            }
        }
        let mut crossings = Vec::new();
        // Per chord: (parameter along the chord, crossing index).
        let mut along: Vec<Vec<(Q, usize)>> = vec![Vec::new(); chords.len()];
        for x in 0..chords.len() {
            for y in x + 1..chords.len() {
                let (s, k, side, a, b) = chords[x];
                let (t, l, side2, c, d) = chords[y];
                if side != side2 || !config.chords_cross(s, k, t, l) {
                    continue;
                }
                let (pa, pb, pc, pd) = (place(a), place(b), place(c), place(d));
                let den = cross(sub(pb, pa), sub(pd, pc));
                let lam = cross(sub(pc, pa), sub(pd, pc)) / den;
                let mu = cross(sub(pc, pa), sub(pb, pa)) / den;
                let point = (pa.0 + lam * (pb.0 - pa.0), pa.1 + lam * (pb.1 - pa.1));
                let idx = crossings.len();
                crossings.push(Crossing { side, a: (s, k), b: (t, l), point });
                along[x].push((lam, idx));
                along[y].push((mu, idx));
            }
        }
        for list in &mut along {
            list.sort();
            if list.windows(2).any(|w| w[0].0 == w[1].0) {
                return None;
            }
        }

        let mut b = Builder { vertices: Vec::new(), origin: Vec::new(), edge: Vec::new(), aim: Vec::new() };
        b.vertices.extend((0..total).map(VertexKind::Circle));
        b.vertices.extend((0..crossings.len()).map(VertexKind::Crossing));
        let none = usize::MAX;
        for j in 0..total {
            b.add_edge(j, (j + 1) % total, EdgeKind::Circle, none, none);
        }
        for (x, &(s, k, _, a, bb)) in chords.iter().enumerate() {
            let mut prev = a;
            for &(_, c) in &along[x] {
                let v = total + c;
                b.add_edge(prev, v, EdgeKind::Chord { strand: s, chord: k }, bb, a);
                prev = v;
            }
            b.add_edge(prev, bb, EdgeKind::Chord { strand: s, chord: k }, bb, a);
        }

        // Rotation system.
        let nd = b.origin.len();
        let mut around: Vec<Vec<usize>> = vec![Vec::new(); b.vertices.len()];
        for d in 0..nd {
            around[b.origin[d]].push(d);
        }
        let side_of = |d: usize| -> Side {
            match b.edge[d] {
                EdgeKind::Chord { strand, chord } => config.strands[strand].chord_side(chord),
                EdgeKind::Circle => unreachable!(),
            }
        };
        let mut sigma = vec![0; nd];
        for (v, darts) in around.iter_mut().enumerate() {
            if v < total {
                // Counterclockwise: forward along the circle, Upper chords by
                // increasing circle distance of their target, backward, Lower
                // chords by decreasing distance.
                let dist = |d: usize| (b.aim[d] + total - v) % total;
                let mut fwd = None;
                let mut back = None;
                let mut up = Vec::new();
                let mut low = Vec::new();
                for &d in darts.iter() {
                    match b.edge[d] {
                        EdgeKind::Circle if d % 2 == 0 => fwd = Some(d),
                        EdgeKind::Circle => back = Some(d),
                        _ if side_of(d) == Side::Upper => up.push(d),
                        _ => low.push(d),
                    }
                }
                up.sort_by_key(|&d| dist(d));
                low.sort_by_key(|&d| std::cmp::Reverse(dist(d)));
                let mut order = vec![fwd.unwrap()];
                order.extend(up);
                order.push(back.unwrap());
                order.extend(low);
                *darts = order;
            } else {
                let upper = side_of(darts[0]) == Side::Upper;
                darts.sort_by_key(|&d| b.aim[d]);
                if !upper {
                    darts.reverse();
                }
            }
            for i in 0..darts.len() {
                sigma[darts[i]] = darts[(i + 1) % darts.len()];
            }
        }

        // Cells: the cell left of d continues with the dart after d's reverse.
        let mut dart_cell = vec![usize::MAX; nd];
        let mut cell_count = 0;
        for d in 0..nd {
            if dart_cell[d] != usize::MAX {
                continue;
            }
            let mut e = d;
            while dart_cell[e] == usize::MAX {
                dart_cell[e] = cell_count;
                e = sigma[e ^ 1];
            }
            cell_count += 1;
        }
        let euler = b.vertices.len() as i64 - (nd / 2) as i64 + cell_count as i64;
        assert_eq!(euler, 2, "arrangement is not a sphere subdivision");

        // Regions: cells glued along circle edges.
        let mut parent: Vec<usize> = (0..cell_count).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in 0..total {
            let (x, y) = (find(&mut parent, dart_cell[2 * e]), find(&mut parent, dart_cell[2 * e + 1]));
            parent[x] = y;
        }
        let mut roots = Vec::new();
        let mut cell_region = vec![0; cell_count];
        for c in 0..cell_count {
            let r = find(&mut parent, c);
            cell_region[c] = match roots.iter().position(|&x| x == r) {
                Some(i) => i,
                None => {
                    roots.push(r);
                    roots.len() - 1
                }
            };
        }

        let mut arr = Arrangement {
            config: config.clone(),
            crossings,
            vertices: b.vertices,
            dart_origin: b.origin,
            dart_edge: b.edge,
            sigma,
            dart_cell,
            cell_count,
            cell_region,
            regions: Vec::new(),
            slots,
        };
        arr.regions = arr.describe_regions(roots.len());
        Some(arr)
    }

    fn is_chord(&self, d: usize) -> bool {
        matches!(self.dart_edge[d], EdgeKind::Chord { .. })
    }

    /// Next chord dart along the boundary of the region left of chord dart `d`.
    fn region_next(&self, d: usize) -> usize {
        let mut e = self.sigma[d ^ 1];
        while !self.is_chord(e) {
            e = self.sigma[e];
        }
        e
    }

    fn describe_regions(&self, count: usize) -> Vec<RegionReport> {
        let surface = self.config.surface;
        let mut reports: Vec<Option<RegionReport>> = vec![None; count];
        let mut seen = vec![false; self.dart_origin.len()];
        for d0 in 0..self.dart_origin.len() {
            if seen[d0] || !self.is_chord(d0) {
                continue;
            }
            let region = self.cell_region[self.dart_cell[d0]];
            let mut cycle = Vec::new();
            let mut d = d0;
            while !seen[d] {
                seen[d] = true;
                cycle.push(d);
                d = self.region_next(d);
            }
            // Corners are the vertices where the boundary leaves one strand.
            let mut boundary_punctures = Vec::new();
            let mut bounding_arcs = Vec::new();
            let mut crossing_corners = 0;
            let start = cycle
                .iter()
                .position(|&d| self.is_corner(self.dart_origin[d]))
                .unwrap_or(0);
            for i in 0..cycle.len() {
                let d = cycle[(start + i) % cycle.len()];
                let v = self.dart_origin[d];
                if !self.is_corner(v) {
                    continue;
                }
                match self.vertices[v] {
                    VertexKind::Crossing(_) => crossing_corners += 1,
                    VertexKind::Circle(j) => match self.slots[j] {
                        End::Puncture(pos) => boundary_punctures.push(surface.puncture_at(pos)),
                        End::Point(..) => unreachable!(),
                    },
                }
                if let EdgeKind::Chord { strand, .. } = self.dart_edge[d] {
                    bounding_arcs.push(strand);
                }
            }
            let corners = crossing_corners + boundary_punctures.len();
            let two_sided = corners == 2 && bounding_arcs.len() == 2 && bounding_arcs[0] != bounding_arcs[1];
            let kind = match (two_sided, boundary_punctures.len()) {
                (true, 0) => RegionKind::Bigon,
                (true, 1) => RegionKind::HalfBigon,
                (true, 2) => RegionKind::Strip,
                _ => RegionKind::Other,
            };
            assert!(reports[region].is_none(), "region with two boundary components");
            reports[region] = Some(RegionReport {
                kind,
                boundary_punctures,
                interior_punctures: Vec::new(),
                bounding_arcs,
                crossing_corners,
            });
        }
        // Punctures away from the arcs lie in the region around their circle edges.
        let mut interior: Vec<BTreeSet<Puncture>> = vec![BTreeSet::new(); count];
        for (j, slot) in self.slots.iter().enumerate() {
            if let End::Puncture(pos) = *slot {
                let darts: Vec<usize> = (0..self.dart_origin.len())
                    .filter(|&d| self.dart_origin[d] == j && self.is_chord(d))
                    .collect();
                if darts.is_empty() {
                    let region = self.cell_region[self.dart_cell[2 * j]];
                    interior[region].insert(surface.puncture_at(pos));
                }
            }
        }
        reports
            .into_iter()
            .zip(interior)
            .map(|(r, inside)| {
                let mut r = r.unwrap_or(RegionReport {
                    kind: RegionKind::Other,
                    boundary_punctures: Vec::new(),
                    interior_punctures: Vec::new(),
                    bounding_arcs: Vec::new(),
                    crossing_corners: 0,
                });
                r.interior_punctures = inside.into_iter().collect();
                r
            })
            .collect()
    }

    /// Crossings and arc endpoints; circle points are passed straight through.
    fn is_corner(&self, v: usize) -> bool {
        match self.vertices[v] {
            VertexKind::Crossing(_) => true,
            VertexKind::Circle(j) => matches!(self.slots[j], End::Puncture(_)),
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Regions whose interior punctures are exactly `which`.
    pub fn regions_containing(&self, which: &[Puncture]) -> Vec<usize> {
        (0..self.regions.len())
            .filter(|&r| self.regions[r].interior_punctures == which)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::config::Strand;
    use crate::model::{ArcClass, Surface};

    fn arrangement(n: usize, classes: &[(Side, &[usize])]) -> Arrangement {
        let s = Surface::new(n).unwrap();
        let strands = classes
            .iter()
            .map(|(side, seq)| Strand::from_class(&ArcClass::reduce(s, *side, seq).unwrap()))
            .collect();
        Arrangement::new(Config::canonical(s, strands))
    }

    #[test]
    fn single_arc_splits_nothing() {
        let a = arrangement(4, &[(Side::Upper, &[])]);
        assert_eq!(a.regions.len(), 1);
        assert_eq!(a.regions[0].kind, RegionKind::Other);
        assert_eq!(a.regions[0].interior_punctures.len(), 2);
    }

    #[test]
    fn crossing_pair_regions() {
        // alpha_13 against the trivial arc on five punctures: one crossing.
        let a = arrangement(5, &[(Side::Upper, &[]), (Side::Upper, &[2, 0, 3])]);
        assert_eq!(a.crossing_count(), 1);
        assert_eq!(a.regions.len(), 3);
        let half = a.regions.iter().filter(|r| r.kind == RegionKind::HalfBigon).count();
        assert_eq!(half, 2);
    }
}
