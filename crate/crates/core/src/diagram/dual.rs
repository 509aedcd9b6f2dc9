use serde::{Deserialize, Serialize};

use super::AnnularDiagram;
use crate::error::{domain, input, Result};
use crate::geometry::{Arrangement, EdgeKind, End, VertexKind};
use crate::extremal::candidates;
use crate::geometry::system_arrangement;
use crate::model::{ArcClass, Puncture};

/// A connected map on the sphere with two marked vertices. Darts `d` and
/// `d ^ 1` form an edge, `next[d]` is the counterclockwise successor around
/// the origin of `d`, and `p_dart`, `q_dart` leave the marked vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarMap {
    pub next: Vec<usize>,
    pub p_dart: usize,
    pub q_dart: usize,
}

impl PlanarMap {
    /// Dual map: faces become vertices, vertices become faces. The faces
    /// around the two marked vertices are the boundary faces.
    pub fn dual(&self) -> Result<AnnularDiagram> {
        let next = (0..self.next.len()).map(|d| self.next[d ^ 1]).collect();
        AnnularDiagram::new(next, [self.p_dart, self.q_dart])
    }
}

/// Dual of an arrangement together with the complementary region of every
/// diagram vertex.
#[derive(Clone, Debug)]
pub struct DualDiagram {
    pub diagram: AnnularDiagram,
    pub vertex_region: Vec<usize>,
}

/// Square complex dual to a system of arcs from `p` to `q` meeting pairwise
/// at most once.
pub fn dual_diagram(arr: &Arrangement) -> Result<DualDiagram> {
    let strands = arr.config.strands.len();
    for s in 0..strands {
        for t in s + 1..strands {
            if arr.config.crossings(s, t) > 1 {
                return domain(format!("arcs {s} and {t} cross more than once"));
            }
        }
    }
    dual_of_arrangement(arr)
}

/// Dual square complex of any drawn system of arcs from `p` to `q`.
pub fn dual_of_arrangement(arr: &Arrangement) -> Result<DualDiagram> {
    if arr.config.strands.len() < 2 {
        return input("need at least two arcs");
    }
    let surface = arr.config.surface;
    let (p, q) = (surface.position(Puncture::P), surface.position(Puncture::Q));
    let marked = |v: usize| match arr.vertices[v] {
        VertexKind::Crossing(_) => true,
        VertexKind::Circle(i) => matches!(arr.slots[i], End::Puncture(x) if x == p || x == q),
    };
    let chord = |d: usize| matches!(arr.dart_edge[d], EdgeKind::Chord { .. });
    let darts = arr.dart_origin.len();
    // Chain chord pieces through the points where arcs meet the circle.
    let mut seg = vec![usize::MAX; darts];
    let mut starts = Vec::new();
    for d in 0..darts {
        if !chord(d) || !marked(arr.dart_origin[d]) || seg[d] != usize::MAX {
            continue;
        }
        let mut e = d;
        while !marked(arr.dart_origin[e ^ 1]) {
            let mut f = arr.sigma[e ^ 1];
            while !chord(f) {
                f = arr.sigma[f];
            }
            e = f;
        }
        let k = starts.len();
        seg[d] = 2 * k;
        seg[e ^ 1] = 2 * k + 1;
        starts.push(d);
    }
    let mut next = vec![0; 2 * starts.len()];
    let mut arr_dart = vec![0; 2 * starts.len()];
    let (mut p_dart, mut q_dart) = (None, None);
    for d in 0..darts {
        if seg[d] == usize::MAX {
            continue;
        }
        let mut f = arr.sigma[d];
        while seg[f] == usize::MAX {
            f = arr.sigma[f];
        }
        next[seg[d]] = seg[f];
        arr_dart[seg[d]] = d;
        if let VertexKind::Circle(i) = arr.vertices[arr.dart_origin[d]] {
            if arr.slots[i] == End::Puncture(p) {
                p_dart = Some(seg[d]);
            } else {
                q_dart = Some(seg[d]);
            }
        }
    }
    let map = PlanarMap { next, p_dart: p_dart.unwrap(), q_dart: q_dart.unwrap() };
    let diagram = map.dual()?;
    let mut vertex_region = vec![0; diagram.vertex_count()];
    for (x, &d) in arr_dart.iter().enumerate() {
        vertex_region[diagram.origin(x)] = arr.cell_region[arr.dart_cell[d]];
    }
    Ok(DualDiagram { diagram, vertex_region })
}

/// A 2-system whose dual diagram has squares and no corner on boundary
/// path `boundary`.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub classes: Vec<ArcClass>,
    pub diagram: AnnularDiagram,
    pub boundary: usize,
}

fn cliques_of_size(adj: &[Vec<bool>], size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == size {
        out.push(cur.clone());
        return;
    }
    let from = cur.last().map_or(0, |&v| v + 1);
    for v in from..adj.len() {
        if cur.iter().all(|&u| adj[u][v]) {
            cur.push(v);
            cliques_of_size(adj, size, cur, out);
            cur.pop();
        }
    }
}

/// Smallest 2-system on `n` punctures, among classes with at most `max_len`
/// crossings and systems of at most `max_arcs` arcs, whose dual diagram has
/// squares but misses a corner on a boundary path.
pub fn two_system_counterexample(n: usize, max_len: usize, max_arcs: usize) -> Result<Option<Counterexample>> {
    let c = candidates(n, 2, max_len)?;
    for size in 2..=max_arcs {
        let mut all = Vec::new();
        cliques_of_size(&c.adj, size, &mut Vec::new(), &mut all);
        for clique in all {
            let classes: Vec<ArcClass> = clique.iter().map(|&i| c.system.classes()[i].clone()).collect();
            let diagram = dual_of_arrangement(&system_arrangement(&classes)?)?.diagram;
            if diagram.square_count() == 0 || !diagram.is_k_system_diagram(2).0 {
                continue;
            }
            if let Some(boundary) = (0..2).find(|&b| diagram.corners(b).is_empty()) {
                return Ok(Some(Counterexample { classes, diagram, boundary }));
            }
        }
    }
    Ok(None)
}
