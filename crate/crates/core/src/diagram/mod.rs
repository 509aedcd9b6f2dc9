//! Square annular diagrams as combinatorial maps: dual curves, hexagon moves,
//! corners and cornsquares.

mod annulus;
mod dual;

pub use annulus::{
    enumerate_taut_annulus_diagrams, verify_corner_theorem, AnnulusArc, AnnulusArcSpec, CornerTheoremReport,
};
pub use dual::{dual_diagram, dual_of_arrangement, two_system_counterexample, Counterexample, DualDiagram, PlanarMap};

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{domain, input, Error, Result};

/// Dart table of a diagram. Darts `d` and `d ^ 1` are the halves of one edge,
/// `next[d]` is the counterclockwise successor of `d` around its origin, and
/// faces are the orbits of `d -> next[d ^ 1]`. `boundary` holds one dart of
/// each boundary face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDocument {
    pub next: Vec<usize>,
    pub boundary: [usize; 2],
}

#[derive(Clone, Debug)]
pub struct AnnularDiagram {
    next: Vec<usize>,
    boundary: [usize; 2],
    origin: Vec<usize>,
    vertex_count: usize,
    face_of: Vec<usize>,
    faces: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualCurve {
    /// Edges met in order.
    pub edges: Vec<usize>,
    /// Square faces between consecutive edges.
    pub squares: Vec<usize>,
    /// Boundary (0 or 1) reached at each end; both `None` for a closed curve.
    pub ends: [Option<usize>; 2],
}

impl DualCurve {
    pub fn is_closed(&self) -> bool {
        self.ends[0].is_none()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::new();
        self.squares.iter().all(|s| seen.insert(*s))
    }

    pub fn joins_boundaries(&self) -> bool {
        matches!(self.ends, [Some(a), Some(b)] if a != b)
    }
}

/// A square whose dual curves reach the consecutive boundary darts
/// `outer[0]`, `outer[1]` of one boundary face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Cornsquare {
    pub square: usize,
    pub outer: [usize; 2],
    /// Vertex shared by the two outer edges.
    pub vertex: usize,
    /// Winding number of the test loop around the annulus.
    pub winding: i64,
}

/// Hexagon moves leading to a corner, each given by a dart at the center.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub moves: Vec<usize>,
    /// Boundary dart whose origin became the corner.
    pub corner_dart: usize,
    pub diagram: AnnularDiagram,
    pub explored: usize,
}

fn orbits(len: usize, step: impl Fn(usize) -> usize) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut id = vec![usize::MAX; len];
    let mut all = Vec::new();
    for d0 in 0..len {
        if id[d0] != usize::MAX {
            continue;
        }
        let mut cycle = Vec::new();
        let mut d = d0;
        while id[d] == usize::MAX {
            id[d] = all.len();
            cycle.push(d);
            d = step(d);
        }
        all.push(cycle);
    }
    (id, all)
}

impl AnnularDiagram {
    /// Builds the derived vertex and face tables. Only the dart table itself
    /// is checked here; see [`AnnularDiagram::validate`] for the rest.
    pub fn new(next: Vec<usize>, boundary: [usize; 2]) -> Result<AnnularDiagram> {
        let len = next.len();
        if len == 0 || len % 2 == 1 {
            return input("dart count must be positive and even");
        }
        let mut hit = vec![false; len];
        for &x in &next {
            if x >= len || std::mem::replace(&mut hit[x], true) {
                return input("rotation is not a permutation of the darts");
            }
        }
        if boundary.iter().any(|&b| b >= len) {
            return input("boundary dart out of range");
        }
        let (origin, vertices) = orbits(len, |d| next[d]);
        let (face_of, faces) = orbits(len, |d| next[d ^ 1]);
        Ok(AnnularDiagram { next, boundary, origin, vertex_count: vertices.len(), face_of, faces })
    }

    pub fn from_document(doc: DiagramDocument) -> Result<AnnularDiagram> {
        AnnularDiagram::new(doc.next, doc.boundary)
    }

    pub fn to_document(&self) -> DiagramDocument {
        DiagramDocument { next: self.next.clone(), boundary: self.boundary }
    }

    pub fn dart_count(&self) -> usize {
        self.next.len()
    }

    pub fn edge_count(&self) -> usize {
        self.next.len() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn next(&self, d: usize) -> usize {
        self.next[d]
    }

    pub fn origin(&self, d: usize) -> usize {
        self.origin[d]
    }

    pub fn vertex_darts(&self, v: usize) -> Vec<usize> {
        (0..self.next.len()).filter(|&d| self.origin[d] == v).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.origin.iter().filter(|&&o| o == v).count()
    }

    pub fn face(&self, d: usize) -> usize {
        self.face_of[d]
    }

    pub fn face_walk(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn boundary_face(&self, b: usize) -> usize {
        self.face_of[self.boundary[b]]
    }

    pub fn boundary_walk(&self, b: usize) -> &[usize] {
        &self.faces[self.boundary_face(b)]
    }

    fn boundary_index(&self, f: usize) -> Option<usize> {
        (0..2).find(|&b| self.boundary_face(b) == f)
    }

    pub fn is_square(&self, f: usize) -> bool {
        self.boundary_index(f).is_none()
    }

    pub fn squares(&self) -> Vec<usize> {
        (0..self.faces.len()).filter(|&f| self.is_square(f)).collect()
    }

    pub fn square_count(&self) -> usize {
        self.faces.len().saturating_sub(2)
    }

    pub fn validate(&self) -> bool {
        self.check().is_ok()
    }

    /// Structural check with a reason on failure.
    pub fn check(&self) -> std::result::Result<(), String> {
        let [b0, b1] = [self.boundary_face(0), self.boundary_face(1)];
        if b0 == b1 {
            return Err("the two boundary darts lie on one face".into());
        }
        for f in self.squares() {
            let walk = &self.faces[f];
            if walk.len() != 4 {
                return Err(format!("face {f} has {} sides", walk.len()));
            }
            let edges: HashSet<usize> = walk.iter().map(|d| d >> 1).collect();
            if edges.len() != 4 {
                return Err(format!("face {f} uses an edge twice"));
            }
        }
        // Connectivity through edges.
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for d in (0..self.next.len()).step_by(2) {
            let (a, b) = (find(&mut parent, self.origin[d]), find(&mut parent, self.origin[d ^ 1]));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        if (0..self.vertex_count).any(|v| find(&mut parent, v) != root) {
            return Err("diagram is disconnected".into());
        }
        let euler = self.vertex_count as i64 - self.edge_count() as i64 + self.faces.len() as i64;
        if euler != 2 {
            return Err(format!("Euler characteristic with boundary faces is {euler}, not 2"));
        }
        Ok(())
    }

    pub fn is_cycle(&self) -> bool {
        self.validate() && self.square_count() == 0
    }

    /// Follows a dual curve into the face of dart `s`.
    fn run(&self, mut s: usize, start_edge: usize) -> (Vec<usize>, Vec<usize>, Option<usize>, bool) {
        let (mut edges, mut squares) = (Vec::new(), Vec::new());
        loop {
            let f = self.face_of[s];
            if let Some(b) = self.boundary_index(f) {
                return (edges, squares, Some(b), false);
            }
            let walk = &self.faces[f];
            let i = walk.iter().position(|&x| x == s).unwrap();
            let o = walk[(i + 2) % walk.len()];
            squares.push(f);
            if o >> 1 == start_edge {
                return (edges, squares, None, true);
            }
            edges.push(o >> 1);
            s = o ^ 1;
        }
    }

    /// All dual curves, oriented from boundary 0 to boundary 1 when they join
    /// the two, and the curve of every edge. Empty unless the diagram is valid.
    pub fn dual_curves(&self) -> (Vec<DualCurve>, Vec<usize>) {
        let mut curve_of = vec![usize::MAX; self.edge_count()];
        let mut curves = Vec::new();
        if !self.validate() {
            return (curves, curve_of);
        }
        for e in 0..self.edge_count() {
            if curve_of[e] != usize::MAX {
                continue;
            }
            let (fe, fs, fend, closed) = self.run(2 * e + 1, e);
            let curve = if closed {
                let mut edges = vec![e];
                edges.extend(fe);
                DualCurve { edges, squares: fs, ends: [None, None] }
            } else {
                let (be, bs, bend, _) = self.run(2 * e, e);
                let mut edges: Vec<usize> = be.into_iter().rev().collect();
                edges.push(e);
                edges.extend(fe);
                let mut squares: Vec<usize> = bs.into_iter().rev().collect();
                squares.extend(fs);
                let mut c = DualCurve { edges, squares, ends: [bend, fend] };
                if c.ends == [Some(1), Some(0)] {
                    c.edges.reverse();
                    c.squares.reverse();
                    c.ends = [Some(0), Some(1)];
                }
                c
            };
            for &x in &curve.edges {
                curve_of[x] = curves.len();
            }
            curves.push(curve);
        }
        (curves, curve_of)
    }

    /// Number of squares where each pair of distinct dual curves meets.
    pub fn curve_crossings(&self) -> Vec<Vec<usize>> {
        let (curves, curve_of) = self.dual_curves();
        let mut m = vec![vec![0; curves.len()]; curves.len()];
        for f in self.squares() {
            let w = &self.faces[f];
            let (a, b) = (curve_of[w[0] >> 1], curve_of[w[1] >> 1]);
            if a != b {
                m[a][b] += 1;
                m[b][a] += 1;
            }
        }
        m
    }

    /// Crossing counts of curve pairs keyed by the edges where the curves
    /// leave boundary 0. Hexagon moves keep those edges.
    pub fn crossing_profile(&self) -> BTreeMap<(usize, usize), usize> {
        let (curves, _) = self.dual_curves();
        let m = self.curve_crossings();
        let mut out = BTreeMap::new();
        for (i, a) in curves.iter().enumerate() {
            for (j, b) in curves.iter().enumerate().skip(i + 1) {
                if a.ends[0] == Some(0) && b.ends[0] == Some(0) {
                    out.insert((a.edges[0].min(b.edges[0]), a.edges[0].max(b.edges[0])), m[i][j]);
                }
            }
        }
        out
    }

    /// Dual curves are simple arcs joining the two boundary paths and meet
    /// pairwise at most `k` times.
    pub fn is_k_system_diagram(&self, k: usize) -> (bool, Vec<DualCurve>) {
        if !self.validate() {
            return (false, Vec::new());
        }
        let (curves, _) = self.dual_curves();
        let ok = curves.iter().all(|c| c.joins_boundaries() && c.is_simple())
            && self.curve_crossings().iter().flatten().all(|&x| x <= k);
        (ok, curves)
    }

    /// Vertices on boundary path `b`, in walk order.
    pub fn boundary_vertices(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &d in self.boundary_walk(b) {
            if !out.contains(&self.origin[d]) {
                out.push(self.origin[d]);
            }
        }
        out
    }

    /// Degree-2 vertex of boundary path `b` lying on a square.
    pub fn is_corner(&self, v: usize, b: usize) -> bool {
        let darts = self.vertex_darts(v);
        let face = self.boundary_face(b);
        darts.len() == 2
            && darts.iter().any(|&d| self.face_of[d] == face)
            && darts.iter().any(|&d| self.is_square(self.face_of[d]))
    }

    pub fn corners(&self, b: usize) -> Vec<usize> {
        self.boundary_vertices(b).into_iter().filter(|&v| self.is_corner(v, b)).collect()
    }

    /// Deletes corner `v` with its two edges and its square.
    pub fn remove_corner(&self, v: usize) -> Result<AnnularDiagram> {
        let Some(b) = (0..2).find(|&b| v < self.vertex_count && self.is_corner(v, b)) else {
            return domain(format!("vertex {v} is not a corner"));
        };
        let at_v = self.vertex_darts(v);
        let dead: Vec<usize> = at_v.iter().flat_map(|&d| [d, d ^ 1]).collect();
        let square = at_v.iter().map(|&d| self.face_of[d]).find(|&f| self.is_square(f)).unwrap();
        let mut next = self.next.clone();
        for &x in &dead {
            if let Some(p) = (0..next.len()).find(|&p| p != x && next[p] == x) {
                next[p] = next[x];
            }
            next[x] = x;
        }
        let mut renumber = vec![usize::MAX; next.len()];
        let mut kept = 0;
        for e in 0..self.edge_count() {
            if !dead.contains(&(2 * e)) {
                renumber[2 * e] = 2 * kept;
                renumber[2 * e + 1] = 2 * kept + 1;
                kept += 1;
            }
        }
        let mut new_next = vec![0; 2 * kept];
        for d in 0..next.len() {
            if renumber[d] != usize::MAX {
                new_next[renumber[d]] = renumber[next[d]];
            }
        }
        let survivor = |walk: &[usize]| walk.iter().copied().find(|d| !dead.contains(d));
        let mut boundary = [0; 2];
        boundary[b] = renumber[survivor(self.boundary_walk(b))
            .or_else(|| survivor(&self.faces[square]))
            .ok_or_else(|| Error::Domain("nothing left after removing the corner".into()))?];
        boundary[1 - b] = renumber[self.boundary[1 - b]];
        AnnularDiagram::new(new_next, boundary)
    }

    /// Spokes of a hexagon centered at the origin of `s0`, with the outer
    /// darts `a[k]` and `b[k]` of the square between spokes `k - 1` and `k`.
    fn hexagon(&self, s0: usize) -> Option<([usize; 3], [usize; 3], [usize; 3])> {
        let s = [s0, self.next[s0], self.next[self.next[s0]]];
        if self.next[s[2]] != s0 || s[0] == s[1] {
            return None;
        }
        let (mut a, mut b) = ([0; 3], [0; 3]);
        let mut faces = HashSet::new();
        for k in 0..3 {
            let f = self.face_of[s[k]];
            if !self.is_square(f) || self.faces[f].len() != 4 || !faces.insert(f) {
                return None;
            }
            a[k] = self.next[s[k] ^ 1];
            b[k] = self.next[a[k] ^ 1];
            if self.next[b[k] ^ 1] != s[(k + 2) % 3] ^ 1 {
                return None;
            }
        }
        let perimeter: HashSet<usize> = a.iter().chain(b.iter()).copied().collect();
        let center = self.origin[s0];
        let ok = perimeter.len() == 6 && perimeter.iter().all(|&d| self.origin[d] != center && self.origin[d ^ 1] != center);
        ok.then_some((s, a, b))
    }

    /// One dart at the center of every hexagon: an interior vertex of degree 3
    /// on three distinct squares with six distinct outer sides. The outer
    /// corners may coincide when the hexagon wraps around the annulus.
    pub fn hexagon_loci(&self) -> Vec<usize> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for d in 0..self.next.len() {
            if seen.insert(self.origin[d]) && self.hexagon(d).is_some() {
                out.push(d);
            }
        }
        out
    }

    /// Replaces the three squares around the origin of `s0` by the other three
    /// squares of the same hexagon. Spokes keep their dart numbers, so every
    /// other dart, including all boundary darts, is unchanged.
    pub fn hexagon_move(&self, s0: usize) -> Result<AnnularDiagram> {
        let Some((s, a, b)) = (s0 < self.next.len()).then(|| self.hexagon(s0)).flatten() else {
            return domain(format!("dart {s0} is not at the center of a hexagon"));
        };
        let mut next = self.next.clone();
        for k in 0..3 {
            next[b[(k + 1) % 3] ^ 1] = a[k];
            next[a[k] ^ 1] = s[k] ^ 1;
            next[s[k] ^ 1] = b[k];
        }
        AnnularDiagram::new(next, self.boundary)
    }

    /// Integer cocycle dual to a path of faces from boundary 0 to boundary 1:
    /// its sum along a closed edge path is the winding number of the path.
    pub fn winding_cocycle(&self) -> Vec<i64> {
        let mut omega = vec![0; self.next.len()];
        let (start, goal) = (self.boundary_face(0), self.boundary_face(1));
        let mut via = vec![usize::MAX; self.faces.len()];
        let mut seen = vec![false; self.faces.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            if f == goal {
                break;
            }
            for &d in &self.faces[f] {
                let g = self.face_of[d ^ 1];
                if !seen[g] {
                    seen[g] = true;
                    via[g] = d;
                    queue.push_back(g);
                }
            }
        }
        let mut f = goal;
        while f != start && via[f] != usize::MAX {
            let d = via[f];
            omega[d] += 1;
            omega[d ^ 1] -= 1;
            f = self.face_of[d];
        }
        omega
    }

    /// Winding of the cornsquare test loop for square `c` and the consecutive
    /// boundary darts `wa`, `wb`; `None` if the curves from `wa` and `wb` do
    /// not both pass through `c`.
    fn test_loop_winding(&self, omega: &[i64], c: usize, wa: usize, wb: usize) -> Option<i64> {
        // Rail along the curve from `wa`, kept on the side of the shared vertex.
        let mut s = wa ^ 1;
        let mut rail_a = 0;
        loop {
            let f = self.face_of[s];
            if f == c {
                break;
            }
            if !self.is_square(f) {
                return None;
            }
            let w = &self.faces[f];
            let i = w.iter().position(|&x| x == s).unwrap();
            rail_a += omega[w[(i + 3) % 4] ^ 1];
            s = w[(i + 2) % 4] ^ 1;
        }
        let ia = self.faces[c].iter().position(|&x| x == s).unwrap();
        let mut s = wb ^ 1;
        let mut rail_b = 0;
        loop {
            let f = self.face_of[s];
            if f == c {
                break;
            }
            if !self.is_square(f) {
                return None;
            }
            let w = &self.faces[f];
            let i = w.iter().position(|&x| x == s).unwrap();
            rail_b += omega[w[(i + 1) % 4]];
            s = w[(i + 2) % 4] ^ 1;
        }
        let ib = self.faces[c].iter().position(|&x| x == s).unwrap();
        if ia % 2 == ib % 2 {
            // Both curves enter through opposite sides: the same midcube.
            return None;
        }
        let w = &self.faces[c];
        let mut inside = 0;
        let mut t = ia;
        while t != (ib + 1) % 4 {
            inside += omega[w[t]];
            t = (t + 1) % 4;
        }
        Some(rail_a + inside - rail_b)
    }

    /// Every square whose two dual curves reach consecutive edges of boundary
    /// path `b`, with the winding of its test loop; cornsquares have winding 0.
    pub fn cornsquare_candidates(&self, b: usize) -> Vec<Cornsquare> {
        let (_, curve_of) = self.dual_curves();
        if curve_of.is_empty() {
            return Vec::new();
        }
        let omega = self.winding_cocycle();
        let walk = self.boundary_walk(b).to_vec();
        let mut out = Vec::new();
        for i in 0..walk.len() {
            let (wa, wb) = (walk[i], walk[(i + 1) % walk.len()]);
            if wa >> 1 == wb >> 1 || curve_of[wa >> 1] == curve_of[wb >> 1] {
                continue;
            }
            for c in self.squares() {
                if let Some(winding) = self.test_loop_winding(&omega, c, wa, wb) {
                    out.push(Cornsquare { square: c, outer: [wa, wb], vertex: self.origin[wb], winding });
                }
            }
        }
        out
    }

    pub fn find_cornsquare(&self, b: usize) -> Option<Cornsquare> {
        self.cornsquare_candidates(b).into_iter().find(|c| c.winding == 0)
    }

    /// Labels darts breadth first from `root`; the code lists, per label,
    /// the labels of the rotation successor and the opposite dart, then the
    /// least label on boundary 1.
    fn code_from(&self, root: usize) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.next.len()];
        let mut order = vec![root];
        label[root] = 0;
        let mut i = 0;
        while i < order.len() {
            let d = order[i];
            for e in [self.next[d], d ^ 1] {
                if label[e] == usize::MAX {
                    label[e] = order.len();
                    order.push(e);
                }
            }
            i += 1;
        }
        let mut code: Vec<usize> = order.iter().flat_map(|&d| [label[self.next[d]], label[d ^ 1]]).collect();
        code.push(self.boundary_walk(1).iter().map(|&d| label[d]).min().unwrap());
        code
    }

    /// Isomorphism invariant respecting orientation and the boundary labels.
    pub fn canonical_code(&self) -> Vec<usize> {
        self.boundary_walk(0).iter().map(|&r| self.code_from(r)).min().unwrap()
    }

    pub fn is_isomorphic(&self, other: &AnnularDiagram) -> bool {
        self.dart_count() == other.dart_count() && self.canonical_code() == other.canonical_code()
    }

    /// Breadth-first search over hexagon moves until the vertex of a
    /// cornsquare on boundary `b` becomes a corner. Visits at most `cap`
    /// diagrams.
    pub fn reduce_to_corner(&self, b: usize, cap: usize) -> Result<Reduction> {
        if !self.is_k_system_diagram(1).0 {
            return domain("not a 1-system diagram");
        }
        if self.square_count() == 0 {
            return domain("diagram has no squares");
        }
        let Some(cs) = self.find_cornsquare(b) else {
            return domain("no cornsquare on the boundary path");
        };
        let target = cs.outer[1];
        let done = |d: &AnnularDiagram| d.is_corner(d.origin(target), b);
        let mut seen = HashSet::from([self.code_from(target)]);
        let mut queue = VecDeque::from([(self.clone(), Vec::new())]);
        let mut explored = 0;
        while let Some((d, moves)) = queue.pop_front() {
            explored += 1;
            if done(&d) {
                return Ok(Reduction { moves, corner_dart: target, diagram: d, explored });
            }
            if explored >= cap {
                break;
            }
            for s in d.hexagon_loci() {
                let e = d.hexagon_move(s)?;
                if seen.insert(e.code_from(target)) {
                    let mut m = moves.clone();
                    m.push(s);
                    queue.push_back((e, m));
                }
            }
        }
        Err(Error::Exhausted(format!("no corner within {explored} diagrams")))
    }
}
