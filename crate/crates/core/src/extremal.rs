//! k-system checks, exhaustive maximum systems, the chord lemma, the relation
//! conditions and the fibers of puncture forgetting.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::constructions::binomial;
use crate::error::{input, Error, Result};
use crate::model::{enumerate_classes, ArcClass, Puncture, Surface};
use crate::system::ArcSystem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Verdict {
    Ok { size: usize },
    Violation { i: usize, j: usize, reason: String },
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok { .. })
    }
}

pub fn verify_k_system(sys: &ArcSystem, k: usize) -> Verdict {
    let cs = sys.classes();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if cs[i] == cs[j] {
                return Verdict::Violation { i, j, reason: format!("{} and {} are homotopic", cs[i], cs[j]) };
            }
            let x = sys.intersection(i, j);
            if x > k {
                return Verdict::Violation {
                    i,
                    j,
                    reason: format!("{} and {} meet {x} times, more than {k}", cs[i], cs[j]),
                };
            }
        }
    }
    Verdict::Ok { size: cs.len() }
}

/// Maximum clique by branch and bound; candidates are colored greedily and
/// a branch is cut when its color count cannot beat the best clique.
pub fn max_clique(adj: &[Vec<bool>]) -> Vec<usize> {
    let m = adj.len();
    let mut order: Vec<usize> = (0..m).collect();
    let degree = |v: usize| adj[v].iter().filter(|&&x| x).count();
    order.sort_by_key(|&v| (std::cmp::Reverse(degree(v)), v));
    let mut best = Vec::new();
    let mut current = Vec::new();
    expand(adj, &mut current, order, &mut best);
    best.sort();
    best
}

fn expand(adj: &[Vec<bool>], current: &mut Vec<usize>, cand: Vec<usize>, best: &mut Vec<usize>) {
    // Greedy coloring in candidate order: color classes are independent sets.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut colored = Vec::with_capacity(cand.len());
    for &v in &cand {
        let c = classes
            .iter()
            .position(|cls| cls.iter().all(|&u| !adj[u][v]))
            .unwrap_or_else(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
        classes[c].push(v);
    }
    for (c, cls) in classes.iter().enumerate() {
        for &v in cls {
            colored.push((v, c + 1));
        }
    }
    while let Some((v, bound)) = colored.pop() {
        if current.len() + bound <= best.len() {
            return;
        }
        current.push(v);
        let next: Vec<usize> = colored.iter().map(|&(u, _)| u).filter(|&u| adj[v][u]).collect();
        if next.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand(adj, current, next, best);
        }
        current.pop();
    }
}

/// Largest clique among the vertices adjacent to every vertex of `forced`,
/// together with `forced` itself. `None` if `forced` is not a clique.
pub fn max_clique_containing(adj: &[Vec<bool>], forced: &[usize]) -> Option<Vec<usize>> {
    for (x, &a) in forced.iter().enumerate() {
        if forced[x + 1..].iter().any(|&b| !adj[a][b]) {
            return None;
        }
    }
    let rest: Vec<usize> = (0..adj.len())
        .filter(|v| !forced.contains(v) && forced.iter().all(|&f| adj[f][*v]))
        .collect();
    let sub: Vec<Vec<bool>> = rest.iter().map(|&a| rest.iter().map(|&b| adj[a][b]).collect()).collect();
    let mut out: Vec<usize> = forced.to_vec();
    out.extend(max_clique(&sub).into_iter().map(|i| rest[i]));
    out.sort();
    Some(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub k: usize,
    pub cap: usize,
    pub candidates: usize,
    pub size: usize,
    #[serde(skip)]
    pub witness: ArcSystem,
}

/// All classes with at most `max_len` crossings and their compatibility graph.
pub struct Candidates {
    pub system: ArcSystem,
    pub adj: Vec<Vec<bool>>,
}

pub fn candidates(n: usize, k: usize, max_len: usize) -> Result<Candidates> {
    let surface = Surface::new(n)?;
    let system = ArcSystem::new(surface, enumerate_classes(surface, max_len))?;
    let m = system.len();
    let adj = (0..m)
        .map(|i| (0..m).map(|j| i != j && system.intersection(i, j) <= k).collect())
        .collect();
    Ok(Candidates { system, adj })
}

impl Candidates {
    fn result(&self, n: usize, k: usize, cap: usize, clique: Vec<usize>) -> SearchResult {
        let classes = clique.iter().map(|&i| self.system.classes()[i].clone()).collect();
        let matrix = clique
            .iter()
            .map(|&i| clique.iter().map(|&j| self.system.intersection(i, j)).collect())
            .collect();
        SearchResult {
            n,
            k,
            cap,
            candidates: self.system.len(),
            size: clique.len(),
            witness: ArcSystem::with_matrix(self.system.surface(), classes, matrix),
        }
    }
}

pub fn search_max(n: usize, k: usize, max_len: usize) -> Result<SearchResult> {
    if n < 3 {
        return input("search needs n >= 3");
    }
    let c = candidates(n, k, max_len)?;
    let clique = max_clique(&c.adj);
    Ok(c.result(n, k, max_len, clique))
}

/// Largest k-system within the cap that contains every class of `seed`.
pub fn search_max_containing(n: usize, k: usize, max_len: usize, seed: &[ArcClass]) -> Result<SearchResult> {
    if n < 3 {
        return input("search needs n >= 3");
    }
    let c = candidates(n, k, max_len)?;
    let mut forced = Vec::new();
    for s in seed {
        match c.system.classes().iter().position(|x| x == s) {
            Some(i) => forced.push(i),
            None => return input(format!("seed class {s} is not among the candidates")),
        }
    }
    match max_clique_containing(&c.adj, &forced) {
        Some(clique) => Ok(c.result(n, k, max_len, clique)),
        None => Err(Error::Domain("seed classes are not pairwise compatible".into())),
    }
}

/// Does chord `a` meet chord `b`? Points are `0..l` around a circle.
fn chords_meet(a: (usize, usize), b: (usize, usize), shared_counts: bool) -> bool {
    if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
        return shared_counts && a != b;
    }
    let inside = |x: usize| a.0 < x && x < a.1;
    inside(b.0) != inside(b.1)
}

fn erdos(l: usize, shared_counts: bool) -> Vec<(usize, usize)> {
    let chords: Vec<(usize, usize)> = (0..l).flat_map(|a| (a + 1..l).map(move |b| (a, b))).collect();
    let adj: Vec<Vec<bool>> = chords
        .iter()
        .map(|&a| chords.iter().map(|&b| chords_meet(a, b, shared_counts)).collect())
        .collect();
    max_clique(&adj).into_iter().map(|i| chords[i]).collect()
}

/// Largest set of chords on `l` circle points meeting pairwise, where chords
/// sharing an endpoint count as meeting. Returns a witness.
pub fn erdos_max_crossing(l: usize) -> Vec<(usize, usize)> {
    erdos(l, true)
}

/// Same, with only interior crossings counting.
pub fn erdos_max_crossing_strict(l: usize) -> Vec<(usize, usize)> {
    erdos(l, false)
}

/// Data of the relation lemma: arcs from `r` to `p` and to `q`, their cyclic
/// order at `r`, a relation between them and all crossing numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct RelationInstance {
    pub n: usize,
    /// Per arc: `true` if it ends at `p`, `false` if it ends at `q`.
    pub ends_at_p: Vec<bool>,
    /// Arc indices in cyclic order around `r`.
    pub order: Vec<usize>,
    /// Pairs `(alpha, beta)` with `alpha` ending at `p` and `beta` at `q`.
    pub pairs: Vec<(usize, usize)>,
    pub crossings: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub size: usize,
    pub bound: u128,
    pub within_bound: bool,
    /// First two pairs whose unions meet more than once.
    pub violation_i: Option<(usize, usize)>,
    /// First two meeting pairs whose ends around `r` do not alternate.
    pub violation_ii: Option<(usize, usize)>,
}

impl RelationReport {
    pub fn is_ok(&self) -> bool {
        self.violation_i.is_none() && self.violation_ii.is_none()
    }
}

fn consecutive(order: &[usize], member: impl Fn(usize) -> bool) -> bool {
    let m = order.len();
    let switches = (0..m).filter(|&i| member(order[i]) != member(order[(i + 1) % m])).count();
    switches <= 2
}

pub fn check_relation_conditions(inst: &RelationInstance) -> Result<RelationReport> {
    let m = inst.ends_at_p.len();
    let mut seen = vec![false; m];
    for &a in &inst.order {
        if a >= m || std::mem::replace(&mut seen[a], true) {
            return input("cyclic order is not a permutation of the arcs");
        }
    }
    if seen.iter().any(|&s| !s) {
        return input("cyclic order misses an arc");
    }
    if inst.crossings.len() != m || inst.crossings.iter().any(|row| row.len() != m) {
        return input("crossing table has the wrong shape");
    }
    for a in 0..m {
        for b in 0..m {
            if inst.crossings[a][b] != inst.crossings[b][a] {
                return input("crossing table is not symmetric");
            }
            if inst.ends_at_p[a] && !inst.ends_at_p[b] && inst.crossings[a][b] > 0 {
                return input(format!("arc {a} to p crosses arc {b} to q"));
            }
        }
    }
    if !consecutive(&inst.order, |a| inst.ends_at_p[a]) {
        return input("arcs ending at p are not consecutive around r");
    }
    for &(a, b) in &inst.pairs {
        if a >= m || b >= m || !inst.ends_at_p[a] || inst.ends_at_p[b] {
            return input(format!("pair ({a},{b}) is not an arc to p with an arc to q"));
        }
    }
    let pos: Vec<usize> = {
        let mut pos = vec![0; m];
        for (i, &a) in inst.order.iter().enumerate() {
            pos[a] = i;
        }
        pos
    };
    let meet = |x: (usize, usize), y: (usize, usize)| -> usize {
        [(x.0, y.0), (x.0, y.1), (x.1, y.0), (x.1, y.1)]
            .iter()
            .filter(|(u, v)| u != v)
            .map(|&(u, v)| inst.crossings[u][v])
            .sum()
    };
    let mut violation_i = None;
    let mut violation_ii = None;
    for i in 0..inst.pairs.len() {
        for j in i + 1..inst.pairs.len() {
            let (x, y) = (inst.pairs[i], inst.pairs[j]);
            let c = meet(x, y);
            if c > 1 && violation_i.is_none() {
                violation_i = Some((i, j));
            }
            if c >= 1 && x.0 != y.0 && x.1 != y.1 && violation_ii.is_none() {
                let alternate = crate::model::chords_cross((pos[x.0], pos[x.1]), (pos[y.0], pos[y.1]));
                if !alternate {
                    violation_ii = Some((i, j));
                }
            }
        }
    }
    let bound = binomial(inst.n as u64 - 1, 2);
    Ok(RelationReport {
        size: inst.pairs.len(),
        bound,
        within_bound: inst.pairs.len() as u128 <= bound,
        violation_i,
        violation_ii,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub image: ArcClass,
    pub members: Vec<ArcClass>,
    pub disjoint_pairs: usize,
    pub identity_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberAnalysis {
    pub puncture: Puncture,
    pub fibers: Vec<FiberReport>,
    pub system_size: usize,
    pub image_size: usize,
    pub bound: u128,
    pub within_bound: bool,
}

impl FiberAnalysis {
    pub fn identity_holds(&self) -> bool {
        self.fibers.iter().all(|f| f.identity_holds)
    }
}

fn fibers_of(sys: &ArcSystem, r: Puncture) -> Result<BTreeMap<ArcClass, Vec<usize>>> {
    let mut fibers: BTreeMap<ArcClass, Vec<usize>> = BTreeMap::new();
    for (i, c) in sys.classes().iter().enumerate() {
        fibers.entry(c.forget_puncture(r)?).or_default().push(i);
    }
    Ok(fibers)
}

fn disjoint_pairs(sys: &ArcSystem, members: &[usize]) -> usize {
    let mut d = 0;
    for (x, &a) in members.iter().enumerate() {
        for &b in &members[x + 1..] {
            if sys.intersection(a, b) == 0 {
                d += 1;
            }
        }
    }
    d
}

pub fn fiber_analysis(sys: &ArcSystem, r: Puncture) -> Result<FiberAnalysis> {
    let surface = sys.surface();
    surface.check_inner(r)?;
    let fibers = fibers_of(sys, r)?;
    let reports = fibers
        .iter()
        .map(|(image, members)| {
            let d = disjoint_pairs(sys, members);
            FiberReport {
                image: image.clone(),
                members: members.iter().map(|&i| sys.classes()[i].clone()).collect(),
                disjoint_pairs: d,
                identity_holds: members.len() == d + 1,
            }
        })
        .collect();
    let bound = binomial(surface.n() as u64 - 1, 2);
    let diff = sys.len() - fibers.len();
    Ok(FiberAnalysis {
        puncture: r,
        fibers: reports,
        system_size: sys.len(),
        image_size: fibers.len(),
        bound,
        within_bound: diff as u128 <= bound,
    })
}

/// Adds arcs to a 2-system until every fiber of forgetting `r` has exactly
/// one more member than disjoint pairs. Each added class is disjoint from
/// an intersecting pair of its fiber, maps to the same class, and meets
/// every arc of the system at most twice. Candidates have at most `cap`
/// crossings with the circle.
pub fn extend_fibers(sys: &ArcSystem, r: Puncture, cap: usize) -> Result<ArcSystem> {
    let surface = sys.surface();
    surface.check_inner(r)?;
    if let Verdict::Violation { reason, .. } = verify_k_system(sys, 2) {
        return input(format!("not a 2-system: {reason}"));
    }
    let pool = enumerate_classes(surface, cap);
    let mut sys = sys.clone();
    loop {
        let fibers = fibers_of(&sys, r)?;
        let Some((image, members)) = fibers
            .iter()
            .find(|(_, m)| m.len() > disjoint_pairs(&sys, m) + 1)
        else {
            return Ok(sys);
        };
        let deficit = members.len() - disjoint_pairs(&sys, members) - 1;
        let added = extension_candidate(&sys, &pool, r, image, members, deficit)?;
        let mut classes = sys.classes().to_vec();
        classes.push(added);
        sys = ArcSystem::new(surface, classes)?;
    }
}

fn extension_candidate(
    sys: &ArcSystem,
    pool: &[ArcClass],
    r: Puncture,
    image: &ArcClass,
    members: &[usize],
    deficit: usize,
) -> Result<ArcClass> {
    use crate::geometry::intersection_number;
    let cs = sys.classes();
    // Intersecting pairs with no common disjoint partner in the fiber.
    let open: Vec<(usize, usize)> = members
        .iter()
        .enumerate()
        .flat_map(|(x, &a)| members[x + 1..].iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| sys.intersection(a, b) > 0)
        .filter(|&(a, b)| {
            !members
                .iter()
                .any(|&c| c != a && c != b && sys.intersection(a, c) == 0 && sys.intersection(b, c) == 0)
        })
        .collect();
    for &(a, b) in &open {
        for cand in pool {
            if cs.contains(cand) || cand.forget_puncture(r)? != *image {
                continue;
            }
            let meets: Vec<usize> = cs.iter().map(|c| intersection_number(cand, c)).collect::<Result<_>>()?;
            if meets[a] != 0 || meets[b] != 0 || meets.iter().any(|&x| x > 2) {
                continue;
            }
            let new_disjoint = members.iter().filter(|&&m| meets[m] == 0).count();
            // One more member and `new_disjoint` more disjoint pairs.
            if (2..=deficit + 1).contains(&new_disjoint) {
                return Ok(cand.clone());
            }
        }
    }
    Err(Error::Exhausted(format!(
        "no admissible extension of the fiber over {image} within the length cap"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_small_graphs() {
        let k4: Vec<Vec<bool>> = (0..4).map(|i| (0..4).map(|j| i != j).collect()).collect();
        assert_eq!(max_clique(&k4), vec![0, 1, 2, 3]);
        // A 5-cycle has clique number 2.
        let c5: Vec<Vec<bool>> = (0..5usize)
            .map(|i| (0..5usize).map(|j| (i + 1) % 5 == j || (j + 1) % 5 == i).collect())
            .collect();
        assert_eq!(max_clique(&c5).len(), 2);
        assert_eq!(max_clique_containing(&c5, &[0, 2]), None);
    }

    #[test]
    fn erdos_values() {
        for l in 3..=8 {
            assert_eq!(erdos_max_crossing(l).len(), l);
            assert_eq!(erdos_max_crossing_strict(l).len(), l / 2);
        }
        assert_eq!(erdos_max_crossing(2).len(), 1);
    }
}
