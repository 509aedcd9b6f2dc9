//! Strands drawn in the two-disk chord model, stored as per-gap orders of
//! their crossing points with the reference circle.

use num_rational::Ratio;

use crate::model::{chords_cross, realize_path, reduce_path, ArcClass, Puncture, Side, Surface};

/// A path between two punctures, recorded by its cutting sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Strand {
    pub start: usize,
    pub end: usize,
    pub side: Side,
    pub seq: Vec<usize>,
}

impl Strand {
    pub fn from_class(c: &ArcClass) -> Strand {
        let s = c.surface();
        Strand {
            start: s.position(Puncture::P),
            end: s.position(Puncture::Q),
            side: c.side(),
            seq: c.seq().to_vec(),
        }
    }

    pub fn reduced(surface: Surface, start: usize, end: usize, side: Side, seq: &[usize]) -> Strand {
        let (side, seq) = reduce_path(surface, start, end, side, seq);
        Strand { start, end, side, seq }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Disk containing chord `k` (chord `k` ends at crossing `k`).
    pub fn chord_side(&self, k: usize) -> Side {
        self.side.after(k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Puncture(usize),
    /// Crossing `idx` of strand `strand`.
    Point(usize, usize),
}

/// Several strands drawn simultaneously: every crossing point has a slot in
/// the linear order of its gap.
#[derive(Clone, Debug)]
pub struct Config {
    pub surface: Surface,
    pub strands: Vec<Strand>,
    /// Per gap, the crossing points in circle order.
    pub orders: Vec<Vec<(usize, usize)>>,
    rank: Vec<Vec<usize>>,
}

impl Config {
    pub fn new(surface: Surface, strands: Vec<Strand>, orders: Vec<Vec<(usize, usize)>>) -> Config {
        let mut c = Config { surface, strands: separate_empty(strands), orders, rank: Vec::new() };
        c.reindex();
        c
    }

    fn reindex(&mut self) {
        self.rank = self.strands.iter().map(|s| vec![0; s.len()]).collect();
        for order in &self.orders {
            for (r, &(s, i)) in order.iter().enumerate() {
                self.rank[s][i] = r;
            }
        }
    }

    /// Each strand drawn with its own realization, strands stacked in index
    /// order inside every gap. Returns `None` if a strand is not simple.
    pub fn stacked(surface: Surface, strands: Vec<Strand>) -> Option<Config> {
        let mut orders = vec![Vec::new(); surface.n()];
        for (s, st) in strands.iter().enumerate() {
            let own = realize_path(surface, st.start, st.end, st.side, &st.seq)?;
            for (g, pts) in own.into_iter().enumerate() {
                orders[g].extend(pts.into_iter().map(|i| (s, i)));
            }
        }
        Some(Config::new(surface, separate_empty(strands), orders))
    }

    /// Geodesic drawing: the sphere is the double of an ideal polygon and
    /// every strand is replaced by its geodesic, so all pairs of strands are
    /// in minimal position at once. Points of a gap are sorted by the exact
    /// height at which the lifted geodesic crosses the lifted gap.
    pub fn canonical(surface: Surface, strands: Vec<Strand>) -> Config {
        let strands = separate_empty(strands);
        // Homotopic copies share a geodesic; push copy `s` off it by an
        // amount growing with `s`, always to the same side of the strand.
        let mut keyed: Vec<Vec<(Q, isize, (usize, usize))>> = vec![Vec::new(); surface.n()];
        for (s, st) in strands.iter().enumerate() {
            for (i, h) in crossing_heights(surface, st).into_iter().enumerate() {
                let shift = if st.chord_side(i) == Side::Upper { s as isize } else { -(s as isize) };
                keyed[st.seq[i]].push((h, shift, (s, i)));
            }
        }
        let orders = keyed
            .into_iter()
            .map(|mut v| {
                v.sort();
                v.into_iter().map(|(_, _, pt)| pt).collect()
            })
            .collect();
        Config::new(surface, strands, orders)
    }

    /// Circle key of a chord end: `(position or gap, 0 for a puncture or 1 + rank)`.
    pub fn key(&self, e: End) -> (usize, usize) {
        match e {
            End::Puncture(pos) => (pos, 0),
            End::Point(s, i) => (self.strands[s].seq[i], self.rank[s][i] + 1),
        }
    }

    pub fn rank_of(&self, s: usize, i: usize) -> usize {
        self.rank[s][i]
    }

    /// Endpoints of chord `k` of strand `s`, in strand direction.
    pub fn chord(&self, s: usize, k: usize) -> (End, End) {
        let st = &self.strands[s];
        let a = if k == 0 { End::Puncture(st.start) } else { End::Point(s, k - 1) };
        let b = if k == st.len() { End::Puncture(st.end) } else { End::Point(s, k) };
        (a, b)
    }

    pub fn chords_cross(&self, s: usize, k: usize, t: usize, l: usize) -> bool {
        if self.strands[s].chord_side(k) != self.strands[t].chord_side(l) {
            return false;
        }
        let (a, b) = self.chord(s, k);
        let (c, d) = self.chord(t, l);
        chords_cross((self.key(a), self.key(b)), (self.key(c), self.key(d)))
    }

    /// Number of crossings between strands `s` and `t` (or self-crossings if equal).
    pub fn crossings(&self, s: usize, t: usize) -> usize {
        let ls = self.strands[s].len();
        let lt = self.strands[t].len();
        let mut count = 0;
        for k in 0..=ls {
            let l0 = if s == t { k + 1 } else { 0 };
            for l in l0..=lt {
                if self.chords_cross(s, k, t, l) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn total_crossings(&self) -> usize {
        let m = self.strands.len();
        (0..m).flat_map(|s| (s..m).map(move |t| (s, t))).map(|(s, t)| self.crossings(s, t)).sum()
    }

    /// Removes empty bigons and half-bigons between strands `a` and `b` until
    /// none is left. Returns the crossing counts observed after each removal.
    pub fn tighten_pair(&mut self, a: usize, b: usize) -> Vec<usize> {
        let mut trace = vec![self.crossings(a, b)];
        while let Some(pairs) = self.find_empty_region(a, b) {
            for &(x, y) in &pairs {
                let g = self.strands[x.0].seq[x.1];
                let rx = self.rank[x.0][x.1];
                let ry = self.rank[y.0][y.1];
                self.orders[g].swap(rx, ry);
                self.rank[x.0][x.1] = ry;
                self.rank[y.0][y.1] = rx;
            }
            let now = self.crossings(a, b);
            assert!(now < *trace.last().unwrap(), "region removal must decrease crossings");
            trace.push(now);
        }
        trace
    }

    /// Looks for an empty bigon or half-bigon between strands `a` and `b`.
    /// On success returns the pairs of adjacent circle points the region
    /// passes through; swapping each pair removes the region.
    pub fn find_empty_region(&self, a: usize, b: usize) -> Option<Vec<((usize, usize), (usize, usize))>> {
        let la = self.strands[a].len();
        let lb = self.strands[b].len();
        for k in 0..=la {
            for l in 0..=lb {
                if !self.chords_cross(a, k, b, l) {
                    continue;
                }
                for fa in [true, false] {
                    for fb in [true, false] {
                        if let Some(p) = self.walk(a, k, fa, b, l, fb) {
                            return Some(p);
                        }
                    }
                }
            }
        }
        None
    }

    /// Follows strands `a` and `b` away from the crossing of chords `k` and `l`
    /// while they stay parallel and adjacent.
    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        a: usize,
        mut k: usize,
        fa: bool,
        b: usize,
        mut l: usize,
        fb: bool,
    ) -> Option<Vec<((usize, usize), (usize, usize))>> {
        let far = |s: usize, chord: usize, fwd: bool| {
            let (x, y) = self.chord(s, chord);
            if fwd {
                y
            } else {
                x
            }
        };
        let mut pairs = Vec::new();
        loop {
            match (far(a, k, fa), far(b, l, fb)) {
                (End::Puncture(x), End::Puncture(y)) => {
                    return (x == y && !pairs.is_empty()).then_some(pairs);
                }
                (End::Point(_, i), End::Point(_, j)) => {
                    let ga = self.strands[a].seq[i];
                    let gb = self.strands[b].seq[j];
                    if ga != gb || self.rank[a][i].abs_diff(self.rank[b][j]) != 1 {
                        return None;
                    }
                    pairs.push(((a, i), (b, j)));
                    k = if fa { k + 1 } else { k - 1 };
                    l = if fb { l + 1 } else { l - 1 };
                    if self.chords_cross(a, k, b, l) {
                        return Some(pairs);
                    }
                }
                _ => return None,
            }
        }
    }
}

type Q = Ratio<i128>;

/// A point of the real projective line, the ideal boundary of the upper half plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Ideal {
    Finite(Q),
    Infinity,
}

/// Ideal vertex of the model polygon at circle position `pos`: `q` sits at
/// infinity and position `k >= 1` at `k - 1`.
fn vertex(pos: usize) -> Ideal {
    if pos == 0 {
        Ideal::Infinity
    } else {
        Ideal::Finite(Q::from_integer(pos as i128 - 1))
    }
}

/// Reflection of the ideal boundary in the geodesic carrying gap `g`.
fn reflect(surface: Surface, g: usize, x: Ideal) -> Ideal {
    let n = surface.n();
    let two = Q::from_integer(2);
    if g == 0 || g == n - 1 {
        let a = Q::from_integer(if g == 0 { 0 } else { n as i128 - 2 });
        match x {
            Ideal::Finite(v) => Ideal::Finite(two * a - v),
            Ideal::Infinity => Ideal::Infinity,
        }
    } else {
        let c = Q::new(2 * g as i128 - 1, 2);
        let r2 = Q::new(1, 4);
        match x {
            Ideal::Infinity => Ideal::Finite(c),
            Ideal::Finite(v) if v == c => Ideal::Infinity,
            Ideal::Finite(v) => Ideal::Finite(c + r2 / (v - c)),
        }
    }
}

/// Real coordinate after the Moebius map sending gap `g` onto the imaginary
/// axis, its first end to 0 and its second end to infinity.
fn gap_frame(surface: Surface, g: usize, x: Ideal) -> Q {
    let (a, b) = surface.gap_ends(g);
    let Ideal::Finite(v) = x else {
        // Infinity is an end of gap 0 or gap n-1 only.
        return match vertex(a) {
            Ideal::Finite(_) if b != 0 => Q::from_integer(1),
            _ => unreachable!("strand end coincides with a gap end"),
        };
    };
    match (vertex(a), vertex(b)) {
        (Ideal::Infinity, Ideal::Finite(b)) => -Q::from_integer(1) / (v - b),
        (Ideal::Finite(a), Ideal::Infinity) => v - a,
        (Ideal::Finite(a), Ideal::Finite(b)) => (v - a) / (v - b),
        (Ideal::Infinity, Ideal::Infinity) => unreachable!(),
    }
}

/// For every crossing of a reduced strand, the squared height at which its
/// geodesic crosses the gap in that gap's normalized frame.
fn crossing_heights(surface: Surface, st: &Strand) -> Vec<Q> {
    let len = st.len();
    let mut back = Vec::with_capacity(len);
    let mut x = vertex(st.start);
    for &g in &st.seq {
        back.push(x);
        x = reflect(surface, g, x);
    }
    let mut fwd = vec![Ideal::Infinity; len];
    let mut y = vertex(st.end);
    for i in (0..len).rev() {
        y = reflect(surface, st.seq[i], y);
        fwd[i] = y;
    }
    (0..len)
        .map(|i| {
            let g = st.seq[i];
            let u = gap_frame(surface, g, back[i]);
            let v = gap_frame(surface, g, fwd[i]);
            debug_assert!(u * v < Q::from_integer(0), "geodesic must cross its gap");
            -(u * v)
        })
        .collect()
}

/// Two crossing-free strands with the same ends and side would coincide; the
/// second copy is moved to the other disk.
fn separate_empty(mut strands: Vec<Strand>) -> Vec<Strand> {
    for t in 1..strands.len() {
        if !strands[t].is_empty() {
            continue;
        }
        let clash = (0..t).any(|s| {
            let (x, y) = (&strands[s], &strands[t]);
            x.is_empty()
                && x.side == y.side
                && ((x.start, x.end) == (y.start, y.end) || (x.start, x.end) == (y.end, y.start))
        });
        if clash {
            strands[t].side = strands[t].side.flip();
        }
    }
    strands
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(n: usize, side: Side, seq: &[usize]) -> ArcClass {
        ArcClass::from_reduced(Surface::new(n).unwrap(), side, seq.to_vec()).unwrap()
    }

    fn pair(a: &ArcClass, b: &ArcClass) -> Vec<Strand> {
        vec![Strand::from_class(a), Strand::from_class(b)]
    }

    #[test]
    fn canonical_single_strand_is_simple() {
        let c = class(5, Side::Upper, &[2, 0, 3]);
        let cfg = Config::canonical(c.surface(), vec![Strand::from_class(&c)]);
        assert_eq!(cfg.crossings(0, 0), 0);
    }

    #[test]
    fn trivial_copies_are_separated() {
        let t = ArcClass::trivial(Surface::new(4).unwrap());
        let cfg = Config::canonical(t.surface(), pair(&t, &t));
        assert_ne!(cfg.strands[0].side, cfg.strands[1].side);
        assert_eq!(cfg.crossings(0, 1), 0);
    }

    #[test]
    fn tighten_reaches_known_counts() {
        let s = Surface::new(5).unwrap();
        let a13 = class(5, Side::Upper, &[2, 0, 3]);
        let triv = ArcClass::trivial(s);
        let mut cfg = Config::stacked(s, pair(&a13, &triv)).unwrap();
        let trace = cfg.tighten_pair(0, 1);
        assert_eq!(*trace.last().unwrap(), 1);
        let mut same = Config::stacked(s, pair(&a13, &a13)).unwrap();
        assert_eq!(*same.tighten_pair(0, 1).last().unwrap(), 0);
    }
}
