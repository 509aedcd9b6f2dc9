//! The combinatorial surface model.
//!
//! The `n`-punctured sphere is cut along a reference circle passing through
//! every puncture, in the cyclic order `q, p, r_1, ..., r_{n-2}`. Puncture
//! positions on the circle are `q = 0`, `p = 1` and `r_k = k + 1`; gap `G_g` is
//! the open circle segment between positions `g` and `g + 1 (mod n)`. The two
//! complementary disks are called `Upper` and `Lower`.
//!
//! A simple arc in minimal position with the circle is recorded by the disk it
//! enters first and the ordered list of gaps it crosses.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, input, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surface {
    n: usize,
}

impl Surface {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return domain(format!("a surface needs at least 2 punctures, got {n}"));
        }
        Ok(Surface { n })
    }

    /// Number of punctures, which is also the number of gaps.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn position(&self, x: Puncture) -> usize {
        match x {
            Puncture::Q => 0,
            Puncture::P => 1,
            Puncture::R(k) => k + 1,
        }
    }

    pub fn puncture_at(&self, pos: usize) -> Puncture {
        match pos % self.n {
            0 => Puncture::Q,
            1 => Puncture::P,
            k => Puncture::R(k - 1),
        }
    }

    pub fn punctures(&self) -> impl Iterator<Item = Puncture> + '_ {
        (0..self.n).map(|pos| self.puncture_at(pos))
    }

    /// The punctures other than `p` and `q`.
    pub fn inner_punctures(&self) -> impl Iterator<Item = Puncture> {
        (1..self.n.saturating_sub(1)).map(Puncture::R)
    }

    /// Circle positions of the two punctures bounding gap `g`.
    pub fn gap_ends(&self, g: usize) -> (usize, usize) {
        (g, (g + 1) % self.n)
    }

    /// Whether the puncture at circle position `pos` is an endpoint of gap `g`.
    pub fn gap_touches(&self, g: usize, pos: usize) -> bool {
        let (a, b) = self.gap_ends(g);
        a == pos || b == pos
    }

    pub fn check_gap(&self, g: usize) -> Result<()> {
        if g < self.n {
            Ok(())
        } else {
            input(format!("gap index {g} out of range for n = {}", self.n))
        }
    }

    pub fn check_inner(&self, r: Puncture) -> Result<()> {
        match r {
            Puncture::R(k) if k >= 1 && k + 2 <= self.n => Ok(()),
            Puncture::R(k) => input(format!("puncture r{k} does not exist for n = {}", self.n)),
            other => domain(format!("puncture {other} is an endpoint, expected some r_k")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Puncture {
    Q,
    P,
    /// `r_k`, 1-based.
    R(usize),
}

impl fmt::Display for Puncture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Puncture::P => write!(f, "p"),
            Puncture::Q => write!(f, "q"),
            Puncture::R(k) => write!(f, "r{k}"),
        }
    }
}

impl FromStr for Puncture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "p" => Ok(Puncture::P),
            "q" => Ok(Puncture::Q),
            t => t
                .strip_prefix('r')
                .and_then(|k| k.parse().ok())
                .map(Puncture::R)
                .ok_or_else(|| Error::Input(format!("bad puncture label {s:?}"))),
        }
    }
}

impl Serialize for Puncture {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Puncture {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "U")]
    Upper,
    #[serde(rename = "L")]
    Lower,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Upper => Side::Lower,
            Side::Lower => Side::Upper,
        }
    }

    /// The side reached after crossing the circle `k` times.
    pub fn after(self, k: usize) -> Side {
        if k % 2 == 0 {
            self
        } else {
            self.flip()
        }
    }

    pub fn index(self) -> usize {
        match self {
            Side::Upper => 0,
            Side::Lower => 1,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Upper => "U",
            Side::Lower => "L",
        })
    }
}

/// Free reduction plus end stripping for a path between two circle positions.
///
/// Works for any pair of endpoints; `ArcClass` uses it with `p -> q`.
pub(crate) fn reduce_path(
    surface: Surface,
    start: usize,
    end: usize,
    side: Side,
    seq: &[usize],
) -> (Side, Vec<usize>) {
    let mut out: Vec<usize> = Vec::with_capacity(seq.len());
    for &g in seq {
        if out.last() == Some(&g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    let mut side = side;
    // Stripping one end can expose the other, so alternate until stable.
    loop {
        let before = out.len();
        while let Some(&g) = out.first() {
            if !surface.gap_touches(g, start) {
                break;
            }
            out.remove(0);
            side = side.flip();
        }
        while let Some(&g) = out.last() {
            if !surface.gap_touches(g, end) {
                break;
            }
            out.pop();
        }
        if out.len() == before {
            break;
        }
    }
    let n = surface.n();
    if out.is_empty() && ((start + 1) % n == end || (end + 1) % n == start) {
        side = Side::Upper;
    }
    (side, out)
}

/// One endpoint of a chord: a puncture or the `i`-th crossing of the strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    Puncture(usize),
    Point(usize),
}

struct Realizer<'a> {
    seq: &'a [usize],
    start: usize,
    end: usize,
    side: Side,
    orders: Vec<Vec<usize>>,
    chords: [Vec<(End, End)>; 2],
}

impl Realizer<'_> {
    fn key(&self, e: End) -> (usize, usize) {
        match e {
            End::Puncture(pos) => (pos, 0),
            End::Point(i) => {
                let g = self.seq[i];
                let rank = self.orders[g].iter().position(|&j| j == i).expect("placed point");
                (g, rank + 1)
            }
        }
    }

    fn crosses(&self, a: (End, End), b: (End, End)) -> bool {
        chords_cross(
            (self.key(a.0), self.key(a.1)),
            (self.key(b.0), self.key(b.1)),
        )
    }

    fn fits(&self, disk: usize, chord: (End, End)) -> bool {
        self.chords[disk].iter().all(|&c| !self.crosses(c, chord))
    }

    fn search(&mut self, i: usize) -> bool {
        let prev = if i == 0 { End::Puncture(self.start) } else { End::Point(i - 1) };
        let disk = self.side.after(i).index();
        if i == self.seq.len() {
            return self.fits(disk, (prev, End::Puncture(self.end)));
        }
        let g = self.seq[i];
        for slot in 0..=self.orders[g].len() {
            self.orders[g].insert(slot, i);
            let chord = (prev, End::Point(i));
            if self.fits(disk, chord) {
                self.chords[disk].push(chord);
                if self.search(i + 1) {
                    return true;
                }
                self.chords[disk].pop();
            }
            self.orders[g].remove(slot);
        }
        false
    }
}

/// Strict interleaving test for two chords given by circle keys.
/// Chords sharing an endpoint never cross.
pub(crate) fn chords_cross<K: Ord + Copy>(a: (K, K), b: (K, K)) -> bool {
    if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
        return false;
    }
    let (lo, hi) = if a.0 < a.1 { (a.0, a.1) } else { (a.1, a.0) };
    let inside = |k: K| lo < k && k < hi;
    inside(b.0) != inside(b.1)
}

/// Backtracking search for per-gap orders that embed a path. Returns, per gap,
/// the crossing indices in circle order; the first solution found in the
/// depth-first search over insertion slots (the lexicographically least
/// insertion vector).
pub(crate) fn realize_path(
    surface: Surface,
    start: usize,
    end: usize,
    side: Side,
    seq: &[usize],
) -> Option<Vec<Vec<usize>>> {
    let mut r = Realizer {
        seq,
        start,
        end,
        side,
        orders: vec![Vec::new(); surface.n()],
        chords: [Vec::new(), Vec::new()],
    };
    r.search(0).then_some(r.orders)
}

/// Homotopy class of a simple arc from `p` to `q`, in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcClass {
    surface: Surface,
    side: Side,
    seq: Vec<usize>,
}

impl ArcClass {
    /// Normal form of an arbitrary cutting sequence.
    pub fn reduce(surface: Surface, side: Side, seq: &[usize]) -> Result<ArcClass> {
        for &g in seq {
            surface.check_gap(g)?;
        }
        let p = surface.position(Puncture::P);
        let q = surface.position(Puncture::Q);
        let (side, seq) = reduce_path(surface, p, q, side, seq);
        Ok(ArcClass { surface, side, seq })
    }

    /// Builds a class that must already be reduced; used by parsers and tests.
    pub fn from_reduced(surface: Surface, side: Side, seq: Vec<usize>) -> Result<ArcClass> {
        let c = ArcClass::reduce(surface, side, &seq)?;
        if c.seq != seq || c.side != side {
            return input(format!("{side}{seq:?} is not in normal form (normal form {c})"));
        }
        Ok(c)
    }

    /// The class crossing no gap, i.e. the segment of the circle from `p` to `q`.
    pub fn trivial(surface: Surface) -> ArcClass {
        ArcClass { surface, side: Side::Upper, seq: Vec::new() }
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    /// The disk from which the arc arrives at `q`.
    pub fn arrival_side(&self) -> Side {
        self.side.after(self.seq.len())
    }

    pub fn is_realizable(&self) -> bool {
        self.realization().is_some()
    }

    pub(crate) fn realization(&self) -> Option<Vec<Vec<usize>>> {
        let s = self.surface;
        realize_path(s, s.position(Puncture::P), s.position(Puncture::Q), self.side, &self.seq)
    }

    /// Image of the class after forgetting the inner puncture `which`.
    pub fn forget_puncture(&self, which: Puncture) -> Result<ArcClass> {
        self.surface.check_inner(which)?;
        let Puncture::R(k) = which else { unreachable!() };
        let seq: Vec<usize> = self
            .seq
            .iter()
            .map(|&g| if g > k { g - 1 } else { g })
            .collect();
        let surface = Surface::new(self.surface.n() - 1)?;
        ArcClass::reduce(surface, self.side, &seq)
    }

    /// Image under the reflection of the sphere that swaps `p` with `q` and
    /// `r_k` with `r_{n-1-k}`, keeping each disk; the arc is then read from
    /// `p` again.
    pub fn reflect(&self) -> ArcClass {
        let n = self.surface.n();
        let seq = self.seq.iter().rev().map(|&g| (n - g) % n).collect();
        let side = if self.seq.is_empty() { Side::Upper } else { self.arrival_side() };
        ArcClass { surface: self.surface, side, seq }
    }

    /// Occurrence counts of the gaps `G_2, ..., G_{n-2}`; gap `G_{k+1}` is the
    /// segment joining `r_k` and `r_{k+1}`.
    pub fn gamma_profile(&self) -> GammaProfile {
        let n = self.surface.n();
        let len = n.saturating_sub(3);
        let mut counts = vec![0; len];
        for &g in &self.seq {
            if g >= 2 && g <= n - 2 {
                counts[g - 2] += 1;
            }
        }
        GammaProfile { counts }
    }
}

impl fmt::Display for ArcClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.side)?;
        for (i, g) in self.seq.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaProfile {
    pub counts: Vec<usize>,
}

/// All reduced, realizable classes with at most `max_len` crossings, ordered
/// lexicographically by `(seq, side)`.
pub fn enumerate_classes(surface: Surface, max_len: usize) -> Vec<ArcClass> {
    let n = surface.n();
    let p = surface.position(Puncture::P);
    let q = surface.position(Puncture::Q);
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 0..n {
                if w.last() == Some(&g) || (w.is_empty() && surface.gap_touches(g, p)) {
                    continue;
                }
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let mut out: Vec<ArcClass> = Vec::new();
    for w in words {
        if w.last().is_some_and(|&g| surface.gap_touches(g, q)) {
            continue;
        }
        let sides: &[Side] = if w.is_empty() { &[Side::Upper] } else { &[Side::Upper, Side::Lower] };
        for &side in sides {
            let c = ArcClass { surface, side, seq: w.clone() };
            if c.is_realizable() {
                out.push(c);
            }
        }
    }
    out.sort_by(|a, b| (&a.seq, a.side).cmp(&(&b.seq, b.side)));
    out
}

/// Serialized record `{n, side, seq}`.
#[derive(Serialize, Deserialize)]
struct ArcRecord {
    n: usize,
    side: Side,
    seq: Vec<usize>,
}

impl Serialize for ArcClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ArcRecord { n: self.surface.n(), side: self.side, seq: self.seq.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ArcClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ArcRecord::deserialize(d)?;
        let surface = Surface::new(r.n).map_err(serde::de::Error::custom)?;
        ArcClass::from_reduced(surface, r.side, r.seq).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize) -> Surface {
        Surface::new(n).unwrap()
    }

    #[test]
    fn gap_layout() {
        let s5 = s(5);
        assert_eq!(s5.gap_ends(0), (0, 1));
        assert_eq!(s5.gap_ends(4), (4, 0));
        let p = s5.position(Puncture::P);
        let q = s5.position(Puncture::Q);
        let at_p: Vec<_> = (0..5).filter(|&g| s5.gap_touches(g, p)).collect();
        let at_q: Vec<_> = (0..5).filter(|&g| s5.gap_touches(g, q)).collect();
        assert_eq!(at_p, vec![0, 1]);
        assert_eq!(at_q, vec![0, 4]);
        assert_eq!(s5.puncture_at(3), Puncture::R(2));
    }

    #[test]
    fn reduce_examples() {
        let c = ArcClass::reduce(s(4), Side::Upper, &[0]).unwrap();
        assert_eq!((c.side(), c.seq()), (Side::Upper, &[][..]));
        let c = ArcClass::reduce(s(4), Side::Lower, &[]).unwrap();
        assert_eq!(c.side(), Side::Upper);
        let c = ArcClass::reduce(s(5), Side::Upper, &[2, 2, 3]).unwrap();
        assert_eq!((c.side(), c.seq()), (Side::Upper, &[3][..]));
        assert!(ArcClass::reduce(s(4), Side::Upper, &[4]).is_err());
    }

    #[test]
    fn reduce_strips_both_ends() {
        // Front strip toggles the side once per removed gap.
        let c = ArcClass::reduce(s(5), Side::Upper, &[1, 2, 4]).unwrap();
        assert_eq!((c.side(), c.seq()), (Side::Lower, &[2][..]));
    }

    #[test]
    fn realizability_examples() {
        let bad = ArcClass::from_reduced(s(3), Side::Upper, vec![2, 1]);
        // [2, 1] ends in G_1 which is not adjacent to q for n = 3, so it is reduced.
        let bad = bad.unwrap();
        assert!(!bad.is_realizable());
        assert!(ArcClass::from_reduced(s(4), Side::Upper, vec![2]).unwrap().is_realizable());
        assert!(ArcClass::from_reduced(s(5), Side::Upper, vec![2, 0, 3]).unwrap().is_realizable());
    }

    #[test]
    fn enumerate_small() {
        let c = enumerate_classes(s(3), 6);
        assert_eq!(c, vec![ArcClass::trivial(s(3))]);
        assert_eq!(enumerate_classes(s(2), 0).len(), 1);
        assert_eq!(enumerate_classes(s(2), 5).len(), 1);
    }

    #[test]
    fn forget_examples() {
        let a13 = ArcClass::from_reduced(s(5), Side::Upper, vec![2, 0, 3]).unwrap();
        let f = a13.forget_puncture(Puncture::R(2)).unwrap();
        assert_eq!(f.surface().n(), 4);
        assert_eq!((f.side(), f.seq()), (Side::Upper, &[2, 0, 2][..]));
        let t = ArcClass::trivial(s(4)).forget_puncture(Puncture::R(1)).unwrap();
        assert_eq!(t, ArcClass::trivial(s(3)));
        let c = ArcClass::from_reduced(s(4), Side::Upper, vec![2]).unwrap();
        let f = c.forget_puncture(Puncture::R(2)).unwrap();
        assert!(f.seq().is_empty());
        assert!(a13.forget_puncture(Puncture::P).is_err());
        assert!(a13.forget_puncture(Puncture::Q).is_err());
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(ArcClass::trivial(s(5)).gamma_profile().counts, vec![0, 0]);
        let a13 = ArcClass::from_reduced(s(5), Side::Upper, vec![2, 0, 3]).unwrap();
        assert_eq!(a13.gamma_profile().counts, vec![1, 1]);
        let a144 = ArcClass::from_reduced(s(5), Side::Lower, vec![2]).unwrap();
        assert_eq!(a144.gamma_profile().counts, vec![1, 0]);
    }

    #[test]
    fn serde_record() {
        let a = ArcClass::from_reduced(s(5), Side::Upper, vec![2, 0, 3]).unwrap();
        let t = serde_json::to_string(&a).unwrap();
        assert_eq!(t, r#"{"n":5,"side":"U","seq":[2,0,3]}"#);
        let b: ArcClass = serde_json::from_str(&t).unwrap();
        assert_eq!(a, b);
        assert!(serde_json::from_str::<ArcClass>(r#"{"n":5,"side":"U","seq":[2,2]}"#).is_err());
    }
}
