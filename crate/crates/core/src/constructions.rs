//! Explicit extremal systems: the maximal 2-system built from quartic graphs
//! and two-bend staircase arcs, and a maximal 0-system of separating arcs.
//!
//! The plane picture has `p` at `x = -1`, `r_i` at `x = i - 1/2` and `q` at
//! infinity, so an integer `m` in `[0, n-2]` lies in gap `G_{m+1}`.

use crate::error::{domain, Result};
use crate::model::{ArcClass, Side, Surface};
use crate::system::ArcSystem;

/// The ray to the left of `p`, pushed into the upper disk.
pub fn alpha_left(surface: Surface) -> ArcClass {
    ArcClass::trivial(surface)
}

/// Graph of `(x+1)(x-a)(x-b)(x-c)` on `(-1, inf)`. Just right of `-1` the
/// quartic is negative; it changes sign exactly at its simple roots.
pub fn alpha_abc(surface: Surface, a: usize, b: usize, c: usize) -> Result<ArcClass> {
    let top = surface.n() as isize - 2;
    let (ai, bi, ci) = (a as isize, b as isize, c as isize);
    let generic = ai < bi && bi < ci && ci <= top;
    let double = 0 < ai && ai < bi && bi == ci && ci == top;
    if !generic && !double {
        return domain(format!("({a},{b},{c}) is not an admissible root triple for n = {}", surface.n()));
    }
    let roots: Vec<usize> = if double { vec![a] } else { vec![a, b, c] };
    let seq: Vec<usize> = roots.iter().map(|m| m + 1).collect();
    ArcClass::reduce(surface, Side::Lower, &seq)
}

/// Staircase arc: up from `p`, down between `r_i` and `r_{i+1}`, back up
/// left of `p`, and down to `q` between `r_{j-1}` and `r_j`.
pub fn alpha_ij(surface: Surface, i: usize, j: usize) -> Result<ArcClass> {
    if !(1 <= i && i < j && j <= surface.n().saturating_sub(2)) {
        return domain(format!("({i},{j}) is not an admissible pair for n = {}", surface.n()));
    }
    ArcClass::reduce(surface, Side::Upper, &[i + 1, 0, j])
}

/// The four families of the maximal 2-system, with their parameters.
#[derive(Clone, Debug)]
pub struct TwoSystemFamilies {
    pub left: ArcClass,
    pub doubles: Vec<((usize, usize, usize), ArcClass)>,
    pub triples: Vec<((usize, usize, usize), ArcClass)>,
    pub pairs: Vec<((usize, usize), ArcClass)>,
}

impl TwoSystemFamilies {
    pub fn all(&self) -> Vec<ArcClass> {
        let mut out = vec![self.left.clone()];
        out.extend(self.doubles.iter().map(|(_, c)| c.clone()));
        out.extend(self.triples.iter().map(|(_, c)| c.clone()));
        out.extend(self.pairs.iter().map(|(_, c)| c.clone()));
        out
    }
}

pub fn two_system_families(n: usize) -> Result<TwoSystemFamilies> {
    if n < 3 {
        return domain("the construction needs n >= 3");
    }
    let s = Surface::new(n)?;
    let top = n - 2;
    let mut doubles = Vec::new();
    for a in 1..top {
        doubles.push(((a, top, top), alpha_abc(s, a, top, top)?));
    }
    let mut triples = Vec::new();
    for a in 0..=top {
        for b in a + 1..=top {
            for c in b + 1..=top {
                triples.push(((a, b, c), alpha_abc(s, a, b, c)?));
            }
        }
    }
    let mut pairs = Vec::new();
    for i in 1..=top {
        for j in i + 1..=top {
            pairs.push(((i, j), alpha_ij(s, i, j)?));
        }
    }
    Ok(TwoSystemFamilies { left: alpha_left(s), doubles, triples, pairs })
}

/// The 2-system of size `C(n,3)`.
pub fn max_two_system(n: usize) -> Result<ArcSystem> {
    let fam = two_system_families(n)?;
    ArcSystem::new(Surface::new(n)?, fam.all())
}

/// `n - 2` disjoint arcs: the trivial arc and, for `1 <= k <= n-3`, the arc
/// through the lower disk crossing `G_{k+1}`, which separates `r_1..r_k`
/// from `r_{k+1}..r_{n-2}`.
pub fn zero_system(n: usize) -> Result<ArcSystem> {
    if n < 3 {
        return domain("the 0-system needs n >= 3");
    }
    let s = Surface::new(n)?;
    let mut classes = vec![ArcClass::trivial(s)];
    for k in 1..=n - 3 {
        classes.push(ArcClass::reduce(s, Side::Lower, &[k + 1])?);
    }
    ArcSystem::new(s, classes)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Both sides of `1 + (n-3) + C(n-1,3) + C(n-2,2) = C(n,3)`.
pub fn count_identity(n: u64) -> (u128, u128) {
    let lhs = 1 + (n - 3) as u128 + binomial(n - 1, 3) + binomial(n - 2, 2);
    (lhs, binomial(n, 3))
}
