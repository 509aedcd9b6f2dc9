use arcsys::constructions::{alpha_abc, alpha_ij, max_two_system, two_system_families, zero_system};
use arcsys::geometry::{complement_regions, gamma, intersection_number, strand_crossings, RegionKind, Strand};
use arcsys::{ArcClass, Side, Surface};

fn binom3(n: usize) -> usize {
    n * (n - 1) * (n - 2) / 6
}

#[test]
fn two_system_sizes_and_bounds() {
    for n in 3..=7 {
        let sys = max_two_system(n).unwrap();
        assert_eq!(sys.len(), binom3(n));
        assert!(sys.max_intersection() <= 2);
        let mut sorted = sys.classes().to_vec();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), sys.len(), "repeated class at n = {n}");
    }
}

/// Expected crossings of two staircase arcs. Pairs with equal `i` are
/// ordered by `j`, the only reading of the case split that is symmetric.
fn staircase_expected((i, j): (usize, usize), (i2, j2): (usize, usize)) -> usize {
    let ((_, j), (i2, j2)) = if (i, j) <= (i2, j2) { ((i, j), (i2, j2)) } else { ((i2, j2), (i, j)) };
    if i2 < j && j <= j2 {
        0
    } else if i2 < j2 && j2 < j {
        1
    } else {
        assert!(j <= i2);
        2
    }
}

#[test]
fn staircase_case_table() {
    for n in 4..=8 {
        let fam = two_system_families(n).unwrap();
        for &(ij, ref a) in &fam.pairs {
            assert_eq!(intersection_number(a, &fam.left).unwrap(), 1, "{ij:?} vs left ray");
            for &(ij2, ref b) in &fam.pairs {
                if ij != ij2 {
                    assert_eq!(intersection_number(a, b).unwrap(), staircase_expected(ij, ij2), "n={n} {ij:?} vs {ij2:?}");
                }
            }
        }
    }
}

#[test]
fn staircase_against_quartics() {
    for n in 4..=7 {
        let fam = two_system_families(n).unwrap();
        let top = n - 2;
        for (_, a) in &fam.pairs {
            for &((x, _, z), ref b) in &fam.triples {
                let i = intersection_number(a, b).unwrap();
                if x > 0 && z < top {
                    assert_eq!(i, 2, "{a} vs {b}");
                } else {
                    assert!(i <= 2);
                }
            }
            for (_, b) in &fam.doubles {
                assert_eq!(intersection_number(a, b).unwrap(), 2, "{a} vs {b}");
            }
        }
        for (_, b) in fam.triples.iter().chain(&fam.doubles) {
            assert_eq!(intersection_number(b, &fam.left).unwrap(), 0);
        }
    }
    // Roots next to p or q: the graph has an empty half-bigon with the circle.
    let s = Surface::new(4).unwrap();
    assert_eq!(intersection_number(&alpha_ij(s, 1, 2).unwrap(), &alpha_abc(s, 0, 1, 2).unwrap()).unwrap(), 0);
}

#[test]
fn gamma_profiles_count_test_arc_crossings() {
    for n in 4..=7 {
        let s = Surface::new(n).unwrap();
        for c in max_two_system(n).unwrap().classes() {
            let prof = c.gamma_profile();
            for k in 1..=n - 3 {
                let crossings = strand_crossings(s, &Strand::from_class(c), &gamma(s, k));
                assert_eq!(crossings, prof.counts[k - 1], "{c} vs gamma_{k}");
            }
        }
    }
    let s = Surface::new(5).unwrap();
    assert_eq!(ArcClass::trivial(s).gamma_profile().counts, vec![0, 0]);
    assert_eq!(alpha_ij(s, 1, 3).unwrap().gamma_profile().counts, vec![1, 1]);
    assert_eq!(alpha_abc(s, 1, 3, 3).unwrap().gamma_profile().counts, vec![1, 0]);
}

#[test]
fn zero_system_strips() {
    for n in 3..=8 {
        let sys = zero_system(n).unwrap();
        assert_eq!(sys.len(), n - 2);
        assert_eq!(sys.max_intersection(), 0);
        let comp = complement_regions(sys.classes()).unwrap();
        assert_eq!(comp.regions.len(), n - 2);
        for r in &comp.regions {
            assert_eq!(r.interior_punctures.len(), 1);
            if n > 3 {
                assert_eq!(r.kind, RegionKind::Strip);
            }
        }
    }
    assert_eq!(zero_system(4).unwrap().classes()[1], ArcClass::reduce(Surface::new(4).unwrap(), Side::Lower, &[2]).unwrap());
}
