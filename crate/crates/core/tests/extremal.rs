use arcsys::constructions::{binomial, max_two_system, zero_system};
use arcsys::extremal::*;
use arcsys::{ArcClass, ArcSystem, Error, Puncture, Side, Surface};

fn class(n: usize, side: Side, seq: &[usize]) -> ArcClass {
    ArcClass::reduce(Surface::new(n).unwrap(), side, seq).unwrap()
}

#[test]
fn verify_catches_violations() {
    let s = max_two_system(6).unwrap();
    assert_eq!(verify_k_system(&s, 2), Verdict::Ok { size: 20 });
    let Verdict::Violation { i, j, .. } = verify_k_system(&max_two_system(5).unwrap(), 1) else {
        panic!("expected a violation");
    };
    assert!(max_two_system(5).unwrap().intersection(i, j) > 1);
    assert!(verify_k_system(&zero_system(6).unwrap(), 0).is_ok());

    let t = class(5, Side::Upper, &[]);
    let dup = ArcSystem::new(t.surface(), vec![t.clone(), t]).unwrap();
    assert!(matches!(verify_k_system(&dup, 2), Verdict::Violation { i: 0, j: 1, .. }));
}

/// Independent maximum-clique oracle: every subset, largest first.
fn brute_clique(adj: &[Vec<bool>]) -> usize {
    let m = adj.len();
    (0u32..1 << m)
        .filter(|mask| {
            (0..m).all(|a| (0..m).all(|b| a == b || mask >> a & 1 == 0 || mask >> b & 1 == 0 || adj[a][b]))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap()
}

#[test]
fn clique_search_matches_brute_force() {
    let c = candidates(4, 1, 6).unwrap();
    assert_eq!(c.adj.len(), 13);
    for k in 0..=2 {
        let c = candidates(4, k, 6).unwrap();
        assert_eq!(max_clique(&c.adj).len(), brute_clique(&c.adj));
    }
}

#[test]
fn small_maxima() {
    let sizes: Vec<usize> = (0..=2).map(|k| search_max(4, k, 6).unwrap().size).collect();
    assert_eq!(sizes, vec![2, 3, 4]);
    for k in 0..=2 {
        assert_eq!(search_max(3, k, 6).unwrap().size, 1);
    }
    let r = search_max(5, 2, 4).unwrap();
    assert_eq!(r.size, 10);
    assert!(verify_k_system(&r.witness, 2).is_ok());
    assert!(matches!(search_max(2, 0, 3), Err(Error::Input(_))));
}

#[test]
fn search_extends_construction() {
    let seed = max_two_system(5).unwrap();
    let r = search_max_containing(5, 2, 4, seed.classes()).unwrap();
    assert_eq!(r.size, 10);
    assert!(seed.classes().iter().all(|c| r.witness.classes().contains(c)));
    let bad = [class(5, Side::Upper, &[]), class(5, Side::Upper, &[2, 0, 2, 0, 2])];
    assert!(search_max_containing(5, 0, 6, &bad).is_err());
}

#[test]
fn erdos_lemma() {
    for l in 3..=8 {
        let w = erdos_max_crossing(l);
        assert_eq!(w.len(), l);
        assert_eq!(erdos_max_crossing_strict(l).len(), l / 2);
    }
}

fn relation_instance(n: usize) -> RelationInstance {
    // Arcs 0..m end at p, m..2m at q; only arcs 0 and 1 cross.
    let m = n - 2;
    let mut crossings = vec![vec![0; 2 * m]; 2 * m];
    crossings[0][1] = 1;
    crossings[1][0] = 1;
    RelationInstance {
        n,
        ends_at_p: (0..2 * m).map(|a| a < m).collect(),
        order: (0..2 * m).collect(),
        pairs: (0..m).map(|a| (a, m + a)).collect(),
        crossings,
    }
}

#[test]
fn relation_conditions() {
    let ok = relation_instance(5);
    let rep = check_relation_conditions(&ok).unwrap();
    assert!(rep.is_ok() && rep.within_bound && rep.bound == binomial(4, 2));

    let mut not_alternating = ok.clone();
    not_alternating.pairs = vec![(0, 4), (1, 3)];
    let rep = check_relation_conditions(&not_alternating).unwrap();
    assert_eq!(rep.violation_ii, Some((0, 1)));

    let mut heavy = ok.clone();
    heavy.crossings[0][1] = 2;
    heavy.crossings[1][0] = 2;
    assert_eq!(check_relation_conditions(&heavy).unwrap().violation_i, Some((0, 1)));

    let mut split = ok.clone();
    split.order = vec![0, 3, 1, 4, 2, 5];
    assert!(matches!(check_relation_conditions(&split), Err(Error::Input(_))));

    let mut pq = ok.clone();
    pq.crossings[0][3] = 1;
    pq.crossings[3][0] = 1;
    assert!(matches!(check_relation_conditions(&pq), Err(Error::Input(_))));
}

#[test]
fn fiber_identity_on_constructions() {
    for n in 4..=6 {
        let s = max_two_system(n).unwrap();
        for k in 1..=n - 2 {
            let f = fiber_analysis(&s, Puncture::R(k)).unwrap();
            assert!(f.identity_holds(), "n={n} r{k}");
            assert!(f.within_bound);
            assert_eq!(f.system_size - f.image_size, binomial(n as u64 - 1, 2) as usize);
        }
    }
    let s = max_two_system(5).unwrap();
    assert!(matches!(fiber_analysis(&s, Puncture::P), Err(Error::Domain(_))));
}

#[test]
fn fiber_extension() {
    let s = max_two_system(5).unwrap();
    let (mut extended, mut exhausted) = (0, 0);
    for mask in 1u32..1 << 8 {
        let cs: Vec<ArcClass> =
            (0..8).filter(|i| mask >> i & 1 == 1).map(|i| s.classes()[i].clone()).collect();
        let sub = ArcSystem::new(s.surface(), cs).unwrap();
        if fiber_analysis(&sub, Puncture::R(2)).unwrap().identity_holds() {
            continue;
        }
        match extend_fibers(&sub, Puncture::R(2), 5) {
            Ok(e) => {
                extended += 1;
                assert!(fiber_analysis(&e, Puncture::R(2)).unwrap().identity_holds());
                assert!(verify_k_system(&e, 2).is_ok());
                assert!(sub.classes().iter().all(|c| e.classes().contains(c)));
            }
            Err(Error::Exhausted(_)) => exhausted += 1,
            Err(e) => panic!("{e}"),
        }
    }
    assert!(extended > 0);
    println!("extended {extended}, exhausted {exhausted}");

    // Two crossing arcs over the trivial class with no common disjoint partner.
    let stuck = ArcSystem::new(
        s.surface(),
        vec![class(5, Side::Lower, &[2]), class(5, Side::Lower, &[3]), class(5, Side::Upper, &[2, 0, 2])],
    )
    .unwrap();
    assert!(matches!(extend_fibers(&stuck, Puncture::R(1), 5), Err(Error::Exhausted(_))));
    assert!(matches!(extend_fibers(&max_two_system(5).unwrap(), Puncture::R(1), 4), Ok(e) if e.len() == 10));
}
