use arcsys::geometry::{Config, Strand};
use arcsys::{enumerate_classes, ArcClass, Surface};

fn permutations(items: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Minimum cross-crossings over every per-gap arrangement in which both strands stay simple.
fn oracle(surface: Surface, a: &ArcClass, b: &ArcClass) -> usize {
    let strands = vec![Strand::from_class(a), Strand::from_class(b)];
    let n = surface.n();
    let mut per_gap: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (s, st) in strands.iter().enumerate() {
        for (i, &g) in st.seq.iter().enumerate() {
            per_gap[g].push((s, i));
        }
    }
    let choices: Vec<Vec<Vec<(usize, usize)>>> = per_gap.iter().map(|v| permutations(v)).collect();
    let mut best = usize::MAX;
    let mut idx = vec![0usize; n];
    loop {
        let orders = (0..n).map(|g| choices[g][idx[g]].clone()).collect();
        let c = Config::new(surface, strands.clone(), orders);
        if c.crossings(0, 0) == 0 && c.crossings(1, 1) == 0 {
            best = best.min(c.crossings(0, 1));
        }
        let mut g = 0;
        while g < n {
            idx[g] += 1;
            if idx[g] < choices[g].len() {
                break;
            }
            idx[g] = 0;
            g += 1;
        }
        if g == n {
            break;
        }
    }
    best
}

#[test]
fn pairwise_drawings_match_brute_force_minimum() {
    for n in 3..=5 {
        let s = Surface::new(n).unwrap();
        let classes = enumerate_classes(s, 4);
        for a in &classes {
            for b in &classes {
                let want = oracle(s, a, b);
                let strands = vec![Strand::from_class(a), Strand::from_class(b)];
                let geo = Config::canonical(s, strands.clone());
                assert_eq!(geo.crossings(0, 0), 0, "{a} not simple");
                assert_eq!(geo.crossings(0, 1), want, "geodesic {a} vs {b}");
                let mut st = Config::stacked(s, strands).unwrap();
                let trace = st.tighten_pair(0, 1);
                assert_eq!(*trace.last().unwrap(), want, "tighten {a} vs {b}");
                assert_eq!(st.crossings(0, 0) + st.crossings(1, 1), 0);
            }
        }
    }
}

#[test]
fn geodesic_systems_are_pairwise_minimal() {
    let s = Surface::new(5).unwrap();
    let classes = enumerate_classes(s, 3);
    let strands: Vec<Strand> = classes.iter().map(Strand::from_class).collect();
    let all = Config::canonical(s, strands.clone());
    for i in 0..strands.len() {
        for j in i..strands.len() {
            let pair = Config::canonical(s, vec![strands[i].clone(), strands[j].clone()]);
            let want = if i == j { 0 } else { pair.crossings(0, 1) };
            assert_eq!(all.crossings(i, j), want, "{} vs {}", classes[i], classes[j]);
        }
    }
}
