//! Acceptance run: one PASS/FAIL line per criterion. Criteria listed in
//! `EXPECTED_FAILURES` are reported but do not fail the run.

use std::io::Write;
use std::process::{Command, ExitCode, Stdio};
use std::time::Instant;

use arcsys::constructions::{binomial, count_identity, max_two_system, two_system_families};
use arcsys::diagram::{
    enumerate_taut_annulus_diagrams, two_system_counterexample, verify_corner_theorem, AnnularDiagram,
    DiagramDocument,
};
use arcsys::extremal::{
    erdos_max_crossing, extend_fibers, fiber_analysis, search_max, search_max_containing, verify_k_system,
};
use arcsys::geometry::{intersection_number, Config, Strand};
use arcsys::{enumerate_classes, ArcClass, Surface, SystemDocument};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criterion 3 asks for exactly two crossings between every staircase arc
/// and every quartic arc; triples with a root next to p or q reduce and
/// meet some staircase arcs fewer times.
const EXPECTED_FAILURES: [usize; 1] = [3];

type Check = Result<String, String>;

fn arcsys(args: &[&str], stdin: &str) -> (Option<i32>, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_arcsys"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .expect("arcsys binary");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code(), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn construction_size() -> Check {
    for n in 3..=8 {
        let (code, doc) = arcsys(&["construct", "two-system", &n.to_string()], "");
        ensure(code == Some(0), format!("construct failed at n={n}"))?;
        let parsed: SystemDocument = serde_json::from_str(&doc).map_err(|e| e.to_string())?;
        let want = binomial(n as u64, 3) as usize;
        ensure(parsed.arcs.len() == want, format!("n={n}: {} classes, expected {want}", parsed.arcs.len()))?;
        let (code, out) = arcsys(&["verify", "2"], &doc);
        ensure(code == Some(0) && out.trim() == format!("ok size {want}"), format!("n={n}: {}", out.trim()))?;
    }
    Ok("C(n,3) classes and verify 2 ok for n = 3..8".into())
}

fn count_identity_check() -> Check {
    for n in 3..=50 {
        let (lhs, rhs) = count_identity(n);
        ensure(lhs == rhs, format!("n={n}: {lhs} != {rhs}"))?;
    }
    Ok("identity holds for n = 3..50".into())
}

/// Crossings of two staircase arcs; pairs with equal `i` are ordered by `j`.
fn staircase_expected(a: (usize, usize), b: (usize, usize)) -> usize {
    let ((_, j), (i2, j2)) = if a <= b { (a, b) } else { (b, a) };
    if i2 < j && j <= j2 {
        0
    } else if i2 < j2 && j2 < j {
        1
    } else {
        2
    }
}

fn case_table() -> Check {
    let (mut twice, mut fewer, mut examples) = (0, 0, Vec::new());
    for n in 4..=8 {
        let fam = two_system_families(n).map_err(|e| e.to_string())?;
        for (ij, a) in &fam.pairs {
            let left = intersection_number(a, &fam.left).unwrap();
            ensure(left == 1, format!("n={n} alpha{ij:?} meets the left ray {left} times"))?;
            for (ij2, b) in &fam.pairs {
                if ij != ij2 {
                    let got = intersection_number(a, b).unwrap();
                    let want = staircase_expected(*ij, *ij2);
                    ensure(got == want, format!("n={n} alpha{ij:?} vs alpha{ij2:?}: {got}, table says {want}"))?;
                }
            }
            for (abc, b) in fam.triples.iter().chain(&fam.doubles) {
                let got = intersection_number(a, b).unwrap();
                ensure(got <= 2, format!("n={n} alpha{ij:?} vs alpha{abc:?}: {got}"))?;
                if got == 2 {
                    twice += 1;
                } else {
                    fewer += 1;
                    if examples.len() < 2 {
                        examples.push(format!("n={n} alpha{ij:?} vs alpha{abc:?} = {got}"));
                    }
                }
            }
        }
    }
    let summary = format!(
        "staircase table and left ray exact for n <= 8; staircase vs quartic: {twice} pairs meet twice, {fewer} fewer ({})",
        examples.join(", ")
    );
    if fewer == 0 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn extremal_small() -> Check {
    let mut got = Vec::new();
    for (n, k, want) in [(4, 0, 2), (4, 1, 3), (4, 2, 4), (3, 0, 1), (3, 1, 1), (3, 2, 1)] {
        let r = search_max(n, k, 6).map_err(|e| e.to_string())?;
        ensure(r.size == want, format!("search_max({n},{k},6) = {}, expected {want}", r.size))?;
        ensure(verify_k_system(&r.witness, k).is_ok(), format!("witness for ({n},{k}) fails verification"))?;
        got.push(r.size.to_string());
    }
    Ok(format!("n=4: {}, n=3: {}", got[..3].join("/"), got[3..].join("/")))
}

fn lower_bound_five() -> Check {
    let seed = max_two_system(5).map_err(|e| e.to_string())?;
    let r = search_max_containing(5, 2, 4, seed.classes()).map_err(|e| e.to_string())?;
    ensure(r.size >= 10, format!("clique of size {}", r.size))?;
    ensure(seed.classes().iter().all(|c| r.witness.classes().contains(c)), "construction missing from witness")?;
    ensure(verify_k_system(&r.witness, 2).is_ok(), "witness is not a 2-system")?;
    Ok(format!("clique of size {} among {} classes contains the construction", r.size, r.candidates))
}

fn corner_theorem() -> Check {
    let report = verify_corner_theorem(5, 2);
    ensure(report.holds(), format!("violations: {:?}", report.violations))?;
    ensure(report.with_squares >= 50, format!("only {} diagrams with squares", report.with_squares))?;
    let found = two_system_counterexample(5, 4, 5).map_err(|e| e.to_string())?.ok_or("no 2-system witness found")?;
    ensure(found.diagram.is_k_system_diagram(2).0 && found.diagram.square_count() > 0, "witness is not a 2-system diagram")?;
    ensure(found.diagram.corners(found.boundary).is_empty(), "witness has a corner")?;
    let archived: DiagramDocument =
        serde_json::from_str(include_str!("data/two_system_witness.diagram.json")).map_err(|e| e.to_string())?;
    let archived = AnnularDiagram::from_document(archived).map_err(|e| e.to_string())?;
    ensure(archived.is_isomorphic(&found.diagram), "witness differs from the archived diagram")?;
    let system: SystemDocument =
        serde_json::from_str(include_str!("data/two_system_witness.system.json")).map_err(|e| e.to_string())?;
    ensure(system.arcs == found.classes, "witness classes differ from the archive")?;
    let classes: Vec<String> = found.classes.iter().map(ToString::to_string).collect();
    Ok(format!(
        "{} diagrams ({} cycles, {} with squares), no violations; 2-system witness {{{}}} with {} squares, no corner on boundary {}",
        report.diagrams,
        report.cycles,
        report.with_squares,
        classes.join(", "),
        found.diagram.square_count(),
        found.boundary
    ))
}

fn rewriting() -> Check {
    let all = enumerate_taut_annulus_diagrams(5, 2, 2);
    let pool: Vec<&AnnularDiagram> = all.iter().map(|(_, d)| d).filter(|d| !d.hexagon_loci().is_empty()).collect();
    ensure(!pool.is_empty(), "no diagram with a hexagon")?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut moves = 0;
    while moves < 1000 {
        let mut d = pool[rng.gen_range(0..pool.len())].clone();
        let (squares, profile) = (d.square_count(), d.crossing_profile());
        for _ in 0..20 {
            let Some(&s) = d.hexagon_loci().choose(&mut rng) else { break };
            d = d.hexagon_move(s).map_err(|e| e.to_string())?;
            moves += 1;
            ensure(d.validate(), "move broke the diagram")?;
            ensure(d.square_count() == squares, "square count changed")?;
            ensure(d.crossing_profile() == profile, "dual-curve crossings changed")?;
        }
    }
    let (mut needed, mut longest) = (0, 0);
    for (spec, d) in enumerate_taut_annulus_diagrams(5, 2, 1) {
        if d.square_count() == 0 {
            continue;
        }
        for b in 0..2 {
            let cs = d.find_cornsquare(b).ok_or(format!("no cornsquare in {spec:?}"))?;
            if d.is_corner(cs.vertex, b) {
                continue;
            }
            let r = d.reduce_to_corner(b, 100_000).map_err(|e| format!("{spec:?}: {e}"))?;
            ensure(r.diagram.is_corner(r.diagram.origin(r.corner_dart), b), format!("{spec:?}: no corner reached"))?;
            needed += 1;
            longest = longest.max(r.moves.len());
        }
    }
    ensure(needed > 0, "no instance needed moves")?;
    Ok(format!("{moves} random moves preserved invariants; {needed} reductions succeeded, longest {longest} moves"))
}

fn erdos() -> Check {
    let mut sizes = Vec::new();
    for l in 3..=8 {
        let m = erdos_max_crossing(l).len();
        ensure(m == l, format!("l={l}: maximum {m}"))?;
        sizes.push(m.to_string());
    }
    Ok(format!("maxima {} for l = 3..8", sizes.join(",")))
}

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

/// Fewest crossings over all per-gap orders keeping both arcs simple.
fn interleaving_oracle(surface: Surface, a: &ArcClass, b: &ArcClass) -> usize {
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
            return best;
        }
    }
}

fn oracle_equivalence() -> Check {
    let mut pairs = 0;
    for n in 3..=5 {
        let s = Surface::new(n).unwrap();
        let classes = enumerate_classes(s, 4);
        for (x, a) in classes.iter().enumerate() {
            for b in &classes[x..] {
                let fast = intersection_number(a, b).map_err(|e| e.to_string())?;
                let slow = interleaving_oracle(s, a, b);
                ensure(fast == slow, format!("n={n} {a} vs {b}: {fast} vs oracle {slow}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} class pairs agree"))
}

fn fiber_identity() -> Check {
    let mut runs = 0;
    for n in 3..=6 {
        let sys = max_two_system(n).map_err(|e| e.to_string())?;
        for k in 1..=n - 2 {
            let r = arcsys::Puncture::R(k);
            let grown = extend_fibers(&sys, r, 6).map_err(|e| format!("n={n} {r}: {e}"))?;
            let a = fiber_analysis(&grown, r).map_err(|e| e.to_string())?;
            ensure(a.identity_holds(), format!("n={n} {r}: a fiber breaks the identity"))?;
            let diff = (a.system_size - a.image_size) as u128;
            let bound = binomial(n as u64 - 1, 2);
            ensure(diff <= bound, format!("n={n} {r}: difference {diff} above {bound}"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} (n, r) cases: fibers satisfy the identity, difference within C(n-1,2)"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("construction size", construction_size),
        ("count identity", count_identity_check),
        ("staircase case table", case_table),
        ("extremal brute force n = 3, 4", extremal_small),
        ("n = 5 lower bound", lower_bound_five),
        ("corner theorem and 2-system witness", corner_theorem),
        ("rewriting invariants", rewriting),
        ("chord lemma", erdos),
        ("oracle equivalence", oracle_equivalence),
        ("fiber identity", fiber_identity),
    ];
    let mut unexpected = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let id = k + 1;
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {id} PASS {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                let known = EXPECTED_FAILURES.contains(&id);
                unexpected += usize::from(!known);
                let note = if known { " (known, see README)" } else { "" };
                println!("criterion {id} FAIL {name}: {detail}{note} [{secs:.1}s]");
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
