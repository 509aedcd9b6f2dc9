//! Deterministic SVG pictures of arc systems and annular diagrams.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt::Write;

use arcsys::diagram::AnnularDiagram;
use arcsys::geometry::{system_arrangement, Config, End};
use arcsys::{ArcSystem, Puncture, Side};

const SIZE: f64 = 520.0;
const C: f64 = SIZE / 2.0;

const PALETTE: [&str; 10] =
    ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"];

/// Fixed color of item `i`; past the palette, hues step by the golden angle.
pub fn color(i: usize) -> String {
    if i < PALETTE.len() {
        PALETTE[i].to_string()
    } else {
        format!("hsl({:.0},65%,45%)", (i as f64 * 137.508) % 360.0)
    }
}

fn header(out: &mut String, height: f64) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{height}" viewBox="0 0 {SIZE} {height}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="{SIZE}" height="{height}" fill="white"/>"#).unwrap();
}

fn polyline(out: &mut String, pts: &[(f64, f64)], stroke: &str, extra: &str) {
    let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    writeln!(out, r#"<polyline points="{}" fill="none" stroke="{stroke}" {extra}/>"#, coords.join(" ")).unwrap();
}

/// Arcs on the reference circle: upper chords as straight segments inside,
/// lower chords as bulges outside.
pub fn render_system(sys: &ArcSystem) -> String {
    let n = sys.surface().n();
    let r = 140.0;
    let angle = |t: f64| TAU * t / n as f64 - TAU / 4.0;
    let at = |t: f64, rad: f64| (C + rad * angle(t).cos(), C + rad * angle(t).sin());
    let mut out = String::new();
    header(&mut out, SIZE);
    writeln!(out, r#"<circle cx="{C}" cy="{C}" r="{r}" fill="none" stroke="black" stroke-width="1"/>"#).unwrap();
    if !sys.is_empty() {
        let arr = system_arrangement(sys.classes()).expect("classes of a system are realizable");
        let config: &Config = &arr.config;
        let counts: Vec<usize> = config.orders.iter().map(Vec::len).collect();
        let param = |e: End| match e {
            End::Puncture(pos) => pos as f64,
            End::Point(s, i) => {
                let g = config.strands[s].seq[i];
                g as f64 + (config.rank_of(s, i) + 1) as f64 / (counts[g] + 1) as f64
            }
        };
        for (s, st) in config.strands.iter().enumerate() {
            let stroke = color(s);
            for k in 0..=st.len() {
                let (a, b) = config.chord(s, k);
                let (ta, tb) = (param(a), param(b));
                let pts: Vec<(f64, f64)> = if st.chord_side(k) == Side::Upper {
                    vec![at(ta, r), at(tb, r)]
                } else {
                    // Semicircle profile over the parameter interval: nested
                    // intervals give nested curves.
                    let (lo, hi) = (ta.min(tb), ta.max(tb));
                    (0..=48)
                        .map(|i| {
                            let t = lo + (hi - lo) * i as f64 / 48.0;
                            at(t, r + 180.0 / n as f64 * ((t - lo) * (hi - t)).max(0.0).sqrt())
                        })
                        .collect()
                };
                polyline(&mut out, &pts, &stroke, r#"stroke-width="2""#);
            }
        }
    }
    let surface = sys.surface();
    for x in surface.punctures() {
        let (px, py) = at(surface.position(x) as f64, r);
        let fill = match x {
            Puncture::P | Puncture::Q => "black",
            Puncture::R(_) => "white",
        };
        writeln!(out, r#"<circle cx="{px:.2}" cy="{py:.2}" r="5" fill="{fill}" stroke="black"/>"#).unwrap();
        let (lx, ly) = at(surface.position(x) as f64, r + 18.0);
        writeln!(
            out,
            r#"<text x="{lx:.2}" y="{ly:.2}" font-family="sans-serif" font-size="13" text-anchor="middle" dominant-baseline="middle">{x}</text>"#
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// Vertex positions: boundary 0 on an inner circle, boundary 1 on an outer
/// circle, vertices on both in between, the rest relaxed to the average of
/// their neighbours.
fn layout(d: &AnnularDiagram) -> Vec<(f64, f64)> {
    let nv = d.vertex_count();
    let mut angle: Vec<Option<f64>> = vec![None; nv];
    let mut on = vec![[false; 2]; nv];
    for b in 0..2 {
        let walk = d.boundary_walk(b);
        for (i, &x) in walk.iter().enumerate() {
            let v = d.origin(x);
            on[v][b] = true;
            // Boundary 1 is walked the other way round.
            let a = TAU * i as f64 / walk.len() as f64;
            angle[v].get_or_insert(if b == 0 { a } else { -a });
        }
    }
    let mut pos: Vec<(f64, f64)> = (0..nv)
        .map(|v| {
            let rad = match on[v] {
                [true, true] => 130.0,
                [true, false] => 60.0,
                [false, true] => 210.0,
                _ => 0.0,
            };
            let a = angle[v].unwrap_or(0.0);
            (rad * a.cos(), rad * a.sin())
        })
        .collect();
    let neighbours: Vec<Vec<usize>> =
        (0..nv).map(|v| d.vertex_darts(v).iter().map(|&x| d.origin(x ^ 1)).collect()).collect();
    for _ in 0..400 {
        for v in 0..nv {
            if on[v] != [false, false] || neighbours[v].is_empty() {
                continue;
            }
            let k = neighbours[v].len() as f64;
            let (sx, sy) = neighbours[v].iter().fold((0.0, 0.0), |(sx, sy), &u| (sx + pos[u].0, sy + pos[u].1));
            pos[v] = (sx / k, sy / k);
        }
    }
    pos.into_iter().map(|(x, y)| (C + x, C + y)).collect()
}

/// Diagram with square faces shaded, dual curves dashed in their curve's
/// color and corners ringed (red on boundary 0, blue on boundary 1).
pub fn render_diagram(d: &AnnularDiagram) -> String {
    let pos = layout(d);
    let mid = |e: usize| {
        let (a, b) = (pos[d.origin(2 * e)], pos[d.origin(2 * e + 1)]);
        ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0)
    };
    let mut out = String::new();
    header(&mut out, SIZE + 40.0);
    for f in d.squares() {
        let pts: Vec<String> =
            d.face_walk(f).iter().map(|&x| pos[d.origin(x)]).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        writeln!(out, r##"<polygon points="{}" fill="#f2f2f2" stroke="none"/>"##, pts.join(" ")).unwrap();
    }
    for e in 0..d.edge_count() {
        let (a, b) = (pos[d.origin(2 * e)], pos[d.origin(2 * e + 1)]);
        polyline(&mut out, &[a, b], "black", r#"stroke-width="1.5""#);
    }
    let (_, curve_of) = d.dual_curves();
    for f in d.squares() {
        let walk = d.face_walk(f);
        let pts: Vec<(f64, f64)> = walk.iter().map(|&x| pos[d.origin(x)]).collect();
        let centre = (pts.iter().map(|p| p.0).sum::<f64>() / 4.0, pts.iter().map(|p| p.1).sum::<f64>() / 4.0);
        for k in 0..2 {
            let (e0, e1) = (walk[k] >> 1, walk[k + 2] >> 1);
            let stroke = curve_of.get(e0).filter(|&&c| c != usize::MAX).map_or("gray".to_string(), |&c| color(c));
            polyline(&mut out, &[mid(e0), centre, mid(e1)], &stroke, r#"stroke-width="2" stroke-dasharray="6,4""#);
        }
    }
    let mut ring: BTreeMap<usize, &str> = BTreeMap::new();
    for (b, stroke) in [(0, "#d62728"), (1, "#1f77b4")] {
        for v in d.corners(b) {
            ring.entry(v).or_insert(stroke);
        }
    }
    for (v, &(x, y)) in pos.iter().enumerate() {
        writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3.5" fill="black"/>"#).unwrap();
        if let Some(stroke) = ring.get(&v) {
            writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="9" fill="none" stroke="{stroke}" stroke-width="2.5"/>"#)
                .unwrap();
        }
    }
    writeln!(
        out,
        r#"<text x="8" y="{:.0}" font-family="sans-serif" font-size="11">solid: edges; dashed: dual curves; ring: corner (red: boundary 0, blue: boundary 1)</text>"#,
        SIZE + 24.0
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}
