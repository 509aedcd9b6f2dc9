mod io;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use arcsys::constructions::{max_two_system, zero_system};
use arcsys::diagram::{dual_of_arrangement, verify_corner_theorem, AnnularDiagram};
use arcsys::extremal::{
    erdos_max_crossing, erdos_max_crossing_strict, extend_fibers, fiber_analysis, search_max, search_max_containing,
    verify_k_system, Verdict,
};
use arcsys::geometry::{intersection_number, is_homotopic, system_arrangement};
use arcsys::{enumerate_classes, ArcClass, ArcSystem, Error, Puncture, Surface, SystemDocument};
use clap::{Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::io::{parse_class, parse_class_text, parse_diagram, parse_document, parse_system, read_input, Document};

#[derive(Parser)]
#[command(name = "arcsys", version, about = "Arc systems joining two punctures of a punctured sphere")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Length cap or search budget, depending on the command.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Seed for randomized choices.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a cutting sequence such as U[2,2,0,3] to normal form.
    NormalForm {
        class: String,
        #[arg(short, long)]
        n: Option<usize>,
    },
    /// Geometric intersection number of two classes.
    Intersect {
        a: String,
        b: String,
        #[arg(short, long)]
        n: Option<usize>,
    },
    /// Whether two classes are homotopic.
    Homotopic {
        a: String,
        b: String,
        #[arg(short, long)]
        n: Option<usize>,
    },
    /// Emit an explicit system document.
    Construct {
        #[arg(value_parser = ["two-system", "zero-system"])]
        kind: String,
        n: usize,
    },
    /// Check that a system document is a k-system.
    Verify { k: usize, file: Option<PathBuf> },
    /// All realizable classes with at most L crossings.
    Enumerate {
        n: usize,
        #[arg(name = "L")]
        max_len: usize,
    },
    /// Largest k-system among classes with at most L crossings.
    SearchMax {
        n: usize,
        k: usize,
        #[arg(name = "L")]
        max_len: usize,
        /// System document whose classes the clique must contain.
        #[arg(long)]
        containing: Option<PathBuf>,
    },
    /// Image of a system after forgetting an inner puncture.
    Forget { r: String, file: Option<PathBuf> },
    /// Fibers of the forgetful map and the fiber identity.
    Fibers {
        r: String,
        file: Option<PathBuf>,
        /// Grow the system first until every fiber satisfies the identity.
        #[arg(long)]
        extend: bool,
    },
    /// Annular diagram operations.
    Diagram {
        #[command(subcommand)]
        op: DiagramOp,
    },
    /// Largest family of chords with pairwise meeting endpoints or crossings.
    Erdos {
        #[arg(name = "l")]
        l: usize,
    },
    /// SVG picture of a system or diagram document.
    Render { file: Option<PathBuf> },
}

#[derive(Subcommand)]
enum DiagramOp {
    /// Check the square and boundary structure.
    Validate { file: Option<PathBuf> },
    /// Whether the dual curves form a k-system.
    Ksystem { k: usize, file: Option<PathBuf> },
    /// Hexagon move at a center dart; random locus with --seed when omitted.
    Hexmove {
        #[arg(long)]
        dart: Option<usize>,
        file: Option<PathBuf>,
    },
    /// Corners and the cornsquare on boundary path b.
    Corner { b: usize, file: Option<PathBuf> },
    /// Hexagon moves until a cornsquare vertex is a corner.
    Reduce { b: usize, file: Option<PathBuf> },
    /// Dual diagram of a system document.
    Dual { file: Option<PathBuf> },
    /// Corner theorem over taut annulus 1-systems.
    VerifyTheorem {
        #[arg(default_value_t = 5)]
        m: usize,
        #[arg(default_value_t = 2)]
        w: i64,
    },
}

/// Failure modes: bad input exits 2, a found violation exits 1.
enum Failure {
    Input(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn load_system(file: Option<&Path>) -> Result<ArcSystem, Failure> {
    let doc = parse_system(&read_input(file)?)?;
    Ok(ArcSystem::from_document(doc)?)
}

fn load_diagram(file: Option<&Path>) -> Result<AnnularDiagram, Failure> {
    let doc = parse_diagram(&read_input(file)?)?;
    Ok(AnnularDiagram::from_document(doc)?)
}

/// Emits `text` when `ok`, otherwise reports it as a violation.
fn verdict(ok: bool, text: String) -> Outcome {
    if ok {
        Ok(text)
    } else {
        Err(Failure::Violation(text))
    }
}

fn run(cli: Cli) -> Outcome {
    let g = &cli.global;
    match cli.command {
        Command::NormalForm { class, n } => {
            let (surface, side, seq) = parse_class_text(&class, n)?;
            let c = ArcClass::reduce(surface, side, &seq)?;
            Ok(if g.json {
                pretty(&json!({ "class": c, "text": c.to_string(), "realizable": c.is_realizable() }))
            } else {
                format!("{c}{}", if c.is_realizable() { "" } else { " (not simple)" })
            })
        }
        Command::Intersect { a, b, n } => {
            let (a, b) = (parse_class(&a, n)?, parse_class(&b, n)?);
            let i = intersection_number(&a, &b)?;
            Ok(if g.json { pretty(&json!({ "a": a, "b": b, "intersection": i })) } else { i.to_string() })
        }
        Command::Homotopic { a, b, n } => {
            let (a, b) = (parse_class(&a, n)?, parse_class(&b, n)?);
            let h = is_homotopic(&a, &b);
            Ok(if g.json { pretty(&json!({ "homotopic": h })) } else { h.to_string() })
        }
        Command::Construct { kind, n } => {
            let sys = if kind == "two-system" { max_two_system(n)? } else { zero_system(n)? };
            Ok(pretty(&sys.to_document()))
        }
        Command::Verify { k, file } => {
            let sys = load_system(file.as_deref())?;
            let v = verify_k_system(&sys, k);
            let text = if g.json {
                pretty(&v)
            } else {
                match &v {
                    Verdict::Ok { size } => format!("ok size {size}"),
                    Verdict::Violation { i, j, reason } => format!("violation {i} {j}: {reason}"),
                }
            };
            verdict(v.is_ok(), text)
        }
        Command::Enumerate { n, max_len } => {
            let classes = enumerate_classes(Surface::new(n)?, max_len);
            Ok(if g.json {
                pretty(&SystemDocument { n, arcs: classes })
            } else {
                classes.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
            })
        }
        Command::SearchMax { n, k, max_len, containing } => {
            let r = match containing {
                Some(path) => {
                    let seed = load_system(Some(&path))?;
                    search_max_containing(n, k, max_len, seed.classes())?
                }
                None => search_max(n, k, max_len)?,
            };
            Ok(if g.json {
                pretty(&json!({ "result": r, "witness": r.witness.to_document() }))
            } else {
                let list: Vec<String> = r.witness.classes().iter().map(ToString::to_string).collect();
                format!("size {} among {} classes\n{}", r.size, r.candidates, list.join("\n"))
            })
        }
        Command::Forget { r, file } => {
            let r: Puncture = r.parse()?;
            let sys = load_system(file.as_deref())?;
            let mut image: Vec<ArcClass> =
                sys.classes().iter().map(|c| c.forget_puncture(r)).collect::<Result<_, _>>()?;
            image.sort();
            image.dedup();
            let n = sys.surface().n() - 1;
            Ok(pretty(&SystemDocument { n, arcs: image }))
        }
        Command::Fibers { r, file, extend } => {
            let r: Puncture = r.parse()?;
            let mut sys = load_system(file.as_deref())?;
            if extend {
                sys = extend_fibers(&sys, r, g.cap.unwrap_or(8))?;
            }
            let a = fiber_analysis(&sys, r)?;
            let ok = a.identity_holds() && a.within_bound;
            let text = if g.json {
                pretty(&json!({ "analysis": a, "system": sys.to_document() }))
            } else {
                let mut lines = vec![format!(
                    "system {} image {} difference {} bound {}",
                    a.system_size,
                    a.image_size,
                    a.system_size - a.image_size,
                    a.bound
                )];
                for f in &a.fibers {
                    lines.push(format!(
                        "{}: {} members, {} disjoint pairs{}",
                        f.image,
                        f.members.len(),
                        f.disjoint_pairs,
                        if f.identity_holds { "" } else { " (identity fails)" }
                    ));
                }
                lines.join("\n")
            };
            verdict(ok, text)
        }
        Command::Diagram { op } => run_diagram(g, op),
        Command::Erdos { l } => {
            let best = erdos_max_crossing(l);
            let strict = erdos_max_crossing_strict(l);
            Ok(if g.json {
                pretty(&json!({ "l": l, "max": best.len(), "chords": best, "strict_max": strict.len() }))
            } else {
                best.len().to_string()
            })
        }
        Command::Render { file } => match parse_document(&read_input(file.as_deref())?)? {
            Document::System(doc) => Ok(render::render_system(&ArcSystem::from_document(doc)?)),
            Document::Diagram(doc) => Ok(render::render_diagram(&AnnularDiagram::from_document(doc)?)),
        },
    }
}

fn run_diagram(g: &Global, op: DiagramOp) -> Outcome {
    match op {
        DiagramOp::Validate { file } => {
            let d = load_diagram(file.as_deref())?;
            let check = d.check();
            let text = if g.json {
                pretty(&json!({ "valid": check.is_ok(), "error": check.as_ref().err(), "squares": d.square_count() }))
            } else {
                match &check {
                    Ok(()) => format!("valid, {} squares, {} vertices", d.square_count(), d.vertex_count()),
                    Err(e) => format!("invalid: {e}"),
                }
            };
            verdict(check.is_ok(), text)
        }
        DiagramOp::Ksystem { k, file } => {
            let d = load_diagram(file.as_deref())?;
            let (ok, curves) = d.is_k_system_diagram(k);
            let text = if g.json {
                pretty(&json!({ "k_system": ok, "curves": curves, "crossings": d.curve_crossings() }))
            } else {
                format!("{} ({} dual curves)", if ok { "ok" } else { "not a k-system diagram" }, curves.len())
            };
            verdict(ok, text)
        }
        DiagramOp::Hexmove { dart, file } => {
            let d = load_diagram(file.as_deref())?;
            let s = match dart {
                Some(s) => s,
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(g.seed.unwrap_or(0));
                    *d.hexagon_loci()
                        .choose(&mut rng)
                        .ok_or_else(|| Failure::Input("no hexagon in this diagram".into()))?
                }
            };
            Ok(pretty(&d.hexagon_move(s)?.to_document()))
        }
        DiagramOp::Corner { b, file } => {
            let d = load_diagram(file.as_deref())?;
            if b > 1 {
                return Err(Failure::Input("boundary must be 0 or 1".into()));
            }
            let corners = d.corners(b);
            let cs = d.find_cornsquare(b);
            let ok = d.square_count() == 0 || !corners.is_empty();
            let text = if g.json {
                pretty(&json!({ "corners": corners, "cornsquare": cs, "squares": d.square_count() }))
            } else {
                let mut text = format!("corners {corners:?}");
                if let Some(c) = cs {
                    text.push_str(&format!("\ncornsquare face {} at vertex {}", c.square, c.vertex));
                }
                text
            };
            verdict(ok, text)
        }
        DiagramOp::Reduce { b, file } => {
            let d = load_diagram(file.as_deref())?;
            if b > 1 {
                return Err(Failure::Input("boundary must be 0 or 1".into()));
            }
            let r = d.reduce_to_corner(b, g.cap.unwrap_or(100_000))?;
            Ok(pretty(&json!({
                "moves": r.moves,
                "corner_dart": r.corner_dart,
                "explored": r.explored,
                "diagram": r.diagram.to_document(),
            })))
        }
        DiagramOp::Dual { file } => {
            let sys = load_system(file.as_deref())?;
            let dual = dual_of_arrangement(&system_arrangement(sys.classes())?)?;
            Ok(pretty(&dual.diagram.to_document()))
        }
        DiagramOp::VerifyTheorem { m, w } => {
            let r = verify_corner_theorem(m, w);
            let text = if g.json {
                pretty(&r)
            } else {
                format!(
                    "{} diagrams: {} cycles, {} with squares, {} violations",
                    r.diagrams,
                    r.cycles,
                    r.with_squares,
                    r.violations.len() + r.malformed.len()
                )
            };
            verdict(r.holds(), text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.global.out.clone();
    match run(cli) {
        Ok(text) => match io::write_output(out.as_deref(), &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("{e}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Violation(text)) => {
            let _ = io::write_output(out.as_deref(), &text);
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("arcsys: {msg}");
            ExitCode::from(2)
        }
    }
}
