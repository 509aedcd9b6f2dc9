use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use arcsys::diagram::DiagramDocument;
use arcsys::{ArcClass, Error, Side, Surface, SystemDocument};
use serde::Deserialize;

/// Reads a file, or standard input for `None` and `-`.
pub fn read_input(path: Option<&Path>) -> Result<String, Error> {
    let mut text = String::new();
    match path {
        Some(p) if p != Path::new("-") => {
            text = fs::read_to_string(p).map_err(|e| Error::Input(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| Error::Input(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

pub fn write_output(out: Option<&Path>, text: &str) -> Result<(), Error> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| Error::Input(format!("stdout: {e}")))
        }
    }
}

pub enum Document {
    System(SystemDocument),
    Diagram(DiagramDocument),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AnyDocument {
    System(SystemDocument),
    Diagram(DiagramDocument),
}

pub fn parse_document(text: &str) -> Result<Document, Error> {
    match serde_json::from_str::<AnyDocument>(text) {
        Ok(AnyDocument::System(d)) => Ok(Document::System(d)),
        Ok(AnyDocument::Diagram(d)) => Ok(Document::Diagram(d)),
        Err(e) => Err(Error::Input(format!("not a system or diagram document: {e}"))),
    }
}

pub fn parse_system(text: &str) -> Result<SystemDocument, Error> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("bad system document: {e}")))
}

pub fn parse_diagram(text: &str) -> Result<DiagramDocument, Error> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("bad diagram document: {e}")))
}

/// Side and raw cutting sequence from `U[2,0,3]`, `L[]` or a JSON record
/// `{"n":5,"side":"U","seq":[2,0,3]}`; the record fixes the surface.
pub fn parse_class_text(text: &str, n: Option<usize>) -> Result<(Surface, Side, Vec<usize>), Error> {
    let t = text.trim();
    if t.starts_with('{') {
        #[derive(Deserialize)]
        struct Record {
            n: usize,
            side: Side,
            seq: Vec<usize>,
        }
        let r: Record = serde_json::from_str(t).map_err(|e| Error::Input(format!("bad class record: {e}")))?;
        return Ok((Surface::new(r.n)?, r.side, r.seq));
    }
    let n = n.ok_or_else(|| Error::Input(format!("class {t:?} needs --n")))?;
    let bad = || Error::Input(format!("bad class {t:?}, expected e.g. U[2,0,3]"));
    let side = match t.chars().next() {
        Some('U') => Side::Upper,
        Some('L') => Side::Lower,
        _ => return Err(bad()),
    };
    let body = t[1..].trim().strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(bad)?;
    let seq = body
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((Surface::new(n)?, side, seq))
}

/// Reduced class; fails for sequences with no simple representative.
pub fn parse_class(text: &str, n: Option<usize>) -> Result<ArcClass, Error> {
    let (surface, side, seq) = parse_class_text(text, n)?;
    let c = ArcClass::reduce(surface, side, &seq)?;
    if !c.is_realizable() {
        return Err(Error::Domain(format!("class {c} has no simple representative")));
    }
    Ok(c)
}
