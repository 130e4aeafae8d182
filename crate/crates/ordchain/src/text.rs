//! Line-based text format for maps, factorizations, and certificates.
//!
//! A map block:
//!
//! ```text
//! map domain (-inf,+inf) codomain (0,1)
//! piece (-inf,0] mobius 1 -2 4 -4
//! piece (0,+inf) mobius 1 0 4 4
//! end
//! ```
//!
//! `const p/q` replaces the `mobius` clause for constant pieces. Parsing is
//! exact; serializing a parsed map reproduces the canonical form
//! byte-identically.

use std::fmt::Write as _;
use std::path::Path;

use crate::constructions::{FactorLabel, Factorization, ObstructionCertificate};
use crate::error::{Error, Result};
use crate::ext::ExtRat;
use crate::interval::Interval;
use crate::mobius::MobiusMap;
use crate::piecewise::{Action, Piece, PiecewiseMap};
use crate::rat::parse_rat;

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::ParseError {
        line,
        msg: msg.into(),
    }
}

/// Parses one map block. Blank lines and `#` comments are skipped.
pub fn parse_map(input: &str) -> Result<PiecewiseMap> {
    let mut lines = input.lines().enumerate();
    parse_map_block(&mut lines)?.ok_or_else(|| err(0, "no map block found"))
}

/// Reads and parses a map file.
pub fn parse_map_file(path: impl AsRef<Path>) -> Result<PiecewiseMap> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| err(0, format!("cannot read {}: {e}", path.as_ref().display())))?;
    parse_map(&text)
}

type NumberedLines<'a> = std::iter::Enumerate<std::str::Lines<'a>>;

/// Parses the next map block from a line stream, `None` at end of input.
fn parse_map_block(lines: &mut NumberedLines) -> Result<Option<PiecewiseMap>> {
    let (lineno, head) = loop {
        match lines.next() {
            None => return Ok(None),
            Some((_, l)) if l.trim().is_empty() || l.trim_start().starts_with('#') => continue,
            Some((n, l)) => break (n, l),
        }
    };
    let toks: Vec<&str> = head.split_whitespace().collect();
    if toks.len() != 5 || toks[0] != "map" || toks[1] != "domain" || toks[3] != "codomain" {
        return Err(err(
            lineno + 1,
            "expected `map domain <interval> codomain <interval>`",
        ));
    }
    let domain: Interval = toks[2].parse().map_err(|e| relocate(e, lineno + 1))?;
    let codomain: Interval = toks[4].parse().map_err(|e| relocate(e, lineno + 1))?;
    let mut pieces = Vec::new();
    loop {
        let Some((n, line)) = lines.next() else {
            return Err(err(lineno + 1, "map block not terminated by `end`"));
        };
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "end" {
            break;
        }
        pieces.push(parse_piece_line(n + 1, line)?);
    }
    Ok(Some(PiecewiseMap::new(domain, codomain, pieces)?))
}

fn relocate(e: Error, line: usize) -> Error {
    match e {
        Error::ParseError { msg, .. } => Error::ParseError { line, msg },
        other => other,
    }
}

fn parse_piece_line(lineno: usize, line: &str) -> Result<Piece> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() < 3 || toks[0] != "piece" {
        return Err(err(
            lineno,
            "expected `piece <interval> mobius a b c d` or `piece <interval> const v`",
        ));
    }
    let domain: Interval = toks[1].parse().map_err(|e| relocate(e, lineno))?;
    match toks[2] {
        "mobius" => {
            if toks.len() != 7 {
                return Err(err(lineno, "mobius clause needs four coefficients"));
            }
            let c: Vec<_> = toks[3..7]
                .iter()
                .map(|t| parse_rat(t).map_err(|e| relocate(e, lineno)))
                .collect::<Result<_>>()?;
            let m = MobiusMap::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())?;
            Ok(Piece::mobius(domain, m))
        }
        "const" => {
            if toks.len() != 4 {
                return Err(err(lineno, "const clause needs one value"));
            }
            let v: ExtRat = toks[3].parse().map_err(|e| relocate(e, lineno))?;
            Ok(Piece::constant(domain, v))
        }
        other => Err(err(lineno, format!("unknown piece action `{other}`"))),
    }
}

/// Canonical text of a map block, terminated by `end`.
pub fn serialize_map(f: &PiecewiseMap) -> String {
    let mut out = String::new();
    writeln!(out, "map domain {} codomain {}", f.domain(), f.codomain()).unwrap();
    for p in f.pieces() {
        match &p.action {
            Action::Const(v) => writeln!(out, "piece {} const {v}", p.domain).unwrap(),
            Action::Mobius(m) => writeln!(out, "piece {} {m}", p.domain).unwrap(),
        }
    }
    out.push_str("end\n");
    out
}

/// Factorizations serialize as the target followed by labeled map blocks.
pub fn serialize_factorization(f: &Factorization) -> String {
    let mut out = String::new();
    out.push_str("target\n");
    out.push_str(&serialize_map(&f.target));
    for (map, label) in &f.factors {
        let tag = match label {
            FactorLabel::OrderPreserving => "order_preserving",
            FactorLabel::Generator => "generator",
        };
        writeln!(out, "label {tag}").unwrap();
        out.push_str(&serialize_map(map));
    }
    out
}

/// Certificates serialize as a bounds table followed by the witness map.
pub fn serialize_certificate(c: &ObstructionCertificate) -> String {
    let mut out = String::new();
    writeln!(out, "certificate a {} b {} h {}", c.a, c.b, c.h).unwrap();
    for (i, bound) in c.per_element.iter().enumerate() {
        if let Some(u) = &bound.upper {
            writeln!(out, "bound {i} upper {u}").unwrap();
        }
        if let Some(l) = &bound.lower {
            writeln!(out, "bound {i} lower {l}").unwrap();
        }
    }
    out.push_str("alpha\n");
    out.push_str(&serialize_map(&c.alpha));
    out
}
