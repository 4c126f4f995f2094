//! Line-oriented text format for psosets with attached tables, subsets and maps.
//!
//! ```text
//! # optional leading comments
//! psoset 1
//! elements 0 a b 1
//! relation
//! 1 1 1 1
//! 0 1 1 1
//! 0 0 1 1
//! 0 0 0 1
//! meet            (optional, n rows of names; likewise `join`)
//! subset A 0 b 1  (any number)
//! map I 0 0 b 1   (any number, one name per element)
//! op T            (any number, n rows of names)
//! ```
//!
//! Blank lines are ignored. Comment lines after the header are accepted and dropped.

use std::fmt::Write as _;

use thiserror::Error;

use crate::interior::UnaryMap;
use crate::relation::{validate_psoset, Psoset, PsosetError};
use crate::set::{ElementSet, MAX_ELEMENTS};
use crate::table::BinaryOpTable;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsosetDocument {
    /// Leading comment lines, without the `#` and one following space.
    pub comments: Vec<String>,
    pub names: Vec<String>,
    pub relation: Vec<Vec<bool>>,
    pub meet: Option<BinaryOpTable>,
    pub join: Option<BinaryOpTable>,
    pub subsets: Vec<(String, ElementSet)>,
    pub maps: Vec<(String, UnaryMap)>,
    pub ops: Vec<(String, BinaryOpTable)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl PsosetDocument {
    pub fn new(names: Vec<String>, relation: Vec<Vec<bool>>) -> PsosetDocument {
        PsosetDocument {
            comments: Vec::new(),
            names,
            relation,
            meet: None,
            join: None,
            subsets: Vec::new(),
            maps: Vec::new(),
            ops: Vec::new(),
        }
    }

    pub fn from_psoset(p: &Psoset) -> PsosetDocument {
        PsosetDocument::new(p.names().to_vec(), p.matrix())
    }

    pub fn psoset(&self) -> Result<Psoset, PsosetError> {
        validate_psoset(&self.relation, &self.names)
    }

    pub fn subset(&self, label: &str) -> Option<ElementSet> {
        self.subsets.iter().find(|(l, _)| l == label).map(|(_, s)| *s)
    }

    pub fn map(&self, label: &str) -> Option<&UnaryMap> {
        self.maps.iter().find(|(l, _)| l == label).map(|(_, m)| m)
    }

    pub fn op(&self, label: &str) -> Option<&BinaryOpTable> {
        self.ops.iter().find(|(l, _)| l == label).map(|(_, t)| t)
    }
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    /// Tokens with their 1-based columns.
    fn tokens(&self) -> Vec<(usize, &'a str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, ch) in self.text.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    out.push((s + 1, &self.text[s..i]));
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            out.push((s + 1, &self.text[s..]));
        }
        out
    }

    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.number, column, message: message.into() }
    }
}

struct Parser<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Parser<'a> {
    fn next(&mut self) -> Option<&Line<'a>> {
        let line = self.lines.get(self.pos)?;
        self.pos += 1;
        Some(line)
    }

    fn expect(&mut self, what: &str) -> Result<&Line<'a>, ParseError> {
        let eof = self.last_line + 1;
        self.next()
            .ok_or_else(|| ParseError { line: eof, column: 1, message: format!("unexpected end of input, expected {what}") })
    }
}

fn lookup(names: &[String], line: &Line, col: usize, tok: &str) -> Result<usize, ParseError> {
    names.iter().position(|n| n == tok).ok_or_else(|| line.err(col, format!("unknown element `{tok}`")))
}

fn read_table(p: &mut Parser, names: &[String], what: &str) -> Result<BinaryOpTable, ParseError> {
    let n = names.len();
    let mut cells = Vec::with_capacity(n * n);
    for _ in 0..n {
        let line = p.expect(&format!("a row of {what}"))?;
        let toks = line.tokens();
        if toks.len() != n {
            return Err(line.err(1, format!("expected {n} entries, found {}", toks.len())));
        }
        for (col, tok) in toks {
            cells.push(lookup(names, line, col, tok)?);
        }
    }
    Ok(BinaryOpTable::from_cells(n, cells).expect("entries resolved to elements"))
}

/// Parses a document; element names are resolved but the relation is not validated.
pub fn parse(text: &str) -> Result<PsosetDocument, ParseError> {
    let mut comments = Vec::new();
    let mut lines = Vec::new();
    let mut header_seen = false;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        last_line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            if !header_seen {
                comments.push(rest.strip_prefix(' ').unwrap_or(rest).to_string());
            }
            continue;
        }
        header_seen = true;
        lines.push(Line { number: i + 1, text: raw });
    }
    let mut p = Parser { lines, pos: 0, last_line };

    let header = p.expect("`psoset <version>`")?;
    match header.tokens().as_slice() {
        [(_, "psoset"), (col, v)] => {
            let version: u32 = v.parse().map_err(|_| header.err(*col, "version must be a number"))?;
            if version != FORMAT_VERSION {
                return Err(header.err(*col, format!("unsupported format version {version}")));
            }
        }
        _ => return Err(header.err(1, "expected `psoset <version>`")),
    }

    let line = p.expect("`elements ...`")?;
    let toks = line.tokens();
    if toks.first().map(|t| t.1) != Some("elements") {
        return Err(line.err(1, "expected `elements`"));
    }
    let names: Vec<String> = toks[1..].iter().map(|(_, t)| t.to_string()).collect();
    if names.is_empty() {
        return Err(line.err(1, "no elements"));
    }
    if names.len() > MAX_ELEMENTS {
        return Err(line.err(1, format!("at most {MAX_ELEMENTS} elements are supported")));
    }
    for (i, (col, tok)) in toks[1..].iter().enumerate() {
        if names[..i].contains(&tok.to_string()) {
            return Err(line.err(*col, format!("duplicate element `{tok}`")));
        }
    }
    let n = names.len();

    let line = p.expect("`relation`")?;
    if line.tokens().iter().map(|t| t.1).collect::<Vec<_>>() != ["relation"] {
        return Err(line.err(1, "expected `relation`"));
    }
    let mut relation = Vec::with_capacity(n);
    for _ in 0..n {
        let line = p.expect("a relation row")?;
        let toks = line.tokens();
        if toks.len() != n {
            return Err(line.err(1, format!("expected {n} entries, found {}", toks.len())));
        }
        let mut row = Vec::with_capacity(n);
        for (col, tok) in toks {
            row.push(match tok {
                "1" => true,
                "0" => false,
                _ => return Err(line.err(col, format!("expected 0 or 1, found `{tok}`"))),
            });
        }
        relation.push(row);
    }

    let mut doc = PsosetDocument::new(names, relation);
    doc.comments = comments;
    while let Some(line) = p.next() {
        let here = Line { number: line.number, text: line.text };
        let toks = here.tokens();
        let (kw_col, kw) = toks[0];
        let label = |i: usize| -> Result<String, ParseError> {
            toks.get(i).map(|t| t.1.to_string()).ok_or_else(|| here.err(kw_col, format!("`{kw}` needs a label")))
        };
        match kw {
            "meet" | "join" => {
                if toks.len() != 1 {
                    return Err(here.err(toks[1].0, format!("`{kw}` takes no arguments")));
                }
                let slot = if kw == "meet" { &doc.meet } else { &doc.join };
                if slot.is_some() {
                    return Err(here.err(kw_col, format!("duplicate `{kw}` block")));
                }
                let t = read_table(&mut p, &doc.names, kw)?;
                if kw == "meet" {
                    doc.meet = Some(t);
                } else {
                    doc.join = Some(t);
                }
            }
            "subset" => {
                let name = label(1)?;
                let mut s = ElementSet::EMPTY;
                for &(col, tok) in &toks[2..] {
                    s.insert(lookup(&doc.names, &here, col, tok)?);
                }
                doc.subsets.push((name, s));
            }
            "map" => {
                let name = label(1)?;
                if toks.len() - 2 != n {
                    return Err(here.err(kw_col, format!("map needs {n} values, found {}", toks.len() - 2)));
                }
                let mut vals = Vec::with_capacity(n);
                for &(col, tok) in &toks[2..] {
                    vals.push(lookup(&doc.names, &here, col, tok)?);
                }
                doc.maps.push((name, UnaryMap::new(n, vals).expect("values resolved to elements")));
            }
            "op" => {
                let name = label(1)?;
                if toks.len() > 2 {
                    return Err(here.err(toks[2].0, "`op` takes a single label"));
                }
                let t = read_table(&mut p, &doc.names, &format!("op {name}"))?;
                doc.ops.push((name, t));
            }
            other => return Err(here.err(kw_col, format!("unknown block `{other}`"))),
        }
    }
    Ok(doc)
}

fn write_table(out: &mut String, names: &[String], t: &BinaryOpTable) {
    for row in t.rows() {
        let cells: Vec<&str> = row.iter().map(|&v| names[v].as_str()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
}

/// Canonical text: comments, header, relation, meet, join, subsets, maps, ops.
pub fn serialize(doc: &PsosetDocument) -> String {
    let mut out = String::new();
    for c in &doc.comments {
        if c.is_empty() {
            out.push_str("#\n");
        } else {
            let _ = writeln!(out, "# {c}");
        }
    }
    let _ = writeln!(out, "psoset {FORMAT_VERSION}");
    let _ = writeln!(out, "elements {}", doc.names.join(" "));
    out.push_str("relation\n");
    for row in &doc.relation {
        let bits: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
        out.push_str(&bits.join(" "));
        out.push('\n');
    }
    if let Some(m) = &doc.meet {
        out.push_str("meet\n");
        write_table(&mut out, &doc.names, m);
    }
    if let Some(j) = &doc.join {
        out.push_str("join\n");
        write_table(&mut out, &doc.names, j);
    }
    for (label, s) in &doc.subsets {
        out.push_str("subset ");
        out.push_str(label);
        for x in *s {
            out.push(' ');
            out.push_str(&doc.names[x]);
        }
        out.push('\n');
    }
    for (label, m) in &doc.maps {
        let vals: Vec<&str> = m.values().iter().map(|&v| doc.names[v].as_str()).collect();
        let _ = writeln!(out, "map {label} {}", vals.join(" "));
    }
    for (label, t) in &doc.ops {
        let _ = writeln!(out, "op {label}");
        write_table(&mut out, &doc.names, t);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "# chain\npsoset 1\nelements 0 m 1\nrelation\n1 1 1\n0 1 1\n0 0 1\nsubset S 0 1\nmap I 0 0 1\nop T\n0 0 0\n0 m m\n0 m 1\n";

    #[test]
    fn round_trip() {
        let doc = parse(SMALL).unwrap();
        assert_eq!(doc.comments, vec!["chain"]);
        assert_eq!(doc.subset("S").unwrap().len(), 2);
        assert_eq!(doc.map("I").unwrap().values(), &[0, 0, 2]);
        assert_eq!(doc.op("T").unwrap().get(1, 1), 1);
        assert_eq!(serialize(&doc), SMALL);
        assert!(doc.psoset().unwrap().is_bounded());
    }

    #[test]
    fn errors_carry_positions() {
        let bad = SMALL.replace("0 1 1\n0 0 1", "0 1 x\n0 0 1");
        let e = parse(&bad).unwrap_err();
        assert_eq!((e.line, e.column), (6, 5));
        let e = parse("psoset 2\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 8));
        let e = parse("psoset 1\nelements 0 1\nrelation\n1 1\n").unwrap_err();
        assert_eq!(e.line, 5);
        let e = parse(&SMALL.replace("map I 0 0 1", "map I 0 q 1")).unwrap_err();
        assert_eq!((e.line, e.column), (9, 9));
        let e = parse(&SMALL.replace("subset S", "sub S")).unwrap_err();
        assert!(e.message.contains("unknown block"));
    }
}
