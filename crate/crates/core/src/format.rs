//! Line-oriented text format for link presentations.
//!
//! ```text
//! # comment
//! link L
//! components 4
//! clasp c1 1:1 2:3 +
//! ```
//!
//! or, for a general surface system,
//!
//! ```text
//! link B
//! components 3
//! word 1 2 3-
//! triple 1 2 3 1
//! ```
//!
//! A link with no body lines is read as a C-complex without clasps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::system::{CComplexData, Clasp, ClaspEndpoint, SurfaceSystemData, Validation};
use crate::word::{CyclicWord, Letter, LinearWord, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkBody {
    CComplex(CComplexData),
    System(SurfaceSystemData),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkEntry {
    pub name: String,
    pub body: LinkBody,
}

impl LinkEntry {
    pub fn n(&self) -> usize {
        match &self.body {
            LinkBody::CComplex(c) => c.n,
            LinkBody::System(s) => s.n(),
        }
    }

    pub fn validate(&self, mode: Validation) -> Result<()> {
        match &self.body {
            LinkBody::CComplex(c) => c.validate(),
            LinkBody::System(s) => s.validate(mode),
        }
    }

    /// The surface system, validated in `mode`.
    pub fn surface_system(&self, mode: Validation) -> Result<SurfaceSystemData> {
        let s = match &self.body {
            LinkBody::CComplex(c) => c.to_surface_system()?,
            LinkBody::System(s) => s.clone(),
        };
        s.validate(mode)?;
        Ok(s)
    }

    pub fn ccomplex(&self) -> Option<&CComplexData> {
        match &self.body {
            LinkBody::CComplex(c) => Some(c),
            LinkBody::System(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Clasps,
    Words,
}

struct Pending {
    name: String,
    line: usize,
    n: Option<usize>,
    kind: Option<Kind>,
    clasps: Vec<Clasp>,
    words: BTreeMap<usize, LinearWord>,
    triples: BTreeMap<(usize, usize, usize), i64>,
}

impl Pending {
    fn finish(self) -> Result<LinkEntry> {
        let n = self.n.ok_or_else(|| Error::Parse {
            line: self.line,
            column: 1,
            message: format!("link {} has no components line", self.name),
        })?;
        let body = match self.kind {
            None | Some(Kind::Clasps) => LinkBody::CComplex(CComplexData::new(n, self.clasps)),
            Some(Kind::Words) => {
                let mut words = vec![CyclicWord::default(); n];
                for (k, w) in self.words {
                    words[k - 1] = CyclicWord::from_linear(w);
                }
                LinkBody::System(SurfaceSystemData::new(n, words, self.triples))
            }
        };
        Ok(LinkEntry {
            name: self.name,
            body,
        })
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, t)| (line[..byte].chars().count() + 1, t))
        .collect()
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_usize(line: usize, (col, tok): (usize, &str), what: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| err(line, col, format!("expected {what}, found `{tok}`")))
}

fn parse_component(line: usize, tok: (usize, &str), n: usize) -> Result<usize> {
    let k = parse_usize(line, tok, "component index")?;
    if k == 0 || k > n {
        return Err(err(line, tok.0, format!("component {k} not in 1..={n}")));
    }
    Ok(k)
}

fn parse_endpoint(line: usize, (col, tok): (usize, &str), n: usize) -> Result<ClaspEndpoint> {
    let Some((c, r)) = tok.split_once(':') else {
        return Err(err(
            line,
            col,
            format!("expected <component>:<rank>, found `{tok}`"),
        ));
    };
    let component = parse_component(line, (col, c), n)?;
    let rank = parse_usize(line, (col + c.len() + 1, r), "rank")?;
    if rank == 0 {
        return Err(err(line, col + c.len() + 1, "ranks start at 1"));
    }
    Ok(ClaspEndpoint { component, rank })
}

/// Parses every link in `text`. Only syntax and index ranges are checked
/// here; structural validation is left to the data model.
pub fn parse_link_file(text: &str) -> Result<Vec<LinkEntry>> {
    let mut out = Vec::new();
    let mut names = BTreeSet::new();
    let mut cur: Option<Pending> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(kw_col, kw)) = toks.first() else {
            continue;
        };
        let args = &toks[1..];
        let need = |count: usize| -> Result<()> {
            if args.len() != count {
                return Err(err(
                    line_no,
                    kw_col,
                    format!("`{kw}` takes {count} argument(s), found {}", args.len()),
                ));
            }
            Ok(())
        };
        if kw == "link" {
            need(1)?;
            if let Some(p) = cur.take() {
                out.push(p.finish()?);
            }
            let name = args[0].1.to_string();
            if !names.insert(name.clone()) {
                return Err(err(
                    line_no,
                    args[0].0,
                    format!("duplicate link name `{name}`"),
                ));
            }
            cur = Some(Pending {
                name,
                line: line_no,
                n: None,
                kind: None,
                clasps: Vec::new(),
                words: BTreeMap::new(),
                triples: BTreeMap::new(),
            });
            continue;
        }
        let Some(p) = cur.as_mut() else {
            return Err(err(
                line_no,
                kw_col,
                format!("`{kw}` before any `link` line"),
            ));
        };
        if kw == "components" {
            need(1)?;
            if p.n.is_some() {
                return Err(err(line_no, kw_col, "duplicate components line"));
            }
            let n = parse_usize(line_no, args[0], "component count")?;
            if n == 0 {
                return Err(err(
                    line_no,
                    args[0].0,
                    "component count must be at least 1",
                ));
            }
            p.n = Some(n);
            continue;
        }
        let Some(n) = p.n else {
            return Err(err(line_no, kw_col, "`components` must precede the body"));
        };
        let kind = match kw {
            "clasp" => Kind::Clasps,
            "word" | "triple" => Kind::Words,
            _ => return Err(err(line_no, kw_col, format!("unknown keyword `{kw}`"))),
        };
        if p.kind.is_some_and(|k| k != kind) {
            return Err(err(
                line_no,
                kw_col,
                "a link body is either clasps or words/triples, not both",
            ));
        }
        p.kind = Some(kind);
        match kw {
            "clasp" => {
                need(4)?;
                let id = args[0].1.to_string();
                if p.clasps.iter().any(|c| c.id == id) {
                    return Err(err(
                        line_no,
                        args[0].0,
                        format!("duplicate clasp id `{id}`"),
                    ));
                }
                let a = parse_endpoint(line_no, args[1], n)?;
                let b = parse_endpoint(line_no, args[2], n)?;
                let sign = match args[3].1 {
                    "+" => Sign::Pos,
                    "-" => Sign::Neg,
                    other => {
                        return Err(err(
                            line_no,
                            args[3].0,
                            format!("clasp sign must be + or -, found `{other}`"),
                        ))
                    }
                };
                p.clasps.push(Clasp { id, a, b, sign });
            }
            "word" => {
                if args.is_empty() {
                    return Err(err(line_no, kw_col, "`word` needs a component index"));
                }
                let k = parse_component(line_no, args[0], n)?;
                if p.words.contains_key(&k) {
                    return Err(err(
                        line_no,
                        args[0].0,
                        format!("duplicate word for component {k}"),
                    ));
                }
                let mut letters = Vec::with_capacity(args.len() - 1);
                for &(col, tok) in &args[1..] {
                    let l: Letter = tok.parse().map_err(|_| {
                        err(
                            line_no,
                            col,
                            format!("invalid letter `{tok}` (use `3` or `3-`)"),
                        )
                    })?;
                    if l.index() > n {
                        return Err(err(line_no, col, format!("letter {l} not in 1..={n}")));
                    }
                    letters.push(l);
                }
                p.words.insert(k, LinearWord::new(letters));
            }
            _ => {
                need(4)?;
                let i = parse_component(line_no, args[0], n)?;
                let j = parse_component(line_no, args[1], n)?;
                let k = parse_component(line_no, args[2], n)?;
                if !(i < j && j < k) {
                    return Err(err(
                        line_no,
                        args[0].0,
                        "triple indices must be strictly increasing",
                    ));
                }
                let v: i64 = args[3].1.parse().map_err(|_| {
                    err(
                        line_no,
                        args[3].0,
                        format!("expected signed integer, found `{}`", args[3].1),
                    )
                })?;
                if p.triples.insert((i, j, k), v).is_some() {
                    return Err(err(
                        line_no,
                        args[0].0,
                        format!("duplicate triple {i} {j} {k}"),
                    ));
                }
            }
        }
    }
    if let Some(p) = cur.take() {
        out.push(p.finish()?);
    }
    Ok(out)
}

/// Looks up a link by name; with `None`, the file must hold exactly one.
pub fn find_link<'a>(links: &'a [LinkEntry], name: Option<&str>) -> Option<&'a LinkEntry> {
    match name {
        Some(name) => links.iter().find(|l| l.name == name),
        None if links.len() == 1 => links.first(),
        None => None,
    }
}

/// Writes one link. Clasps keep their stored order, words go by
/// component (empty words omitted), triples in lexicographic order.
pub fn serialize_link(entry: &LinkEntry) -> String {
    let mut out = String::new();
    writeln!(out, "link {}", entry.name).unwrap();
    writeln!(out, "components {}", entry.n()).unwrap();
    match &entry.body {
        LinkBody::CComplex(c) => {
            for cl in &c.clasps {
                let sign = if cl.sign == Sign::Pos { "+" } else { "-" };
                writeln!(
                    out,
                    "clasp {} {}:{} {}:{} {sign}",
                    cl.id, cl.a.component, cl.a.rank, cl.b.component, cl.b.rank
                )
                .unwrap();
            }
        }
        LinkBody::System(s) => {
            let mut any = false;
            for k in 1..=s.n() {
                let w = s.linear_word(k);
                if !w.is_empty() {
                    writeln!(out, "word {k} {w}").unwrap();
                    any = true;
                }
            }
            for (&(i, j, k), &v) in s.triple_table() {
                writeln!(out, "triple {i} {j} {k} {v}").unwrap();
                any = true;
            }
            if !any {
                // keep the body kind on round trip
                writeln!(out, "word 1").unwrap();
            }
        }
    }
    out
}

pub fn serialize_link_file(entries: &[LinkEntry]) -> String {
    entries
        .iter()
        .map(serialize_link)
        .collect::<Vec<_>>()
        .join("\n")
}
