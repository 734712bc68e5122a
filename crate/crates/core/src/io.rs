//! Edge-list text format.
//!
//! ```text
//! # comment lines start with '#'
//! n m
//! u v        (m lines, 0-indexed arc u -> v)
//! ```
//!
//! Blank lines are skipped. The writer emits the header and then arcs in the
//! digraph's insertion order, one per line, single-space separated, so a file
//! in that canonical form reads back and writes out unchanged.

use std::fmt::Write as _;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Digraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 0,
        message: "missing `n m` header".into(),
    })?;
    let (n, m) = parse_pair(hline, header)?;

    let mut arcs = Vec::with_capacity(m);
    for (line, body) in lines {
        if arcs.len() == m {
            return Err(Error::Parse {
                line,
                message: format!("more than the declared {m} arcs"),
            });
        }
        let (u, v) = parse_pair(line, body)?;
        arcs.push((u, v));
    }
    if arcs.len() != m {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: format!("declared {m} arcs, found {}", arcs.len()),
        });
    }
    Digraph::from_arcs(n, arcs)
}

fn parse_pair(line: usize, body: &str) -> Result<(usize, usize)> {
    let mut it = body.split_whitespace();
    let mut field = |what: &str| -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse {
            line,
            message: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line,
            message: format!("`{tok}` is not a non-negative integer"),
        })
    };
    let a = field("first field")?;
    let b = field("second field")?;
    if let Some(extra) = it.next() {
        return Err(Error::Parse {
            line,
            message: format!("unexpected trailing token `{extra}`"),
        });
    }
    Ok((a, b))
}

pub fn write_edge_list(d: &Digraph) -> String {
    let mut out = String::with_capacity(8 + 12 * d.m());
    writeln!(out, "{} {}", d.n(), d.m()).unwrap();
    for (u, v) in d.arcs() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn read_edge_list_file(path: &std::path::Path) -> Result<Digraph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_edge_list(&text)
}
