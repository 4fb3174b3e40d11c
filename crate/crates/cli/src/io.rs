//! Text formats.
//!
//! Digraph: first line `n e`, then `e` lines `i j` with 0-based vertices.
//! Canonical form: one line `n: m_1 m_2 ... m_n`. Blank lines and lines
//! starting with `#` are ignored in both.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use digrho_core::{CanonicalForm, Digraph, Error as CoreError};

use crate::error::{CliError, CliResult};

pub fn format_digraph(d: &Digraph) -> String {
    let mut out = format!("{} {}\n", d.vertex_count(), d.arc_count());
    for (i, j) in d.arcs() {
        let _ = writeln!(out, "{i} {j}");
    }
    out
}

/// Parses either text format; a `:` on the first content line selects the
/// canonical form.
pub fn parse_digraph(text: &str, path: &Path) -> CliResult<Digraph> {
    let err = |line: usize, message: String| CliError::Parse { path: path.to_path_buf(), line, message };
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first_no, first) = lines.next().ok_or_else(|| err(1, "empty input".into()))?;
    if first.contains(':') {
        if let Some((no, _)) = lines.next() {
            return Err(err(no, "trailing content after canonical form".into()));
        }
        let form = parse_canonical(first).map_err(|m| err(first_no, m))?;
        return Ok(form.expand());
    }
    let [n, e] = parse_pair(first).map_err(|m| err(first_no, m))?;
    let mut arcs = Vec::with_capacity(e);
    let mut seen = HashSet::new();
    let mut last = first_no;
    for (no, line) in lines {
        if arcs.len() == e {
            return Err(err(no, format!("more than the declared {e} arcs")));
        }
        let [i, j] = parse_pair(line).map_err(|m| err(no, m))?;
        let problem = if let Some(&index) = [i, j].iter().find(|&&x| x >= n) {
            Some(CoreError::VertexOutOfRange { index, n })
        } else if i == j {
            Some(CoreError::LoopForbidden(i))
        } else if !seen.insert((i, j)) {
            Some(CoreError::MultiarcForbidden(i, j))
        } else {
            None
        };
        if let Some(problem) = problem {
            return Err(err(no, problem.to_string()));
        }
        arcs.push((i, j));
        last = no;
    }
    if arcs.len() != e {
        return Err(err(last, format!("declared {e} arcs, found {}", arcs.len())));
    }
    Digraph::from_arcs(n, &arcs).map_err(|core| err(last, core.to_string()))
}

fn parse_pair(line: &str) -> Result<[usize; 2], String> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let [a, b] = fields[..] else {
        return Err(format!("expected two integers, got {line:?}"));
    };
    let num = |s: &str| s.parse::<usize>().map_err(|_| format!("not a nonnegative integer: {s:?}"));
    Ok([num(a)?, num(b)?])
}

pub fn parse_canonical(line: &str) -> Result<CanonicalForm, String> {
    let (head, rest) = line.split_once(':').ok_or_else(|| "missing ':'".to_string())?;
    let n: usize = head.trim().parse().map_err(|_| format!("bad vertex count {head:?}"))?;
    let m = rest
        .split_whitespace()
        .map(|s| s.parse::<usize>().map_err(|_| format!("bad prefix length {s:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    if m.len() != n {
        return Err(format!("expected {n} prefix lengths, got {}", m.len()));
    }
    CanonicalForm::new(m).map_err(|e| e.to_string())
}

pub fn read_digraph(path: &Path) -> CliResult<Digraph> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Input { path: path.to_path_buf(), source })?;
    parse_digraph(&text, path)
}
