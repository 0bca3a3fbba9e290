//! Text formats: lattice files, operator tables and DOT export.
//!
//! A lattice file is line oriented:
//!
//! ```text
//! # comment
//! elements: 0 a e 1
//! covers:
//! 0 a
//! a e
//! e 1
//! ```
//!
//! Optional `bottom: <label>` / `top: <label>` lines are checked against the
//! computed bounds. A table file is a tab-separated grid whose header row
//! starts with the corner token `*` followed by the carrier labels.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{build_lattice, FiniteBoundedLattice, LatticeError};
use crate::ops::{Carrier, OpError, OpTable};

pub const CORNER: &str = "*";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown label `{label}`")]
    UnknownLabel { line: usize, label: String },
    #[error("table shape: {0}")]
    Shape(String),
    #[error("declared {which} `{declared}` but the order has {which} `{actual}`")]
    BoundMismatch {
        which: &'static str,
        declared: String,
        actual: String,
    },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Op(#[from] OpError),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LatticeFile {
    pub labels: Vec<String>,
    pub covers: Vec<(String, String)>,
    pub bottom: Option<String>,
    pub top: Option<String>,
}

impl LatticeFile {
    pub fn build(&self) -> Result<FiniteBoundedLattice, IoError> {
        let l = build_lattice(&self.labels, &self.covers)?;
        for (which, declared, actual) in [("bottom", &self.bottom, l.bottom()), ("top", &self.top, l.top())] {
            if let Some(d) = declared {
                if d != l.label(actual) {
                    return Err(IoError::BoundMismatch {
                        which,
                        declared: d.clone(),
                        actual: l.label(actual).to_string(),
                    });
                }
            }
        }
        Ok(l)
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

pub fn parse_lattice_file(text: &str) -> Result<LatticeFile, IoError> {
    let mut file = LatticeFile::default();
    let mut seen_elements = false;
    let mut in_covers = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = strip_comment(raw);
        if s.is_empty() {
            continue;
        }
        if let Some((key, rest)) = s.split_once(':') {
            let rest = rest.trim();
            match key.trim() {
                "elements" => {
                    if seen_elements {
                        return Err(IoError::Syntax { line, msg: "duplicate `elements:`".into() });
                    }
                    seen_elements = true;
                    file.labels = rest.split_whitespace().map(String::from).collect();
                    in_covers = false;
                }
                "covers" => {
                    if !rest.is_empty() {
                        return Err(IoError::Syntax { line, msg: "cover pairs go on the following lines".into() });
                    }
                    in_covers = true;
                }
                k @ ("bottom" | "top") => {
                    let label = single_token(rest, line)?;
                    if k == "bottom" {
                        file.bottom = Some(label);
                    } else {
                        file.top = Some(label);
                    }
                }
                other => {
                    return Err(IoError::Syntax { line, msg: format!("unknown section `{other}`") });
                }
            }
            continue;
        }
        if !in_covers {
            return Err(IoError::Syntax { line, msg: "expected `elements:` or `covers:`".into() });
        }
        let toks: Vec<_> = s.split_whitespace().collect();
        let [x, y] = toks[..] else {
            return Err(IoError::Syntax { line, msg: "a cover line holds exactly two labels".into() });
        };
        for t in [x, y] {
            if !file.labels.iter().any(|l| l == t) {
                return Err(IoError::UnknownLabel { line, label: t.to_string() });
            }
        }
        file.covers.push((x.to_string(), y.to_string()));
    }
    if !seen_elements {
        return Err(IoError::Syntax { line: 0, msg: "missing `elements:` line".into() });
    }
    for (which, label) in [("bottom", &file.bottom), ("top", &file.top)] {
        if let Some(l) = label {
            if !file.labels.contains(l) {
                return Err(IoError::UnknownLabel { line: 0, label: format!("{l} ({which})") });
            }
        }
    }
    Ok(file)
}

fn single_token(s: &str, line: usize) -> Result<String, IoError> {
    let toks: Vec<_> = s.split_whitespace().collect();
    match toks[..] {
        [t] => Ok(t.to_string()),
        _ => Err(IoError::Syntax { line, msg: "expected one label".into() }),
    }
}

pub fn parse_lattice(text: &str) -> Result<FiniteBoundedLattice, IoError> {
    parse_lattice_file(text)?.build()
}

pub fn emit_lattice(l: &FiniteBoundedLattice) -> String {
    let mut out = String::new();
    writeln!(out, "elements: {}", l.labels().join(" ")).unwrap();
    writeln!(out, "bottom: {}", l.label(l.bottom())).unwrap();
    writeln!(out, "top: {}", l.label(l.top())).unwrap();
    writeln!(out, "covers:").unwrap();
    for &(x, y) in l.covers() {
        writeln!(out, "{} {}", l.label(x), l.label(y)).unwrap();
    }
    out
}

pub fn emit_table(op: &OpTable) -> String {
    let l = op.lattice();
    let m = op.carrier().members();
    let mut out = String::new();
    let header: Vec<&str> = std::iter::once(CORNER).chain(m.iter().map(|&x| l.label(x))).collect();
    writeln!(out, "{}", header.join("\t")).unwrap();
    for &x in m {
        let row: Vec<&str> = std::iter::once(l.label(x)).chain(m.iter().map(|&y| l.label(op.get(x, y)))).collect();
        writeln!(out, "{}", row.join("\t")).unwrap();
    }
    out
}

/// Parses a grid over any sub-carrier of `lattice`. Cells may be separated by
/// tabs or spaces; the corner token is optional.
pub fn parse_table(text: &str, lattice: &Arc<FiniteBoundedLattice>) -> Result<OpTable, IoError> {
    let mut rows = text
        .lines()
        .enumerate()
        .map(|(i, s)| (i + 1, strip_comment(s)))
        .filter(|(_, s)| !s.is_empty());
    let (hline, header) = rows.next().ok_or_else(|| IoError::Shape("empty table".into()))?;
    let mut cols: Vec<&str> = header.split_whitespace().collect();
    if cols.first() == Some(&CORNER) {
        cols.remove(0);
    }
    let lookup = |line: usize, t: &str| {
        lattice.id(t).ok_or_else(|| IoError::UnknownLabel { line, label: t.to_string() })
    };
    let col_ids = cols.iter().map(|t| lookup(hline, t)).collect::<Result<Vec<_>, _>>()?;
    let carrier = Carrier::new(lattice.clone(), col_ids.iter().copied());
    if carrier.len() != col_ids.len() {
        return Err(IoError::Shape("header repeats a label".into()));
    }

    let mut cells = HashMap::new();
    let mut row_ids = Vec::new();
    for (line, s) in rows {
        let toks: Vec<_> = s.split_whitespace().collect();
        if toks.len() != col_ids.len() + 1 {
            return Err(IoError::Shape(format!(
                "line {line}: expected {} cells after the row label, found {}",
                col_ids.len(),
                toks.len().saturating_sub(1)
            )));
        }
        let x = lookup(line, toks[0])?;
        row_ids.push(x);
        for (&y, t) in col_ids.iter().zip(&toks[1..]) {
            cells.insert((x, y), lookup(line, t)?);
        }
    }
    if row_ids != col_ids {
        return Err(IoError::Shape("row labels must repeat the header labels in order".into()));
    }
    Ok(OpTable::from_fn(carrier, |x, y| cells[&(x, y)])?)
}

/// Hasse diagram as a bottom-to-top digraph of cover edges.
pub fn emit_dot(l: &FiniteBoundedLattice) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=circle];\n");
    for x in l.elements() {
        writeln!(out, "  \"{}\";", l.label(x)).unwrap();
    }
    for &(x, y) in l.covers() {
        writeln!(out, "  \"{}\" -> \"{}\";", l.label(x), l.label(y)).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::{canonical_op, CanonicalKind};

    const L1: &str = "# lattice\nelements: 0 a e c f g 1\ncovers:\n0 a\na e\na c\na f\ne g\nc g\nf g\ng 1\n";

    #[test]
    fn parses_l1() {
        let f = parse_lattice_file(L1).unwrap();
        assert_eq!(f.labels.len(), 7);
        assert_eq!(f.covers.len(), 8);
        let l = f.build().unwrap();
        assert_eq!(l.label(l.top()), "1");
    }

    #[test]
    fn two_chain_and_errors() {
        let l = parse_lattice("elements: 0 1\ncovers:\n0 1\n").unwrap();
        assert_eq!(l.len(), 2);
        assert!(matches!(
            parse_lattice_file("elements: 0 1\ncovers:\n0 q\n"),
            Err(IoError::UnknownLabel { line: 3, .. })
        ));
        assert!(matches!(
            parse_lattice_file("elements: 0 1\ncovers:\n0 1 1\n"),
            Err(IoError::Syntax { line: 3, .. })
        ));
        assert!(matches!(parse_lattice_file("0 1\n"), Err(IoError::Syntax { line: 1, .. })));
        assert!(matches!(
            parse_lattice("elements: 0 1\nbottom: 1\ncovers:\n0 1\n"),
            Err(IoError::BoundMismatch { which: "bottom", .. })
        ));
    }

    #[test]
    fn lattice_round_trip() {
        let l = parse_lattice(L1).unwrap();
        let again = parse_lattice(&emit_lattice(&l)).unwrap();
        assert_eq!(l, again);
    }

    #[test]
    fn table_round_trip() {
        let l = Arc::new(parse_lattice(L1).unwrap());
        let op = canonical_op(CanonicalKind::MeetTnorm, Carrier::full(l.clone())).unwrap();
        let text = emit_table(&op);
        let back = parse_table(&text, &l).unwrap();
        assert_eq!(back, op);
        assert_eq!(emit_table(&back), text);
        let no_corner: String = text.lines().enumerate().map(|(i, s)| {
            if i == 0 { s.trim_start_matches("*\t").to_string() } else { s.to_string() }
        }).collect::<Vec<_>>().join("\n");
        assert_eq!(parse_table(&no_corner, &l).unwrap(), op);
    }

    #[test]
    fn table_shape_errors() {
        let l = Arc::new(parse_lattice("elements: 0 1\ncovers:\n0 1\n").unwrap());
        assert!(matches!(parse_table("*\t0\t1\n0\t0\n1\t0\t1\n", &l), Err(IoError::Shape(_))));
        assert!(matches!(parse_table("*\t0\t1\n1\t0\t1\n0\t0\t0\n", &l), Err(IoError::Shape(_))));
        assert!(matches!(parse_table("*\t0\tz\n", &l), Err(IoError::UnknownLabel { .. })));
        let grid = parse_table("*\t0\t1\n0\t0\t1\n1\t1\t1\n", &l).unwrap();
        assert_eq!(grid.get(l.bottom(), l.top()), l.top());
    }

    #[test]
    fn dot_edges() {
        let l = parse_lattice(L1).unwrap();
        let dot = emit_dot(&l);
        assert_eq!(dot.matches("->").count(), 8);
        assert!(dot.contains("rankdir=BT"));
    }
}
