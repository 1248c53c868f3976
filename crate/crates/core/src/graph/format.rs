//! Text formats.
//!
//! CSG v1 describes a charged signed graph:
//!
//! ```text
//! csg 3
//! charge 0 1
//! edge 0 1 1
//! edge 1 2 -1
//! ```
//!
//! Only nonzero charges are listed. Edges have `i < j` and sign `1` or `-1`
//! (a leading `+` is accepted). Records may come in any order; output is
//! sorted. Blank lines and lines starting with `#` are ignored.
//!
//! ISM describes a general integer symmetric matrix: `ism <n>` followed by the
//! upper triangle, row `i` holding entries `(i, i..n)`.

use std::fmt::Write as _;

use num_bigint::BigInt;

use super::{ChargedSignedGraph, IntSymMatrix};
use crate::error::{parse, Error, Result};

/// A parsed input of either kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Graph(ChargedSignedGraph),
    Matrix(IntSymMatrix),
}

impl Input {
    pub fn matrix(&self) -> IntSymMatrix {
        match self {
            Input::Graph(g) => g.adjacency_matrix(),
            Input::Matrix(m) => m.clone(),
        }
    }

    /// The graph view, if every entry lies in `{-1, 0, 1}`.
    pub fn graph(&self) -> Result<ChargedSignedGraph> {
        match self {
            Input::Graph(g) => Ok(g.clone()),
            Input::Matrix(m) => m.to_graph(),
        }
    }
}

pub fn to_csg(g: &ChargedSignedGraph) -> String {
    let mut out = format!("csg {}\n", g.n());
    for v in 0..g.n() {
        if g.charge(v) != 0 {
            let _ = writeln!(out, "charge {} {}", v, g.charge(v));
        }
    }
    for (i, j, s) in g.edge_list() {
        let _ = writeln!(out, "edge {i} {j} {s}");
    }
    out
}

pub fn to_ism(m: &IntSymMatrix) -> String {
    let mut out = format!("ism {}\n", m.n());
    for i in 0..m.n() {
        let row: Vec<String> = (i..m.n()).map(|j| m.get(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Meaningful lines with their 1-based numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Splits a line into tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn int<T: std::str::FromStr>(line: usize, (col, tok): (usize, &str), what: &str) -> Result<T> {
    tok.strip_prefix('+')
        .unwrap_or(tok)
        .parse()
        .map_err(|_| parse(line, col, format!("expected {what}, found `{tok}`")))
}

fn header(text: &str, keyword: &str) -> Result<(usize, usize)> {
    let (line, content) = records(text).next().ok_or_else(|| parse(1, 1, "empty input"))?;
    let t = tokens(content);
    if t[0].1 != keyword {
        return Err(parse(line, 1, format!("expected `{keyword}` header")));
    }
    if t.len() != 2 {
        return Err(parse(line, 1, "header takes exactly one count"));
    }
    Ok((line, int(line, t[1], "vertex count")?))
}

pub fn parse_csg(text: &str) -> Result<ChargedSignedGraph> {
    let (header_line, n) = header(text, "csg")?;
    let mut g = ChargedSignedGraph::empty(n);
    for (line, content) in records(text).filter(|(l, _)| *l != header_line) {
        let t = tokens(content);
        let arity = match t[0].1 {
            "charge" => 3,
            "edge" => 4,
            other => return Err(parse(line, 1, format!("unknown record `{other}`"))),
        };
        if t.len() != arity {
            return Err(parse(line, 1, format!("`{}` takes {} fields", t[0].1, arity - 1)));
        }
        let vertex = |k: usize| -> Result<usize> {
            let v: usize = int(line, t[k], "vertex index")?;
            if v >= n {
                return Err(parse(line, t[k].0, format!("vertex {v} out of range 0..{n}")));
            }
            Ok(v)
        };
        if arity == 3 {
            let v = vertex(1)?;
            let c: i8 = int(line, t[2], "charge")?;
            if !(-1..=1).contains(&c) {
                return Err(parse(line, t[2].0, "charge must be -1, 0 or 1"));
            }
            g.charges[v] = c;
        } else {
            let (i, j) = (vertex(1)?, vertex(2)?);
            if i >= j {
                return Err(parse(line, t[1].0, "edge endpoints must satisfy i < j"));
            }
            let s: i8 = int(line, t[3], "edge sign")?;
            if s != 1 && s != -1 {
                return Err(parse(line, t[3].0, "edge sign must be 1 or -1"));
            }
            g.set_edge(i, j, s)?;
        }
    }
    Ok(g)
}

pub fn parse_ism(text: &str) -> Result<IntSymMatrix> {
    let (header_line, n) = header(text, "ism")?;
    let mut m = IntSymMatrix::zeros(n);
    let mut row = 0;
    for (line, content) in records(text).filter(|(l, _)| *l != header_line) {
        if row == n {
            return Err(parse(line, 1, "too many rows"));
        }
        let t = tokens(content);
        if t.len() != n - row {
            return Err(parse(
                line,
                1,
                format!("row {row} needs {} entries, found {}", n - row, t.len()),
            ));
        }
        for (k, &tok) in t.iter().enumerate() {
            let v: BigInt = int(line, tok, "integer")?;
            m.set(row, row + k, v);
        }
        row += 1;
    }
    if row != n {
        return Err(parse(
            text.lines().count().max(1),
            1,
            format!("expected {n} rows, found {row}"),
        ));
    }
    Ok(m)
}

/// Parses either format, dispatching on the header keyword.
pub fn parse_input(text: &str) -> Result<Input> {
    let first = records(text).next().map(|(_, l)| tokens(l)[0].1);
    match first {
        Some("csg") => parse_csg(text).map(Input::Graph),
        Some("ism") => parse_ism(text).map(Input::Matrix),
        Some(other) => Err(parse(1, 1, format!("unknown format `{other}`"))),
        None => Err(Error::Parse {
            line: 1,
            column: 1,
            message: "empty input".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csg_round_trip_and_order_insensitivity() {
        let text = "csg 3\nedge 1 2 -1\ncharge 0 1\n# comment\nedge 0 1 +1\n";
        let g = parse_csg(text).unwrap();
        assert_eq!(to_csg(&g), "csg 3\ncharge 0 1\nedge 0 1 1\nedge 1 2 -1\n");
        assert_eq!(parse_csg(&to_csg(&g)).unwrap(), g);
    }

    #[test]
    fn csg_errors_carry_positions() {
        match parse_csg("csg 2\nedge 0 5 1\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 8)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_csg("csg 2\nedge 1 0 1\n").is_err());
        assert!(parse_csg("csg 2\nedge 0 1 2\n").is_err());
        assert!(parse_csg("csg 2\nloop 0\n").is_err());
        assert!(parse_csg("").is_err());
    }

    #[test]
    fn ism_round_trip() {
        let m = parse_ism("ism 2\n0 2\n0\n").unwrap();
        assert_eq!(m.get(0, 1), &BigInt::from(2));
        assert_eq!(to_ism(&m), "ism 2\n0 2\n0\n");
        assert!(parse_ism("ism 2\n0 2\n").is_err());
        assert!(matches!(parse_input("ism 1\n3\n"), Ok(Input::Matrix(_))));
    }
}
