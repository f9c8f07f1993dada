//! Edge-list and DIMACS readers and writers.
//!
//! Edge-list files start with an `n m` header followed by `m` lines `u v`
//! (0-based). A file whose first line cannot be a header for the rest of the
//! file is read as a bare edge list with `n = max id + 1`. DIMACS files use
//! `c` comments, a `p edge n m` header and 1-based `e u v` lines.

use std::io::{BufRead, Write};
use std::str::FromStr;

use thiserror::Error;

use super::{Graph, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    EdgeList,
    Dimacs,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edge-list" | "edgelist" | "el" => Ok(Format::EdgeList),
            "dimacs" => Ok(Format::Dimacs),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    NonSimple { line: usize, source: GraphError },
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn parse_ids(line_no: usize, fields: &[&str]) -> Result<Vec<usize>, ParseError> {
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>().map_err(|_| {
                syntax(
                    line_no,
                    format!("expected a non-negative integer, got `{f}`"),
                )
            })
        })
        .collect()
}

pub fn read_graph<R: BufRead>(reader: R, format: Format) -> Result<Graph, ParseError> {
    match format {
        Format::EdgeList => read_edge_list(reader),
        Format::Dimacs => read_dimacs(reader),
    }
}

/// Builds the graph, attributing a non-simple edge to its source line.
fn build(n: usize, edges: Vec<(usize, usize, usize)>) -> Result<Graph, ParseError> {
    let mut seen = std::collections::HashSet::with_capacity(edges.len());
    for &(line, u, v) in &edges {
        if u == v {
            return Err(ParseError::NonSimple {
                line,
                source: GraphError::SelfLoop(u),
            });
        }
        if u >= n || v >= n {
            return Err(ParseError::NonSimple {
                line,
                source: GraphError::VertexOutOfRange(u, v, n),
            });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::NonSimple {
                line,
                source: GraphError::DuplicateEdge(u.min(v), u.max(v)),
            });
        }
    }
    Ok(Graph::from_edges(
        n,
        edges.into_iter().map(|(_, u, v)| (u, v)),
    )?)
}

fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph, ParseError> {
    let mut rows: Vec<(usize, usize, usize)> = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 2 {
            return Err(syntax(
                i + 1,
                format!("expected two fields, got {}", fields.len()),
            ));
        }
        let ids = parse_ids(i + 1, &fields)?;
        rows.push((i + 1, ids[0], ids[1]));
    }
    let Some(&(_, n, m)) = rows.first() else {
        return Ok(Graph::empty(0));
    };
    let body = &rows[1..];
    let fits = |&(_, u, v): &(usize, usize, usize)| u < n && v < n;
    // `0 0` and friends are edges, not headers: a header needs n >= 1.
    let single_edge = body.is_empty() && m != 0;
    if n > 0 && !single_edge && body.iter().all(fits) {
        if body.len() != m {
            return Err(syntax(
                1,
                format!("header announces {m} edges, found {}", body.len()),
            ));
        }
        return build(n, body.to_vec());
    }
    let n = rows
        .iter()
        .map(|&(_, u, v)| u.max(v) + 1)
        .max()
        .unwrap_or(0);
    build(n, rows)
}

fn read_dimacs<R: BufRead>(reader: R) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.first().copied() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(syntax(line_no, "second problem line"));
                }
                if fields.len() != 4 || !matches!(fields[1], "edge" | "col") {
                    return Err(syntax(line_no, "expected `p edge <n> <m>`"));
                }
                let ids = parse_ids(line_no, &fields[2..])?;
                header = Some((line_no, ids[0], ids[1]));
            }
            Some("e") => {
                let Some((_, n, _)) = header else {
                    return Err(syntax(line_no, "edge line before problem line"));
                };
                if fields.len() != 3 {
                    return Err(syntax(line_no, "expected `e <u> <v>`"));
                }
                let ids = parse_ids(line_no, &fields[1..])?;
                if ids.iter().any(|&x| x == 0 || x > n) {
                    return Err(syntax(line_no, format!("vertex id outside 1..={n}")));
                }
                edges.push((line_no, ids[0] - 1, ids[1] - 1));
            }
            Some(other) => {
                return Err(syntax(line_no, format!("unknown line type `{other}`")));
            }
        }
    }
    let Some((line_no, n, m)) = header else {
        return Err(syntax(0, "missing problem line"));
    };
    if edges.len() != m {
        return Err(syntax(
            line_no,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    build(n, edges)
}

pub fn write_graph<W: Write>(g: &Graph, mut out: W, format: Format) -> std::io::Result<()> {
    match format {
        // the empty graph is the empty file
        Format::EdgeList if g.n() == 0 => {}
        Format::EdgeList => {
            writeln!(out, "{} {}", g.n(), g.m())?;
            for (u, v) in g.edges() {
                writeln!(out, "{u} {v}")?;
            }
        }
        Format::Dimacs => {
            writeln!(out, "p edge {} {}", g.n(), g.m())?;
            for (u, v) in g.edges() {
                writeln!(out, "e {} {}", u + 1, v + 1)?;
            }
        }
    }
    Ok(())
}

pub fn to_string(g: &Graph, format: Format) -> String {
    let mut buf = Vec::new();
    write_graph(g, &mut buf, format).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ascii output")
}

pub fn from_str(s: &str, format: Format) -> Result<Graph, ParseError> {
    read_graph(s.as_bytes(), format)
}
