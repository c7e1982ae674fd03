//! Line-oriented graph file format.
//!
//! ```text
//! # comment
//! dims P Q
//! edge I J S T
//! ```
//!
//! `edge I J S T` is the edge `{(I,J),(S,T)}` with 1-based coordinates.
//! Fields are separated by single spaces, `#` starts a comment and blank
//! lines are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Dims, Edge, Graph, Vertex};

fn parse_fields(line: usize, fields: &[&str], want: usize) -> Result<Vec<usize>> {
    if fields.len() != want {
        return Err(Error::Syntax {
            line,
            message: format!("expected {want} fields, found {}", fields.len()),
        });
    }
    fields
        .iter()
        .map(|f| {
            if f.is_empty() || !f.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Syntax { line, message: format!("not a positive integer: {f:?}") });
            }
            f.parse::<usize>()
                .map_err(|_| Error::Syntax { line, message: format!("integer too large: {f:?}") })
        })
        .collect()
}

/// Parses a graph file.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if !text.is_ascii() {
        let line = text.lines().position(|l| !l.is_ascii()).unwrap_or(0) + 1;
        return Err(Error::Syntax { line, message: "non-ASCII input".into() });
    }
    let mut dims: Option<Dims> = None;
    let mut edges = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim_end_matches('\r');
        if content.trim().is_empty() {
            continue;
        }
        let mut parts = content.trim_end().split(' ');
        let keyword = parts.next().unwrap_or("");
        let fields: Vec<&str> = parts.collect();
        match keyword {
            "dims" => {
                if dims.is_some() {
                    return Err(Error::Syntax { line, message: "duplicate dims line".into() });
                }
                let v = parse_fields(line, &fields, 2)?;
                dims = Some(Dims::new(v[0], v[1]).map_err(|_| Error::Syntax {
                    line,
                    message: "dims must be positive".into(),
                })?);
            }
            "edge" => {
                let Some(d) = dims else {
                    return Err(Error::MissingDims);
                };
                let v = parse_fields(line, &fields, 4)?;
                let (a, b) = (Vertex::new(v[0], v[1]), Vertex::new(v[2], v[3]));
                if !d.contains(a) || !d.contains(b) {
                    return Err(Error::OutOfRangeAt { line });
                }
                edges.push(Edge::new(a, b));
            }
            other => {
                return Err(Error::Syntax { line, message: format!("unknown keyword {other:?}") });
            }
        }
    }
    let dims = dims.ok_or(Error::MissingDims)?;
    Graph::new(dims, edges)
}

/// Writes `g` in canonical edge order.
pub fn write_graph(g: &Graph) -> String {
    let d = g.dims();
    let mut out = format!("dims {} {}\n", d.p(), d.q());
    for e in g.edges() {
        let (u, v) = (e.u(), e.v());
        writeln!(out, "edge {} {} {} {}", u.i, u.j, v.i, v.j).expect("write to String");
    }
    out
}
