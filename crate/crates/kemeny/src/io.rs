//! Edge-list text format.
//!
//! One edge per line, `u v`, with an optional third token giving the weight
//! as `p/q` or an integer. Lines starting with `#` are ignored. The vertex
//! count is `max index + 1` unless an `n <count>` header appears first.

use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::Rational;

fn parse_weight(token: &str, line: usize) -> Result<Rational> {
    let make_err = || Error::Parse {
        line,
        message: format!("invalid weight '{token}'"),
    };
    if let Some((p, q)) = token.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| make_err())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| make_err())?;
        if q == BigInt::from(0) {
            return Err(make_err());
        }
        Ok(Rational::new(p, q))
    } else {
        let p = BigInt::from_str(token).map_err(|_| make_err())?;
        Ok(Rational::from_integer(p))
    }
}

/// Parses the edge-list format described in the module docs.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared_n: Option<usize> = None;
    let mut edges: Vec<((usize, usize), Option<Rational>)> = Vec::new();
    let mut max_vertex = 0usize;
    let mut saw_edge = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let first = tokens.next().expect("non-empty line has a token");

        if first == "n" && !saw_edge && declared_n.is_none() {
            let count = tokens.next().ok_or_else(|| Error::Parse {
                line: line_no,
                message: "header 'n' requires a count".into(),
            })?;
            if tokens.next().is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "unexpected tokens after vertex count".into(),
                });
            }
            let count: usize = count.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid vertex count '{count}'"),
            })?;
            declared_n = Some(count);
            continue;
        }

        let u: usize = first.parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("invalid vertex '{first}'"),
        })?;
        let v_token = tokens.next().ok_or_else(|| Error::Parse {
            line: line_no,
            message: "edge line needs two vertices".into(),
        })?;
        let v: usize = v_token.parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("invalid vertex '{v_token}'"),
        })?;
        let weight = match tokens.next() {
            Some(tok) => Some(parse_weight(tok, line_no)?),
            None => None,
        };
        if tokens.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: "unexpected tokens after edge".into(),
            });
        }
        saw_edge = true;
        max_vertex = max_vertex.max(u).max(v);
        edges.push(((u, v), weight));
    }

    let inferred = if saw_edge { max_vertex + 1 } else { 0 };
    let n = declared_n.unwrap_or(inferred);
    if saw_edge && max_vertex + 1 > n {
        return Err(Error::Parse {
            line: 0,
            message: format!("edge references vertex {max_vertex} but the header declares n = {n}"),
        });
    }
    if n == 0 {
        return Err(Error::Parse {
            line: 0,
            message: "empty graph: no edges and no 'n' header".into(),
        });
    }

    let any_weighted = edges.iter().any(|(_, w)| w.is_some());
    if any_weighted {
        let one = Rational::from_integer(1.into());
        Graph::new_weighted(
            n,
            edges
                .into_iter()
                .map(|(e, w)| (e, w.unwrap_or_else(|| one.clone()))),
        )
    } else {
        Graph::new(n, edges.into_iter().map(|(e, _)| e))
    }
}

/// Writes a graph in the same format, always with an explicit header.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for &(u, v) in g.edges() {
        if g.is_weighted() {
            let w = g.weight(u, v).expect("edge weight");
            out.push_str(&format!("{u} {v} {w}\n"));
        } else {
            out.push_str(&format!("{u} {v}\n"));
        }
    }
    out
}
