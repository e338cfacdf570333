//! Line-oriented graph and order files, and DOT export.
//!
//! Graph files hold `v <id>` and `e <id> <src> <tgt>` lines; order files a
//! single `order <id> <id> ...` record that may wrap over several lines.
//! Ids match `[A-Za-z0-9_]+`. Blank lines and `#` comments are ignored.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{build_graph, Graph, GraphError, VertexId};
use crate::order::{make_order, EdgeOrder, OrderError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("{}{source}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Order {
        line: Option<usize>,
        source: OrderError,
    },
}

fn valid_id(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Non-comment tokens of each line, with 1-based line numbers.
fn tokens(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn check_ids(line: usize, ids: &[&str]) -> Result<(), ParseError> {
    match ids.iter().find(|s| !valid_id(s)) {
        Some(bad) => Err(ParseError::Syntax {
            line,
            msg: format!("invalid id `{bad}`"),
        }),
        None => Ok(()),
    }
}

/// Parses a graph file. In strict mode every endpoint must be declared with
/// a `v` line (anywhere in the file); `lax` declares missing endpoints.
pub fn parse_graph(text: &str, lax: bool) -> Result<Graph, ParseError> {
    let mut vertices: Vec<&str> = Vec::new();
    let mut vertex_line: HashMap<&str, usize> = HashMap::new();
    let mut edges: Vec<(usize, [&str; 3])> = Vec::new();
    let mut edge_line: HashMap<&str, usize> = HashMap::new();
    for (line, toks) in tokens(text) {
        match toks.as_slice() {
            ["v", id] => {
                check_ids(line, &[id])?;
                if vertex_line.insert(id, line).is_some() {
                    return Err(ParseError::Graph {
                        line,
                        source: GraphError::DuplicateVertexId((*id).into()),
                    });
                }
                vertices.push(id);
            }
            ["e", id, s, t] => {
                check_ids(line, &[id, s, t])?;
                if edge_line.insert(id, line).is_some() {
                    return Err(ParseError::Graph {
                        line,
                        source: GraphError::DuplicateEdgeId((*id).into()),
                    });
                }
                edges.push((line, [id, s, t]));
            }
            [kw, ..] if *kw == "v" || *kw == "e" => {
                return Err(ParseError::Syntax {
                    line,
                    msg: format!("wrong number of fields for `{kw}` record"),
                })
            }
            [kw, ..] => {
                return Err(ParseError::Syntax {
                    line,
                    msg: format!("unknown record `{kw}`"),
                })
            }
            [] => unreachable!("blank lines are skipped"),
        }
    }
    for (line, [id, s, t]) in &edges {
        for end in [s, t] {
            if !vertex_line.contains_key(end) {
                if lax {
                    vertex_line.insert(end, *line);
                    vertices.push(end);
                } else {
                    return Err(ParseError::Graph {
                        line: *line,
                        source: GraphError::UnknownEndpoint {
                            edge: (*id).into(),
                            vertex: (*end).into(),
                        },
                    });
                }
            }
        }
    }
    build_graph(vertices, edges.iter().map(|(_, [id, s, t])| (*id, *s, *t)))
        .map_err(|source| ParseError::Graph { line: 0, source })
}

/// Vertices then edges, each sorted by id.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        writeln!(out, "v {v}").unwrap();
    }
    for e in g.edges() {
        writeln!(out, "e {} {} {}", e.id, e.src, e.tgt).unwrap();
    }
    out
}

pub fn parse_order<'g>(text: &str, g: &'g Graph) -> Result<EdgeOrder<'g>, ParseError> {
    let mut seq: Vec<&str> = Vec::new();
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    let mut started = false;
    for (line, toks) in tokens(text) {
        let mut toks = toks.as_slice();
        if !started {
            if toks[0] != "order" {
                return Err(ParseError::Syntax {
                    line,
                    msg: "expected `order` record".into(),
                });
            }
            started = true;
            toks = &toks[1..];
        } else if toks[0] == "order" {
            return Err(ParseError::Syntax {
                line,
                msg: "more than one `order` record".into(),
            });
        }
        check_ids(line, toks)?;
        for &id in toks {
            if !g.contains_edge(id) {
                return Err(ParseError::Order {
                    line: Some(line),
                    source: OrderError::ForeignEdge(id.into()),
                });
            }
            if !seen.insert(id) {
                return Err(ParseError::Order {
                    line: Some(line),
                    source: OrderError::DuplicateEdge(id.into()),
                });
            }
            seq.push(id);
        }
    }
    if !started {
        return Err(ParseError::Syntax {
            line: text.lines().count().max(1),
            msg: "missing `order` record".into(),
        });
    }
    make_order(g, seq).map_err(|source| ParseError::Order { line: None, source })
}

pub fn serialize_order(ord: &EdgeOrder<'_>) -> String {
    let mut out = String::from("order");
    for id in ord.ids() {
        out.push(' ');
        out.push_str(id.as_str());
    }
    out.push('\n');
    out
}

/// Graphviz digraph. With an order, edges are listed by rank and labelled
/// with it; otherwise they are listed by id and labelled with the id.
pub fn to_dot(g: &Graph, ord: Option<&EdgeOrder<'_>>) -> String {
    let q = |v: &VertexId| format!("\"{v}\"");
    let mut out = String::from("digraph G {\n");
    for v in g.vertices() {
        writeln!(out, "  {};", q(v)).unwrap();
    }
    let edges: Vec<usize> = match ord {
        Some(o) => o.sequence().to_vec(),
        None => (0..g.edge_count()).collect(),
    };
    for e in edges {
        let edge = &g.edges()[e];
        let label = match ord {
            Some(o) => o.rank_ix(e).to_string(),
            None => edge.id.to_string(),
        };
        writeln!(
            out,
            "  {} -> {} [id=\"{}\", label=\"{}\"];",
            q(&edge.src),
            q(&edge.tgt),
            edge.id,
            label
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::fixture;

    #[test]
    fn graph_round_trip() {
        let g = parse_graph("v a\nv b\ne x1 a b\n", false).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));

        let star = fixture("FIX-STAR").unwrap().graph;
        let text = serialize_graph(&star);
        assert_eq!(parse_graph(&text, false).unwrap(), star);
        assert!(text.starts_with("v a\n"));
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_graph("# header\n\nv a  # first\nv b\n\ne x a b\n", false).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn strict_and_lax() {
        let err = parse_graph("e x1 a b\n", false).unwrap_err();
        assert_eq!(
            err,
            ParseError::Graph {
                line: 1,
                source: GraphError::UnknownEndpoint {
                    edge: "x1".into(),
                    vertex: "a".into()
                }
            }
        );
        let g = parse_graph("e x1 a b\n", true).unwrap();
        assert_eq!(g.vertex_count(), 2);
    }

    #[test]
    fn graph_syntax_errors() {
        assert!(matches!(
            parse_graph("v a\nx b\n", false),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("v a b\n", false),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("v a-b\n", false),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert_eq!(
            parse_graph("v a\nv b\ne x a b\ne x b a\n", false).unwrap_err(),
            ParseError::Graph {
                line: 4,
                source: GraphError::DuplicateEdgeId("x".into())
            }
        );
        assert_eq!(
            parse_graph("v a\n\nv a\n", false).unwrap_err(),
            ParseError::Graph {
                line: 3,
                source: GraphError::DuplicateVertexId("a".into())
            }
        );
    }

    #[test]
    fn orders() {
        let fx = fixture("FIX-STAR").unwrap();
        let g = &fx.graph;
        let left = parse_order("order x1 x3 x2 x4", g).unwrap();
        assert_eq!(left, fx.order(g, "ORD-L").unwrap());
        let wrapped = parse_order("# ref\norder x1 x3\n  x2\nx4\n", g).unwrap();
        assert_eq!(wrapped, left);

        assert_eq!(
            parse_order("order x1 x1 x2 x4", g).unwrap_err(),
            ParseError::Order {
                line: Some(1),
                source: OrderError::DuplicateEdge("x1".into())
            }
        );
        assert_eq!(
            parse_order("order x1 x2 x3", g).unwrap_err(),
            ParseError::Order {
                line: None,
                source: OrderError::MissingEdge("x4".into())
            }
        );
        assert!(matches!(
            parse_order("order x1 x2 x3 zz", g),
            Err(ParseError::Order {
                source: OrderError::ForeignEdge(_),
                ..
            })
        ));
        assert!(matches!(parse_order("x1 x2", g), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_order("", g), Err(ParseError::Syntax { .. })));

        let right = fx.order(g, "ORD-R").unwrap();
        let text = serialize_order(&right);
        assert_eq!(text, "order x1 x2 x3 x4\n");
        assert_eq!(serialize_order(&parse_order(&text, g).unwrap()), text);
    }

    #[test]
    fn empty_order_round_trip() {
        let g = Graph::empty();
        let ord = parse_order("order\n", &g).unwrap();
        assert_eq!(serialize_order(&ord), "order\n");
    }

    #[test]
    fn dot_output() {
        let path = fixture("FIX-PATHX").unwrap().graph;
        let dot = to_dot(&path, None);
        assert!(dot.starts_with("digraph G {\n"));
        assert_eq!(dot.matches(" -> ").count(), 3);
        assert!(dot.contains("\"u\" -> \"v\" [id=\"p\", label=\"p\"];"));

        let fx = fixture("FIX-STAR").unwrap();
        let left = fx.order(&fx.graph, "ORD-L").unwrap();
        let dot = to_dot(&fx.graph, Some(&left));
        for (id, rank) in [("x1", 1), ("x3", 2), ("x2", 3), ("x4", 4)] {
            assert!(dot.contains(&format!("[id=\"{id}\", label=\"{rank}\"]")), "{dot}");
        }
        assert_eq!(to_dot(&Graph::empty(), None), "digraph G {\n}\n");
    }
}
