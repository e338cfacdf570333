//! Upward planar orders on acyclic directed multigraphs.
//!
//! An upward planar order is a linear order on the edges of a DAG that
//! extends edge reachability and keeps the in- and out-edge sets of the
//! vertices nested in a planar way. A DAG admits one exactly when it has an
//! upward planar drawing, so searching for such an order decides upward
//! planarity for small graphs.
//!
//! The crate provides:
//!
//! * [`graph`]: immutable directed multigraphs with reachability queries;
//! * [`order`]: edge orders and rank intervals (convex hulls);
//! * [`validate`]: checkers for the hull form (`U1`–`U3`) and the
//!   betweenness form (`Q1`, `Q2`) with violation witnesses;
//! * [`search`]: finding, enumerating and counting orders, plus a
//!   differential harness comparing the two forms;
//! * [`generate`]: seeded instance generators and named fixtures;
//! * [`io`]: text formats and DOT export.
//!
//! ```
//! use upward_order::{fixture, find_upo, validate, Definition, SearchConfig};
//!
//! let tri = fixture("FIX-TRI").unwrap().graph;
//! let ord = find_upo(&tri, &SearchConfig::default()).unwrap().unwrap();
//! assert_eq!(ord.to_ids(), ["ab", "bc", "ac"].map(Into::into));
//! assert!(validate(&ord, Definition::Both).unwrap().valid);
//! ```

pub mod generate;
pub mod graph;
pub mod io;
pub mod order;
pub mod search;
pub mod validate;

pub use generate::{fixture, gen_random_dag, gen_upward_planar, Fixture, GenError, GenParams};
pub use graph::{build_graph, Adjacency, Edge, EdgeId, Graph, GraphError, VertexId, VertexKind};
pub use io::{parse_graph, parse_order, serialize_graph, serialize_order, to_dot, ParseError};
pub use order::{make_order, EdgeOrder, Interval, OrderError};
pub use search::{
    count_upos, diff_definitions, enumerate_upos, find_upo, is_upward_planar, DiffMode, DiffReport,
    SearchConfig, SearchError,
};
pub use validate::{
    check_q2, check_u1, check_u2, check_u3, is_valid, validate, Checker, Definition, Note, Rule,
    Verdict, Violation,
};
