//! Directed multigraphs with identified vertices and edges.
//!
//! A [`Graph`] is immutable once built. Vertices and edges are stored sorted
//! by id, so the dense indices used by the checkers and the search agree with
//! the lexicographic order on ids. Parallel edges, isolated vertices and
//! disconnected pieces are all allowed; cycles are representable but every
//! order-related query refuses them with [`GraphError::CyclicGraph`].

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(String);

        impl $name {
            pub fn new(id: impl Into<String>) -> Self {
                Self(id.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_owned())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(s)
            }
        }

        impl AsRef<str> for $name {
            fn as_ref(&self) -> &str {
                &self.0
            }
        }

        impl std::borrow::Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }
    };
}

id_type!(
    /// Identifier of a vertex.
    VertexId
);
id_type!(
    /// Identifier of an edge. Edge and vertex ids live in separate namespaces.
    EdgeId
);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertexId(VertexId),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdgeId(EdgeId),
    #[error("edge `{edge}` refers to undeclared vertex `{vertex}`")]
    UnknownEndpoint { edge: EdgeId, vertex: VertexId },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("graph has a directed cycle")]
    CyclicGraph,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub src: VertexId,
    pub tgt: VertexId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Source,
    Sink,
    Processive,
    Isolated,
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexKind::Source => "source",
            VertexKind::Sink => "sink",
            VertexKind::Processive => "processive",
            VertexKind::Isolated => "isolated",
        })
    }
}

/// How two distinct edges meet. `TT` means both end at the shared vertex,
/// `SS` both start there, `TS` the first ends where the second starts and
/// `ST` the first starts where the second ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Adjacency {
    TT,
    SS,
    TS,
    ST,
}

impl fmt::Display for Adjacency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Strict vertex reachability of an acyclic graph: `reach[u][w]` holds when
/// there is a directed path with at least one edge from `u` to `w`.
#[derive(Debug, Clone)]
struct Reachability {
    reach: Vec<Vec<bool>>,
}

#[derive(Debug, Clone)]
pub struct Graph {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    vertex_index: HashMap<VertexId, usize>,
    edge_index: HashMap<EdgeId, usize>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    incoming: Vec<Vec<usize>>,
    outgoing: Vec<Vec<usize>>,
    topo: Option<Vec<usize>>,
    reach: OnceLock<Reachability>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

/// Builds a graph from declared vertices and `(edge, src, tgt)` triples.
/// Acyclicity is not required here.
pub fn build_graph<V, E, S, T>(vertex_ids: V, edge_triples: E) -> Result<Graph, GraphError>
where
    V: IntoIterator,
    V::Item: Into<VertexId>,
    E: IntoIterator<Item = (S, T, T)>,
    S: Into<EdgeId>,
    T: Into<VertexId>,
{
    let mut vertices: Vec<VertexId> = Vec::new();
    let mut seen_v = BTreeSet::new();
    for v in vertex_ids {
        let v = v.into();
        if !seen_v.insert(v.clone()) {
            return Err(GraphError::DuplicateVertexId(v));
        }
        vertices.push(v);
    }
    let mut edges: Vec<Edge> = Vec::new();
    let mut seen_e = BTreeSet::new();
    for (id, src, tgt) in edge_triples {
        let (id, src, tgt) = (id.into(), src.into(), tgt.into());
        if !seen_e.insert(id.clone()) {
            return Err(GraphError::DuplicateEdgeId(id));
        }
        for end in [&src, &tgt] {
            if !seen_v.contains(end) {
                return Err(GraphError::UnknownEndpoint {
                    edge: id,
                    vertex: end.clone(),
                });
            }
        }
        edges.push(Edge { id, src, tgt });
    }
    Ok(Graph::from_parts(vertices, edges))
}

impl Graph {
    pub fn empty() -> Self {
        Self::from_parts(Vec::new(), Vec::new())
    }

    fn from_parts(mut vertices: Vec<VertexId>, mut edges: Vec<Edge>) -> Self {
        vertices.sort();
        edges.sort_by(|a, b| a.id.cmp(&b.id));
        let vertex_index: HashMap<_, _> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let edge_index: HashMap<_, _> = edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.clone(), i))
            .collect();
        let src: Vec<usize> = edges.iter().map(|e| vertex_index[&e.src]).collect();
        let tgt: Vec<usize> = edges.iter().map(|e| vertex_index[&e.tgt]).collect();
        let mut incoming = vec![Vec::new(); vertices.len()];
        let mut outgoing = vec![Vec::new(); vertices.len()];
        for (e, (&s, &t)) in src.iter().zip(&tgt).enumerate() {
            outgoing[s].push(e);
            incoming[t].push(e);
        }
        let topo = topological_order(vertices.len(), &src, &tgt, &outgoing);
        Graph {
            vertices,
            edges,
            vertex_index,
            edge_index,
            src,
            tgt,
            incoming,
            outgoing,
            topo,
            reach: OnceLock::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertices in ascending id order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Edges in ascending id order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_acyclic(&self) -> bool {
        self.topo.is_some()
    }

    pub(crate) fn ensure_acyclic(&self) -> Result<(), GraphError> {
        if self.is_acyclic() {
            Ok(())
        } else {
            Err(GraphError::CyclicGraph)
        }
    }

    pub fn vertex_index(&self, v: &str) -> Result<usize, GraphError> {
        self.vertex_index
            .get(v)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(v.to_owned()))
    }

    pub fn edge_index(&self, e: &str) -> Result<usize, GraphError> {
        self.edge_index
            .get(e)
            .copied()
            .ok_or_else(|| GraphError::UnknownEdge(e.to_owned()))
    }

    pub fn contains_edge(&self, e: &str) -> bool {
        self.edge_index.contains_key(e)
    }

    pub fn vertex_id(&self, v: usize) -> &VertexId {
        &self.vertices[v]
    }

    pub fn edge_id(&self, e: usize) -> &EdgeId {
        &self.edges[e].id
    }

    /// Index of the source vertex of edge `e`.
    pub fn src_of(&self, e: usize) -> usize {
        self.src[e]
    }

    /// Index of the target vertex of edge `e`.
    pub fn tgt_of(&self, e: usize) -> usize {
        self.tgt[e]
    }

    /// Incoming edge indices of vertex `v`, ascending.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.incoming[v]
    }

    /// Outgoing edge indices of vertex `v`, ascending.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.outgoing[v]
    }

    pub fn incoming(&self, v: &str) -> Result<BTreeSet<EdgeId>, GraphError> {
        let v = self.vertex_index(v)?;
        Ok(self.incoming[v].iter().map(|&e| self.edges[e].id.clone()).collect())
    }

    pub fn outgoing(&self, v: &str) -> Result<BTreeSet<EdgeId>, GraphError> {
        let v = self.vertex_index(v)?;
        Ok(self.outgoing[v].iter().map(|&e| self.edges[e].id.clone()).collect())
    }

    pub fn kind_of(&self, v: usize) -> VertexKind {
        match (self.incoming[v].is_empty(), self.outgoing[v].is_empty()) {
            (true, true) => VertexKind::Isolated,
            (true, false) => VertexKind::Source,
            (false, true) => VertexKind::Sink,
            (false, false) => VertexKind::Processive,
        }
    }

    pub fn classify_vertex(&self, v: &str) -> Result<VertexKind, GraphError> {
        Ok(self.kind_of(self.vertex_index(v)?))
    }

    fn reachability(&self) -> Result<&Reachability, GraphError> {
        let topo = self.topo.as_ref().ok_or(GraphError::CyclicGraph)?;
        Ok(self.reach.get_or_init(|| {
            let n = self.vertices.len();
            let mut reach = vec![vec![false; n]; n];
            // Reverse topological order: successors are final before u.
            for &u in topo.iter().rev() {
                let mut row = vec![false; n];
                for &e in &self.outgoing[u] {
                    let w = self.tgt[e];
                    row[w] = true;
                    for (x, r) in reach[w].iter().enumerate() {
                        if *r {
                            row[x] = true;
                        }
                    }
                }
                reach[u] = row;
            }
            Reachability { reach }
        }))
    }

    /// Index form of `e1 → e2`. Panics on a cyclic graph; callers guard first.
    pub fn reaches_ix(&self, e1: usize, e2: usize) -> bool {
        let r = self.reachability().expect("acyclic graph");
        e1 != e2 && {
            let (t, s) = (self.tgt[e1], self.src[e2]);
            t == s || r.reach[t][s]
        }
    }

    /// True when some directed path starts with edge `e1` and ends with
    /// edge `e2`. The relation is strict.
    pub fn edge_reaches(&self, e1: &str, e2: &str) -> Result<bool, GraphError> {
        self.ensure_acyclic()?;
        let (a, b) = (self.edge_index(e1)?, self.edge_index(e2)?);
        Ok(self.reaches_ix(a, b))
    }

    /// Every pair `(e1, e2)` with `e1 → e2`.
    pub fn reachability_closure(&self) -> Result<BTreeSet<(EdgeId, EdgeId)>, GraphError> {
        self.ensure_acyclic()?;
        let m = self.edge_count();
        let mut out = BTreeSet::new();
        for a in 0..m {
            for b in 0..m {
                if self.reaches_ix(a, b) {
                    out.insert((self.edges[a].id.clone(), self.edges[b].id.clone()));
                }
            }
        }
        Ok(out)
    }

    /// Index form of [`Graph::adjacency_cases`], cases in `TT, SS, TS, ST` order.
    pub fn adjacency_ix(&self, e1: usize, e2: usize) -> Vec<(Adjacency, usize)> {
        let mut cases = Vec::new();
        if self.tgt[e1] == self.tgt[e2] {
            cases.push((Adjacency::TT, self.tgt[e1]));
        }
        if self.src[e1] == self.src[e2] {
            cases.push((Adjacency::SS, self.src[e1]));
        }
        if self.tgt[e1] == self.src[e2] {
            cases.push((Adjacency::TS, self.tgt[e1]));
        }
        if self.src[e1] == self.tgt[e2] {
            cases.push((Adjacency::ST, self.src[e1]));
        }
        cases
    }

    /// The ways two distinct edges share an endpoint; empty when not adjacent.
    pub fn adjacency_cases(
        &self,
        e1: &str,
        e2: &str,
    ) -> Result<BTreeSet<(Adjacency, VertexId)>, GraphError> {
        let (a, b) = (self.edge_index(e1)?, self.edge_index(e2)?);
        if a == b {
            return Ok(BTreeSet::new());
        }
        Ok(self
            .adjacency_ix(a, b)
            .into_iter()
            .map(|(c, v)| (c, self.vertices[v].clone()))
            .collect())
    }

    /// Disjoint union. Fails if the two graphs share any vertex or edge id.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        build_graph(
            self.vertices.iter().chain(&other.vertices).cloned(),
            self.edges
                .iter()
                .chain(&other.edges)
                .map(|e| (e.id.clone(), e.src.clone(), e.tgt.clone())),
        )
    }
}

/// Kahn's algorithm; `None` when a cycle (self-loops included) exists.
fn topological_order(
    n: usize,
    src: &[usize],
    tgt: &[usize],
    outgoing: &[Vec<usize>],
) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for &t in tgt {
        indeg[t] += 1;
    }
    let mut stack: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = stack.pop() {
        order.push(u);
        for &e in &outgoing[u] {
            debug_assert_eq!(src[e], u);
            let w = tgt[e];
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::fixture;

    fn ids<const N: usize>(xs: [&str; N]) -> BTreeSet<EdgeId> {
        xs.iter().map(|&x| EdgeId::from(x)).collect()
    }

    #[test]
    fn build_errors() {
        let err = build_graph(["a"], [("z", "a", "qq")]).unwrap_err();
        assert_eq!(
            err,
            GraphError::UnknownEndpoint {
                edge: "z".into(),
                vertex: "qq".into()
            }
        );
        let err = build_graph(["a", "b"], [("x1", "a", "b"), ("x1", "b", "a")]).unwrap_err();
        assert_eq!(err, GraphError::DuplicateEdgeId("x1".into()));
        let err = build_graph(["a", "a"], Vec::<(&str, &str, &str)>::new()).unwrap_err();
        assert_eq!(err, GraphError::DuplicateVertexId("a".into()));
    }

    #[test]
    fn star_shape() {
        let g = fixture("FIX-STAR").unwrap().graph;
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 4));
        assert_eq!(g.incoming("e").unwrap(), ids(["x3", "x4"]));
        assert!(g.outgoing("b").unwrap().is_empty());
        assert_eq!(g.classify_vertex("a").unwrap(), VertexKind::Source);
        assert_eq!(g.classify_vertex("e").unwrap(), VertexKind::Sink);
        assert!(matches!(g.incoming("nope"), Err(GraphError::UnknownVertex(_))));
        assert!(g.reachability_closure().unwrap().is_empty());
    }

    #[test]
    fn acyclicity() {
        assert!(fixture("FIX-TRI").unwrap().graph.is_acyclic());
        let cyc = build_graph(["a", "b"], [("x", "a", "b"), ("y", "b", "a")]).unwrap();
        assert!(!cyc.is_acyclic());
        assert_eq!(cyc.edge_reaches("x", "y"), Err(GraphError::CyclicGraph));
        let looped = build_graph(["a"], [("l", "a", "a")]).unwrap();
        assert!(!looped.is_acyclic());
        assert!(Graph::empty().is_acyclic());
    }

    #[test]
    fn path_queries() {
        let g = fixture("FIX-PATHX").unwrap().graph;
        assert_eq!(g.incoming("v").unwrap(), ids(["p"]));
        assert_eq!(g.outgoing("v").unwrap(), ids(["q"]));
        assert_eq!(g.classify_vertex("v").unwrap(), VertexKind::Processive);
        assert!(g.edge_reaches("p", "q").unwrap());
        assert!(!g.edge_reaches("q", "p").unwrap());
        assert!(!g.edge_reaches("p", "r").unwrap());
        assert!(!g.edge_reaches("p", "p").unwrap());
        assert!(matches!(g.edge_reaches("p", "zz"), Err(GraphError::UnknownEdge(_))));
        let cases = g.adjacency_cases("p", "q").unwrap();
        assert_eq!(cases, BTreeSet::from([(Adjacency::TS, "v".into())]));
        let cases = g.adjacency_cases("q", "p").unwrap();
        assert_eq!(cases, BTreeSet::from([(Adjacency::ST, "v".into())]));
        assert!(g.adjacency_cases("p", "r").unwrap().is_empty());
    }

    #[test]
    fn lone_vertex_is_isolated() {
        let g = build_graph(["z"], Vec::<(&str, &str, &str)>::new()).unwrap();
        assert_eq!(g.classify_vertex("z").unwrap(), VertexKind::Isolated);
    }

    #[test]
    fn triangle_and_chain_closure() {
        let g = fixture("FIX-TRI").unwrap().graph;
        assert!(g.edge_reaches("ab", "bc").unwrap());
        assert!(!g.edge_reaches("ab", "ac").unwrap());
        assert_eq!(
            g.reachability_closure().unwrap(),
            BTreeSet::from([("ab".into(), "bc".into())])
        );
        let chain = build_graph(
            ["u", "v", "w", "x"],
            [("e1", "u", "v"), ("e2", "v", "w"), ("e3", "w", "x")],
        )
        .unwrap();
        assert_eq!(chain.reachability_closure().unwrap().len(), 3);
    }

    #[test]
    fn star_adjacency() {
        let g = fixture("FIX-STAR").unwrap().graph;
        assert_eq!(
            g.adjacency_cases("x1", "x2").unwrap(),
            BTreeSet::from([(Adjacency::SS, "a".into())])
        );
        assert_eq!(
            g.adjacency_cases("x3", "x4").unwrap(),
            BTreeSet::from([(Adjacency::TT, "e".into())])
        );
    }

    #[test]
    fn parallel_pair_meets_at_both_ends() {
        let g = fixture("FIX-EX1").unwrap().graph;
        let cases: Vec<Adjacency> = g
            .adjacency_cases("e17", "e18")
            .unwrap()
            .into_iter()
            .map(|(c, _)| c)
            .collect();
        assert_eq!(cases, vec![Adjacency::TT, Adjacency::SS]);
    }
}
