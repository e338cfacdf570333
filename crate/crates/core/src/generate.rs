//! Instance generators: seeded random DAGs, graphs swept out by a moving
//! frontier (upward planar by construction), and the named fixtures.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{build_graph, EdgeId, Graph, VertexId};
use crate::order::{make_order, EdgeOrder, OrderError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("infeasible generator parameters: {0}")]
    InfeasibleParams(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

/// The deterministic RNG used by every generator and sampler.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn width(count: usize) -> usize {
    count.saturating_sub(1).to_string().len()
}

/// Ids `prefix0..prefix{count-1}`, zero-padded so string order matches
/// numeric order.
fn numbered(prefix: &str, count: usize) -> Vec<String> {
    let w = width(count);
    (0..count).map(|i| format!("{prefix}{i:0w$}")).collect()
}

/// Random DAG with `n_vertices` vertices and `n_edges` edges, every edge
/// running forward along a seeded random vertex permutation.
pub fn gen_random_dag(
    n_vertices: usize,
    n_edges: usize,
    seed: u64,
    allow_parallel: bool,
) -> Result<Graph, GenError> {
    let pairs = n_vertices * n_vertices.saturating_sub(1) / 2;
    if n_edges > 0 && pairs == 0 {
        return Err(GenError::InfeasibleParams(format!(
            "{n_edges} edges need at least two vertices"
        )));
    }
    if !allow_parallel && n_edges > pairs {
        return Err(GenError::InfeasibleParams(format!(
            "{n_edges} edges exceed the {pairs} available vertex pairs"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let names = numbered("v", n_vertices);
    let mut perm: Vec<usize> = (0..n_vertices).collect();
    rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);

    // Pair k enumerates (i, j), i < j, in row-major order over positions.
    let unrank = |mut k: usize| {
        let mut i = 0;
        while k >= n_vertices - 1 - i {
            k -= n_vertices - 1 - i;
            i += 1;
        }
        (i, i + 1 + k)
    };
    let mut chosen: Vec<usize> = if allow_parallel {
        (0..n_edges).map(|_| rng.gen_range(0..pairs)).collect()
    } else {
        index::sample(&mut rng, pairs, n_edges).into_vec()
    };
    chosen.sort_unstable();

    let edge_names = numbered("e", n_edges);
    let triples: Vec<(String, String, String)> = chosen
        .into_iter()
        .zip(edge_names)
        .map(|(k, id)| {
            let (i, j) = unrank(k);
            (id, names[perm[i]].clone(), names[perm[j]].clone())
        })
        .collect();
    Ok(build_graph(names.clone(), triples).expect("generated ids are consistent"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    /// Vertex events before the closing sinks.
    pub steps: usize,
    pub max_in: usize,
    pub max_out: usize,
    pub seed: u64,
    pub allow_parallel: bool,
}

impl GenParams {
    fn check(&self) -> Result<(), GenError> {
        if self.steps == 0 || self.max_in == 0 || self.max_out == 0 {
            return Err(GenError::InfeasibleParams(
                "steps, max_in and max_out must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// The horizontal cut of an upward drawing under construction: open edges
/// (source created, target pending) from left to right.
#[derive(Debug, Clone, Default)]
pub struct Frontier {
    open: Vec<usize>,
    src: Vec<usize>,
    tgt: Vec<Option<usize>>,
    vertices: usize,
}

impl Frontier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.open.len()
    }

    pub fn is_empty(&self) -> bool {
        self.open.is_empty()
    }

    /// Sources of the open edges, left to right.
    pub fn open_sources(&self) -> impl Iterator<Item = usize> + '_ {
        self.open.iter().map(|&e| self.src[e])
    }

    fn emit(&mut self, v: usize, at: usize, out: usize) {
        let fresh: Vec<usize> = (0..out)
            .map(|_| {
                self.src.push(v);
                self.tgt.push(None);
                self.src.len() - 1
            })
            .collect();
        self.open.splice(at..at, fresh);
    }

    /// New source at gap `at` (0..=len) with `out` fresh out-edges.
    pub fn source(&mut self, at: usize, out: usize) -> usize {
        assert!(at <= self.open.len(), "insertion point out of range");
        let v = self.vertices;
        self.vertices += 1;
        self.emit(v, at, out);
        v
    }

    /// New vertex taking the open edges `start..start + len` as its
    /// in-edges and emitting `out` fresh edges in their place.
    pub fn consume(&mut self, start: usize, len: usize, out: usize) -> usize {
        assert!(len > 0 && start + len <= self.open.len(), "segment out of range");
        let v = self.vertices;
        self.vertices += 1;
        for e in self.open.drain(start..start + len) {
            self.tgt[e] = Some(v);
        }
        self.emit(v, start, out);
        v
    }

    /// Closes the construction; every edge must have been consumed.
    pub fn finish(self) -> Graph {
        assert!(self.open.is_empty(), "frontier still has open edges");
        let vnames = numbered("v", self.vertices);
        let enames = numbered("e", self.src.len());
        let triples: Vec<_> = enames
            .into_iter()
            .zip(self.src.iter().zip(&self.tgt))
            .map(|(id, (&s, t))| (id, vnames[s].clone(), vnames[t.expect("closed edge")].clone()))
            .collect();
        build_graph(vnames.clone(), triples).expect("frontier ids are consistent")
    }
}

/// Longest prefix of `sources` (capped at `max`) with no repeated source.
fn distinct_prefix(sources: &[usize], max: usize) -> usize {
    let mut n = 0;
    while n < sources.len().min(max) && !sources[..n].contains(&sources[n]) {
        n += 1;
    }
    n
}

/// Graph built by sweeping a frontier: each event either adds a source at a
/// random gap or lets a new vertex consume a contiguous run of open edges;
/// leftover open edges are closed by sinks over contiguous runs.
pub fn gen_upward_planar(p: GenParams) -> Result<Graph, GenError> {
    p.check()?;
    let mut rng = rng_from_seed(p.seed);
    let mut f = Frontier::new();
    for _ in 0..p.steps {
        if f.is_empty() || rng.gen_ratio(1, 3) {
            let at = rng.gen_range(0..=f.len());
            let out = rng.gen_range(0..=p.max_out);
            f.source(at, out);
        } else {
            let start = rng.gen_range(0..f.len());
            let want = rng.gen_range(1..=p.max_in.min(f.len() - start));
            let len = if p.allow_parallel {
                want
            } else {
                let sources: Vec<usize> = f.open_sources().skip(start).collect();
                distinct_prefix(&sources, want)
            };
            let out = rng.gen_range(0..=p.max_out);
            f.consume(start, len, out);
        }
    }
    while !f.is_empty() {
        let want = rng.gen_range(1..=p.max_in.min(f.len()));
        let len = if p.allow_parallel {
            want
        } else {
            let sources: Vec<usize> = f.open_sources().collect();
            distinct_prefix(&sources, want)
        };
        f.consume(0, len, 0);
    }
    Ok(f.finish())
}

/// A named graph with optional reference orders.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub graph: Graph,
    pub orders: Vec<(&'static str, Vec<EdgeId>)>,
}

impl Fixture {
    pub fn order<'g>(&self, g: &'g Graph, name: &str) -> Option<EdgeOrder<'g>> {
        self.orders
            .iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(name))
            .map(|(_, seq)| make_order(g, seq).expect("fixture orders are complete"))
    }

    pub fn reference_orders<'g>(
        &self,
        g: &'g Graph,
    ) -> Result<Vec<(&'static str, EdgeOrder<'g>)>, OrderError> {
        self.orders
            .iter()
            .map(|(n, seq)| make_order(g, seq).map(|o| (*n, o)))
            .collect()
    }
}

pub const FIXTURE_NAMES: [&str; 6] = [
    "FIX-STAR", "FIX-EX1", "FIX-PATHX", "FIX-TRI", "FIX-ILV", "FIX-K5",
];

fn seq(xs: &[&str]) -> Vec<EdgeId> {
    xs.iter().map(|&x| x.into()).collect()
}

fn fixture_graph(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Graph {
    build_graph(vertices.iter().copied(), edges.iter().copied()).expect("fixture is well formed")
}

/// Looks up a fixture by name, case-insensitively, with or without the
/// `FIX-` prefix.
pub fn fixture(name: &str) -> Result<Fixture, GenError> {
    let upper = name.to_ascii_uppercase();
    let key = upper.strip_prefix("FIX-").unwrap_or(&upper);
    let fx = match key {
        "STAR" => Fixture {
            name: "FIX-STAR",
            graph: fixture_graph(
                &["a", "b", "c", "d", "e", "f"],
                &[("x1", "a", "b"), ("x2", "a", "c"), ("x3", "d", "e"), ("x4", "f", "e")],
            ),
            orders: vec![
                ("ORD-L", seq(&["x1", "x3", "x2", "x4"])),
                ("ORD-R", seq(&["x1", "x2", "x3", "x4"])),
            ],
        },
        "EX1" => example_one(),
        "PATHX" => Fixture {
            name: "FIX-PATHX",
            graph: fixture_graph(
                &["u", "v", "w", "x", "y"],
                &[("p", "u", "v"), ("q", "v", "w"), ("r", "x", "y")],
            ),
            orders: Vec::new(),
        },
        "TRI" => Fixture {
            name: "FIX-TRI",
            graph: fixture_graph(
                &["a", "b", "c"],
                &[("ab", "a", "b"), ("ac", "a", "c"), ("bc", "b", "c")],
            ),
            orders: Vec::new(),
        },
        "ILV" => Fixture {
            name: "FIX-ILV",
            graph: fixture_graph(
                &["s1", "s2", "s3", "s4", "v", "w"],
                &[("i1", "s1", "v"), ("i2", "s2", "v"), ("j1", "s3", "w"), ("j2", "s4", "w")],
            ),
            orders: Vec::new(),
        },
        "K5" => {
            let vs: Vec<VertexId> = (1..=5).map(|i| format!("u{i}").into()).collect();
            let es: Vec<(String, VertexId, VertexId)> = (0..5)
                .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
                .map(|(i, j)| (format!("{}{}", vs[i], vs[j]), vs[i].clone(), vs[j].clone()))
                .collect();
            Fixture {
                name: "FIX-K5",
                graph: build_graph(vs.clone(), es).expect("fixture is well formed"),
                orders: Vec::new(),
            }
        }
        _ => return Err(GenError::UnknownFixture(name.to_owned())),
    };
    Ok(fx)
}

/// The two-part drawing whose edges carry the labels 1..20. Vertex names
/// follow the figure's node names; every edge points downward in the
/// drawing, and `eK` is the edge labelled `K`.
fn example_one() -> Fixture {
    let vertices = [
        "v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "v9", "v12", "v13", "v14", "v15", "v16",
        "v17", "v18", "v19",
    ];
    let edges = [
        ("e1", "v2", "v1"),
        ("e2", "v1", "v5"),
        ("e3", "v8", "v5"),
        ("e4", "v8", "v6"),
        ("e5", "v2", "v3"),
        ("e6", "v4", "v3"),
        ("e7", "v4", "v6"),
        ("e8", "v6", "v5"),
        ("e9", "v5", "v9"),
        ("e10", "v6", "v7"),
        // 11 and 12 are parallel: straight and curved v4 -> v7.
        ("e11", "v4", "v7"),
        ("e12", "v4", "v7"),
        ("e13", "v7", "v9"),
        ("e14", "v12", "v14"),
        ("e15", "v14", "v13"),
        ("e16", "v16", "v17"),
        // 17 and 18 are parallel: straight and curved v12 -> v15.
        ("e17", "v12", "v15"),
        ("e18", "v12", "v15"),
        ("e19", "v15", "v13"),
        ("e20", "v18", "v19"),
    ];
    let labelled: Vec<String> = (1..=20).map(|k| format!("e{k}")).collect();
    Fixture {
        name: "FIX-EX1",
        graph: fixture_graph(&vertices, &edges),
        orders: vec![(
            "ORD-EX1",
            labelled.iter().map(|s| EdgeId::from(s.as_str())).collect(),
        )],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_dag_basics() {
        let g = gen_random_dag(2, 1, 7, false).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));

        let g = gen_random_dag(5, 10, 3, false).unwrap();
        assert!(g.is_acyclic());
        assert_eq!(g.edge_count(), 10);
        let mut pairs: Vec<_> = g
            .edges()
            .iter()
            .map(|e| (e.src.clone().min(e.tgt.clone()), e.src.clone().max(e.tgt.clone())))
            .collect();
        pairs.sort();
        pairs.dedup();
        assert_eq!(pairs.len(), 10, "max density is a tournament");

        assert_eq!(gen_random_dag(6, 7, 11, true).unwrap(), gen_random_dag(6, 7, 11, true).unwrap());
        assert!(matches!(
            gen_random_dag(3, 4, 0, false),
            Err(GenError::InfeasibleParams(_))
        ));
        assert!(matches!(
            gen_random_dag(1, 1, 0, true),
            Err(GenError::InfeasibleParams(_))
        ));
        assert_eq!(gen_random_dag(0, 0, 0, false).unwrap(), Graph::empty());
    }

    #[test]
    fn frontier_scripts() {
        let mut f = Frontier::new();
        f.source(0, 0);
        let g = f.finish();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));

        let mut f = Frontier::new();
        f.source(0, 2);
        f.consume(0, 2, 0);
        let g = f.finish();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 2));
        assert_eq!(g.edges()[0].src, g.edges()[1].src);
        assert_eq!(g.edges()[0].tgt, g.edges()[1].tgt);
    }

    #[test]
    fn upward_generator_is_acyclic_and_deterministic() {
        for seed in 0..200 {
            let p = GenParams {
                steps: 6,
                max_in: 3,
                max_out: 3,
                seed,
                allow_parallel: seed % 2 == 0,
            };
            let g = gen_upward_planar(p).unwrap();
            assert!(g.is_acyclic());
            assert_eq!(g, gen_upward_planar(p).unwrap());
            if !p.allow_parallel {
                let mut ends: Vec<_> = g.edges().iter().map(|e| (&e.src, &e.tgt)).collect();
                ends.sort();
                let before = ends.len();
                ends.dedup();
                assert_eq!(before, ends.len(), "seed {seed} produced parallel edges");
            }
        }
        let bad = GenParams {
            steps: 0,
            max_in: 1,
            max_out: 1,
            seed: 0,
            allow_parallel: false,
        };
        assert!(gen_upward_planar(bad).is_err());
    }

    #[test]
    fn fixtures_have_expected_sizes() {
        let star = fixture("FIX-STAR").unwrap();
        assert_eq!((star.graph.vertex_count(), star.graph.edge_count()), (6, 4));
        assert_eq!(star.orders.len(), 2);

        let ex1 = fixture("FIX-EX1").unwrap();
        assert_eq!((ex1.graph.vertex_count(), ex1.graph.edge_count()), (17, 20));
        assert!(ex1.graph.is_acyclic());

        let k5 = fixture("k5").unwrap();
        assert_eq!((k5.graph.vertex_count(), k5.graph.edge_count()), (5, 10));

        assert_eq!(
            fixture("FIX-NOPE").unwrap_err(),
            GenError::UnknownFixture("FIX-NOPE".into())
        );
        for name in FIXTURE_NAMES {
            assert_eq!(fixture(name).unwrap().name, name);
        }
    }
}
