#![allow(dead_code)]

use std::collections::BTreeSet;

use upward_order::generate::FIXTURE_NAMES;
use upward_order::{fixture, gen_random_dag, gen_upward_planar, EdgeOrder, GenParams, Graph};

/// Seeded random DAG with at most `max_edges` edges; shape varies with seed.
pub fn random_dag(seed: u64, max_edges: usize) -> Graph {
    let n = 2 + (seed % 5) as usize;
    let parallel = seed % 3 == 0;
    let cap = if parallel { max_edges } else { max_edges.min(n * (n - 1) / 2) };
    let m = if seed % 4 == 0 { 1 + (seed / 5) as usize % cap } else { cap };
    gen_random_dag(n, m, seed, parallel).unwrap()
}

pub fn small_upward(seed: u64) -> Graph {
    gen_upward_planar(GenParams {
        steps: 1 + (seed % 4) as usize,
        max_in: 2,
        max_out: 2,
        seed,
        allow_parallel: seed % 2 == 0,
    })
    .unwrap()
}

/// Random DAGs, frontier graphs and small fixtures, all with at most
/// `max_edges` edges.
pub fn corpus(count: u64, max_edges: usize) -> Vec<Graph> {
    let mut out: Vec<Graph> = (0..count).map(|s| random_dag(s, max_edges)).collect();
    out.extend(
        (0..count)
            .map(small_upward)
            .filter(|g| g.edge_count() <= max_edges),
    );
    out.extend(
        FIXTURE_NAMES
            .iter()
            .map(|n| fixture(n).unwrap().graph)
            .filter(|g| g.edge_count() <= max_edges),
    );
    out
}

pub fn all_orders(g: &Graph) -> Vec<EdgeOrder<'_>> {
    use itertools::Itertools;
    let m = g.edge_count();
    if m == 0 {
        return vec![EdgeOrder::from_indices(g, Vec::new())];
    }
    (0..m)
        .permutations(m)
        .map(|p| EdgeOrder::from_indices(g, p))
        .collect()
}

/// Every edge reachable from `e1` along an explicit edge path of length at
/// least two, found by walking paths edge by edge.
pub fn path_successors(g: &Graph, e1: usize) -> BTreeSet<usize> {
    let mut found = BTreeSet::new();
    let mut stack = vec![e1];
    while let Some(e) = stack.pop() {
        for &next in g.out_edges(g.tgt_of(e)) {
            found.insert(next);
            stack.push(next);
        }
    }
    found
}
