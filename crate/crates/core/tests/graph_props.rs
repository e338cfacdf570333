mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use upward_order::{build_graph, gen_random_dag, Graph};

use common::path_successors;

fn dag_strategy(max_edges: usize) -> impl Strategy<Value = Graph> {
    (2usize..7, 0usize..=max_edges, any::<u64>(), any::<bool>()).prop_map(
        move |(n, m, seed, parallel)| {
            let m = if parallel { m } else { m.min(n * (n - 1) / 2) };
            gen_random_dag(n, m, seed, parallel).unwrap()
        },
    )
}

proptest! {
    #[test]
    fn closure_is_a_strict_partial_order(g in dag_strategy(10)) {
        let closure = g.reachability_closure().unwrap();
        for (a, b) in &closure {
            prop_assert_ne!(a, b);
            for (c, d) in &closure {
                if b == c {
                    prop_assert!(closure.contains(&(a.clone(), d.clone())));
                }
            }
        }
    }

    #[test]
    fn reachability_matches_path_walk(g in dag_strategy(8)) {
        for e1 in 0..g.edge_count() {
            let walked = path_successors(&g, e1);
            for e2 in 0..g.edge_count() {
                prop_assert_eq!(g.reaches_ix(e1, e2), walked.contains(&e2));
            }
        }
    }

    #[test]
    fn in_and_out_partition_incident_edges(g in dag_strategy(10)) {
        for v in g.vertices() {
            let inc = g.incoming(v.as_str()).unwrap();
            let out = g.outgoing(v.as_str()).unwrap();
            prop_assert!(inc.is_disjoint(&out));
            let incident: BTreeSet<_> = g
                .edges()
                .iter()
                .filter(|e| &e.src == v || &e.tgt == v)
                .map(|e| e.id.clone())
                .collect();
            let union: BTreeSet<_> = inc.union(&out).cloned().collect();
            prop_assert_eq!(union, incident);
        }
    }

    #[test]
    fn relabeling_commutes_with_queries(g in dag_strategy(8), salt in 0u32..1000) {
        // Reverse-sorted renaming so the relabeled ids also reorder.
        let vname = |v: &str| format!("q{}_{v}", 9999 - salt);
        let ename = |e: &str| format!("z{}_{e}", salt);
        let h = build_graph(
            g.vertices().iter().map(|v| vname(v.as_str())),
            g.edges().iter().map(|e| (ename(e.id.as_str()), vname(e.src.as_str()), vname(e.tgt.as_str()))),
        ).unwrap();
        prop_assert_eq!(g.is_acyclic(), h.is_acyclic());
        for v in g.vertices() {
            let v2 = vname(v.as_str());
            prop_assert_eq!(g.classify_vertex(v.as_str()).unwrap(), h.classify_vertex(&v2).unwrap());
            let mapped: BTreeSet<String> = g.incoming(v.as_str()).unwrap().iter().map(|e| ename(e.as_str())).collect();
            let direct: BTreeSet<String> = h.incoming(&v2).unwrap().iter().map(|e| e.to_string()).collect();
            prop_assert_eq!(mapped, direct);
        }
        for a in g.edges() {
            for b in g.edges() {
                let (a2, b2) = (ename(a.id.as_str()), ename(b.id.as_str()));
                prop_assert_eq!(
                    g.edge_reaches(a.id.as_str(), b.id.as_str()).unwrap(),
                    h.edge_reaches(&a2, &b2).unwrap()
                );
                let cases_g: Vec<_> = g.adjacency_cases(a.id.as_str(), b.id.as_str()).unwrap()
                    .into_iter().map(|(c, v)| (c, vname(v.as_str()))).collect();
                let cases_h: Vec<_> = h.adjacency_cases(&a2, &b2).unwrap()
                    .into_iter().map(|(c, v)| (c, v.to_string())).collect();
                prop_assert_eq!(cases_g, cases_h);
            }
        }
    }
}

#[test]
fn generated_dags_are_acyclic() {
    for seed in 0..300 {
        let g = common::random_dag(seed, 12);
        assert!(g.is_acyclic(), "seed {seed}");
    }
}
