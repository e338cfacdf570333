mod common;

use upward_order::io::serialize_graph;
use upward_order::{
    count_upos, diff_definitions, enumerate_upos, find_upo, fixture, gen_upward_planar,
    is_upward_planar, is_valid, validate, Definition, DiffMode, EdgeId, GenParams, SearchConfig,
};

fn brute_force(g: &upward_order::Graph, def: Definition) -> Vec<Vec<EdgeId>> {
    let mut out: Vec<Vec<EdgeId>> = common::all_orders(g)
        .into_iter()
        .filter(|o| is_valid(o, def).unwrap())
        .map(|o| o.to_ids())
        .collect();
    out.sort();
    out
}

#[test]
fn search_is_sound_and_complete_on_small_graphs() {
    for g in common::corpus(80, 6) {
        let expected = brute_force(&g, Definition::Hull);
        for def in [Definition::Hull, Definition::Betweenness] {
            let found = enumerate_upos(&g, &SearchConfig::new(def)).unwrap();
            let ids: Vec<Vec<EdgeId>> = found.iter().map(|o| o.to_ids()).collect();
            assert_eq!(ids, expected, "{def:?} on\n{}", serialize_graph(&g));
            for o in &found {
                assert!(validate(o, Definition::Both).unwrap().valid);
                for a in 0..g.edge_count() {
                    for b in 0..g.edge_count() {
                        if g.reaches_ix(a, b) {
                            assert!(o.rank_ix(a) < o.rank_ix(b));
                        }
                    }
                }
            }
        }
        assert_eq!(count_upos(&g).unwrap() as usize, expected.len());
    }
}

#[test]
fn definitions_find_the_same_order() {
    for g in common::corpus(150, 8) {
        let a = find_upo(&g, &SearchConfig::new(Definition::Hull)).unwrap();
        let b = find_upo(&g, &SearchConfig::new(Definition::Betweenness)).unwrap();
        assert_eq!(a.map(|o| o.to_ids()), b.map(|o| o.to_ids()));
    }
}

#[test]
fn frontier_graphs_are_upward_planar() {
    for seed in 0..300 {
        let g = gen_upward_planar(GenParams {
            steps: 5,
            max_in: 3,
            max_out: 3,
            seed,
            allow_parallel: seed % 2 == 1,
        })
        .unwrap();
        if g.edge_count() > 12 {
            continue;
        }
        assert!(is_upward_planar(&g).unwrap(), "seed {seed}:\n{}", serialize_graph(&g));
    }
}

#[test]
fn search_and_diff_are_deterministic() {
    let g = fixture("FIX-EX1").unwrap().graph;
    let cfg = SearchConfig::default().with_limit(5);
    let first: Vec<_> = enumerate_upos(&g, &cfg).unwrap().iter().map(|o| o.to_ids()).collect();
    let again: Vec<_> = enumerate_upos(&g, &cfg).unwrap().iter().map(|o| o.to_ids()).collect();
    assert_eq!(first, again);
    let mode = DiffMode::Sampled { n: 300, seed: 42 };
    assert_eq!(diff_definitions(&g, mode).unwrap(), diff_definitions(&g, mode).unwrap());
}
