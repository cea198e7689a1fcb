mod common;

use std::collections::BTreeSet;

use blockslide_core::blocks::decompose;
use blockslide_core::decision::{analyze, decide_with};
use blockslide_core::generate::{sample_instance, Envelope};
use blockslide_core::graph::connected_components;
use blockslide_core::oracle::{
    enumerate_reachable, never_token_vertices, oracle_reachable, Answer, OracleLimits,
};
use blockslide_core::{
    compute_depths, compute_potentials, compute_ua, decide, rigid_vertices, Strategy, TokenSet,
};

const CORPUS: u64 = 1500;

#[test]
fn rigid_vertices_never_hold_tokens() {
    let env = Envelope::default();
    for i in 0..CORPUS {
        let inst = sample_instance(21, i, &env).unwrap();
        let bd = decompose(&inst.graph);
        let a = analyze(&bd, &inst.source, &inst.target, Strategy::Faithful).unwrap();
        let space = enumerate_reachable(&inst.graph, &inst.source, OracleLimits::default());
        let never: BTreeSet<usize> = never_token_vertices(&space).unwrap().into_iter().collect();
        for v in &a.rigid_source.vertices {
            assert!(never.contains(v), "instance {i}: rigid {v} gets a token");
        }
        if space.contains(&inst.target) {
            assert_eq!(a.rigid_source, a.rigid_target, "instance {i}");
        }
    }
}

#[test]
fn decision_is_symmetric() {
    let env = Envelope::default();
    for i in 0..CORPUS {
        let inst = sample_instance(22, i, &env).unwrap();
        let there = decide(&inst.graph, &inst.source, &inst.target).unwrap();
        let back = decide(&inst.graph, &inst.target, &inst.source).unwrap();
        assert_eq!(there.reachable, back.reachable, "instance {i}");
        assert_eq!(there.reason, back.reason, "instance {i}");
    }
}

#[test]
fn components_without_rigid_vertices_have_none() {
    let env = Envelope::default();
    for i in 0..CORPUS {
        let inst = sample_instance(23, i, &env).unwrap();
        let bd = decompose(&inst.graph);
        let ua = compute_ua(&bd, &compute_depths(&bd));
        let pot = compute_potentials(&bd, &ua, &inst.source, Strategy::Faithful).unwrap();
        let rigid = rigid_vertices(&bd, &ua, &pot);
        let (rest, kept) = inst.graph.without_vertices(&rigid.vertices).unwrap();
        for part in connected_components(&rest) {
            let globals: Vec<usize> = part.iter().map(|&v| kept[v]).collect();
            let h = inst.graph.induced_subgraph(&globals).unwrap();
            let c = inst.source.restrict_to(&globals);
            let hd = decompose(&h);
            let hua = compute_ua(&hd, &compute_depths(&hd));
            let hpot = compute_potentials(&hd, &hua, &c, Strategy::Faithful).unwrap();
            assert!(rigid_vertices(&hd, &hua, &hpot).is_empty(), "instance {i}");
        }
    }
}

fn shift(s: &TokenSet, off: usize) -> impl Iterator<Item = usize> + '_ {
    s.iter().map(move |v| v + off)
}

#[test]
fn decision_matches_oracle_on_disconnected_graphs() {
    let env = Envelope {
        max_blocks: 3,
        max_clique: 3,
        max_tokens: 3,
        max_vertices: 6,
    };
    let limits = OracleLimits::default();
    for i in 0..800u64 {
        let a = sample_instance(24, i, &env).unwrap();
        let b = sample_instance(25, i, &env).unwrap();
        let n = a.graph.vertex_count();
        let mut edges = a.graph.edges().to_vec();
        edges.extend(b.graph.edges().iter().map(|&(x, y)| (x + n, y + n)));
        let g = blockslide_core::Graph::new(n + b.graph.vertex_count(), &edges).unwrap();
        let src = TokenSet::new(&g, shift(&a.source, 0).chain(shift(&b.source, n))).unwrap();
        // Alternate between balanced targets and ones that move a token across.
        let dst = if i % 3 == 0 {
            TokenSet::new(&g, shift(&a.source, 0).chain(shift(&b.target, n))).unwrap()
        } else {
            TokenSet::new(&g, shift(&a.target, 0).chain(shift(&b.target, n))).unwrap()
        };
        let ours = decide_with(&g, &src, &dst, Strategy::Faithful)
            .unwrap()
            .reachable;
        let truth = oracle_reachable(&g, &src, &dst, limits);
        assert_ne!(truth, Answer::Unknown);
        assert_eq!(ours, truth == Answer::Yes, "pair {i}");
    }
}
