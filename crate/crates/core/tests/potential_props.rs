mod common;

use blockslide_core::blocks::decompose;
use blockslide_core::generate::{sample_instance, Envelope};
use blockslide_core::oracle::{enumerate_reachable, potentials_from_space, OracleLimits};
use blockslide_core::potential::{
    compute_potentials_traced, fixed_point_violations, iteration_bound,
};
use blockslide_core::{
    compute_depths, compute_potentials, compute_ua, Graph, PairKind, Strategy as Mode, TokenSet,
};
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = (Graph, TokenSet)> {
    (any::<u64>(), 1usize..=12, 2usize..=5, 0usize..=8)
        .prop_map(|(seed, b, k, t)| common::instance(seed, b, k, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn strategies_agree((g, c) in instance()) {
        let bd = decompose(&g);
        let ua = compute_ua(&bd, &compute_depths(&bd));
        let (a, trace_a) = compute_potentials_traced(&bd, &ua, &c, Mode::Faithful).unwrap();
        let (b, trace_b) = compute_potentials_traced(&bd, &ua, &c, Mode::Worklist).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(trace_a, trace_b);
    }

    #[test]
    fn loop_is_monotone_with_one_update_per_pass((g, c) in instance()) {
        let bd = decompose(&g);
        let ua = compute_ua(&bd, &compute_depths(&bd));
        let (table, trace) = compute_potentials_traced(&bd, &ua, &c, Mode::Faithful).unwrap();
        prop_assert_eq!(table.iteration_count, trace.len() + 1);
        let mut y = vec![0usize; bd.pair_count()];
        for (i, step) in trace.iter().enumerate() {
            prop_assert_eq!(step.pass, i + 1);
            prop_assert_eq!(step.from, y[step.pair]);
            prop_assert!(step.to > step.from);
            y[step.pair] = step.to;
        }
        prop_assert_eq!(y.as_slice(), table.as_slice());
    }

    #[test]
    fn final_table_is_a_bounded_fixed_point((g, c) in instance()) {
        let bd = decompose(&g);
        let ua = compute_ua(&bd, &compute_depths(&bd));
        let table = compute_potentials(&bd, &ua, &c, Mode::Faithful).unwrap();
        prop_assert!(fixed_point_violations(&bd, &ua, &c, &table).is_empty());
        prop_assert!(table.iteration_count <= iteration_bound(&bd));
        for (id, &p) in bd.pairs().iter().enumerate() {
            prop_assert!(table.get(id) <= bd.side_block_count(id));
            if p.kind == PairKind::ToVertex {
                let sum: i64 = bd.kappa(p.block, p.base).unwrap().into_iter()
                    .map(|v| table.get(bd.pair_id(PairKind::ToBlock, v, p.block).unwrap()) as i64)
                    .sum();
                let in_block = bd.block(p.block).iter().filter(|&&v| v != p.base && c.contains(v)).count() as i64;
                prop_assert!(sum + ua.bit(id) - in_block >= 0);
            }
        }
    }
}

#[test]
fn potentials_match_reachable_maximum() {
    let env = Envelope::default();
    for i in 0..600 {
        let inst = sample_instance(11, i, &env).unwrap();
        let bd = decompose(&inst.graph);
        let ua = compute_ua(&bd, &compute_depths(&bd));
        for c in [&inst.source, &inst.target] {
            let table = compute_potentials(&bd, &ua, c, Mode::Faithful).unwrap();
            let space = enumerate_reachable(&inst.graph, c, OracleLimits::default());
            let expected = potentials_from_space(&space, &bd, &ua).expect("complete search");
            let ours: Vec<i64> = table.as_slice().iter().map(|&v| v as i64).collect();
            assert_eq!(ours, expected, "instance {i}: {inst:?}");
        }
    }
}
