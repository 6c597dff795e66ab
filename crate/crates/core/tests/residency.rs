mod common;

use common::{flow_arcs, optimal_interleaving_peak, random_graph, random_topological_order};
use mbqc_core::flow::{find_flow, find_gflow, path_cover_from_flow};
use mbqc_core::generators::{gen_hn, gen_random_flow_graph};
use mbqc_core::schedule::{
    canonical_order, compute_live_sets, degree_lower_bound, lazy_schedule, min_qr_exact, min_qr_flow, min_qr_greedy,
    Schedule, DEFAULT_EXACT_CAP,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn every_measurement_sees_one_live_qubit_per_path() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for seed in 0..60u64 {
        let n = 1 + seed as usize % 4;
        let inst = gen_random_flow_graph(n, n + 1 + seed as usize % 10, seed).unwrap();
        let og = &inst.graph;
        let fl = find_flow(og).unwrap();
        let cover = path_cover_from_flow(og, &fl).unwrap();
        let arcs = flow_arcs(og, &fl.pairs());
        for _ in 0..5 {
            let order = random_topological_order(og, &arcs, &mut rng);
            for (k, &w) in order.iter().enumerate() {
                let live = compute_live_sets(og, &order[..k], w).unwrap();
                assert_eq!(live.q_w.len(), n, "seed {seed}, w = {}", og.name(w));
                let mut paths: Vec<usize> = live.q_w.iter().map(|v| cover.path_of(v)).collect();
                paths.sort_unstable();
                paths.dedup();
                assert_eq!(paths.len(), n);
            }
            let s = lazy_schedule(og, &order).unwrap();
            assert_eq!(s.residency_max(), (n + 1).min(og.vertex_count()));
        }
    }
}

#[test]
fn flow_graphs_need_exactly_n_plus_one_qubits() {
    for seed in 0..80u64 {
        let n = 1 + seed as usize % 5;
        let m = n + seed as usize % 6;
        let inst = gen_random_flow_graph(n, m, seed).unwrap();
        let og = &inst.graph;
        let fl = find_flow(og).unwrap();
        let formula = (n + 1).min(m);
        assert_eq!(min_qr_flow(og, &fl).unwrap().min_qr, formula);
        assert_eq!(min_qr_exact(og, fl.layers(), DEFAULT_EXACT_CAP).unwrap().min_qr, formula);
        assert_eq!(min_qr_greedy(og, fl.layers()).unwrap().min_qr, formula);
    }
}

#[test]
fn lazy_schedule_is_optimal_for_its_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for trial in 0..3000 {
        let m = 2 + trial % 6;
        let k = 1 + trial % 2.min(m - 1);
        let og = random_graph(&mut rng, m, 0.6, k, k + trial % 2);
        let Some(g) = find_gflow(&og) else { continue };
        let order = canonical_order(&og, g.layers());
        let (best, events) = optimal_interleaving_peak(&og, &order);
        let witness = Schedule::from_events(&og, events).unwrap();
        assert_eq!(witness.residency_max(), best);
        assert_eq!(witness.measurement_order(), order);
        let lazy = lazy_schedule(&og, &order).unwrap();
        assert_eq!(lazy.residency_max(), best, "{og:?} order {order:?}");
        checked += 1;
    }
    assert!(checked > 200, "only {checked} graphs had gflow");
}

#[test]
fn gflow_family_bounds() {
    for m in [6, 7] {
        let inst = gen_hn(2, m).unwrap();
        let layers = inst.witness.as_ref().unwrap().layers().to_vec();
        let lower = degree_lower_bound(&inst.graph).unwrap();
        assert_eq!(lower, m - 2);
        let exact = min_qr_exact(&inst.graph, &layers, DEFAULT_EXACT_CAP).unwrap().min_qr;
        assert!(exact >= m - 2);
        assert!(exact > 3, "gflow family should exceed n + 1");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bounds_are_ordered(seed in any::<u64>(), m in 2usize..9, k in 1usize..3, p in 0.2f64..0.8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let og = random_graph(&mut rng, m, p, k.min(m), k.min(m));
        if let Some(g) = find_gflow(&og) {
            if og.non_outputs().is_empty() {
                return Ok(());
            }
            let lower = degree_lower_bound(&og).unwrap();
            let exact = min_qr_exact(&og, g.layers(), DEFAULT_EXACT_CAP).unwrap().min_qr;
            let greedy = min_qr_greedy(&og, g.layers()).unwrap().min_qr;
            let canonical = lazy_schedule(&og, &canonical_order(&og, g.layers())).unwrap().residency_max();
            prop_assert!(lower <= exact);
            prop_assert!(exact <= greedy);
            prop_assert!(exact <= canonical);
            prop_assert!(og.inputs().len().max(og.outputs().len()) <= exact);
        }
    }

    #[test]
    fn schedule_profiles_start_and_end_on_the_interface(seed in any::<u64>(), n in 1usize..4, extra in 0usize..8) {
        let inst = gen_random_flow_graph(n, n + extra, seed).unwrap();
        let og = &inst.graph;
        let s = lazy_schedule(og, &canonical_order(og, inst.witness.as_ref().unwrap().layers())).unwrap();
        prop_assert_eq!(s.initial_live(), n);
        prop_assert_eq!(*s.live_profile().last().unwrap_or(&n), n);
    }
}
