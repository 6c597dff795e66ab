mod common;

use common::{c, random_state};
use mbqc_core::flow::{find_gflow, Witness};
use mbqc_core::generators::{gen_hn, gen_linear_cluster, gen_random_flow_graph};
use mbqc_core::graph::{OpenGraph, Vertex};
use mbqc_core::schedule::{canonical_order, eager_schedule, lazy_schedule};
use mbqc_core::sim::{
    branch_determinism_check, execute, schedule_equivalence, state_distance, Angle, MeasurementPattern, Outcomes,
    DEFAULT_BRANCH_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// An angle that is not a multiple of π/2.
fn generic_angle(rng: &mut impl Rng) -> Angle {
    loop {
        let a = rng.gen_range(-3.0..3.0f64);
        let q = a / std::f64::consts::FRAC_PI_2;
        if (q - q.round()).abs() > 0.05 {
            return Angle::Radians(a);
        }
    }
}

fn pattern(og: &OpenGraph, rng: &mut impl Rng) -> MeasurementPattern {
    let angles: Vec<_> = og.non_outputs().iter().map(|v| (v, generic_angle(rng))).collect();
    let n = og.inputs().len();
    MeasurementPattern::new(og.clone(), angles)
        .unwrap()
        .with_input_state(random_state(rng, n))
        .unwrap()
}

#[test]
fn two_chain_applies_hadamard_after_phase() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let inst = gen_linear_cluster(2).unwrap();
    let w = inst.witness.unwrap();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    for _ in 0..20 {
        let alpha = rng.gen_range(-3.0..3.0);
        let psi = random_state(&mut rng, 1);
        let p = MeasurementPattern::new(inst.graph.clone(), [(Vertex(0), Angle::Radians(alpha))])
            .unwrap()
            .with_input_state(psi.clone())
            .unwrap();
        let s = lazy_schedule(&inst.graph, &[Vertex(0)]).unwrap();
        let rotated = psi[1] * c(alpha.cos(), -alpha.sin());
        let expected = [(psi[0] + rotated) * r, (psi[0] - rotated) * r];
        for bit in [false, true] {
            let out = execute(&p, &s, Some(&w), Outcomes::Forced(&[bit])).unwrap();
            assert!(state_distance(&out.output_state, &expected) < 1e-9);
        }
    }
}

#[test]
fn flow_patterns_are_deterministic_and_need_corrections() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut uncorrected_failures = 0;
    for seed in 0..25u64 {
        let n = 1 + seed as usize % 3;
        let inst = gen_random_flow_graph(n, n + 2 + seed as usize % 6, seed).unwrap();
        let w = inst.witness.unwrap();
        let p = pattern(&inst.graph, &mut rng);
        let s = lazy_schedule(&inst.graph, &canonical_order(&inst.graph, w.layers())).unwrap();
        let rep = branch_determinism_check(&p, &s, Some(&w), DEFAULT_BRANCH_CAP).unwrap();
        assert!(rep.pass, "seed {seed}: {rep:?}");
        assert_eq!(rep.degenerate, 0);
        if !branch_determinism_check(&p, &s, None, DEFAULT_BRANCH_CAP).unwrap().pass {
            uncorrected_failures += 1;
        }
    }
    assert!(uncorrected_failures > 0);
}

#[test]
fn gflow_patterns_are_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (n, m) in [(2, 5), (2, 6), (3, 7)] {
        let inst = gen_hn(n, m).unwrap();
        let w = inst.witness.unwrap();
        let p = pattern(&inst.graph, &mut rng);
        let s = lazy_schedule(&inst.graph, &canonical_order(&inst.graph, w.layers())).unwrap();
        let rep = branch_determinism_check(&p, &s, Some(&w), DEFAULT_BRANCH_CAP).unwrap();
        assert!(rep.pass, "H({n},{m}): {rep:?}");
        // the finder's own gflow must work as well
        let g = Witness::Gflow(find_gflow(&inst.graph).unwrap());
        let s = lazy_schedule(&inst.graph, &canonical_order(&inst.graph, g.layers())).unwrap();
        assert!(branch_determinism_check(&p, &s, Some(&g), DEFAULT_BRANCH_CAP).unwrap().pass);
    }
}

#[test]
fn eager_and_lazy_schedules_produce_the_same_outputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for seed in 0..10u64 {
        let inst = gen_random_flow_graph(2, 4 + seed as usize % 5, seed).unwrap();
        let og = &inst.graph;
        let w = inst.witness.unwrap();
        let p = pattern(og, &mut rng);
        let order = canonical_order(og, w.layers());
        let lazy = lazy_schedule(og, &order).unwrap();
        let eager = eager_schedule(og, &order).unwrap();
        assert!(schedule_equivalence(&p, &eager, &lazy, Some(&w), DEFAULT_BRANCH_CAP).unwrap().pass);
        let run = execute(&p, &eager, Some(&w), Outcomes::Seeded(seed)).unwrap();
        assert_eq!(run.peak_live, eager.residency_max());
        assert_eq!(run.peak_live, og.vertex_count());
    }
}

#[test]
fn sampled_outcomes_follow_the_born_rule() {
    // Lone input in cos θ|0⟩ + sin θ|1⟩ measured at angle 0.
    let og = OpenGraph::from_parts(&["a", "b"], &[], &["a"], &["b"]).unwrap();
    let theta = std::f64::consts::PI / 8.0;
    let input = vec![c(theta.cos(), 0.0), c(theta.sin(), 0.0)];
    let p = MeasurementPattern::new(og.clone(), [(Vertex(0), Angle::Radians(0.0))])
        .unwrap()
        .with_input_state(input)
        .unwrap();
    let s = lazy_schedule(&og, &[Vertex(0)]).unwrap();
    let zeros = (0..1000u64)
        .filter(|&seed| !execute(&p, &s, None, Outcomes::Seeded(seed)).unwrap().outcomes[0].1)
        .count();
    let expected = (1.0 + (2.0 * theta).sin()) / 2.0;
    assert!((zeros as f64 / 1000.0 - expected).abs() < 0.1, "{zeros} zeros, expected {expected}");
}
