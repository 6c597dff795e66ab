//! Graph families with their dependency witnesses attached.
//!
//! `H^C_n` has inputs `i_1..i_n`, outputs `v_1..v_n` and intermediates
//! `v_{n+1}..v_{m'}` with `m' = m - n`; its edges are `{i_j, v_j}` for
//! `j ≤ n-2`, the chain `v_n - v_{n+1} - … - v_{m'}` and `{i_{n-1}, v_{m'}}`.
//! `H_n` is its edge complement (gflow, no flow) and `H'_n` adds a vertex `y`
//! adjacent to every vertex of `H^C_n` (flow).

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::flow::{verify_flow, verify_gflow, Flow, Gflow, Witness};
use crate::graph::{OpenGraph, Vertex, VertexSet};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyInstance {
    pub graph: OpenGraph,
    pub witness: Option<Witness>,
    pub provenance: String,
}

impl FamilyInstance {
    fn new(graph: OpenGraph, witness: Option<Witness>, provenance: String) -> Result<Self> {
        if let Some(w) = &witness {
            let report = w.verify(&graph)?;
            if !report.is_pass() {
                return Err(Error::InvariantViolation(format!(
                    "attached witness for {provenance} fails verification: {:?}",
                    report.violations
                )));
            }
        }
        Ok(Self {
            graph,
            witness,
            provenance,
        })
    }
}

fn check_h_params(n: usize, m: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Parameter(format!("n must exceed 1, got {n}")));
    }
    if m < 2 * n + 1 {
        return Err(Error::Parameter(format!(
            "m must be at least 2n + 1 = {} so that intermediate qubits exist, got {m}",
            2 * n + 1
        )));
    }
    Ok(())
}

fn input(j: usize) -> String {
    format!("i_{j}")
}

fn vert(j: usize) -> String {
    format!("v_{j}")
}

/// Names, edges, inputs and outputs of `H^C_n` (plus `y` when requested).
fn hc_graph(n: usize, m: usize, with_y: bool) -> Result<OpenGraph> {
    check_h_params(n, m)?;
    let mp = m - n;
    let mut names: Vec<String> = (1..=n).map(input).chain((1..=mp).map(vert)).collect();
    if with_y {
        names.push("y".to_string());
    }
    let mut g = OpenGraph::new(names)?;
    let id = |g: &OpenGraph, s: String| g.vertex(&s).expect("generated name");
    let mut edges = Vec::new();
    for j in 1..=n.saturating_sub(2) {
        edges.push((input(j), vert(j)));
    }
    for j in 0..mp - n {
        edges.push((vert(n + j), vert(n + j + 1)));
    }
    edges.push((input(n - 1), vert(mp)));
    for (a, b) in edges {
        let (u, v) = (id(&g, a), id(&g, b));
        g.add_edge(u, v)?;
    }
    if with_y {
        let y = id(&g, "y".to_string());
        for k in 0..m {
            g.add_edge(Vertex(k), y)?;
        }
    }
    for j in 1..=n {
        let (i, o) = (id(&g, input(j)), id(&g, vert(j)));
        g.set_input(i, true)?;
        g.set_output(o, true)?;
    }
    Ok(g)
}

/// `H^C_n`, the sparse edge complement of `H_n`. No witness is attached.
pub fn gen_hc(n: usize, m: usize) -> Result<FamilyInstance> {
    let g = hc_graph(n, m, false)?;
    FamilyInstance::new(g, None, format!("H^C_{n} with m = {m}"))
}

/// `H_n` with the closed-form gflow
/// `g(i_j) = {v_j, v_{n-1}}` (`j ≤ n-2`), `g(v_j) = {v_{j-2}, v_{j-1}}`
/// (`n < j ≤ m'`), `g(i_{n-1}) = {v_{m'-1}, v_{m'}}`, `g(i_n) = {v_{m'}}`.
pub fn gen_hn(n: usize, m: usize) -> Result<FamilyInstance> {
    let g = hc_graph(n, m, false)?.complement();
    let mp = m - n;
    let size = g.vertex_count();
    let id = |s: String| g.vertex(&s).expect("generated name");
    let set = |names: &[String]| VertexSet::from_vertices(size, names.iter().map(|s| g.vertex(s).expect("generated name")));
    let mut entries = Vec::new();
    for j in 1..=n.saturating_sub(2) {
        entries.push((id(input(j)), set(&[vert(j), vert(n - 1)])));
    }
    for j in n + 1..=mp {
        entries.push((id(vert(j)), set(&[vert(j - 2), vert(j - 1)])));
    }
    entries.push((id(input(n - 1)), set(&[vert(mp - 1), vert(mp)])));
    entries.push((id(input(n)), set(&[vert(mp)])));
    let gflow = Gflow::with_derived_layers(&g, entries)?;
    if !verify_gflow(&g, &gflow)?.is_pass() {
        return Err(Error::InvariantViolation(format!("closed-form gflow for H_{n}, m = {m} fails")));
    }
    FamilyInstance::new(g, Some(Witness::Gflow(gflow)), format!("H_{n} with m = {m}, closed-form gflow"))
}

/// `H'_n` with the closed-form flow
/// `f(i_j) = v_j` (`j ≤ n-2`), `f(i_{n-1}) = v_{m'}`, `f(i_n) = y`,
/// `f(v_j) = v_{j-1}` (`n < j ≤ m'`), `f(y) = v_{n-1}`.
pub fn gen_hprime(n: usize, m: usize) -> Result<FamilyInstance> {
    let g = hc_graph(n, m, true)?;
    let mp = m - n;
    let id = |s: String| g.vertex(&s).expect("generated name");
    let mut pairs = Vec::new();
    for j in 1..=n.saturating_sub(2) {
        pairs.push((id(input(j)), id(vert(j))));
    }
    pairs.push((id(input(n - 1)), id(vert(mp))));
    pairs.push((id(input(n)), id("y".to_string())));
    for j in n + 1..=mp {
        pairs.push((id(vert(j)), id(vert(j - 1))));
    }
    pairs.push((id("y".to_string()), id(vert(n - 1))));
    let flow = Flow::with_derived_layers(&g, pairs)?;
    if !verify_flow(&g, &flow)?.is_pass() {
        return Err(Error::InvariantViolation(format!("closed-form flow for H'_{n}, m = {m} fails")));
    }
    FamilyInstance::new(g, Some(Witness::Flow(flow)), format!("H'_{n} with m = {m}, closed-form flow"))
}

/// Path `1 - 2 - … - m` with `1` the input and `m` the output.
pub fn gen_linear_cluster(m: usize) -> Result<FamilyInstance> {
    if m == 0 {
        return Err(Error::Parameter("a linear cluster needs at least one vertex".into()));
    }
    let mut g = OpenGraph::new((1..=m).map(|k| k.to_string()))?;
    for k in 1..m {
        g.add_edge(Vertex(k - 1), Vertex(k))?;
    }
    g.set_input(Vertex(0), true)?;
    g.set_output(Vertex(m - 1), true)?;
    let flow = Flow::with_derived_layers(&g, (1..m).map(|k| (Vertex(k - 1), Vertex(k))))?;
    FamilyInstance::new(g, Some(Witness::Flow(flow)), format!("linear cluster, m = {m}"))
}

/// Random open graph with flow: `n` vertex-disjoint paths covering `m`
/// vertices, plus extra edges kept only when the path-successor flow stays
/// valid under the path layering. Deterministic per seed.
pub fn gen_random_flow_graph(n: usize, m: usize, seed: u64) -> Result<FamilyInstance> {
    if n == 0 || n > m {
        return Err(Error::Parameter(format!("need 1 ≤ n ≤ m, got n = {n}, m = {m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(&mut rng);
    // Cut the permutation into n non-empty runs.
    let mut cuts: Vec<usize> = (1..m).collect();
    cuts.shuffle(&mut rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(n - 1).collect();
    cuts.sort_unstable();
    let mut bounds = Vec::with_capacity(n + 1);
    bounds.push(0);
    bounds.extend(cuts);
    bounds.push(m);

    let mut g = OpenGraph::new((0..m).map(|k| format!("q{k}")))?;
    let mut pairs = Vec::new();
    let mut layer = alloc::vec![0usize; m];
    for w in bounds.windows(2) {
        let path = &perm[w[0]..w[1]];
        g.set_input(Vertex(path[0]), true)?;
        g.set_output(Vertex(*path.last().expect("non-empty run")), true)?;
        for (k, &v) in path.iter().enumerate() {
            layer[v] = path.len() - 1 - k;
        }
        for e in path.windows(2) {
            g.add_edge(Vertex(e[0]), Vertex(e[1]))?;
            pairs.push((Vertex(e[0]), Vertex(e[1])));
        }
    }
    let flow = Flow::new(m, pairs, layer)?;
    if m >= 2 {
        let attempts = rng.gen_range(0..=2 * m);
        for _ in 0..attempts {
            let u = rng.gen_range(0..m);
            let v = rng.gen_range(0..m);
            if u == v || g.has_edge(Vertex(u), Vertex(v)) {
                continue;
            }
            let mut trial = g.clone();
            trial.add_edge(Vertex(u), Vertex(v))?;
            if verify_flow(&trial, &flow)?.is_pass() {
                g = trial;
            }
        }
    }
    FamilyInstance::new(
        g,
        Some(Witness::Flow(flow)),
        format!("random flow graph, n = {n}, m = {m}, seed = {seed}"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::find_flow;
    use crate::rewrite::measure_y_rewrite;
    use crate::schedule::min_qr_flow;
    use alloc::vec;

    fn edge_names(g: &OpenGraph) -> Vec<(String, String)> {
        g.edges()
            .into_iter()
            .map(|(u, v)| (g.name(u).to_string(), g.name(v).to_string()))
            .collect()
    }

    fn pairs(list: &[(&str, &str)]) -> Vec<(String, String)> {
        list.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn hc_edge_lists() {
        let g = gen_hc(2, 5).unwrap().graph;
        assert_eq!(g.names(), ["i_1", "i_2", "v_1", "v_2", "v_3"]);
        let mut e = edge_names(&g);
        e.sort();
        assert_eq!(e, pairs(&[("i_1", "v_3"), ("v_2", "v_3")]));

        let g = gen_hc(3, 8).unwrap().graph;
        let mut e = edge_names(&g);
        e.sort();
        assert_eq!(e, pairs(&[("i_1", "v_1"), ("i_2", "v_5"), ("v_3", "v_4"), ("v_4", "v_5")]));
        assert_eq!(g.format_set(g.inputs()), "{i_1, i_2, i_3}");
        assert_eq!(g.format_set(g.outputs()), "{v_1, v_2, v_3}");
    }

    #[test]
    fn hc_parameter_errors() {
        assert!(matches!(gen_hc(2, 4), Err(Error::Parameter(_))));
        assert!(matches!(gen_hc(1, 5), Err(Error::Parameter(_))));
        assert!(matches!(gen_hn(3, 6), Err(Error::Parameter(_))));
    }

    #[test]
    fn hn_closed_form_gflow() {
        let inst = gen_hn(2, 5).unwrap();
        let g = &inst.graph;
        let Some(Witness::Gflow(gf)) = &inst.witness else { panic!() };
        let show = |name: &str| g.format_set(gf.corrector(g.vertex(name).unwrap()).unwrap());
        assert_eq!(show("v_3"), "{v_1, v_2}");
        assert_eq!(show("i_1"), "{v_2, v_3}");
        assert_eq!(show("i_2"), "{v_3}");
        assert!(find_flow(g).is_none());
    }

    #[test]
    fn hn_minimal_degree() {
        let g = gen_hn(2, 6).unwrap().graph;
        assert_eq!(g.vertices().map(|v| g.degree(v)).min(), Some(6 - 3));
    }

    #[test]
    fn hprime_closed_form_flow() {
        let inst = gen_hprime(2, 5).unwrap();
        let g = &inst.graph;
        let Some(Witness::Flow(f)) = &inst.witness else { panic!() };
        let succ = |name: &str| g.name(f.successor(g.vertex(name).unwrap()).unwrap()).to_string();
        assert_eq!(succ("i_1"), "v_3");
        assert_eq!(succ("i_2"), "y");
        assert_eq!(succ("v_3"), "v_2");
        assert_eq!(succ("y"), "v_1");
        let y = g.vertex("y").unwrap();
        assert_eq!(measure_y_rewrite(g, y).unwrap(), gen_hn(2, 5).unwrap().graph);
        assert!(gen_hprime(3, 8).is_ok());
    }

    #[test]
    fn hc_max_degree_two() {
        for n in 2..5 {
            for m in 2 * n + 1..2 * n + 6 {
                let g = gen_hc(n, m).unwrap().graph;
                assert!(g.vertices().all(|v| g.degree(v) <= 2), "n={n} m={m}");
                assert_eq!(gen_hn(n, m).unwrap().graph, g.complement());
                let hp = gen_hprime(n, m).unwrap();
                let y = hp.graph.vertex("y").unwrap();
                assert_eq!(measure_y_rewrite(&hp.graph, y).unwrap(), gen_hn(n, m).unwrap().graph);
            }
        }
    }

    #[test]
    fn linear_cluster() {
        let inst = gen_linear_cluster(3).unwrap();
        let Some(Witness::Flow(f)) = &inst.witness else { panic!() };
        assert_eq!(f.pairs(), vec![(Vertex(0), Vertex(1)), (Vertex(1), Vertex(2))]);
        assert!(gen_linear_cluster(0).is_err());
        assert_eq!(gen_linear_cluster(1).unwrap().graph.vertex_count(), 1);
    }

    #[test]
    fn random_flow_graphs() {
        for seed in 0..20 {
            let inst = gen_random_flow_graph(1, 5, seed).unwrap();
            let Some(Witness::Flow(f)) = &inst.witness else { panic!() };
            assert_eq!(min_qr_flow(&inst.graph, f).unwrap().min_qr, 2);
            let inst = gen_random_flow_graph(3, 3, seed).unwrap();
            let Some(Witness::Flow(f)) = &inst.witness else { panic!() };
            assert_eq!(inst.graph.inputs(), inst.graph.outputs());
            assert_eq!(min_qr_flow(&inst.graph, f).unwrap().min_qr, 3);
        }
        assert_eq!(gen_random_flow_graph(2, 9, 7).unwrap(), gen_random_flow_graph(2, 9, 7).unwrap());
        assert!(gen_random_flow_graph(4, 3, 0).is_err());
        assert!(gen_random_flow_graph(0, 3, 0).is_err());
    }
}
