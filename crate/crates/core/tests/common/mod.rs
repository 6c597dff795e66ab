//! Brute-force oracles shared by the integration tests and the acceptance
//! runner. None of them call the finders or the schedulers under test.
#![allow(dead_code)]

use mbqc_core::graph::{OpenGraph, Vertex, VertexSet};
use mbqc_core::sim::StateVector;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

/// Graph on `0..m` (named `v0..`) with the given edges and interface.
pub fn build(m: usize, edges: &[(usize, usize)], inputs: &[usize], outputs: &[usize]) -> OpenGraph {
    let mut g = OpenGraph::new((0..m).map(|k| format!("v{k}"))).unwrap();
    for &(u, v) in edges {
        g.add_edge(Vertex(u), Vertex(v)).unwrap();
    }
    for &i in inputs {
        g.set_input(Vertex(i), true).unwrap();
    }
    for &o in outputs {
        g.set_output(Vertex(o), true).unwrap();
    }
    g
}

pub fn random_graph(rng: &mut impl Rng, m: usize, p: f64, n_in: usize, n_out: usize) -> OpenGraph {
    let mut edges = Vec::new();
    for u in 0..m {
        for v in u + 1..m {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let mut idx: Vec<usize> = (0..m).collect();
    idx.shuffle(rng);
    let inputs = idx[..n_in].to_vec();
    idx.shuffle(rng);
    let outputs = idx[..n_out].to_vec();
    build(m, &edges, &inputs, &outputs)
}

/// Every graph on `m` vertices with every choice of `|I| = |O| = k`.
pub fn for_each_small_open_graph(m: usize, k: usize, mut visit: impl FnMut(&OpenGraph)) {
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v))).collect();
    let subsets: Vec<Vec<usize>> = (0u32..1 << m)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..m).filter(|&b| s >> b & 1 == 1).collect())
        .collect();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
        for i in &subsets {
            for o in &subsets {
                visit(&build(m, &edges, i, o));
            }
        }
    }
}

fn nbrs(og: &OpenGraph, v: usize) -> Vec<usize> {
    og.neighbors(Vertex(v)).unwrap().iter().map(|x| x.0).collect()
}

fn is_acyclic(m: usize, arcs: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0usize; m];
    for &(_, b) in arcs {
        indeg[b] += 1;
    }
    let mut stack: Vec<usize> = (0..m).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &(a, b) in arcs {
            if a == v {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    stack.push(b);
                }
            }
        }
    }
    seen == m
}

/// Checks a successor map against the flow definition directly: the
/// relation `i → f(i)`, `i → j` for `j ∈ N(f(i)) \ {i}` must be acyclic.
pub fn is_flow_map(og: &OpenGraph, f: &[(usize, usize)]) -> bool {
    let mut arcs = Vec::new();
    for &(i, c) in f {
        if og.is_input(Vertex(c)) || !og.has_edge(Vertex(i), Vertex(c)) {
            return false;
        }
        arcs.push((i, c));
        arcs.extend(nbrs(og, c).into_iter().filter(|&j| j != i).map(|j| (i, j)));
    }
    is_acyclic(og.vertex_count(), &arcs)
}

/// Flow existence by enumerating every map `O^C → I^C`.
pub fn flow_exists(og: &OpenGraph) -> bool {
    let dom: Vec<usize> = og.non_outputs().iter().map(|v| v.0).collect();
    let cod: Vec<usize> = og.non_inputs().iter().map(|v| v.0).collect();
    if dom.is_empty() {
        return true;
    }
    if cod.is_empty() {
        return false;
    }
    let mut digits = vec![0usize; dom.len()];
    loop {
        let f: Vec<_> = dom.iter().zip(&digits).map(|(&i, &d)| (i, cod[d])).collect();
        if is_flow_map(og, &f) {
            return true;
        }
        let mut k = 0;
        loop {
            if k == digits.len() {
                return false;
            }
            digits[k] += 1;
            if digits[k] < cod.len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

fn odd_mask(og: &OpenGraph, k: u32) -> u32 {
    let mut acc = 0u32;
    for c in 0..og.vertex_count() {
        if k >> c & 1 == 1 {
            for j in nbrs(og, c) {
                acc ^= 1 << j;
            }
        }
    }
    acc
}

/// Gflow existence by dynamic programming over "already ordered" sets,
/// trying every candidate corrector `K ⊆ S \ I` explicitly.
pub fn gflow_exists(og: &OpenGraph) -> bool {
    let m = og.vertex_count();
    assert!(m <= 16);
    let mask_of = |s: &VertexSet| s.iter().fold(0u32, |a, v| a | 1 << v.0);
    let outputs = mask_of(og.outputs());
    let non_inputs = mask_of(&og.non_inputs());
    let full = (1u32 << m) - 1;
    let odd: Vec<u32> = (0..1u32 << m).map(|k| odd_mask(og, k)).collect();
    let mut reachable = vec![false; 1 << m];
    reachable[outputs as usize] = true;
    for s in 0..=full {
        if !reachable[s as usize] {
            continue;
        }
        for i in 0..m {
            if s >> i & 1 == 1 {
                continue;
            }
            let allowed = s | 1 << i;
            let cand = s & non_inputs;
            // every subset of `cand`, largest first
            let mut k = cand;
            loop {
                if k != 0 && odd[k as usize] >> i & 1 == 1 && odd[k as usize] & !allowed == 0 {
                    reachable[allowed as usize] = true;
                    break;
                }
                if k == 0 {
                    break;
                }
                k = (k - 1) & cand;
            }
        }
    }
    reachable[full as usize]
}

/// Checks a layered gflow against the definition with its own arithmetic.
pub fn is_gflow(og: &OpenGraph, g: &[(usize, Vec<usize>)], layer: &[usize]) -> bool {
    let before = |i: usize, j: usize| layer[i] > layer[j];
    g.iter().all(|(i, k)| {
        let km = k.iter().fold(0u32, |a, &c| a | 1 << c);
        let odd = odd_mask(og, km);
        k.iter().all(|&c| !og.is_input(Vertex(c)) && before(*i, c))
            && odd >> i & 1 == 1
            && (0..og.vertex_count()).all(|j| odd >> j & 1 == 0 || j == *i || before(*i, j))
    })
}

/// Smallest peak live count over every interleaving of preparations with a
/// fixed measurement order, plus a schedule realising it.
///
/// Entanglement never changes the live count, so only preparation timing is
/// searched. An edge `(w, x)` just forces `x` to be live when the first of
/// the two is measured.
/// Memo entry: best peak from a state, and the move achieving it (`None` at
/// the end, `Some(None)` to measure next, `Some(Some(v))` to prepare `v`).
type Memo = std::collections::HashMap<(u64, usize), (usize, Option<Option<usize>>)>;

pub fn optimal_interleaving_peak(og: &OpenGraph, order: &[Vertex]) -> (usize, Vec<mbqc_core::schedule::Event>) {
    use mbqc_core::schedule::Event;
    let m = og.vertex_count();
    let full = (1u64 << m) - 1;
    let start = og.inputs().iter().fold(0u64, |a, v| a | 1 << v.0);
    let nb: Vec<u64> = (0..m).map(|v| nbrs(og, v).into_iter().fold(0u64, |a, j| a | 1 << j)).collect();

    fn best(
        prepared: u64,
        k: usize,
        order: &[Vertex],
        nb: &[u64],
        full: u64,
        memo: &mut Memo,
    ) -> usize {
        if let Some(&(v, _)) = memo.get(&(prepared, k)) {
            return v;
        }
        let live = prepared.count_ones() as usize - k;
        let measured: u64 = order[..k].iter().fold(0, |a, v| a | 1 << v.0);
        let mut choice = (usize::MAX, None);
        if k == order.len() && prepared == full {
            choice = (live, None);
        } else {
            if k < order.len() {
                let w = order[k].0;
                let need = (nb[w] | 1 << w) & !measured;
                if prepared & need == need {
                    let r = best(prepared, k + 1, order, nb, full, memo).max(live);
                    choice = choice.min((r, Some(None)));
                }
            }
            for v in 0..nb.len() {
                if prepared >> v & 1 == 0 {
                    let r = best(prepared | 1 << v, k, order, nb, full, memo).max(live + 1);
                    if r < choice.0 {
                        choice = (r, Some(Some(v)));
                    }
                }
            }
        }
        memo.insert((prepared, k), choice);
        choice.0
    }

    let mut memo = Memo::new();
    let peak = best(start, 0, order, &nb, full, &mut memo);

    // Walk the optimal choices to materialise the schedule.
    let mut events = Vec::new();
    let mut applied = std::collections::BTreeSet::new();
    let (mut prepared, mut k) = (start, 0);
    loop {
        let (_, step) = memo[&(prepared, k)];
        match step {
            None => break,
            Some(Some(v)) => {
                events.push(Event::Prepare(Vertex(v)));
                prepared |= 1 << v;
            }
            Some(None) => {
                let w = order[k];
                for j in nbrs(og, w.0) {
                    let e = (w.0.min(j), w.0.max(j));
                    if applied.insert(e) {
                        events.push(Event::Entangle(Vertex(e.0), Vertex(e.1)));
                    }
                }
                events.push(Event::Measure(w));
                events.push(Event::Discard(w));
                k += 1;
            }
        }
    }
    for (u, v) in og.edges() {
        if applied.insert((u.0, v.0)) {
            events.push(Event::Entangle(u, v));
        }
    }
    (peak, events)
}

/// Random topological order of the non-outputs under the order generated by
/// `arcs` (pairs `a ≺ b`).
pub fn random_topological_order(og: &OpenGraph, arcs: &[(usize, usize)], rng: &mut impl Rng) -> Vec<Vertex> {
    let m = og.vertex_count();
    let mut indeg = vec![0usize; m];
    for &(_, b) in arcs {
        indeg[b] += 1;
    }
    let mut done = vec![false; m];
    let mut out = Vec::new();
    for _ in 0..m {
        let ready: Vec<usize> = (0..m).filter(|&v| !done[v] && indeg[v] == 0).collect();
        let v = *ready.choose(rng).expect("relation is acyclic");
        done[v] = true;
        for &(a, b) in arcs {
            if a == v {
                indeg[b] -= 1;
            }
        }
        if !og.is_output(Vertex(v)) {
            out.push(Vertex(v));
        }
    }
    out
}

/// The order relation induced by a successor map, as in [`is_flow_map`].
pub fn flow_arcs(og: &OpenGraph, f: &[(Vertex, Vertex)]) -> Vec<(usize, usize)> {
    let mut arcs = Vec::new();
    for &(i, c) in f {
        arcs.push((i.0, c.0));
        arcs.extend(nbrs(og, c.0).into_iter().filter(|&j| j != i.0).map(|j| (i.0, j)));
    }
    arcs
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Random normalised state on `n` qubits.
pub fn random_state(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..1 << n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|a| *a /= norm);
    v
}

/// Dense graph state with `w` projected onto `bra` and removed.
pub fn measured_graph_state(og: &OpenGraph, w: Vertex, bra: [Complex64; 2]) -> StateVector {
    let mut s = StateVector::graph_state(og);
    s.contract(w, bra);
    s.normalize();
    s
}

/// Whether the non-outputs admit only one order compatible with `arcs`:
/// true iff each consecutive pair of `order` is related transitively.
pub fn extension_is_unique(og: &OpenGraph, arcs: &[(usize, usize)], order: &[Vertex]) -> bool {
    let m = og.vertex_count();
    let reach = |from: usize, to: usize| {
        let mut seen = vec![false; m];
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            for &(a, b) in arcs {
                if a == v && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen[to]
    };
    order.windows(2).all(|p| reach(p[0].0, p[1].0))
}
