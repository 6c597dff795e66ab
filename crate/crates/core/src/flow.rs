//! Flow and gflow: witnesses, verifiers, finders, and the path cover a flow
//! induces.
//!
//! Strict partial orders are carried as layer maps. Outputs sit at layer 0,
//! a larger layer is measured earlier, and `u ≺ v` holds exactly when
//! `layer(u) > layer(v)`; vertices sharing a layer are incomparable.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::gf2::{Gf2Matrix, Gf2System};
use crate::graph::{OpenGraph, Vertex, VertexSet};
use crate::{BitSet, Error, Result};

/// A flow `(f, ≺_f)`: one corrector vertex per measured vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flow {
    successor: Vec<Option<Vertex>>,
    layer: Vec<usize>,
}

/// A gflow `(g, ≺_g)`: one corrector set per measured vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gflow {
    corrector: Vec<Option<VertexSet>>,
    layer: Vec<usize>,
}

/// Either kind of dependency witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Flow(Flow),
    Gflow(Gflow),
}

impl Flow {
    /// Assembles a flow on `m` vertices from `(i, f(i))` pairs and a layer map.
    ///
    /// Only sizes and duplicates are checked here; [`verify_flow`] checks the rest.
    pub fn new(m: usize, pairs: impl IntoIterator<Item = (Vertex, Vertex)>, layer: Vec<usize>) -> Result<Self> {
        if layer.len() != m {
            return Err(Error::MalformedWitness(format!(
                "layer map covers {} vertices, graph has {m}",
                layer.len()
            )));
        }
        let mut successor = vec![None; m];
        for (i, fi) in pairs {
            if i.0 >= m || fi.0 >= m {
                return Err(Error::VertexOutOfRange(i.0.max(fi.0)));
            }
            if successor[i.0].replace(fi).is_some() {
                return Err(Error::MalformedWitness(format!("successor of {i} given twice")));
            }
        }
        Ok(Self { successor, layer })
    }

    /// Builds a flow from `(i, f(i))` pairs, deriving the tightest layer map
    /// the flow conditions allow (longest dependency chain to an output).
    pub fn with_derived_layers(og: &OpenGraph, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let m = og.vertex_count();
        let mut flow = Self::new(m, pairs, vec![0; m])?;
        let later: Vec<Vec<usize>> = (0..m)
            .map(|i| match flow.successor[i] {
                None => Vec::new(),
                Some(fi) => {
                    let mut s = og.row(fi).clone();
                    s.insert(fi.0);
                    s.remove(i);
                    s.iter().collect()
                }
            })
            .collect();
        flow.layer = longest_chain_layers(&later)?;
        Ok(flow)
    }

    pub fn successor(&self, v: Vertex) -> Option<Vertex> {
        self.successor.get(v.0).copied().flatten()
    }

    /// `(i, f(i))` in canonical order of `i`.
    pub fn pairs(&self) -> Vec<(Vertex, Vertex)> {
        self.successor
            .iter()
            .enumerate()
            .filter_map(|(i, f)| f.map(|f| (Vertex(i), f)))
            .collect()
    }

    pub fn layers(&self) -> &[usize] {
        &self.layer
    }

    pub fn layer(&self, v: Vertex) -> usize {
        self.layer[v.0]
    }

    /// The same flow seen as a gflow with singleton corrector sets.
    pub fn to_gflow(&self) -> Gflow {
        let m = self.layer.len();
        Gflow {
            corrector: self
                .successor
                .iter()
                .map(|f| f.map(|f| VertexSet::from_vertices(m, [f])))
                .collect(),
            layer: self.layer.clone(),
        }
    }
}

impl Gflow {
    pub fn new(m: usize, entries: impl IntoIterator<Item = (Vertex, VertexSet)>, layer: Vec<usize>) -> Result<Self> {
        if layer.len() != m {
            return Err(Error::MalformedWitness(format!(
                "layer map covers {} vertices, graph has {m}",
                layer.len()
            )));
        }
        let mut corrector = vec![None; m];
        for (i, set) in entries {
            if i.0 >= m {
                return Err(Error::VertexOutOfRange(i.0));
            }
            if set.width() != m {
                return Err(Error::MalformedWitness(format!("corrector set of {i} has the wrong width")));
            }
            if corrector[i.0].replace(set).is_some() {
                return Err(Error::MalformedWitness(format!("corrector of {i} given twice")));
            }
        }
        Ok(Self { corrector, layer })
    }

    /// Builds a gflow from corrector sets, deriving the tightest layer map.
    pub fn with_derived_layers(og: &OpenGraph, entries: impl IntoIterator<Item = (Vertex, VertexSet)>) -> Result<Self> {
        let m = og.vertex_count();
        let mut gflow = Self::new(m, entries, vec![0; m])?;
        let later: Vec<Vec<usize>> = (0..m)
            .map(|i| match &gflow.corrector[i] {
                None => Vec::new(),
                Some(k) => {
                    let mut s = og.odd_of(k).union(k).into_bits();
                    s.remove(i);
                    s.iter().collect()
                }
            })
            .collect();
        gflow.layer = longest_chain_layers(&later)?;
        Ok(gflow)
    }

    pub fn corrector(&self, v: Vertex) -> Option<&VertexSet> {
        self.corrector.get(v.0).and_then(Option::as_ref)
    }

    pub fn entries(&self) -> Vec<(Vertex, &VertexSet)> {
        self.corrector
            .iter()
            .enumerate()
            .filter_map(|(i, k)| k.as_ref().map(|k| (Vertex(i), k)))
            .collect()
    }

    pub fn layers(&self) -> &[usize] {
        &self.layer
    }

    pub fn layer(&self, v: Vertex) -> usize {
        self.layer[v.0]
    }
}

impl Witness {
    pub fn layers(&self) -> &[usize] {
        match self {
            Witness::Flow(f) => f.layers(),
            Witness::Gflow(g) => g.layers(),
        }
    }

    pub fn verify(&self, og: &OpenGraph) -> Result<VerificationReport> {
        match self {
            Witness::Flow(f) => verify_flow(og, f),
            Witness::Gflow(g) => verify_gflow(og, g),
        }
    }

    /// Corrections triggered by a `1` outcome on `v`: `(X targets, Z targets)`.
    ///
    /// For a flow that is `({f(v)}, N(f(v)) ∖ {v})`, for a gflow
    /// `(g(v), Odd(g(v)) ∖ {v})`.
    pub fn corrections(&self, og: &OpenGraph, v: Vertex) -> Option<(VertexSet, VertexSet)> {
        let x = match self {
            Witness::Flow(f) => VertexSet::from_vertices(og.vertex_count(), [f.successor(v)?]),
            Witness::Gflow(g) => g.corrector(v)?.clone(),
        };
        let mut z = og.odd_of(&x);
        z.remove(v);
        Some((x, z))
    }
}

/// Layer map where every vertex sits one above the highest of the vertices
/// it must precede. `later[i]` lists the vertices `j` with `i ≺ j` required.
fn longest_chain_layers(later: &[Vec<usize>]) -> Result<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let m = later.len();
    let mut mark = vec![Mark::New; m];
    let mut layer = vec![0usize; m];
    for root in 0..m {
        if mark[root] != Mark::New {
            continue;
        }
        // Iterative DFS: (vertex, next child index).
        let mut stack = vec![(root, 0usize)];
        mark[root] = Mark::Open;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&w) = later[v].get(*next) {
                *next += 1;
                match mark[w] {
                    Mark::Open => {
                        return Err(Error::InvalidLayering(format!(
                            "dependency cycle through vertex index {w}"
                        )))
                    }
                    Mark::New => {
                        mark[w] = Mark::Open;
                        stack.push((w, 0));
                    }
                    Mark::Done => {}
                }
            } else {
                layer[v] = later[v].iter().map(|&w| layer[w] + 1).max().unwrap_or(0);
                mark[v] = Mark::Done;
                stack.pop();
            }
        }
    }
    Ok(layer)
}

/// One failed condition of the flow or gflow definition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A corrector `j` (`f(i)`, or a member of `g(i)`) is not strictly after `i`.
    CorrectorNotLater { i: Vertex, j: Vertex },
    /// `j ∈ N(f(i))` (resp. `Odd(g(i))`), `j ≠ i`, yet `i ≺ j` fails.
    NeighbourNotLater { i: Vertex, j: Vertex },
    /// `i ∉ N(f(i))` (resp. `i ∉ Odd(g(i))`).
    NotCorrected { i: Vertex },
}

impl Violation {
    pub fn describe(&self, og: &OpenGraph, gflow: bool) -> String {
        match (*self, gflow) {
            (Violation::CorrectorNotLater { i, j }, false) => {
                format!("i ≺ f(i) fails for i={}, f(i)={}", og.name(i), og.name(j))
            }
            (Violation::CorrectorNotLater { i, j }, true) => {
                format!("j ∈ g(i) ⇒ i ≺ j fails for i={}, j={}", og.name(i), og.name(j))
            }
            (Violation::NeighbourNotLater { i, j }, false) => format!(
                "j ∈ N(f(i)) ⇒ j = i or i ≺ j fails for i={}, j={}",
                og.name(i),
                og.name(j)
            ),
            (Violation::NeighbourNotLater { i, j }, true) => format!(
                "j ∈ Odd(g(i)) ⇒ j = i or i ≺ j fails for i={}, j={}",
                og.name(i),
                og.name(j)
            ),
            (Violation::NotCorrected { i }, false) => format!("i ∈ N(f(i)) fails for i={}", og.name(i)),
            (Violation::NotCorrected { i }, true) => format!("i ∈ Odd(g(i)) fails for i={}", og.name(i)),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_layers(og: &OpenGraph, layer: &[usize]) -> Result<()> {
    if layer.len() != og.vertex_count() {
        return Err(Error::MalformedWitness(format!(
            "layer map covers {} vertices, graph has {}",
            layer.len(),
            og.vertex_count()
        )));
    }
    Ok(())
}

pub fn verify_flow(og: &OpenGraph, fl: &Flow) -> Result<VerificationReport> {
    check_layers(og, &fl.layer)?;
    if fl.successor.len() != og.vertex_count() {
        return Err(Error::MalformedWitness("successor map has the wrong size".into()));
    }
    let mut report = VerificationReport::default();
    for v in og.vertices() {
        match (og.is_output(v), fl.successor[v.0]) {
            (true, Some(_)) => {
                return Err(Error::MalformedWitness(format!(
                    "f is defined on output `{}`",
                    og.name(v)
                )))
            }
            (false, None) => {
                return Err(Error::MalformedWitness(format!(
                    "f is undefined on `{}`",
                    og.name(v)
                )))
            }
            (false, Some(fi)) => {
                og.check(fi)?;
                if og.is_input(fi) {
                    return Err(Error::MalformedWitness(format!(
                        "f({}) = {} is an input",
                        og.name(v),
                        og.name(fi)
                    )));
                }
            }
            (true, None) => {}
        }
    }
    let prec = |a: Vertex, b: Vertex| fl.layer[a.0] > fl.layer[b.0];
    for (i, fi) in fl.pairs() {
        if !prec(i, fi) {
            report.violations.push(Violation::CorrectorNotLater { i, j: fi });
        }
        for j in og.row(fi).iter().map(Vertex) {
            if j != i && !prec(i, j) {
                report.violations.push(Violation::NeighbourNotLater { i, j });
            }
        }
        if !og.has_edge(i, fi) {
            report.violations.push(Violation::NotCorrected { i });
        }
    }
    Ok(report)
}

pub fn verify_gflow(og: &OpenGraph, gf: &Gflow) -> Result<VerificationReport> {
    check_layers(og, &gf.layer)?;
    let m = og.vertex_count();
    if gf.corrector.len() != m {
        return Err(Error::MalformedWitness("corrector map has the wrong size".into()));
    }
    let non_inputs = og.non_inputs();
    for v in og.vertices() {
        match (og.is_output(v), &gf.corrector[v.0]) {
            (true, Some(_)) => {
                return Err(Error::MalformedWitness(format!(
                    "g is defined on output `{}`",
                    og.name(v)
                )))
            }
            (false, None) => {
                return Err(Error::MalformedWitness(format!(
                    "g is undefined on `{}`",
                    og.name(v)
                )))
            }
            (false, Some(k)) => {
                if k.width() != m {
                    return Err(Error::MalformedWitness(format!(
                        "g({}) has the wrong width",
                        og.name(v)
                    )));
                }
                if !k.is_subset(&non_inputs) {
                    return Err(Error::MalformedWitness(format!(
                        "g({}) contains an input",
                        og.name(v)
                    )));
                }
            }
            (true, None) => {}
        }
    }
    let prec = |a: Vertex, b: Vertex| gf.layer[a.0] > gf.layer[b.0];
    let mut report = VerificationReport::default();
    for (i, k) in gf.entries() {
        for j in k.iter() {
            if !prec(i, j) {
                report.violations.push(Violation::CorrectorNotLater { i, j });
            }
        }
        let odd = og.odd_of(k);
        for j in odd.iter() {
            if j != i && !prec(i, j) {
                report.violations.push(Violation::NeighbourNotLater { i, j });
            }
        }
        if !odd.contains(i) {
            report.violations.push(Violation::NotCorrected { i });
        }
    }
    Ok(report)
}

/// Backward greedy flow search. Starting from the outputs, every processed
/// non-input vertex that has exactly one unprocessed neighbour `u` becomes
/// `f(u)`; all vertices found in one round share the next layer.
pub fn find_flow(og: &OpenGraph) -> Option<Flow> {
    let m = og.vertex_count();
    let mut done = og.outputs().clone();
    let mut candidates = done.difference(og.inputs());
    let mut successor = vec![None; m];
    let mut layer = vec![0; m];
    let mut round = 0;
    while done.len() < m {
        round += 1;
        let mut admitted = VertexSet::new(m);
        let mut used = Vec::new();
        for c in candidates.iter() {
            let outside = VertexSet::from_bits(og.row(c).clone()).difference(&done);
            if outside.len() != 1 {
                continue;
            }
            let u = outside.first().expect("one element");
            if admitted.insert(u) {
                successor[u.0] = Some(c);
                used.push(c);
            }
        }
        if admitted.is_empty() {
            return None;
        }
        for c in used {
            candidates.remove(c);
        }
        for u in admitted.iter() {
            layer[u.0] = round;
            done.insert(u);
            if !og.is_input(u) {
                candidates.insert(u);
            }
        }
    }
    Some(Flow { successor, layer })
}

/// Backward layered gflow search. Each round solves, for every unprocessed
/// `u`, for `K ⊆ processed ∖ I` with `Odd(K) ∩ unprocessed = {u}`; all
/// solvable vertices join the next layer together.
pub fn find_gflow(og: &OpenGraph) -> Option<Gflow> {
    let m = og.vertex_count();
    let mut done = og.outputs().clone();
    let mut corrector: Vec<Option<VertexSet>> = vec![None; m];
    let mut layer = vec![0; m];
    let mut round = 0;
    while done.len() < m {
        round += 1;
        let rows: Vec<Vertex> = done.complement().to_vec();
        let cols: Vec<Vertex> = done.difference(og.inputs()).to_vec();
        let mut matrix = Gf2Matrix::zeros(rows.len(), cols.len());
        for (r, &u) in rows.iter().enumerate() {
            for (c, &v) in cols.iter().enumerate() {
                matrix.set(r, c, og.has_edge(u, v));
            }
        }
        let mut admitted = Vec::new();
        for (r, &u) in rows.iter().enumerate() {
            let rhs = BitSet::from_indices(rows.len(), [r]);
            let sys = Gf2System::new(matrix.clone(), rhs).expect("rhs sized to rows");
            if let Some(x) = sys.solve() {
                corrector[u.0] = Some(VertexSet::from_vertices(m, x.iter().map(|c| cols[c])));
                admitted.push(u);
            }
        }
        if admitted.is_empty() {
            return None;
        }
        for u in admitted {
            layer[u.0] = round;
            done.insert(u);
        }
    }
    Some(Gflow { corrector, layer })
}

/// Vertex-disjoint directed paths from each input to an output, following `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCover {
    paths: Vec<Vec<Vertex>>,
    path_of: Vec<usize>,
}

impl PathCover {
    pub fn paths(&self) -> &[Vec<Vertex>] {
        &self.paths
    }

    /// Index of the path containing `v`.
    pub fn path_of(&self, v: Vertex) -> usize {
        self.path_of[v.0]
    }

    /// Checks the structural path-cover conditions against `og`.
    pub fn check(&self, og: &OpenGraph) -> Result<()> {
        let m = og.vertex_count();
        let mut seen = VertexSet::new(m);
        for path in &self.paths {
            for (k, &v) in path.iter().enumerate() {
                og.check(v)?;
                if !seen.insert(v) {
                    return Err(Error::InvariantViolation(format!("`{}` lies on two paths", og.name(v))));
                }
                if og.is_input(v) && k != 0 {
                    return Err(Error::InvariantViolation(format!("input `{}` inside a path", og.name(v))));
                }
                if og.is_output(v) != (k + 1 == path.len()) {
                    return Err(Error::InvariantViolation(format!(
                        "`{}` breaks the output-at-end rule",
                        og.name(v)
                    )));
                }
            }
            for w in path.windows(2) {
                if !og.has_edge(w[0], w[1]) {
                    return Err(Error::InvariantViolation(format!(
                        "{}→{} is not an edge",
                        og.name(w[0]),
                        og.name(w[1])
                    )));
                }
            }
        }
        if seen.len() != m {
            return Err(Error::InvariantViolation("paths do not cover every vertex".into()));
        }
        Ok(())
    }
}

pub fn path_cover_from_flow(og: &OpenGraph, fl: &Flow) -> Result<PathCover> {
    og.unitary_width()?;
    if !verify_flow(og, fl)?.is_pass() {
        return Err(Error::InvalidFlow("flow conditions do not hold".into()));
    }
    let m = og.vertex_count();
    let mut path_of = vec![usize::MAX; m];
    let mut paths = Vec::new();
    for start in og.inputs().iter() {
        let idx = paths.len();
        let mut path = vec![start];
        path_of[start.0] = idx;
        let mut cur = start;
        while !og.is_output(cur) {
            let next = fl
                .successor(cur)
                .ok_or_else(|| Error::InvalidFlow(format!("f undefined on `{}`", og.name(cur))))?;
            og.check(next)?;
            if path_of[next.0] != usize::MAX {
                return Err(Error::InvalidFlow(format!("`{}` revisited", og.name(next))));
            }
            path_of[next.0] = idx;
            path.push(next);
            cur = next;
        }
        paths.push(path);
    }
    if let Some(v) = path_of.iter().position(|&p| p == usize::MAX) {
        return Err(Error::InvalidFlow(format!(
            "`{}` is not reached from any input",
            og.name(Vertex(v))
        )));
    }
    let cover = PathCover { paths, path_of };
    cover.check(og)?;
    Ok(cover)
}
