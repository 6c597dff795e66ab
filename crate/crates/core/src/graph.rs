//! Open graphs `(G, I, O)` and the rewriting primitives on them.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;
use crate::{Error, Result};

/// Index of a vertex in its graph's canonical (declaration) order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub usize);

impl Vertex {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A set of vertices of one graph. Iteration is in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(BitSet);

impl VertexSet {
    pub fn new(m: usize) -> Self {
        Self(BitSet::new(m))
    }

    pub fn from_vertices(m: usize, vs: impl IntoIterator<Item = Vertex>) -> Self {
        Self(BitSet::from_indices(m, vs.into_iter().map(Vertex::index)))
    }

    pub fn from_bits(bits: BitSet) -> Self {
        Self(bits)
    }

    pub fn bits(&self) -> &BitSet {
        &self.0
    }

    pub fn into_bits(self) -> BitSet {
        self.0
    }

    /// Width of the underlying graph.
    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn len(&self) -> usize {
        self.0.count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(v.0)
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        self.0.insert(v.0)
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        self.0.remove(v.0)
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().map(Vertex)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().map(Vertex)
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.0.clone();
        out.union_with(&other.0);
        Self(out)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.0.clone();
        out.intersect_with(&other.0);
        Self(out)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.0.clone();
        out.difference_with(&other.0);
        Self(out)
    }

    pub fn symmetric_difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.0.clone();
        out.xor_with(&other.0);
        Self(out)
    }

    pub fn complement(&self) -> VertexSet {
        Self(self.0.complement())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// An undirected simple graph with input and output vertex sets.
///
/// Vertices carry names and are indexed in declaration order; that order is
/// the canonical order used for every set-valued result and for tie-breaking.
/// Equality is structural: names, edges, inputs and outputs must all agree.
#[derive(Clone, PartialEq, Eq)]
pub struct OpenGraph {
    names: Vec<String>,
    adj: Vec<BitSet>,
    inputs: VertexSet,
    outputs: VertexSet,
}

impl OpenGraph {
    /// Edgeless graph on the given vertex names, with no inputs or outputs.
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (k, name) in names.iter().enumerate() {
            if names[..k].contains(name) {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let m = names.len();
        Ok(Self {
            adj: (0..m).map(|_| BitSet::new(m)).collect(),
            inputs: VertexSet::new(m),
            outputs: VertexSet::new(m),
            names,
        })
    }

    /// Builds a graph from names, edges, inputs and outputs given by name.
    pub fn from_parts(
        names: &[&str],
        edges: &[(&str, &str)],
        inputs: &[&str],
        outputs: &[&str],
    ) -> Result<Self> {
        let mut g = Self::new(names.iter().copied())?;
        for &(a, b) in edges {
            let (u, v) = (g.vertex(a)?, g.vertex(b)?);
            g.add_edge(u, v)?;
        }
        for &name in inputs {
            let v = g.vertex(name)?;
            g.set_input(v, true)?;
        }
        for &name in outputs {
            let v = g.vertex(name)?;
            g.set_output(v, true)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfLoop(self.names[u.0].clone()));
        }
        if self.adj[u.0].contains(v.0) {
            return Err(Error::DuplicateEdge(
                self.names[u.0].clone(),
                self.names[v.0].clone(),
            ));
        }
        self.adj[u.0].insert(v.0);
        self.adj[v.0].insert(u.0);
        Ok(())
    }

    pub fn set_input(&mut self, v: Vertex, on: bool) -> Result<()> {
        self.check(v)?;
        self.inputs.0.set(v.0, on);
        Ok(())
    }

    pub fn set_output(&mut self, v: Vertex, on: bool) -> Result<()> {
        self.check(v)?;
        self.outputs.0.set(v.0, on);
        Ok(())
    }

    /// `m`, the number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        (0..self.names.len()).map(Vertex)
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(Vertex)
            .ok_or_else(|| Error::UnknownVertex(name.to_owned()))
    }

    /// Name of `v`. Panics on a foreign index; use [`Self::check`] first when
    /// the vertex did not come from this graph.
    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn check(&self, v: Vertex) -> Result<()> {
        if v.0 < self.names.len() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v.0))
        }
    }

    pub fn inputs(&self) -> &VertexSet {
        &self.inputs
    }

    pub fn outputs(&self) -> &VertexSet {
        &self.outputs
    }

    pub fn is_input(&self, v: Vertex) -> bool {
        self.inputs.contains(v)
    }

    pub fn is_output(&self, v: Vertex) -> bool {
        self.outputs.contains(v)
    }

    /// `I^C`.
    pub fn non_inputs(&self) -> VertexSet {
        self.inputs.complement()
    }

    /// `O^C`, the vertices that get measured.
    pub fn non_outputs(&self) -> VertexSet {
        self.outputs.complement()
    }

    /// `n` when `|I| = |O| = n`, otherwise an error.
    pub fn unitary_width(&self) -> Result<usize> {
        let (inputs, outputs) = (self.inputs.len(), self.outputs.len());
        if inputs == outputs {
            Ok(inputs)
        } else {
            Err(Error::NotUnitary { inputs, outputs })
        }
    }

    pub fn neighbors(&self, v: Vertex) -> Result<VertexSet> {
        self.check(v)?;
        Ok(VertexSet(self.adj[v.0].clone()))
    }

    /// Borrowed adjacency row of a vertex known to belong to this graph.
    pub(crate) fn row(&self, v: Vertex) -> &BitSet {
        &self.adj[v.0]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v.0].count()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(u.0).is_some_and(|row| row.contains(v.0))
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (Vertex(u), Vertex(v))))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// `Odd(K)`: vertices with an odd number of neighbours in `K`.
    pub fn odd_neighborhood(&self, k: impl IntoIterator<Item = Vertex>) -> Result<VertexSet> {
        let mut acc = BitSet::new(self.vertex_count());
        for v in k {
            self.check(v)?;
            acc.xor_with(&self.adj[v.0]);
        }
        Ok(VertexSet(acc))
    }

    /// `Odd(K)` for a set already sized to this graph.
    pub fn odd_of(&self, k: &VertexSet) -> VertexSet {
        assert_eq!(k.width(), self.vertex_count());
        let mut acc = BitSet::new(self.vertex_count());
        for v in k.0.iter() {
            acc.xor_with(&self.adj[v]);
        }
        VertexSet(acc)
    }

    /// Complements the edges inside `N(v)`; nothing else changes.
    pub fn local_complement(&self, v: Vertex) -> Result<OpenGraph> {
        self.check(v)?;
        let mut g = self.clone();
        let nbhd = &self.adj[v.0];
        for a in nbhd.iter() {
            let mut toggled = nbhd.clone();
            toggled.remove(a);
            g.adj[a].xor_with(&toggled);
        }
        Ok(g)
    }

    /// Removes `v` with its incident edges and its input/output membership.
    pub fn delete_vertex(&self, v: Vertex) -> Result<OpenGraph> {
        self.check(v)?;
        let k = v.0;
        let mut names = self.names.clone();
        names.remove(k);
        let adj = self
            .adj
            .iter()
            .enumerate()
            .filter(|&(u, _)| u != k)
            .map(|(_, row)| row.without_index(k))
            .collect();
        Ok(OpenGraph {
            names,
            adj,
            inputs: VertexSet(self.inputs.0.without_index(k)),
            outputs: VertexSet(self.outputs.0.without_index(k)),
        })
    }

    /// Edge complement over all unordered pairs; `I` and `O` are kept.
    pub fn complement(&self) -> OpenGraph {
        let mut g = self.clone();
        for (u, row) in g.adj.iter_mut().enumerate() {
            *row = row.complement();
            row.remove(u);
        }
        g
    }

    /// Display helper for a vertex set: `{a, b, c}` using vertex names.
    pub fn format_set(&self, s: &VertexSet) -> String {
        self.format_list(s.iter())
    }

    pub fn format_list(&self, vs: impl IntoIterator<Item = Vertex>) -> String {
        let parts: Vec<&str> = vs.into_iter().map(|v| self.name(v)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for OpenGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(u, v)| format!("{}-{}", self.name(u), self.name(v)))
            .collect();
        f.debug_struct("OpenGraph")
            .field("vertices", &self.names)
            .field("edges", &edges)
            .field("inputs", &self.format_set(&self.inputs).to_string())
            .field("outputs", &self.format_set(&self.outputs).to_string())
            .finish()
    }
}
