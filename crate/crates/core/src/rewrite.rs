//! Elimination of Pauli-measured qubits by graph rewriting.
//!
//! Measuring an auxiliary qubit `w` of a graph state in a Pauli basis leaves
//! the rest in a graph state on a rewritten graph, up to local Cliffords on
//! the surviving qubits:
//!
//! - `Z`: delete `w`;
//! - `Y`: local complement at `w`, then delete `w`;
//! - `X` with a neighbour `b`: local complement at `b`, apply the `Y` rule at
//!   `w`, local complement at `b` again.
//!
//! The local Cliffords are reported for the `+1` outcome as per-vertex gate
//! words, see [`Rewrite::local_cliffords`].

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::flow::{find_flow, find_gflow};
use crate::graph::{OpenGraph, Vertex, VertexSet};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PauliBasis {
    X,
    Y,
    Z,
}

impl fmt::Display for PauliBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PauliBasis::X => "X",
            PauliBasis::Y => "Y",
            PauliBasis::Z => "Z",
        })
    }
}

/// Single-qubit Clifford generators used in rewrite byproducts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CliffordGate {
    Z,
    /// `√(-iZ) = (I - iZ)/√2`.
    SqrtMinusIZ,
    /// `√(+iY) = (I + iY)/√2`.
    SqrtPlusIY,
}

impl CliffordGate {
    /// The 2×2 unitary, row-major.
    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let r = core::f64::consts::FRAC_1_SQRT_2;
        let c = |re: f64, im: f64| Complex64::new(re, im);
        match self {
            CliffordGate::Z => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]],
            CliffordGate::SqrtMinusIZ => [[c(r, -r), c(0.0, 0.0)], [c(0.0, 0.0), c(r, r)]],
            CliffordGate::SqrtPlusIY => [[c(r, 0.0), c(r, 0.0)], [c(-r, 0.0), c(r, 0.0)]],
        }
    }
}

/// Result of a Pauli elimination: the new graph and the local Cliffords
/// relating it to the measured state (`+1` outcome).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewrite {
    pub graph: OpenGraph,
    /// Indexed by vertex of `graph`; gates in application order.
    pub local_cliffords: Vec<Vec<CliffordGate>>,
}

fn check_auxiliary(og: &OpenGraph, w: Vertex) -> Result<()> {
    og.check(w)?;
    if og.is_input(w) || og.is_output(w) {
        return Err(Error::InterfaceVertex(og.name(w).into()));
    }
    Ok(())
}

/// Re-indexes per-vertex annotations after `w` is deleted.
fn drop_index<T>(mut per_vertex: Vec<T>, w: Vertex) -> Vec<T> {
    per_vertex.remove(w.0);
    per_vertex
}

pub fn measure_y_rewrite(og: &OpenGraph, w: Vertex) -> Result<OpenGraph> {
    check_auxiliary(og, w)?;
    og.local_complement(w)?.delete_vertex(w)
}

pub fn measure_z_rewrite(og: &OpenGraph, w: Vertex) -> Result<OpenGraph> {
    check_auxiliary(og, w)?;
    og.delete_vertex(w)
}

/// X elimination through neighbour `b`; `None` picks the first neighbour in
/// canonical order.
pub fn measure_x_rewrite(og: &OpenGraph, w: Vertex, b: Option<Vertex>) -> Result<OpenGraph> {
    Ok(pauli_rewrite(og, w, PauliBasis::X, b)?.graph)
}

/// Any Pauli elimination, with the local-Clifford byproduct for the `+1`
/// outcome. `neighbor` is only used by the X rule.
pub fn pauli_rewrite(og: &OpenGraph, w: Vertex, basis: PauliBasis, neighbor: Option<Vertex>) -> Result<Rewrite> {
    check_auxiliary(og, w)?;
    let m = og.vertex_count();
    let mut lc: Vec<Vec<CliffordGate>> = vec![Vec::new(); m];
    let nw = og.neighbors(w)?;
    let graph = match basis {
        PauliBasis::Z => og.delete_vertex(w)?,
        PauliBasis::Y => {
            for b in nw.iter() {
                lc[b.0].push(CliffordGate::SqrtMinusIZ);
            }
            og.local_complement(w)?.delete_vertex(w)?
        }
        PauliBasis::X => {
            let b = match neighbor {
                Some(b) => {
                    og.check(b)?;
                    if !nw.contains(b) {
                        return Err(Error::NotANeighbour(og.name(b).into(), og.name(w).into()));
                    }
                    b
                }
                None => nw.first().ok_or_else(|| Error::IsolatedVertex(og.name(w).into()))?,
            };
            lc[b.0].push(CliffordGate::SqrtPlusIY);
            let mut nb = og.neighbors(b)?;
            nb.insert(b);
            for c in nw.difference(&nb).iter() {
                lc[c.0].push(CliffordGate::Z);
            }
            let g = og.local_complement(b)?.local_complement(w)?.delete_vertex(w)?;
            let b_new = Vertex(if b.0 > w.0 { b.0 - 1 } else { b.0 });
            g.local_complement(b_new)?
        }
    };
    Ok(Rewrite {
        graph,
        local_cliffords: drop_index(lc, w),
    })
}

/// Whether an open graph has flow, only gflow, or neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FlowClass {
    Flow,
    GflowOnly,
    None,
}

impl fmt::Display for FlowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlowClass::Flow => "flow",
            FlowClass::GflowOnly => "gflow-only",
            FlowClass::None => "none",
        })
    }
}

pub fn classify(og: &OpenGraph) -> FlowClass {
    if find_flow(og).is_some() {
        FlowClass::Flow
    } else if find_gflow(og).is_some() {
        FlowClass::GflowOnly
    } else {
        FlowClass::None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FlowTransition {
    pub before: FlowClass,
    pub after: FlowClass,
}

impl fmt::Display for FlowTransition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.before, self.after)
    }
}

pub fn classify_flow_transition(og: &OpenGraph, w: Vertex, basis: PauliBasis) -> Result<FlowTransition> {
    let rewritten = pauli_rewrite(og, w, basis, None)?.graph;
    Ok(FlowTransition {
        before: classify(og),
        after: classify(&rewritten),
    })
}

/// Auxiliary vertices (neither input nor output).
pub fn auxiliary_vertices(og: &OpenGraph) -> VertexSet {
    og.non_inputs().difference(og.outputs())
}

impl Rewrite {
    /// Human-readable byproduct list, e.g. `["a: √(-iZ)"]`.
    pub fn describe_cliffords(&self) -> Vec<alloc::string::String> {
        self.local_cliffords
            .iter()
            .enumerate()
            .filter(|(_, gates)| !gates.is_empty())
            .map(|(v, gates)| {
                let words: Vec<&str> = gates
                    .iter()
                    .map(|g| match g {
                        CliffordGate::Z => "Z",
                        CliffordGate::SqrtMinusIZ => "√(-iZ)",
                        CliffordGate::SqrtPlusIY => "√(+iY)",
                    })
                    .collect();
                format!("{}: {}", self.graph.name(Vertex(v)), words.join(" · "))
            })
            .collect()
    }
}
