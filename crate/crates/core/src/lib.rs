//! Flow, gflow and qubit-residency analysis for measurement-based quantum
//! computation.
//!
//! The crate works on *open graphs* `(G, I, O)`: an undirected simple graph
//! with designated input and output vertices. On top of that it provides
//!
//! - [`flow`]: finding and verifying flow and gflow, and the path cover a flow
//!   induces;
//! - [`schedule`]: lazy execution schedules, live-qubit accounting and the
//!   minimal number of simultaneously live qubits (`min_QR`);
//! - [`rewrite`]: Pauli-measurement elimination by local complementation;
//! - [`sim`]: a streaming state-vector simulator that only allocates live
//!   qubits, used to check determinism and schedule equivalence;
//! - [`generators`]: the `H_n`, `H^C_n` and `H'_n` families plus test corpora.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bitset;
mod error;
pub mod flow;
pub mod generators;
pub mod gf2;
pub mod graph;
pub mod rewrite;
pub mod schedule;
pub mod sim;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use flow::{Flow, Gflow, PathCover};
pub use graph::{OpenGraph, Vertex, VertexSet};
