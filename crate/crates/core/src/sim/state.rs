//! Amplitude vectors over a growing and shrinking set of qubits.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::graph::{OpenGraph, Vertex};

/// Pure state over the qubits in `axes`; bit `k` of an amplitude index is
/// the value of qubit `axes[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
    axes: Vec<Vertex>,
}

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `e^{iθ}`.
pub(crate) fn phase(theta: f64) -> Complex64 {
    c(libm::cos(theta), libm::sin(theta))
}

impl StateVector {
    /// The zero-qubit state (amplitude 1).
    pub fn empty() -> Self {
        Self {
            amps: vec![c(1.0, 0.0)],
            axes: Vec::new(),
        }
    }

    /// Wraps raw amplitudes; `amps.len()` must be `2^axes.len()`.
    pub fn from_amplitudes(axes: Vec<Vertex>, amps: Vec<Complex64>) -> Self {
        assert_eq!(amps.len(), 1 << axes.len(), "amplitude count must be 2^qubits");
        Self { amps, axes }
    }

    /// Dense graph state `∏ CZ |+⟩^m` over every vertex of `og`.
    pub fn graph_state(og: &OpenGraph) -> Self {
        let mut s = Self::empty();
        for v in og.vertices() {
            s.push_plus(v);
        }
        for (u, v) in og.edges() {
            s.cz(u, v);
        }
        s
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn axes(&self) -> &[Vertex] {
        &self.axes
    }

    pub fn qubit_count(&self) -> usize {
        self.axes.len()
    }

    pub fn axis(&self, v: Vertex) -> Option<usize> {
        self.axes.iter().position(|&a| a == v)
    }

    fn axis_of(&self, v: Vertex) -> usize {
        self.axis(v).expect("qubit is allocated")
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    /// Appends qubit `v` in `|+⟩` as the new highest axis.
    pub fn push_plus(&mut self, v: Vertex) {
        let r = core::f64::consts::FRAC_1_SQRT_2;
        let mut amps = Vec::with_capacity(self.amps.len() * 2);
        amps.extend(self.amps.iter().map(|a| a * r));
        amps.extend(self.amps.iter().map(|a| a * r));
        self.amps = amps;
        self.axes.push(v);
    }

    pub fn cz(&mut self, u: Vertex, v: Vertex) {
        let mask = (1usize << self.axis_of(u)) | (1usize << self.axis_of(v));
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *a = -*a;
            }
        }
    }

    /// Applies the row-major 2×2 matrix `m` to qubit `v`.
    pub fn apply_1q(&mut self, v: Vertex, m: &[[Complex64; 2]; 2]) {
        let bit = 1usize << self.axis_of(v);
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    pub fn x(&mut self, v: Vertex) {
        let bit = 1usize << self.axis_of(v);
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                self.amps.swap(i, i | bit);
            }
        }
    }

    pub fn z(&mut self, v: Vertex) {
        let bit = 1usize << self.axis_of(v);
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & bit != 0 {
                *a = -*a;
            }
        }
    }

    /// Contracts qubit `v` with the bra `⟨b| = bra[0]⟨0| + bra[1]⟨1|` and
    /// removes its axis. Returns the squared norm of the result, which is left
    /// unnormalised.
    pub fn contract(&mut self, v: Vertex, bra: [Complex64; 2]) -> f64 {
        let k = self.axis_of(v);
        let low = (1usize << k) - 1;
        let half = self.amps.len() / 2;
        let mut out = Vec::with_capacity(half);
        for j in 0..half {
            let i0 = (j & low) | ((j & !low) << 1);
            let i1 = i0 | (1 << k);
            out.push(bra[0] * self.amps[i0] + bra[1] * self.amps[i1]);
        }
        self.amps = out;
        self.axes.remove(k);
        self.norm_sqr()
    }

    pub fn normalize(&mut self) {
        let n = libm::sqrt(self.norm_sqr());
        for a in self.amps.iter_mut() {
            *a /= n;
        }
    }

    /// Amplitudes with axes permuted into `order` (which must be a
    /// permutation of the current axes).
    pub fn reordered(&self, order: &[Vertex]) -> Vec<Complex64> {
        assert_eq!(order.len(), self.axes.len());
        let src: Vec<usize> = order.iter().map(|&v| self.axis_of(v)).collect();
        (0..self.amps.len())
            .map(|i| {
                let j = src
                    .iter()
                    .enumerate()
                    .fold(0usize, |acc, (dst, &s)| acc | (((i >> dst) & 1) << s));
                self.amps[j]
            })
            .collect()
    }
}

/// `1 - |⟨a|b⟩|`, blind to global phase. Vectors of different length are at
/// distance 1.
pub fn state_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return 1.0;
    }
    let overlap: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    1.0 - libm::hypot(overlap.re, overlap.im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contract_middle_axis() {
        let (a, b, d) = (Vertex(0), Vertex(1), Vertex(2));
        let mut s = StateVector::empty();
        s.push_plus(a);
        s.push_plus(b);
        s.push_plus(d);
        s.x(a);
        s.z(b);
        // |+⟩|−⟩|+⟩ contracted on b with ⟨1| leaves |+⟩|+⟩ scaled by -1/√2.
        let p = s.contract(b, [c(0.0, 0.0), c(1.0, 0.0)]);
        assert!((p - 0.5).abs() < 1e-15);
        assert_eq!(s.axes(), [a, d]);
        let expected = -0.5 * core::f64::consts::FRAC_1_SQRT_2;
        assert!(s.amplitudes().iter().all(|x| (x.re - expected).abs() < 1e-15 && x.im == 0.0));
    }

    #[test]
    fn reordering_swaps_bits() {
        let s = StateVector::from_amplitudes(
            vec![Vertex(5), Vertex(3)],
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        );
        // amplitude on index 1: Vertex(5) = 1, Vertex(3) = 0.
        let r = s.reordered(&[Vertex(3), Vertex(5)]);
        assert_eq!(r[2], c(1.0, 0.0));
    }

    #[test]
    fn distance_ignores_global_phase() {
        let a = [c(0.6, 0.0), c(0.0, 0.8)];
        let b: alloc::vec::Vec<_> = a.iter().map(|x| x * phase(1.234)).collect();
        assert!(state_distance(&a, &b) < 1e-15);
        assert!((state_distance(&[c(1.0, 0.0), c(0.0, 0.0)], &[c(0.0, 0.0), c(1.0, 0.0)]) - 1.0).abs() < 1e-15);
    }
}
