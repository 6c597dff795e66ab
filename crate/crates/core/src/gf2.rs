//! Linear systems over GF(2).

use alloc::format;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::{Error, Result};

/// Dense Boolean matrix stored as bit rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: Vec<BitSet>,
    cols: usize,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: (0..rows).map(|_| BitSet::new(cols)).collect(),
            cols,
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitSet>) -> Result<Self> {
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row {bad} has width {}, expected {cols}",
                rows[bad].len()
            )));
        }
        Ok(Self { rows, cols })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].contains(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    pub fn mul_vec(&self, x: &BitSet) -> Result<BitSet> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok(BitSet::from_indices(
            self.rows.len(),
            self.rows.iter().enumerate().filter(|(_, r)| r.dot(x)).map(|(i, _)| i),
        ))
    }
}

/// `matrix · x = rhs` over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2System {
    matrix: Gf2Matrix,
    rhs: BitSet,
}

impl Gf2System {
    pub fn new(matrix: Gf2Matrix, rhs: BitSet) -> Result<Self> {
        if rhs.len() != matrix.row_count() {
            return Err(Error::Dimension(format!(
                "rhs has {} entries for {} rows",
                rhs.len(),
                matrix.row_count()
            )));
        }
        Ok(Self { matrix, rhs })
    }

    pub fn matrix(&self) -> &Gf2Matrix {
        &self.matrix
    }

    pub fn rhs(&self) -> &BitSet {
        &self.rhs
    }

    /// Some solution of the system, or `None` when it is inconsistent.
    ///
    /// Gauss-Jordan elimination, pivoting on the first row with the column bit
    /// set. Free variables are zero, so the answer is deterministic and uses
    /// only pivot columns.
    pub fn solve(&self) -> Option<BitSet> {
        let cols = self.matrix.cols;
        // Augmented rows: bit `cols` holds the rhs.
        let mut rows: Vec<BitSet> = self
            .matrix
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut aug = BitSet::from_indices(cols + 1, r.iter());
                aug.set(cols, self.rhs.contains(i));
                aug
            })
            .collect();

        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].contains(c)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.contains(c) {
                    row.xor_with(&pivot);
                }
            }
            pivots.push(c);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        if rows[rank..].iter().any(|r| r.contains(cols)) {
            return None;
        }
        let mut x = BitSet::new(cols);
        for (r, &c) in pivots.iter().enumerate() {
            x.set(c, rows[r].contains(cols));
        }
        let check = self.matrix.mul_vec(&x).expect("solution width matches");
        assert_eq!(check, self.rhs, "GF(2) solution failed re-multiplication");
        Some(x)
    }
}

pub fn gf2_solve(sys: &Gf2System) -> Option<BitSet> {
    sys.solve()
}
