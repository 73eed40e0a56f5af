//! Dense row-major matrix used for distance/time tables and network layers.
//!
//! Deliberately minimal: the simulator only needs indexed lookup and the
//! learner needs three matmul variants. Rows are parallelized with rayon for
//! batch-sized inputs; each output row is computed by exactly one task, so
//! results are bitwise deterministic regardless of thread scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Row count below which matmul stays single-threaded.
const PAR_ROW_THRESHOLD: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Copy> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self
    where
        T: Default,
    {
        Matrix { rows, cols, data: vec![T::default(); rows * cols] }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix { rows: rows.len(), cols, data: rows.concat() }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> T {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: T) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [T] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }
}

impl<T: Scalar> Matrix<T> {
    /// `self (n×k) · rhs (k×m)`, written into a fresh `n×m` matrix.
    pub fn matmul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        let k = self.cols;
        let m = rhs.cols;
        let body = |(i, out_row): (usize, &mut [T])| {
            let a_row = &self.data[i * k..(i + 1) * k];
            for (kk, &a) in a_row.iter().enumerate() {
                if a == T::zero() {
                    continue;
                }
                let w_row = &rhs.data[kk * m..(kk + 1) * m];
                for (o, &w) in out_row.iter_mut().zip(w_row) {
                    *o = *o + a * w;
                }
            }
        };
        if self.rows >= PAR_ROW_THRESHOLD {
            out.data.par_chunks_mut(m).enumerate().for_each(body);
        } else {
            out.data.chunks_mut(m).enumerate().for_each(body);
        }
        out
    }

    /// `self (n×m) · rhs^T (k×m)` → `n×k`; used for backprop through a layer.
    pub fn matmul_transpose_rhs(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.cols, "matmul_transpose_rhs shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.rows);
        let m = self.cols;
        let k = rhs.rows;
        let body = |(i, out_row): (usize, &mut [T])| {
            let a_row = &self.data[i * m..(i + 1) * m];
            for (j, o) in out_row.iter_mut().enumerate() {
                let b_row = &rhs.data[j * m..(j + 1) * m];
                *o = a_row.iter().zip(b_row).map(|(&a, &b)| a * b).sum();
            }
        };
        if self.rows >= PAR_ROW_THRESHOLD {
            out.data.par_chunks_mut(k).enumerate().for_each(body);
        } else {
            out.data.chunks_mut(k).enumerate().for_each(body);
        }
        out
    }

    /// `self^T (n×k) · rhs (n×m)` → `k×m`; used for weight gradients.
    pub fn transpose_self_matmul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.rows, rhs.rows, "transpose_self_matmul shape mismatch");
        let mut out = Matrix::zeros(self.cols, rhs.cols);
        let k = self.cols;
        let m = rhs.cols;
        let n = self.rows;
        let body = |(kk, out_row): (usize, &mut [T])| {
            for i in 0..n {
                let a = self.data[i * k + kk];
                if a == T::zero() {
                    continue;
                }
                let b_row = &rhs.data[i * m..(i + 1) * m];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o = *o + a * b;
                }
            }
        };
        if k >= PAR_ROW_THRESHOLD {
            out.data.par_chunks_mut(m).enumerate().for_each(body);
        } else {
            out.data.chunks_mut(m).enumerate().for_each(body);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_products_match_hand_results() {
        let a = Matrix::from_vec(2, 3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let b = Matrix::from_vec(3, 2, vec![7.0, 8.0, 9.0, 10.0, 11.0, 12.0]);
        let c = a.matmul(&b);
        assert_eq!(c.as_slice(), &[58.0, 64.0, 139.0, 154.0]);

        // (A·B)·B^T via matmul_transpose_rhs against explicit expansion.
        let bt = Matrix::from_vec(2, 3, vec![7.0, 9.0, 11.0, 8.0, 10.0, 12.0]);
        assert_eq!(c.matmul_transpose_rhs(&bt).as_slice(), c.matmul(&b).as_slice());

        // A^T·A symmetric.
        let ata = a.transpose_self_matmul(&a);
        assert_eq!(ata.get(0, 1), ata.get(1, 0));
        assert_eq!(ata.get(0, 0), 1.0 + 16.0);
    }

    #[test]
    fn parallel_and_serial_paths_agree() {
        let n = PAR_ROW_THRESHOLD + 3;
        let a = Matrix::from_vec(n, 4, (0..n * 4).map(|i| i as f64 * 0.01).collect());
        let b = Matrix::from_vec(4, 5, (0..20).map(|i| i as f64 * 0.1).collect());
        let big = a.matmul(&b);
        for i in 0..n {
            let row = Matrix::from_vec(1, 4, a.row(i).to_vec());
            assert_eq!(row.matmul(&b).as_slice(), big.row(i));
        }
    }
}
