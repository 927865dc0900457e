//! Minimal square CSR complex matrix.
//!
//! Row-sorted CSR with deterministic assembly: all products and sums
//! accumulate in ascending column order, so repeated runs produce
//! bit-identical matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Complex64>,
}

impl SparseMatrix {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            row_ptr: vec![0; dim + 1],
            cols: Vec::new(),
            vals: Vec::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            row_ptr: (0..=dim).collect(),
            cols: (0..dim).collect(),
            vals: vec![Complex64::ONE; dim],
        }
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let dim = values.len();
        let mut m = Self::identity(dim);
        m.vals.copy_from_slice(values);
        m
    }

    /// Assemble from (row, col, value) triplets; duplicates are summed,
    /// exact zeros dropped.
    pub fn from_triplets(dim: usize, mut triplets: Vec<(usize, usize, Complex64)>) -> Self {
        triplets.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut rows: Vec<usize> = Vec::with_capacity(triplets.len());
        let mut cols: Vec<usize> = Vec::with_capacity(triplets.len());
        let mut vals: Vec<Complex64> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            debug_assert!(r < dim && c < dim);
            if rows.last() == Some(&r) && cols.last() == Some(&c) {
                *vals.last_mut().unwrap() += v;
            } else {
                rows.push(r);
                cols.push(c);
                vals.push(v);
            }
        }
        let mut row_ptr = vec![0usize; dim + 1];
        for &r in &rows {
            row_ptr[r + 1] += 1;
        }
        for r in 0..dim {
            row_ptr[r + 1] += row_ptr[r];
        }
        let mut m = Self {
            dim,
            row_ptr,
            cols,
            vals,
        };
        m.drop_exact_zeros();
        m
    }

    fn drop_exact_zeros(&mut self) {
        if !self.vals.iter().any(|v| *v == Complex64::ZERO) {
            return;
        }
        let mut cols = Vec::with_capacity(self.cols.len());
        let mut vals = Vec::with_capacity(self.vals.len());
        let mut row_ptr = vec![0usize; self.dim + 1];
        for r in 0..self.dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                if self.vals[k] != Complex64::ZERO {
                    cols.push(self.cols[k]);
                    vals.push(self.vals[k]);
                }
            }
            row_ptr[r + 1] = cols.len();
        }
        self.cols = cols;
        self.vals = vals;
        self.row_ptr = row_ptr;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(x.len(), self.dim);
        let mut out = vec![Complex64::ZERO; self.dim];
        for r in 0..self.dim {
            let mut acc = Complex64::ZERO;
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            out[r] = acc;
        }
        out
    }

    /// `alpha·self + beta·other`.
    pub fn linear_combination(&self, alpha: Complex64, other: &Self, beta: Complex64) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut cols = Vec::with_capacity(self.nnz() + other.nnz());
        let mut vals = Vec::with_capacity(self.nnz() + other.nnz());
        let mut row_ptr = vec![0usize; self.dim + 1];
        for r in 0..self.dim {
            let (mut i, ie) = (self.row_ptr[r], self.row_ptr[r + 1]);
            let (mut j, je) = (other.row_ptr[r], other.row_ptr[r + 1]);
            while i < ie || j < je {
                let ci = if i < ie { self.cols[i] } else { usize::MAX };
                let cj = if j < je { other.cols[j] } else { usize::MAX };
                if ci < cj {
                    cols.push(ci);
                    vals.push(alpha * self.vals[i]);
                    i += 1;
                } else if cj < ci {
                    cols.push(cj);
                    vals.push(beta * other.vals[j]);
                    j += 1;
                } else {
                    let v = alpha * self.vals[i] + beta * other.vals[j];
                    cols.push(ci);
                    vals.push(v);
                    i += 1;
                    j += 1;
                }
            }
            row_ptr[r + 1] = cols.len();
        }
        let mut m = Self {
            dim: self.dim,
            row_ptr,
            cols,
            vals,
        };
        m.drop_exact_zeros();
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        self.linear_combination(Complex64::ONE, other, Complex64::ONE)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.linear_combination(Complex64::ONE, other, -Complex64::ONE)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for v in &mut out.vals {
            *v *= factor;
        }
        out.drop_exact_zeros();
        out
    }

    /// Sparse product `self · other` with a dense per-row accumulator.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let dim = self.dim;
        let mut acc = vec![Complex64::ZERO; dim];
        let mut seen = vec![false; dim];
        let mut touched: Vec<usize> = Vec::new();
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        let mut row_ptr = vec![0usize; dim + 1];
        for r in 0..dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let mid = self.cols[k];
                let a = self.vals[k];
                for l in other.row_ptr[mid]..other.row_ptr[mid + 1] {
                    let c = other.cols[l];
                    if !seen[c] {
                        seen[c] = true;
                        touched.push(c);
                    }
                    acc[c] += a * other.vals[l];
                }
            }
            touched.sort_unstable();
            for &c in &touched {
                if acc[c] != Complex64::ZERO {
                    cols.push(c);
                    vals.push(acc[c]);
                }
                acc[c] = Complex64::ZERO;
                seen[c] = false;
            }
            touched.clear();
            row_ptr[r + 1] = cols.len();
        }
        Self {
            dim,
            row_ptr,
            cols,
            vals,
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let dim = self.dim;
        let mut counts = vec![0usize; dim + 1];
        for &c in &self.cols {
            counts[c + 1] += 1;
        }
        for i in 0..dim {
            counts[i + 1] += counts[i];
        }
        let row_ptr = counts.clone();
        let mut cols = vec![0usize; self.nnz()];
        let mut vals = vec![Complex64::ZERO; self.nnz()];
        let mut next = counts;
        for r in 0..dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let c = self.cols[k];
                let slot = next[c];
                next[c] += 1;
                cols[slot] = r;
                vals[slot] = self.vals[k].conj();
            }
        }
        Self {
            dim,
            row_ptr,
            cols,
            vals,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.vals.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `max |A - A†|`, the hermiticity defect.
    pub fn hermiticity_defect(&self) -> f64 {
        self.sub(&self.adjoint()).max_abs()
    }

    pub fn is_hermitian(&self, relative_tol: f64) -> bool {
        let scale = self.max_abs();
        if scale == 0.0 {
            return true;
        }
        self.hermiticity_defect() <= relative_tol * scale
    }

    pub fn is_anti_hermitian(&self, relative_tol: f64) -> bool {
        let scale = self.max_abs();
        if scale == 0.0 {
            return true;
        }
        self.add(&self.adjoint()).max_abs() <= relative_tol * scale
    }

    /// Diagonal entries when the matrix is exactly diagonal.
    pub fn as_diagonal(&self) -> Option<Vec<Complex64>> {
        let mut diag = vec![Complex64::ZERO; self.dim];
        for r in 0..self.dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                if self.cols[k] != r {
                    return None;
                }
                diag[r] = self.vals[k];
            }
        }
        Some(diag)
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut dense = DMatrix::zeros(self.dim, self.dim);
        for r in 0..self.dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                dense[(r, self.cols[k])] = self.vals[k];
            }
        }
        dense
    }

    pub fn from_dense(dense: &DMatrix<Complex64>) -> Self {
        assert_eq!(dense.nrows(), dense.ncols());
        let dim = dense.nrows();
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        let mut row_ptr = vec![0usize; dim + 1];
        for r in 0..dim {
            for c in 0..dim {
                let v = dense[(r, c)];
                if v != Complex64::ZERO {
                    cols.push(c);
                    vals.push(v);
                }
            }
            row_ptr[r + 1] = cols.len();
        }
        Self {
            dim,
            row_ptr,
            cols,
            vals,
        }
    }

    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        for k in self.row_ptr[r]..self.row_ptr[r + 1] {
            if self.cols[k] == c {
                return self.vals[k];
            }
        }
        Complex64::ZERO
    }
}
