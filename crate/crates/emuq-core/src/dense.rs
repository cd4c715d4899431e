// Copyright contributors to the emuq project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Dense complex matrices: the `2^n x 2^n` operator representation used by
//! the repeated-squaring and eigendecomposition shortcuts.
//!
//! The eigensolver follows the classic dense route: Householder reduction
//! to upper Hessenberg form, then implicit single-shift QR iteration with
//! Givens rotations (Wilkinson shift) down to triangular Schur form, and
//! back-substitution for eigenvectors. This is a plain textbook
//! implementation, adequate for the desk-scale dimensions this crate
//! targets; no attempt at blocking or parallelism.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
// Float supplies the f64 math in the no_std build; test builds pull std
// into the crate graph (via dev-deps), whose inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Subdiagonal entries below `tol * ||A||` are treated as converged during
/// QR iteration.
const DEFLATION_RELATIVE_TOLERANCE: f64 = 1e-12;

/// QR iteration cap, in sweeps per matrix dimension.
const MAX_QR_SWEEPS_PER_DIM: usize = 100;

/// A dense complex square matrix with row-major storage.
///
/// Values produced from circuits are unitary to high accuracy
/// ([`DenseUnitary::unitarity_error`] lets callers verify), but the type
/// itself does not enforce unitarity so intermediate products can be
/// represented too.
#[derive(Clone, PartialEq)]
pub struct DenseUnitary {
    dim: usize,
    data: Vec<Complex64>,
}

impl core::fmt::Debug for DenseUnitary {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(f, "DenseUnitary({}x{})", self.dim, self.dim)?;
        if self.dim <= 8 {
            for r in 0..self.dim {
                for c in 0..self.dim {
                    write!(f, " {:.3}", self.get(r, c))?;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl DenseUnitary {
    pub fn zeros(dim: usize) -> Self {
        DenseUnitary { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "matrix must be square");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    pub(crate) fn set_column(&mut self, col: usize, values: &[Complex64]) {
        debug_assert_eq!(values.len(), self.dim);
        for (r, &v) in values.iter().enumerate() {
            self.set(r, col, v);
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    /// Plain cubic matrix product `self * rhs`.
    pub fn mul(&self, rhs: &DenseUnitary) -> Result<DenseUnitary> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: rhs.dim });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        // i-k-j loop order keeps the inner traversal contiguous.
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (o, &r) in dst.iter_mut().zip(row) {
                    *o += aik * r;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.data[i * n..(i + 1) * n];
            *o = row.iter().zip(v).map(|(&a, &b)| a * b).sum();
        }
        out
    }

    /// `max_{ij} |(U†U - I)_{ij}|`; zero for an exactly unitary matrix.
    pub fn unitarity_error(&self) -> f64 {
        let n = self.dim;
        let mut max = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                // (U†U)_{ij} = Σ_k conj(U_{ki}) U_{kj}
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    s += self.get(k, i).conj() * self.get(k, j);
                }
                if i == j {
                    s -= 1.0;
                }
                let m = s.norm();
                if m > max {
                    max = m;
                }
            }
        }
        max
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest absolute entry difference against `other`.
    pub fn max_abs_diff(&self, other: &DenseUnitary) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Full eigendecomposition via Schur form. Returns `(values, vectors)`
    /// with `vectors.column(k)` the unit eigenvector for `values[k]`.
    ///
    /// Fails with [`Error::EigensolverDidNotConverge`] if QR iteration
    /// exhausts its sweep budget (`100 * dim`).
    #[allow(clippy::needless_range_loop)]
    pub fn eig(&self) -> Result<(Vec<Complex64>, DenseUnitary)> {
        let (t, q) = self.schur()?;
        let n = self.dim;
        let values: Vec<Complex64> = (0..n).map(|i| t.get(i, i)).collect();

        // Eigenvectors of the triangular factor by back-substitution, then
        // rotated back through Q. Tiny denominators (repeated eigenvalues
        // of a normal matrix) are clamped; the off-diagonal mass is tiny in
        // exactly those cases, so the clamp only suppresses 0/0 noise.
        let smin = 1e-13 * t.frobenius_norm().max(1.0);
        let mut vectors = DenseUnitary::zeros(n);
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            let lambda = values[k];
            for e in y.iter_mut() {
                *e = Complex64::new(0.0, 0.0);
            }
            y[k] = Complex64::new(1.0, 0.0);
            for i in (0..k).rev() {
                let mut num = Complex64::new(0.0, 0.0);
                for j in i + 1..=k {
                    num += t.get(i, j) * y[j];
                }
                let mut den = t.get(i, i) - lambda;
                if den.norm() < smin {
                    den = Complex64::new(smin, 0.0);
                }
                y[i] = -num / den;
            }
            let mut v = q.mul_vec(&y);
            let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            for e in v.iter_mut() {
                *e /= norm;
            }
            vectors.set_column(k, &v);
        }
        Ok((values, vectors))
    }

    /// Schur decomposition `A = Q T Q†` with `T` upper triangular.
    /// Returns `(T, Q)`.
    pub fn schur(&self) -> Result<(DenseUnitary, DenseUnitary)> {
        let n = self.dim;
        let mut t = self.clone();
        let mut q = DenseUnitary::identity(n);
        if n == 1 {
            return Ok((t, q));
        }

        hessenberg_in_place(&mut t, &mut q);

        let tol = DEFLATION_RELATIVE_TOLERANCE * self.frobenius_norm().max(1.0);
        let budget = MAX_QR_SWEEPS_PER_DIM * n;
        let mut sweeps = 0usize;
        // Active block [lo, hi] shrinks as eigenvalues deflate from the
        // bottom.
        let mut hi = n - 1;
        loop {
            // Zero out negligible subdiagonals, then find the active block.
            let mut l = hi;
            while l > 0 {
                let s = t.get(l, l - 1).norm();
                if s <= tol || s <= f64::EPSILON * (t.get(l - 1, l - 1).norm() + t.get(l, l).norm())
                {
                    t.set(l, l - 1, Complex64::new(0.0, 0.0));
                    break;
                }
                l -= 1;
            }
            if l == hi {
                // 1x1 block converged.
                if hi == 0 {
                    break;
                }
                hi -= 1;
                continue;
            }
            if sweeps >= budget {
                return Err(Error::EigensolverDidNotConverge { remaining: hi + 1 });
            }
            sweeps += 1;

            let shift = if sweeps.is_multiple_of(16) {
                // Exceptional shift to break symmetric stalls.
                let s = t.get(hi, hi - 1);
                t.get(hi, hi) + Complex64::new(1.5 * s.norm(), 0.0)
            } else {
                wilkinson_shift(&t, hi)
            };
            qr_sweep(&mut t, &mut q, l, hi, shift);
        }
        // The iteration leaves numerical dust below the diagonal; clear it
        // so T is exactly triangular.
        for r in 1..n {
            for c in 0..r {
                t.set(r, c, Complex64::new(0.0, 0.0));
            }
        }
        Ok((t, q))
    }
}

/// Reduces `t` to upper Hessenberg form by Householder reflections,
/// accumulating the similarity transform into `q` (post-multiplied).
fn hessenberg_in_place(t: &mut DenseUnitary, q: &mut DenseUnitary) {
    let n = t.dim();
    for k in 0..n.saturating_sub(2) {
        // Householder vector for column k, rows k+1..n.
        let mut v: Vec<Complex64> = (k + 1..n).map(|r| t.get(r, k)).collect();
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        // alpha = -e^{i arg(v0)} * norm keeps v0 + alpha*e1 well scaled.
        let v0 = v[0];
        let phase = if v0.norm() > 0.0 { v0 / v0.norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -phase * norm;
        v[0] -= alpha;
        let vnorm_sq: f64 = v.iter().map(|a| a.norm_sqr()).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm_sq;

        // t <- P t, rows k+1..n; P = I - beta v v†
        for col in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (j, vv) in v.iter().enumerate() {
                dot += vv.conj() * t.get(k + 1 + j, col);
            }
            dot *= beta;
            for (j, vv) in v.iter().enumerate() {
                let cur = t.get(k + 1 + j, col);
                t.set(k + 1 + j, col, cur - dot * vv);
            }
        }
        // t <- t P, cols k+1..n
        for row in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (j, vv) in v.iter().enumerate() {
                dot += t.get(row, k + 1 + j) * *vv;
            }
            dot *= beta;
            for (j, vv) in v.iter().enumerate() {
                let cur = t.get(row, k + 1 + j);
                t.set(row, k + 1 + j, cur - dot * vv.conj());
            }
        }
        // q <- q P
        for row in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (j, vv) in v.iter().enumerate() {
                dot += q.get(row, k + 1 + j) * *vv;
            }
            dot *= beta;
            for (j, vv) in v.iter().enumerate() {
                let cur = q.get(row, k + 1 + j);
                q.set(row, k + 1 + j, cur - dot * vv.conj());
            }
        }
        // Exact zeros below the subdiagonal in column k.
        t.set(k + 1, k, alpha);
        for r in k + 2..n {
            t.set(r, k, Complex64::new(0.0, 0.0));
        }
    }
}

/// Eigenvalue of the trailing 2x2 block closest to the bottom-right entry.
fn wilkinson_shift(t: &DenseUnitary, hi: usize) -> Complex64 {
    let a = t.get(hi - 1, hi - 1);
    let b = t.get(hi - 1, hi);
    let c = t.get(hi, hi - 1);
    let d = t.get(hi, hi);
    // Eigenvalues of [[a, b], [c, d]].
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - 4.0 * det).sqrt();
    let l1 = (tr + disc) * 0.5;
    let l2 = (tr - disc) * 0.5;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Complex Givens rotation zeroing `b` in `(a, b)`: returns `(c, s, r)`
/// with `[c, s; -conj(s), c] [a; b] = [r; 0]` and real `c`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64, Complex64) {
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0), a);
    }
    let an = a.norm();
    let r = (an * an + bn * bn).sqrt();
    if an == 0.0 {
        // Rotate b straight into the top slot.
        (0.0, b.conj() / bn, Complex64::new(bn, 0.0))
    } else {
        let c = an / r;
        let u = a / an;
        let s = u * b.conj() / r;
        (c, s, u * r)
    }
}

/// One implicit single-shift QR sweep on the active Hessenberg block
/// `[lo, hi]`, accumulating the transform into `q`.
fn qr_sweep(t: &mut DenseUnitary, q: &mut DenseUnitary, lo: usize, hi: usize, shift: Complex64) {
    let n = t.dim();
    // First rotation from the shifted column, then chase the bulge.
    let mut x = t.get(lo, lo) - shift;
    let mut y = t.get(lo + 1, lo);
    for k in lo..hi {
        let (c, s, _) = givens(x, y);
        let cs = Complex64::new(c, 0.0);

        // Apply G on the left to rows k, k+1.
        let col_start = k.saturating_sub(1).max(lo);
        for col in col_start..n {
            let a = t.get(k, col);
            let b = t.get(k + 1, col);
            t.set(k, col, cs * a + s * b);
            t.set(k + 1, col, -s.conj() * a + cs * b);
        }
        // Apply G† on the right to columns k, k+1.
        let row_end = (k + 2).min(hi) + 1;
        for row in 0..row_end {
            let a = t.get(row, k);
            let b = t.get(row, k + 1);
            t.set(row, k, a * cs + b * s.conj());
            t.set(row, k + 1, -a * s + b * cs);
        }
        for row in 0..n {
            let a = q.get(row, k);
            let b = q.get(row, k + 1);
            q.set(row, k, a * cs + b * s.conj());
            q.set(row, k + 1, -a * s + b * cs);
        }
        if k + 1 < hi {
            x = t.get(k + 1, k);
            y = t.get(k + 2, k);
        }
    }
}
