//! Envelope (profile) Cholesky factorization. The factor of a symmetric
//! positive definite matrix fills only within the row envelope, so after a
//! bandwidth-reducing ordering this gives an exact direct solver with
//! predictable memory.

use super::csr::SymCsr;
use crate::error::{Error, Result};

/// Refuse factorizations whose envelope would exceed this many bytes.
pub const ENVELOPE_BYTE_CAP: usize = 1_200_000_000;

/// Lower-triangular envelope factor `L` with `A + shift*I = L L^T`.
#[derive(Debug, Clone)]
pub struct EnvelopeCholesky {
    n: usize,
    /// First stored column of each row (row i stores columns first[i]..=i).
    first: Vec<u32>,
    /// Offset of each row's data in `data`; length n + 1.
    offsets: Vec<usize>,
    data: Vec<f64>,
}

impl EnvelopeCholesky {
    /// Factor `a + shift*I`. Fails if a pivot is not strictly positive or
    /// the envelope exceeds [`ENVELOPE_BYTE_CAP`].
    pub fn factor(a: &SymCsr, shift: f64) -> Result<Self> {
        let n = a.dim();
        let mut first = vec![0u32; n];
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0usize);
        for i in 0..n {
            let f = a
                .row(i)
                .map(|(j, _)| j)
                .filter(|&j| (j as usize) <= i)
                .min()
                .unwrap_or(i as u32);
            first[i] = f;
            offsets.push(offsets[i] + (i - f as usize) + 1);
        }
        let stored = offsets[n];
        if stored.saturating_mul(8) > ENVELOPE_BYTE_CAP {
            return Err(Error::Budget(format!(
                "envelope factor needs {} MB, above the {} MB cap; reduce the mesh size",
                stored * 8 / 1_000_000,
                ENVELOPE_BYTE_CAP / 1_000_000
            )));
        }
        let mut data = vec![0.0f64; stored];
        // Scatter A's lower triangle (plus the shift) into the envelope.
        for i in 0..n {
            let fi = first[i] as usize;
            let base = offsets[i];
            for (j, v) in a.row(i) {
                let j = j as usize;
                if j <= i {
                    data[base + (j - fi)] = v;
                }
            }
            data[base + (i - fi)] += shift;
        }
        // Row Cholesky within the envelope.
        for i in 0..n {
            let fi = first[i] as usize;
            let base_i = offsets[i];
            for j in fi..i {
                let fj = first[j] as usize;
                let base_j = offsets[j];
                let lo = fi.max(fj);
                // sum_{k=lo}^{j-1} L[i][k] L[j][k]
                let mut s = 0.0;
                let row_i = &data[base_i + (lo - fi)..base_i + (j - fi)];
                let row_j = &data[base_j + (lo - fj)..base_j + (j - fj)];
                for (x, y) in row_i.iter().zip(row_j) {
                    s += x * y;
                }
                let djj = data[base_j + (j - fj)];
                data[base_i + (j - fi)] = (data[base_i + (j - fi)] - s) / djj;
            }
            let mut s = 0.0;
            for k in 0..(i - fi) {
                let v = data[base_i + k];
                s += v * v;
            }
            let pivot = data[base_i + (i - fi)] - s;
            if pivot.is_nan() || pivot <= 0.0 {
                return Err(Error::Domain(format!(
                    "matrix (with shift {shift}) is not positive definite: pivot {pivot} at row {i}"
                )));
            }
            data[base_i + (i - fi)] = pivot.sqrt();
        }
        Ok(EnvelopeCholesky {
            n,
            first,
            offsets,
            data,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Stored entries of the factor.
    pub fn stored(&self) -> usize {
        self.data.len()
    }

    /// Solve `(A + shift I) x = b` in place.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        debug_assert_eq!(b.len(), self.n);
        // Forward: L y = b.
        for i in 0..self.n {
            let fi = self.first[i] as usize;
            let base = self.offsets[i];
            let mut s = b[i];
            for (k, j) in (fi..i).enumerate() {
                s -= self.data[base + k] * b[j];
            }
            b[i] = s / self.data[base + (i - fi)];
        }
        // Backward: L^T x = y.
        for i in (0..self.n).rev() {
            let fi = self.first[i] as usize;
            let base = self.offsets[i];
            b[i] /= self.data[base + (i - fi)];
            let xi = b[i];
            for (k, j) in (fi..i).enumerate() {
                b[j] -= self.data[base + k] * xi;
            }
        }
    }
}
