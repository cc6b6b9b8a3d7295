//! Symmetric sparse matrices in compressed row storage (both triangles
//! stored, so the matvec is a plain row sweep).

use std::collections::BTreeMap;

/// Sparse symmetric matrix, CSR with full pattern.
#[derive(Debug, Clone)]
pub struct SymCsr {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<u32>,
    values: Vec<f64>,
}

impl SymCsr {
    /// Build from one ordered map per row. Callers are responsible for
    /// symmetry; `debug_assert`s check it on small inputs.
    pub fn from_rows(rows: Vec<BTreeMap<u32, f64>>) -> Self {
        let n = rows.len();
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for row in &rows {
            for (&j, &v) in row {
                col_idx.push(j);
                values.push(v);
            }
            row_ptr.push(col_idx.len());
        }
        let m = SymCsr {
            n,
            row_ptr,
            col_idx,
            values,
        };
        #[cfg(debug_assertions)]
        if n <= 2000 {
            for i in 0..n {
                for (j, v) in m.row(i) {
                    debug_assert!(
                        (m.get(j as usize, i) - v).abs() <= 1e-12 * v.abs().max(1.0),
                        "asymmetry at ({i},{j})"
                    );
                }
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.col_idx.len()
    }

    /// Entries of row `i` as `(column, value)` pairs, columns ascending.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (u32, f64)> + '_ {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[span.clone()]
            .iter()
            .copied()
            .zip(self.values[span].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.col_idx[span.clone()].binary_search(&(j as u32)) {
            Ok(k) => self.values[span.start + k],
            Err(_) => 0.0,
        }
    }

    /// y = A x.
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n);
        debug_assert_eq!(y.len(), self.n);
        for (i, yi) in y.iter_mut().enumerate() {
            let mut acc = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.values[k] * x[self.col_idx[k] as usize];
            }
            *yi = acc;
        }
    }

    /// ||A x - lambda x||_2.
    pub fn eigen_residual(&self, x: &[f64], lambda: f64) -> f64 {
        let mut y = vec![0.0; self.n];
        self.matvec(x, &mut y);
        y.iter()
            .zip(x)
            .map(|(ax, xi)| (ax - lambda * xi).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Symmetric permutation: entry `(i, j)` of the result equals entry
    /// `(order[i], order[j])` of `self`.
    pub fn permute(&self, order: &[u32]) -> SymCsr {
        debug_assert_eq!(order.len(), self.n);
        let mut inverse = vec![0u32; self.n];
        for (new, &old) in order.iter().enumerate() {
            inverse[old as usize] = new as u32;
        }
        let mut rows: Vec<BTreeMap<u32, f64>> = vec![BTreeMap::new(); self.n];
        for (new_i, &old_i) in order.iter().enumerate() {
            let row = &mut rows[new_i];
            for (old_j, v) in self.row(old_i as usize) {
                row.insert(inverse[old_j as usize], v);
            }
        }
        SymCsr::from_rows(rows)
    }
}
