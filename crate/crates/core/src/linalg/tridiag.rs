//! Symmetric tridiagonal eigensolver: implicit QL with Wilkinson shifts and
//! eigenvector accumulation (the classical tql2 sweep).

use crate::error::{Error, Result};

/// Eigen-decomposition of the symmetric tridiagonal matrix with diagonal
/// `diag` and subdiagonal `offdiag` (`offdiag[i]` couples rows `i` and
/// `i + 1`). Returns eigenvalues in ascending order and the matching
/// eigenvectors as rows of the second component.
pub fn symmetric_tridiagonal_eigen(
    diag: &[f64],
    offdiag: &[f64],
) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = diag.len();
    assert!(n > 0);
    assert_eq!(offdiag.len(), n.saturating_sub(1));
    let mut d = diag.to_vec();
    // e[i] couples i and i+1; extra trailing slot simplifies the sweep.
    let mut e = offdiag.to_vec();
    e.push(0.0);
    // Eigenvector accumulation, row-major: z[r * n + c].
    let mut z = vec![0.0f64; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }

    for l in 0..n {
        let mut iter = 0usize;
        loop {
            // Find the active block [l, m].
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NoConvergence(format!(
                    "tridiagonal QL exceeded 60 sweeps at index {l}"
                )));
            }
            // Wilkinson shift.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0f64;
            let mut c = 1.0f64;
            let mut p = 0.0f64;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in 0..n {
                    f = z[row * n + i + 1];
                    z[row * n + i + 1] = s * z[row * n + i] + c * f;
                    z[row * n + i] = c * z[row * n + i] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    // Sort ascending, carrying eigenvectors along.
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).expect("finite eigenvalues"));
    let eigenvalues: Vec<f64> = idx.iter().map(|&i| d[i]).collect();
    let eigenvectors: Vec<Vec<f64>> = idx
        .iter()
        .map(|&col| (0..n).map(|row| z[row * n + col]).collect())
        .collect();
    Ok((eigenvalues, eigenvectors))
}
