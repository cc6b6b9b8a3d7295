//! Shift-invert Lanczos for the low end of a sparse symmetric spectrum.
//!
//! The operator `(A + shift I)^{-1}` is applied through an envelope
//! Cholesky factorization over an RCM ordering; the Krylov basis is kept
//! fully reorthogonalized, wanted directions (the known kernel) are
//! deflated, and convergence is accepted only on the true residual
//! `||A z - lambda z||` of each Ritz pair.

use super::csr::SymCsr;
use super::envelope::EnvelopeCholesky;
use super::rcm::reverse_cuthill_mckee;
use super::tridiag::symmetric_tridiagonal_eigen;
use crate::error::{Error, Result};

/// Options for [`smallest_eigenpairs`].
#[derive(Debug, Clone)]
pub struct EigenOptions {
    /// Number of eigenpairs to converge (beyond the deflated directions).
    pub count: usize,
    /// Residual tolerance, relative to the largest wanted eigenvalue
    /// magnitude (or the shift when that is larger).
    pub tol: f64,
    /// Positive spectral shift; choose it below the smallest wanted nonzero
    /// eigenvalue for fast separation.
    pub shift: f64,
    /// Krylov dimension budget.
    pub max_dim: usize,
    /// Seed for the deterministic start vector.
    pub seed: u64,
}

/// The `count` smallest eigenpairs of `a` restricted to the orthogonal
/// complement of `deflate`, in ascending eigenvalue order. Vectors are
/// returned unit length in the original index order.
pub fn smallest_eigenpairs(
    a: &SymCsr,
    deflate: &[Vec<f64>],
    opts: &EigenOptions,
) -> Result<Vec<(f64, Vec<f64>)>> {
    let n = a.dim();
    if opts.count == 0 {
        return Ok(Vec::new());
    }
    if opts.count + deflate.len() >= n {
        return Err(Error::Domain(format!(
            "{} eigenpairs plus {} deflated directions exceed dimension {n}",
            opts.count,
            deflate.len()
        )));
    }
    if opts.shift.is_nan() || opts.shift <= 0.0 {
        return Err(Error::Domain("shift must be positive".into()));
    }
    let order = reverse_cuthill_mckee(a);
    let ap = a.permute(&order);
    let chol = EnvelopeCholesky::factor(&ap, opts.shift)?;

    // Permute and orthonormalize the deflation set.
    let mut kernel: Vec<Vec<f64>> = Vec::with_capacity(deflate.len());
    for q in deflate {
        debug_assert_eq!(q.len(), n);
        let mut qp: Vec<f64> = order.iter().map(|&old| q[old as usize]).collect();
        for prev in &kernel {
            let c = dot(prev, &qp);
            axpy(&mut qp, -c, prev);
        }
        let nrm = norm(&qp);
        if nrm < 1e-12 {
            return Err(Error::Domain("deflation vectors are dependent".into()));
        }
        scale(&mut qp, 1.0 / nrm);
        kernel.push(qp);
    }

    let max_dim = opts.max_dim.min(n - deflate.len()).max(2);
    let mut rng = opts.seed;
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(max_dim);
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();

    let mut v0 = fresh_vector(n, &mut rng, &kernel, &basis)
        .ok_or_else(|| Error::NoConvergence("could not seed the Krylov space".into()))?;
    let nrm0 = norm(&v0);
    scale(&mut v0, 1.0 / nrm0);
    basis.push(v0);

    while basis.len() <= max_dim {
        let j = basis.len() - 1;
        let mut w = basis[j].clone();
        chol.solve_in_place(&mut w);
        project_out(&mut w, &kernel);
        let alpha = dot(&basis[j], &w);
        axpy(&mut w, -alpha, &basis[j]);
        if j > 0 {
            axpy(&mut w, -betas[j - 1], &basis[j - 1]);
        }
        // Full reorthogonalization, two passes.
        for _ in 0..2 {
            project_out(&mut w, &kernel);
            for v in &basis {
                let c = dot(v, &w);
                axpy(&mut w, -c, v);
            }
        }
        alphas.push(alpha);
        let beta = norm(&w);

        // Convergence test on the current tridiagonal model.
        if alphas.len() > opts.count {
            if let Some(pairs) = try_extract(&ap, &basis, &alphas, &betas, beta, opts)? {
                let mut out: Vec<(f64, Vec<f64>)> = pairs
                    .into_iter()
                    .map(|(lambda, zp)| {
                        let mut z = vec![0.0; n];
                        for (new, &old) in order.iter().enumerate() {
                            z[old as usize] = zp[new];
                        }
                        (lambda, z)
                    })
                    .collect();
                out.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite eigenvalues"));
                return Ok(out);
            }
        }

        if basis.len() == max_dim {
            break;
        }
        let scale_ref = alphas.iter().fold(0.0f64, |m, a| m.max(a.abs()));
        if beta <= 1e-14 * scale_ref.max(1e-300) {
            // Invariant subspace; restart with a fresh orthogonal direction.
            match fresh_vector(n, &mut rng, &kernel, &basis) {
                Some(mut v) => {
                    let nrm = norm(&v);
                    scale(&mut v, 1.0 / nrm);
                    betas.push(0.0);
                    basis.push(v);
                }
                None => break,
            }
        } else {
            scale(&mut w, 1.0 / beta);
            betas.push(beta);
            basis.push(w);
        }
    }

    Err(Error::NoConvergence(format!(
        "residual tolerance {:e} not reached within a Krylov space of dimension {}",
        opts.tol, max_dim
    )))
}

/// Ritz extraction: screen with the cheap `beta * |last component|` bound,
/// then accept only if every wanted pair passes the true residual test.
#[allow(clippy::type_complexity)]
fn try_extract(
    ap: &SymCsr,
    basis: &[Vec<f64>],
    alphas: &[f64],
    betas: &[f64],
    beta_next: f64,
    opts: &EigenOptions,
) -> Result<Option<Vec<(f64, Vec<f64>)>>> {
    let j = alphas.len();
    let (nu, svecs) = symmetric_tridiagonal_eigen(alphas, betas)?;
    // Largest nu first: these are the smallest eigenvalues of A.
    let mut picks: Vec<usize> = (0..j).collect();
    picks.sort_by(|&a, &b| nu[b].partial_cmp(&nu[a]).expect("finite ritz values"));
    let picks = &picks[..opts.count.min(j)];
    if picks.len() < opts.count {
        return Ok(None);
    }
    let lambdas: Vec<f64> = picks.iter().map(|&i| 1.0 / nu[i] - opts.shift).collect();
    let scale_ref = lambdas
        .iter()
        .fold(opts.shift, |m, l| m.max(l.abs()))
        .max(f64::MIN_POSITIVE);
    for &i in picks {
        if nu[i] <= 0.0 {
            return Ok(None);
        }
        let screen = beta_next * svecs[i][j - 1].abs();
        if screen > opts.tol * nu[i] {
            return Ok(None);
        }
    }
    // Assemble Ritz vectors and check true residuals.
    let n = ap.dim();
    let mut out = Vec::with_capacity(picks.len());
    for (&i, &lambda) in picks.iter().zip(&lambdas) {
        let mut z = vec![0.0f64; n];
        for (v, &coeff) in basis.iter().zip(&svecs[i]) {
            axpy(&mut z, coeff, v);
        }
        let nrm = norm(&z);
        if nrm < 1e-12 {
            return Ok(None);
        }
        scale(&mut z, 1.0 / nrm);
        let residual = ap.eigen_residual(&z, lambda);
        if residual > opts.tol * scale_ref {
            return Ok(None);
        }
        out.push((lambda, z));
    }
    Ok(Some(out))
}

fn fresh_vector(
    n: usize,
    rng: &mut u64,
    kernel: &[Vec<f64>],
    basis: &[Vec<f64>],
) -> Option<Vec<f64>> {
    for _ in 0..8 {
        let mut v: Vec<f64> = (0..n).map(|_| splitmix_unit(rng)).collect();
        project_out(&mut v, kernel);
        for b in basis {
            let c = dot(b, &v);
            axpy(&mut v, -c, b);
        }
        if norm(&v) > 1e-8 {
            return Some(v);
        }
    }
    None
}

fn project_out(w: &mut [f64], directions: &[Vec<f64>]) {
    for q in directions {
        let c = dot(q, w);
        axpy(w, -c, q);
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn scale(a: &mut [f64], s: f64) {
    for x in a {
        *x *= s;
    }
}

fn splitmix_unit(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64 - 0.5
}
