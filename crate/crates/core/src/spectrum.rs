//! Piecewise-linear Laplace-Beltrami spectra of closed triangle meshes and
//! the numerical saturation check of the eigenvalue inequality on round
//! spheres.
//!
//! The discretization is the cotangent stiffness matrix against the lumped
//! (diagonal) mass matrix. The generalized problem `S x = lambda M x` is
//! reduced by the diagonal scaling `A = M^{-1/2} S M^{-1/2}` and solved by
//! shift-invert Lanczos with the constant mode deflated explicitly; its
//! Rayleigh quotient is still computed and reported honestly, so a spurious
//! extra kernel (e.g. a disconnected mesh) remains visible.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::constants::SPHERE2_VOLUME;
use crate::error::{Error, Result};
use crate::inequality::{li_yau_slack, InequalityCheck};
use crate::linalg::{smallest_eigenpairs, EigenOptions, SymCsr};
use crate::mesh::{build_icosphere, TriangleMesh};

/// Default residual tolerance of the eigensolver.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-10;

/// Eigenvalues below `1e-8 * (first nonzero estimate)` count as the
/// constant mode.
pub const ZERO_MODE_FACTOR: f64 = 1e-8;

/// Relative width of the cluster counted into `multiplicity1`.
pub const MULTIPLICITY_REL_TOL: f64 = 1e-4;

/// Low end of a mesh Laplace spectrum.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralResult {
    /// First k generalized eigenvalues, ascending (zero mode included).
    pub eigenvalues: Vec<f64>,
    /// Total mesh area (the trace of the lumped mass matrix).
    pub area: f64,
    /// First eigenvalue above the zero-mode threshold.
    pub lambda1: f64,
    /// Number of computed eigenvalues within `MULTIPLICITY_REL_TOL` of
    /// `lambda1`.
    pub multiplicity1: usize,
    /// Number of computed eigenvalues under the zero-mode threshold
    /// (1 for a connected closed mesh).
    pub zero_modes: usize,
}

/// Cotangent stiffness matrix (rows summing to zero) and lumped mass
/// diagonal of a mesh.
pub fn assemble_laplacian(mesh: &TriangleMesh) -> (SymCsr, Vec<f64>) {
    let n = mesh.vertex_count();
    let mut rows: Vec<BTreeMap<u32, f64>> = vec![BTreeMap::new(); n];
    let mut mass = vec![0.0f64; n];
    for &[a, b, c] in mesh.triangles() {
        let pa = mesh.vertices()[a as usize];
        let pb = mesh.vertices()[b as usize];
        let pc = mesh.vertices()[c as usize];
        let area = crate::mesh::triangle_area(pa, pb, pc);
        for v in [a, b, c] {
            mass[v as usize] += area / 3.0;
        }
        // Half-cotangent of the angle at each vertex weights the opposite edge.
        for (apex, u, v) in [(pa, b, c), (pb, c, a), (pc, a, b)] {
            let pu = mesh.vertices()[u as usize];
            let pv = mesh.vertices()[v as usize];
            let e1 = [pu[0] - apex[0], pu[1] - apex[1], pu[2] - apex[2]];
            let e2 = [pv[0] - apex[0], pv[1] - apex[1], pv[2] - apex[2]];
            let dot = e1[0] * e2[0] + e1[1] * e2[1] + e1[2] * e2[2];
            let cx = e1[1] * e2[2] - e1[2] * e2[1];
            let cy = e1[2] * e2[0] - e1[0] * e2[2];
            let cz = e1[0] * e2[1] - e1[1] * e2[0];
            let cross = (cx * cx + cy * cy + cz * cz).sqrt();
            let w = 0.5 * dot / cross;
            *rows[u as usize].entry(v).or_insert(0.0) -= w;
            *rows[v as usize].entry(u).or_insert(0.0) -= w;
        }
    }
    // Diagonal = -(sum of off-diagonal): rows sum to zero by construction,
    // so the constant vector is an exact kernel direction.
    for (i, row) in rows.iter_mut().enumerate() {
        let diag: f64 = -row.values().sum::<f64>();
        row.insert(i as u32, diag);
    }
    (SymCsr::from_rows(rows), mass)
}

/// First `k` generalized eigenvalues of the (stiffness, lumped mass) pair,
/// each with true residual below `tol` relative to the largest computed
/// eigenvalue.
pub fn laplace_spectrum(mesh: &TriangleMesh, k: usize, tol: f64) -> Result<SpectralResult> {
    let n = mesh.vertex_count();
    if k < 2 || k > n - 1 {
        return Err(Error::Domain(format!(
            "k = {k} must satisfy 2 <= k <= {} (vertex count - 1)",
            n - 1
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    let (stiffness, mass) = assemble_laplacian(mesh);
    let area: f64 = mass.iter().sum();
    let scale_d: Vec<f64> = mass.iter().map(|m| m.sqrt()).collect();

    // A = M^{-1/2} S M^{-1/2}.
    let mut rows: Vec<BTreeMap<u32, f64>> = vec![BTreeMap::new(); n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, v) in stiffness.row(i) {
            row.insert(j, v / (scale_d[i] * scale_d[j as usize]));
        }
    }
    let a = SymCsr::from_rows(rows);

    // Constant function in the scaled coordinates.
    let mut kernel: Vec<f64> = scale_d.clone();
    let nrm = kernel.iter().map(|x| x * x).sum::<f64>().sqrt();
    kernel.iter_mut().for_each(|x| *x /= nrm);

    // Honest zero-mode data: Rayleigh quotient of the known kernel vector.
    let mut ay = vec![0.0; n];
    a.matvec(&kernel, &mut ay);
    let lambda0: f64 = ay.iter().zip(&kernel).map(|(x, y)| x * y).sum();

    let opts = EigenOptions {
        count: k - 1,
        tol,
        // Below the first nonzero eigenvalue for any closed surface of this
        // area, and scale-covariant: coordinates times c send both the
        // spectrum and this shift to 1/c^2 of themselves.
        shift: 1.0 / area,
        max_dim: (n - 1).min(8 * (k - 1) + 300),
        seed: 0x6d61_7872_6566_6c21,
    };
    let pairs = smallest_eigenpairs(&a, &[kernel], &opts)?;

    let mut eigenvalues: Vec<f64> = Vec::with_capacity(k);
    eigenvalues.push(lambda0);
    eigenvalues.extend(pairs.iter().map(|(l, _)| *l));
    eigenvalues.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    eigenvalues.truncate(k);

    let top = eigenvalues.last().copied().unwrap_or(0.0).abs();
    let first_nonzero = eigenvalues
        .iter()
        .copied()
        .find(|&e| e > ZERO_MODE_FACTOR * top)
        .ok_or_else(|| {
            Error::NoConvergence("no nonzero eigenvalue among the computed modes".into())
        })?;
    let zero_threshold = ZERO_MODE_FACTOR * first_nonzero;
    let zero_modes = eigenvalues
        .iter()
        .filter(|&&e| e.abs() < zero_threshold)
        .count();
    let lambda1 = first_nonzero;
    let multiplicity1 = eigenvalues
        .iter()
        .filter(|&&e| (e - lambda1).abs() <= MULTIPLICITY_REL_TOL * lambda1)
        .count();

    Ok(SpectralResult {
        eigenvalues,
        area,
        lambda1,
        multiplicity1,
        zero_modes,
    })
}

/// Wire record for spectral runs: the spectrum plus the saturation slack of
/// the inequality at `(lambda1, area, m = 2, V_c = 4*pi)`.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRecord {
    /// Icosphere subdivision depth; absent for imported meshes.
    pub depth: Option<u32>,
    pub n_vertices: usize,
    pub area: f64,
    pub eigenvalues: Vec<f64>,
    pub lambda1: f64,
    pub multiplicity1: usize,
    pub slack: f64,
}

/// Spectrum record for an arbitrary closed mesh.
pub fn spectrum_record(
    mesh: &TriangleMesh,
    depth: Option<u32>,
    k: usize,
    tol: f64,
) -> Result<SpectrumRecord> {
    let spec = laplace_spectrum(mesh, k, tol)?;
    let check = li_yau_slack(spec.lambda1, spec.area, 2, SPHERE2_VOLUME)?;
    Ok(SpectrumRecord {
        depth,
        n_vertices: mesh.vertex_count(),
        area: spec.area,
        eigenvalues: spec.eigenvalues,
        lambda1: spec.lambda1,
        multiplicity1: spec.multiplicity1,
        slack: check.slack,
    })
}

/// Build the depth-`depth` icosphere, compute its low spectrum, and check
/// that the inequality at `(lambda1, area, 2, 4*pi)` is saturated up to
/// discretization: the continuum slack is exactly zero, so the computed
/// slack must be at least `-tol`.
pub fn verify_sphere_saturation(depth: u32, tol: f64) -> Result<InequalityCheck> {
    let mesh = build_icosphere(depth)?;
    let spec = laplace_spectrum(&mesh, 5, DEFAULT_RESIDUAL_TOL)?;
    let check = li_yau_slack(spec.lambda1, spec.area, 2, SPHERE2_VOLUME)?;
    if check.slack < -tol {
        return Err(Error::CheckFailed(format!(
            "sphere saturation slack {} below -{tol} at depth {depth}",
            check.slack
        )));
    }
    Ok(check)
}
