//! Sparse symmetric linear algebra backing the mesh eigenproblems: CSR
//! storage, RCM ordering, envelope Cholesky, a tridiagonal QL eigensolver,
//! and shift-invert Lanczos on top of them.

mod csr;
mod envelope;
mod lanczos;
mod rcm;
mod tridiag;

pub use csr::SymCsr;
pub use envelope::{EnvelopeCholesky, ENVELOPE_BYTE_CAP};
pub use lanczos::{smallest_eigenpairs, EigenOptions};
pub use rcm::{envelope_size, reverse_cuthill_mckee};
pub use tridiag::symmetric_tridiagonal_eigen;
