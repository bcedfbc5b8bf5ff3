use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::spectrum::Spectrum;

/// Eigenvalues (descending) paired with eigenvector columns in the same order.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub spectrum: Spectrum,
    /// Column k is a unit eigenvector for spectrum value k. Phases are
    /// whatever the solver produced; callers needing a convention fix it.
    pub vectors: ComplexMatrix,
}

fn to_nalgebra(m: &ComplexMatrix) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.entries())
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
///
/// Rejects inputs whose Hermiticity defect exceeds `tol.herm` (the error
/// carries the defect) and inputs the solver reconstructs worse than
/// `tol.eig` relative to the Frobenius norm.
pub fn hermitian_spectrum(m: &ComplexMatrix, tol: &Tolerances) -> Result<Spectrum> {
    Ok(hermitian_eigen(m, tol)?.spectrum)
}

/// Full Hermitian eigendecomposition with the same contract as
/// [`hermitian_spectrum`].
pub fn hermitian_eigen(m: &ComplexMatrix, tol: &Tolerances) -> Result<EigenDecomposition> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "eigendecomposition requires a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let defect = m.hermiticity_defect();
    if defect > tol.herm {
        return Err(Error::Numeric(format!(
            "matrix is not Hermitian: asymmetry norm {defect:.3e} exceeds {:.3e}",
            tol.herm
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Err(Error::Dimension("cannot eigendecompose an empty matrix".into()));
    }

    // Symmetrize before handing to the solver so the tiny defect cannot leak
    // imaginary parts into the eigenvalues.
    let sym = m.add(&m.adjoint())?.scale(Complex64::new(0.5, 0.0));
    let eig = to_nalgebra(&sym).symmetric_eigen();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .expect("finite eigenvalues")
    });

    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);

    // Reconstruction residual guards against a silently wrong decomposition.
    let mut recon = ComplexMatrix::zeros(n, n);
    for (k, &lambda) in values.iter().enumerate() {
        for r in 0..n {
            let vr = vectors.get(r, k);
            if vr.norm_sqr() == 0.0 {
                continue;
            }
            for c in 0..n {
                recon.add_to(r, c, vr * vectors.get(c, k).conj() * lambda);
            }
        }
    }
    let norm = m.frobenius_norm();
    let residual = recon.sub(m)?.frobenius_norm();
    if norm > 0.0 && residual > tol.eig * norm {
        return Err(Error::Numeric(format!(
            "eigendecomposition residual {residual:.3e} exceeds {:.3e}",
            tol.eig * norm
        )));
    }

    Ok(EigenDecomposition {
        spectrum: Spectrum::new(values),
        vectors,
    })
}
