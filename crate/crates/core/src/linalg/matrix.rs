use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix with row-major storage.
///
/// This is the carrier for every operator in the crate: density matrices,
/// partial transposes, reduction-criterion operators, isometries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build from row-major entries, rejecting length mismatches and non-finite values.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "entry count {} does not match {rows}x{cols}",
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("matrix contains NaN or Inf".into()));
        }
        Ok(ComplexMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        ComplexMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.entries[r * self.cols + c] = v;
    }

    #[inline]
    pub fn add_to(&mut self, r: usize, c: usize, v: Complex64) {
        self.entries[r * self.cols + c] += v;
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// Largest entrywise deviation from Hermiticity, max_ij |m_ij - conj(m_ji)|.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut defect = 0.0f64;
        for i in 0..self.rows {
            for j in 0..=i {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                if d > defect {
                    defect = d;
                }
            }
        }
        defect
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise distance to `other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.add_to(i, j, a * other.get(k, j));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix addition shape mismatch".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a + b)
            .collect();
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix subtraction shape mismatch".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a - b)
            .collect();
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }
}

/// Kronecker product a ⊗ b.
///
/// Fails if either output side would exceed `max_dim` (states and operators in
/// this crate are deliberately desk-scale).
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix, max_dim: usize) -> Result<ComplexMatrix> {
    let rows = a
        .rows()
        .checked_mul(b.rows())
        .filter(|&r| r <= max_dim)
        .ok_or_else(|| {
            Error::Dimension(format!(
                "tensor product rows {}x{} exceed the configured maximum {max_dim}",
                a.rows(),
                b.rows()
            ))
        })?;
    let cols = a
        .cols()
        .checked_mul(b.cols())
        .filter(|&c| c <= max_dim)
        .ok_or_else(|| {
            Error::Dimension(format!(
                "tensor product cols {}x{} exceed the configured maximum {max_dim}",
                a.cols(),
                b.cols()
            ))
        })?;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a.get(i, j);
            if aij.norm_sqr() == 0.0 {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out.set(i * b.rows() + k, j * b.cols() + l, aij * b.get(k, l));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn new_rejects_bad_lengths_and_nonfinite() {
        assert!(ComplexMatrix::new(2, 2, vec![re(1.0); 3]).is_err());
        assert!(ComplexMatrix::new(1, 1, vec![Complex64::new(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn tensor_identity_times_identity() {
        let i2 = ComplexMatrix::identity(2);
        let i4 = tensor_product(&i2, &i2, 4096).unwrap();
        assert_eq!(i4.max_abs_diff(&ComplexMatrix::identity(4)), 0.0);
    }

    #[test]
    fn tensor_basis_projectors() {
        let mut p0 = ComplexMatrix::zeros(2, 2);
        p0.set(0, 0, re(1.0));
        let mut p1 = ComplexMatrix::zeros(2, 2);
        p1.set(1, 1, re(1.0));
        let t = tensor_product(&p0, &p1, 4096).unwrap();
        let mut expected = ComplexMatrix::zeros(4, 4);
        expected.set(1, 1, re(1.0));
        assert_eq!(t.max_abs_diff(&expected), 0.0);
    }

    #[test]
    fn tensor_respects_dimension_cap() {
        let i = ComplexMatrix::identity(64);
        let err = tensor_product(&i, &i, 4095).unwrap_err();
        assert!(matches!(err, Error::Dimension(_)));
    }

    #[test]
    fn tensor_bilinear() {
        let a = ComplexMatrix::from_fn(2, 2, |r, c| Complex64::new((r + c) as f64, r as f64));
        let b = ComplexMatrix::from_fn(2, 2, |r, c| Complex64::new(1.0, (r * c) as f64));
        let two_a = a.scale(re(2.0));
        let lhs = tensor_product(&two_a, &b, 4096).unwrap();
        let rhs = tensor_product(&a, &b, 4096).unwrap().scale(re(2.0));
        assert!(lhs.max_abs_diff(&rhs) < 1e-14);
    }

    #[test]
    fn adjoint_and_hermiticity_defect() {
        let m = ComplexMatrix::from_fn(2, 2, |r, c| Complex64::new(r as f64, c as f64));
        let h = m.add(&m.adjoint()).unwrap();
        assert!(h.hermiticity_defect() < 1e-15);
        assert!(m.hermiticity_defect() > 0.5);
    }
}
