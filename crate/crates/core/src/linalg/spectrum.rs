use serde::Serialize;

use crate::config::Tolerances;

/// Real eigenvalues sorted non-increasing.
///
/// For density matrices these are probabilities; for partial transposes they
/// may be negative. Multiplicity is implicit in repetition.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
        Spectrum { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Largest |eigenvalue|.
    pub fn max_abs(&self) -> f64 {
        f64::max(self.max().abs(), self.min().abs())
    }

    /// Number of eigenvalues with |λ| above `tol.rank` relative to the largest.
    /// Only the zero matrix has rank 0.
    pub fn rank(&self, tol: &Tolerances) -> usize {
        let cutoff = tol.rank * self.max_abs();
        self.values.iter().filter(|l| l.abs() > cutoff).count()
    }

    /// Shannon entropy of the spectrum in bits, -Σ λ log2 λ over λ above the
    /// rank cutoff. Clamped to be non-negative so pure states report exactly 0.
    pub fn entropy_bits(&self, tol: &Tolerances) -> f64 {
        let cutoff = tol.rank * self.max_abs();
        let s: f64 = self
            .values
            .iter()
            .filter(|&&l| l > cutoff)
            .map(|&l| -l * l.log2())
            .sum();
        s.max(0.0)
    }

    /// Sup distance between two spectra, zero-padding the shorter one.
    pub fn sup_distance(&self, other: &Spectrum) -> f64 {
        let n = self.len().max(other.len());
        (0..n)
            .map(|i| {
                let a = self.values.get(i).copied().unwrap_or(0.0);
                let b = other.values.get(i).copied().unwrap_or(0.0);
                (a - b).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Outcome of a majorization comparison p ≻ q.
#[derive(Debug, Clone, Serialize)]
pub struct MajorizationCheck {
    pub holds: bool,
    /// 1-based index of the first prefix where Σp < Σq - tol, if any.
    pub violated_prefix: Option<usize>,
    /// Worst prefix margin min_k (Σ_k p - Σ_k q); negative when violated.
    pub margin: f64,
}

/// Check whether `p` majorizes `q`: every k-prefix sum of the sorted `p` must
/// reach the matching prefix of `q` up to `tol.maj`. Spectra of unequal length
/// are zero-padded, the standard convention when comparing a marginal with a
/// joint state.
pub fn majorizes(p: &Spectrum, q: &Spectrum, tol: &Tolerances) -> MajorizationCheck {
    let n = p.len().max(q.len());
    let mut sum_p = 0.0;
    let mut sum_q = 0.0;
    let mut margin = f64::INFINITY;
    let mut violated = None;
    for k in 0..n {
        sum_p += p.values().get(k).copied().unwrap_or(0.0);
        sum_q += q.values().get(k).copied().unwrap_or(0.0);
        let m = sum_p - sum_q;
        if m < margin {
            margin = m;
        }
        if violated.is_none() && m < -tol.maj {
            violated = Some(k + 1);
        }
    }
    MajorizationCheck {
        holds: violated.is_none(),
        violated_prefix: violated,
        margin: if margin.is_finite() { margin } else { 0.0 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn spectrum_sorts_descending() {
        let s = Spectrum::new(vec![0.1, 0.5, 0.4]);
        assert_eq!(s.values(), &[0.5, 0.4, 0.1]);
    }

    #[test]
    fn uniform_entropy_is_log_dim() {
        let s = Spectrum::new(vec![0.25; 4]);
        assert!((s.entropy_bits(&tol()) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn pure_spectrum_entropy_is_zero() {
        let s = Spectrum::new(vec![1.0, 0.0, 0.0]);
        let e = s.entropy_bits(&tol());
        assert_eq!(e, 0.0);
        assert!(e.is_sign_positive());
    }

    #[test]
    fn rank_counts_relative_threshold() {
        let s = Spectrum::new(vec![1.0, 0.5, 1e-12]);
        assert_eq!(s.rank(&tol()), 2);
        assert_eq!(Spectrum::new(vec![0.0, 0.0]).rank(&tol()), 0);
    }

    #[test]
    fn majorization_reflexive_and_extreme_points() {
        let p = Spectrum::new(vec![0.7, 0.2, 0.1]);
        assert!(majorizes(&p, &p, &tol()).holds);

        let top = Spectrum::new(vec![1.0, 0.0]);
        let flat = Spectrum::new(vec![0.5, 0.5]);
        assert!(majorizes(&top, &flat, &tol()).holds);
        let rev = majorizes(&flat, &top, &tol());
        assert!(!rev.holds);
        assert_eq!(rev.violated_prefix, Some(1));
        assert!((rev.margin + 0.5).abs() < 1e-12);
    }

    #[test]
    fn majorization_zero_pads_shorter_spectrum() {
        let marginal = Spectrum::new(vec![0.5, 0.5]);
        let joint = Spectrum::new(vec![0.5, 0.25, 0.25, 0.0]);
        assert!(majorizes(&marginal, &joint, &tol()).holds);
        assert!(!majorizes(&joint, &marginal, &tol()).holds);
    }
}
