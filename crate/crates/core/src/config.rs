use crate::error::{Error, Result};

/// Numerical tolerances shared by state validation, spectra, and verdicts.
///
/// All defaults assume matrices normalized to unit trace. `eig` and `rank` are
/// relative (to the operator norm and the largest |eigenvalue| respectively);
/// the rest are absolute.
#[derive(Debug, Clone)]
pub struct Tolerances {
    /// Hermiticity defect allowed on construction.
    pub herm: f64,
    /// How far below zero an eigenvalue may sit and still count as PSD.
    pub psd: f64,
    /// Allowed deviation of the trace (or vector norm) from 1.
    pub trace: f64,
    /// Relative eigendecomposition reconstruction residual.
    pub eig: f64,
    /// Relative cutoff for counting an eigenvalue as nonzero.
    pub rank: f64,
    /// Slack allowed on majorization prefix sums.
    pub maj: f64,
    /// Slack allowed on entropy comparisons.
    pub ent: f64,
    /// Cap on total Hilbert-space dimension.
    pub max_dim: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            herm: 1e-9,
            psd: 1e-9,
            trace: 1e-9,
            eig: 1e-8,
            rank: 1e-8,
            maj: 1e-9,
            ent: 1e-9,
            max_dim: 4096,
        }
    }
}

impl Tolerances {
    /// Override one tolerance by name (the names used by the CLI `--tol.*` flags).
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::Usage(format!(
                "tolerance {name} must be a non-negative finite number, got {value}"
            )));
        }
        match name {
            "herm" => self.herm = value,
            "psd" => self.psd = value,
            "trace" => self.trace = value,
            "eig" => self.eig = value,
            "rank" => self.rank = value,
            "maj" => self.maj = value,
            "ent" => self.ent = value,
            _ => {
                return Err(Error::Usage(format!(
                    "unknown tolerance {name}; expected one of herm, psd, trace, eig, rank, maj, ent"
                )))
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_overrides_named_tolerance() {
        let mut tol = Tolerances::default();
        tol.set("psd", 1e-6).unwrap();
        assert_eq!(tol.psd, 1e-6);
        assert_eq!(tol.herm, 1e-9);
    }

    #[test]
    fn set_rejects_unknown_name_and_bad_value() {
        let mut tol = Tolerances::default();
        assert!(tol.set("wat", 1e-6).is_err());
        assert!(tol.set("psd", -1.0).is_err());
        assert!(tol.set("psd", f64::NAN).is_err());
    }
}
