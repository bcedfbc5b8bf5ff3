use crate::error::{Error, Result};
use crate::linalg::{tensor_product, ComplexMatrix, QuantumState};

/// One term p_k · ρ_k^A ⊗ ρ_k^B of an explicit separable decomposition.
#[derive(Debug, Clone)]
pub struct SeparableTerm {
    pub weight: f64,
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
}

/// Ground truth a constructor can attach to a state.
///
/// Certificates are trusted inputs: they come from constructions whose
/// properties are established in the literature, and classifiers label
/// certificate-based conclusions in provenance so reports distinguish them
/// from numeric ones.
#[derive(Debug, Clone, Default)]
pub enum StateCertificate {
    #[default]
    None,
    /// Explicit convex decomposition into product states.
    SeparableDecomposition(Vec<SeparableTerm>),
    /// Entangled by construction (e.g. an unextendible-product-basis argument).
    KnownEntangled,
    /// A one-way distillation protocol exists, so the state is also distillable.
    KnownOneWayDistillable,
}

impl StateCertificate {
    pub fn kind_name(&self) -> &'static str {
        match self {
            StateCertificate::None => "none",
            StateCertificate::SeparableDecomposition(_) => "separable_decomposition",
            StateCertificate::KnownEntangled => "known_entangled",
            StateCertificate::KnownOneWayDistillable => "known_one_way_distillable",
        }
    }

    /// For a separable decomposition: weights form a probability vector and
    /// the mixture reconstructs `rho` within `max_error` entrywise.
    pub fn validate_against(&self, rho: &QuantumState, max_error: f64) -> Result<()> {
        let StateCertificate::SeparableDecomposition(terms) = self else {
            return Ok(());
        };
        if terms.is_empty() {
            return Err(Error::InvalidState("empty separable decomposition".into()));
        }
        let mut weight_sum = 0.0;
        let mut recon = ComplexMatrix::zeros(rho.dim(), rho.dim());
        for term in terms {
            if term.weight < 0.0 {
                return Err(Error::InvalidState(format!(
                    "negative decomposition weight {}",
                    term.weight
                )));
            }
            weight_sum += term.weight;
            let product = tensor_product(&term.a, &term.b, rho.dim())?;
            recon = recon.add(&product.scale(term.weight.into()))?;
        }
        if (weight_sum - 1.0).abs() > max_error {
            return Err(Error::InvalidState(format!(
                "decomposition weights sum to {weight_sum}, expected 1"
            )));
        }
        let err = recon.max_abs_diff(rho.matrix());
        if err > max_error {
            return Err(Error::InvalidState(format!(
                "separable decomposition reconstructs the state with error {err:.3e} > {max_error:.3e}"
            )));
        }
        Ok(())
    }
}
