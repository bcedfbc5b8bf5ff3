use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, PureVector, QuantumState};
use crate::states::certificate::{SeparableTerm, StateCertificate};

/// Seed for the deterministic samplers. Derived seeds make batch sampling
/// reproducible regardless of evaluation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed(pub u64);

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

impl Seed {
    /// Per-sample seed: hash(seed, index).
    pub fn derive(self, index: u64) -> Seed {
        Seed(splitmix64(self.0 ^ splitmix64(index.wrapping_add(1))))
    }

    pub(crate) fn rng(self) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(self.0)
    }
}

fn complex_gaussian(rng: &mut ChaCha12Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

/// Row-major matrix of i.i.d. standard complex Gaussians.
pub(crate) fn gaussian_matrix(rows: usize, cols: usize, seed: Seed) -> ComplexMatrix {
    let mut rng = seed.rng();
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(&mut rng))
}

/// Haar-distributed unit vector: i.i.d. standard complex Gaussian amplitudes,
/// normalized.
pub fn random_pure(dims: &[usize], seed: Seed) -> Result<PureVector> {
    let total: usize = dims.iter().product();
    if dims.is_empty() || total < 2 {
        return Err(Error::Usage(format!(
            "random_pure needs total dimension >= 2, got dims {dims:?}"
        )));
    }
    let mut rng = seed.rng();
    let mut amps: Vec<Complex64> = (0..total).map(|_| complex_gaussian(&mut rng)).collect();
    let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut amps {
        *z /= norm;
    }
    PureVector::new(amps, dims.to_vec())
}

/// GG†/Tr(GG†) with G a dim×rank complex Ginibre matrix; the result has the
/// requested rank with probability one.
pub fn random_density(dim: usize, rank: usize, seed: Seed) -> Result<QuantumState> {
    if rank == 0 || rank > dim {
        return Err(Error::Usage(format!(
            "rank {rank} out of range 1..={dim}"
        )));
    }
    let g = gaussian_matrix(dim, rank, seed);
    let gram = g.matmul(&g.adjoint())?;
    let trace = gram.trace().re;
    QuantumState::new(gram.scale(Complex64::new(1.0 / trace, 0.0)), vec![dim])
}

/// Convex mixture of random pure product states with Dirichlet(1,..,1)
/// weights, together with the explicit decomposition certificate.
pub fn random_separable(
    dim_a: usize,
    dim_b: usize,
    terms: usize,
    seed: Seed,
) -> Result<(QuantumState, StateCertificate)> {
    if terms == 0 {
        return Err(Error::Usage("random_separable needs terms >= 1".into()));
    }
    if dim_a < 1 || dim_b < 1 {
        return Err(Error::Usage("subsystem dimensions must be >= 1".into()));
    }
    let mut rng = seed.rng();

    // Dirichlet-uniform weights via normalized exponentials.
    let mut weights: Vec<f64> = (0..terms)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }

    let dim = dim_a * dim_b;
    let mut matrix = ComplexMatrix::zeros(dim, dim);
    let mut cert_terms = Vec::with_capacity(terms);
    for &weight in &weights {
        let a = random_unit(dim_a, &mut rng);
        let b = random_unit(dim_b, &mut rng);
        let pa = projector_of(&a);
        let pb = projector_of(&b);
        for i in 0..dim_a {
            for j in 0..dim_a {
                let aij = a[i] * a[j].conj() * weight;
                if aij.norm_sqr() == 0.0 {
                    continue;
                }
                for k in 0..dim_b {
                    for l in 0..dim_b {
                        matrix.add_to(i * dim_b + k, j * dim_b + l, aij * b[k] * b[l].conj());
                    }
                }
            }
        }
        cert_terms.push(SeparableTerm { weight, a: pa, b: pb });
    }

    let state = QuantumState::new(matrix, vec![dim_a, dim_b])?;
    let cert = StateCertificate::SeparableDecomposition(cert_terms);
    cert.validate_against(&state, 1e-12)?;
    Ok((state, cert))
}

fn random_unit(dim: usize, rng: &mut ChaCha12Rng) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= norm;
    }
    v
}

fn projector_of(v: &[Complex64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(v.len(), v.len(), |r, c| v[r] * v[c].conj())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_spectrum;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn random_pure_is_deterministic_and_normalized() {
        let a = random_pure(&[2, 3], Seed(7)).unwrap();
        let b = random_pure(&[2, 3], Seed(7)).unwrap();
        assert_eq!(a.amplitudes(), b.amplitudes());
        assert!((a.norm() - 1.0).abs() < 1e-12);
        let c = random_pure(&[2, 3], Seed(8)).unwrap();
        assert!(a.max_abs_diff(&c) > 1e-3);
    }

    #[test]
    fn random_pure_rejects_trivial_dimension() {
        assert!(random_pure(&[1], Seed(0)).is_err());
    }

    #[test]
    fn tripartite_pure_marginal_spectra_match() {
        let psi = random_pure(&[2, 2, 2], Seed(11)).unwrap();
        let ab = psi.marginal(&[0, 1], &tol()).unwrap();
        let c = psi.marginal(&[2], &tol()).unwrap();
        let sab = ab.spectrum(&tol()).unwrap();
        let sc = c.spectrum(&tol()).unwrap();
        assert!(sab.sup_distance(&sc) < 1e-10);
    }

    #[test]
    fn random_density_rank_and_purity() {
        let pure = random_density(4, 1, Seed(3)).unwrap();
        assert!(pure.entropy_bits(&tol()).unwrap() < 1e-9);
        assert_eq!(pure.rank(&tol()).unwrap(), 1);

        let full = random_density(4, 4, Seed(3)).unwrap();
        assert_eq!(full.rank(&tol()).unwrap(), 4);

        let again = random_density(4, 4, Seed(3)).unwrap();
        assert_eq!(full.matrix().entries(), again.matrix().entries());
    }

    #[test]
    fn random_density_rejects_bad_rank() {
        assert!(random_density(3, 0, Seed(0)).is_err());
        assert!(random_density(3, 4, Seed(0)).is_err());
    }

    #[test]
    fn random_separable_certificate_reconstructs() {
        let (state, cert) = random_separable(2, 3, 4, Seed(5)).unwrap();
        cert.validate_against(&state, 1e-12).unwrap();
        // single product term stays PPT trivially: spectrum of the partial
        // transpose of a product state equals the state's spectrum
        let (product, _) = random_separable(2, 2, 1, Seed(9)).unwrap();
        let pt = product.partial_transpose(1).unwrap();
        let spec = hermitian_spectrum(&pt, &tol()).unwrap();
        assert!(spec.min() > -1e-10);
    }

    #[test]
    fn seeds_do_not_collide_over_hundred_draws() {
        let mut firsts = std::collections::HashSet::new();
        for s in 0..100u64 {
            let psi = random_pure(&[2, 2], Seed(0).derive(s)).unwrap();
            let key = format!("{:.15e}", psi.amplitudes()[0].re);
            assert!(firsts.insert(key), "seed collision at {s}");
        }
    }
}
