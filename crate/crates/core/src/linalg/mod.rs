//! Dense complex-matrix primitives shared by every other module: tensor
//! products, partial trace and transpose, Hermitian spectra, entropy,
//! majorization, numerical rank, and purification.

mod eigen;
mod matrix;
mod spectrum;
mod state;

pub use eigen::{hermitian_eigen, hermitian_spectrum, EigenDecomposition};
pub use matrix::{tensor_product, ComplexMatrix};
pub use num_complex::Complex64;
pub use spectrum::{majorizes, MajorizationCheck, Spectrum};
pub use state::{reduce_all, Marginals, PureVector, QuantumState};
