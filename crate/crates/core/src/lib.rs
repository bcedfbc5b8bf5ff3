//! Classification of bipartite quantum states against the nine-class
//! entanglement hierarchy (separability, PPT, distillability, reduction,
//! majorization, and conditional-entropy criteria), numerical checkers for
//! the hierarchical-collapse theorems on tripartite pure states, and a small
//! quantum-channel layer built on the same machinery.
//!
//! Everything operates on dense complex matrices at desk scale (total
//! dimension capped at 4096 by default). All values are immutable after
//! construction and every operation is a pure function, so the crate is safe
//! to use from concurrent contexts without coordination.

pub mod channels;
pub mod cmoe;
pub mod config;
pub mod criteria;
pub mod error;
pub mod linalg;
pub mod states;

pub use config::Tolerances;
pub use error::{Error, Result};
