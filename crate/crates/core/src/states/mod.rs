//! Constructors for the named states used throughout the crate, plus the
//! deterministic random-state samplers and the builtin-state registry the CLI
//! consumes.

mod certificate;
mod random;

pub use certificate::{SeparableTerm, StateCertificate};
pub(crate) use random::gaussian_matrix;
pub use random::{random_density, random_pure, random_separable, Seed};

use num_complex::Complex64;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, PureVector, QuantumState};

pub use crate::linalg::{reduce_all, Marginals};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// |ψ⁺⟩ = (1/√d) Σ |ii⟩ on d×d.
pub fn max_entangled(d: usize) -> Result<PureVector> {
    if d < 2 {
        return Err(Error::Usage(format!(
            "maximally entangled state needs d >= 2, got {d}"
        )));
    }
    let amp = re(1.0 / (d as f64).sqrt());
    let mut amps = vec![re(0.0); d * d];
    for i in 0..d {
        amps[i * d + i] = amp;
    }
    PureVector::new(amps, vec![d, d])
}

/// Two-qubit maximally entangled state (|00⟩+|11⟩)/√2.
pub fn bell() -> PureVector {
    max_entangled(2).expect("d=2 is valid")
}

/// (|000⟩+|111⟩)/√2 on three qubits.
pub fn ghz3() -> PureVector {
    let amp = re(1.0 / 2f64.sqrt());
    let mut amps = vec![re(0.0); 8];
    amps[0] = amp;
    amps[7] = amp;
    PureVector::new(amps, vec![2, 2, 2]).expect("unit norm by construction")
}

/// Every two-party marginal of the GHZ state is the diagonal mixture
/// ½(|00⟩⟨00| + |11⟩⟨11|); this is its explicit two-term product
/// decomposition, valid for each of the three cuts.
pub fn ghz3_cut_certificate() -> StateCertificate {
    let mut p0 = ComplexMatrix::zeros(2, 2);
    p0.set(0, 0, re(1.0));
    let mut p1 = ComplexMatrix::zeros(2, 2);
    p1.set(1, 1, re(1.0));
    StateCertificate::SeparableDecomposition(vec![
        SeparableTerm {
            weight: 0.5,
            a: p0.clone(),
            b: p0,
        },
        SeparableTerm {
            weight: 0.5,
            a: p1.clone(),
            b: p1,
        },
    ])
}

/// The totally antisymmetric three-qutrit state
/// (1/√6)(|012⟩−|102⟩−|021⟩+|201⟩+|120⟩−|210⟩).
pub fn antisymmetric_tripartite() -> PureVector {
    let amp = 1.0 / 6f64.sqrt();
    let mut amps = vec![re(0.0); 27];
    let idx = |a: usize, b: usize, c: usize| 9 * a + 3 * b + c;
    amps[idx(0, 1, 2)] = re(amp);
    amps[idx(1, 0, 2)] = re(-amp);
    amps[idx(0, 2, 1)] = re(-amp);
    amps[idx(2, 0, 1)] = re(amp);
    amps[idx(1, 2, 0)] = re(amp);
    amps[idx(2, 1, 0)] = re(-amp);
    PureVector::new(amps, vec![3, 3, 3]).expect("unit norm by construction")
}

/// The one-way distillable flower/locking state
/// ½|0⟩⟨0|⊗|ψ⁺⟩⟨ψ⁺| + ½|1⟩⟨1|⊗I/d², exposed on the A|C cut with A = A₁A₂
/// merged into a single subsystem of dimension 2d.
pub fn horodecki_locking(d: usize) -> Result<(QuantumState, StateCertificate)> {
    if d < 2 {
        return Err(Error::Usage(format!("locking state needs d >= 2, got {d}")));
    }
    let dd = d * d;
    let n = 2 * dd;
    let mut m = ComplexMatrix::zeros(n, n);
    // a1 = 0 block: ½ |ψ⁺⟩⟨ψ⁺| over (a2, c)
    let half_over_d = re(0.5 / d as f64);
    for a2 in 0..d {
        for a2p in 0..d {
            m.set(a2 * d + a2, a2p * d + a2p, half_over_d);
        }
    }
    // a1 = 1 block: ½ I / d²
    let mixed = re(0.5 / dd as f64);
    for k in 0..dd {
        m.set(dd + k, dd + k, mixed);
    }
    let rho = QuantumState::new(m, vec![2 * d, d])?;
    Ok((rho, StateCertificate::KnownOneWayDistillable))
}

/// Fine-grained view of the locking state with A split back into A₁ (qubit)
/// and A₂ (dimension d).
pub fn horodecki_locking_fine(d: usize) -> Result<QuantumState> {
    horodecki_locking(d)?.0.regroup(vec![2, d, d])
}

/// Purification of the locking state, relabeled so the purifying system sits
/// between A and C: dims (2d, d²+1, d) read as (A, B, C), making ρ_AC the
/// locking state itself.
pub fn locking_purification(d: usize, tol: &Tolerances) -> Result<PureVector> {
    let (rho_ac, _) = horodecki_locking(d)?;
    // purify appends the ancilla last: (A, C, anc) -> permute to (A, anc, C)
    rho_ac.purify(tol)?.permute_subsystems(&[0, 2, 1])
}

/// The five "Tiles" unextendible product-basis vectors on 3×3.
fn tiles_upb() -> [PureVector; 5] {
    let s = 1.0 / 2f64.sqrt();
    let mk = |entries: &[(usize, f64)]| {
        let mut amps = vec![re(0.0); 9];
        for &(i, v) in entries {
            amps[i] = re(v);
        }
        PureVector::new(amps, vec![3, 3]).expect("unit UPB vector")
    };
    let idx = |a: usize, b: usize| 3 * a + b;
    [
        mk(&[(idx(0, 0), s), (idx(0, 1), -s)]),
        mk(&[(idx(2, 1), s), (idx(2, 2), -s)]),
        mk(&[(idx(0, 2), s), (idx(1, 2), -s)]),
        mk(&[(idx(1, 0), s), (idx(2, 0), -s)]),
        mk(&[
            (idx(0, 0), 1.0 / 3.0),
            (idx(0, 1), 1.0 / 3.0),
            (idx(0, 2), 1.0 / 3.0),
            (idx(1, 0), 1.0 / 3.0),
            (idx(1, 1), 1.0 / 3.0),
            (idx(1, 2), 1.0 / 3.0),
            (idx(2, 0), 1.0 / 3.0),
            (idx(2, 1), 1.0 / 3.0),
            (idx(2, 2), 1.0 / 3.0),
        ]),
    ]
}

/// Normalized projector onto the complement of the Tiles unextendible product
/// basis: a 3×3 PPT state that is entangled by the UPB argument, hence the
/// `KnownEntangled` certificate.
pub fn tiles_bound_entangled() -> (QuantumState, StateCertificate) {
    let mut m = ComplexMatrix::identity(9);
    for u in tiles_upb() {
        let amps = u.amplitudes();
        for i in 0..9 {
            for j in 0..9 {
                let v = m.get(i, j) - amps[i] * amps[j].conj();
                m.set(i, j, v);
            }
        }
    }
    let rho = QuantumState::new(m.scale(re(0.25)), vec![3, 3]).expect("tiles state is valid");
    (rho, StateCertificate::KnownEntangled)
}

/// Bipartition of a tripartite state selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cut {
    AB,
    AC,
    BC,
}

impl Cut {
    pub fn keep(self) -> &'static [usize] {
        match self {
            Cut::AB => &[0, 1],
            Cut::AC => &[0, 2],
            Cut::BC => &[1, 2],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Cut::AB => "AB",
            Cut::AC => "AC",
            Cut::BC => "BC",
        }
    }
}

impl std::str::FromStr for Cut {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "AB" => Ok(Cut::AB),
            "AC" => Ok(Cut::AC),
            "BC" => Ok(Cut::BC),
            other => Err(Error::Usage(format!("unknown cut {other}; expected AB, AC or BC"))),
        }
    }
}

/// A named state from the builtin registry.
#[derive(Debug, Clone)]
pub enum BuiltinState {
    PureBipartite {
        psi: PureVector,
    },
    PureTripartite {
        psi: PureVector,
        /// Certificate valid for every two-party cut (or `None`).
        cut_certificate: StateCertificate,
    },
    MixedBipartite {
        rho: QuantumState,
        certificate: StateCertificate,
    },
}

/// Registry names accepted by `builtin`: `bell`, `maxent:d`, `ghz3`,
/// `locking:d`, `antisym3`, `tiles`.
pub fn builtin(name: &str) -> Result<BuiltinState> {
    let (base, arg) = match name.split_once(':') {
        Some((b, a)) => (b, Some(a)),
        None => (name, None),
    };
    let parse_d = |arg: Option<&str>| -> Result<usize> {
        let raw = arg.ok_or_else(|| Error::Usage(format!("{base} requires a dimension, e.g. {base}:2")))?;
        raw.parse::<usize>()
            .map_err(|_| Error::Usage(format!("invalid dimension {raw} in builtin name")))
    };
    match base {
        "bell" => Ok(BuiltinState::PureBipartite { psi: bell() }),
        "maxent" => Ok(BuiltinState::PureBipartite {
            psi: max_entangled(parse_d(arg)?)?,
        }),
        "ghz3" => Ok(BuiltinState::PureTripartite {
            psi: ghz3(),
            cut_certificate: ghz3_cut_certificate(),
        }),
        "antisym3" => Ok(BuiltinState::PureTripartite {
            psi: antisymmetric_tripartite(),
            cut_certificate: StateCertificate::None,
        }),
        "locking" => {
            let (rho, certificate) = horodecki_locking(parse_d(arg)?)?;
            Ok(BuiltinState::MixedBipartite { rho, certificate })
        }
        "tiles" => {
            let (rho, certificate) = tiles_bound_entangled();
            Ok(BuiltinState::MixedBipartite { rho, certificate })
        }
        other => Err(Error::Usage(format!(
            "unknown builtin {other}; expected bell, maxent:d, ghz3, locking:d, antisym3 or tiles"
        ))),
    }
}

impl BuiltinState {
    /// The bipartite state this builtin presents for classification under the
    /// given cut, with whatever certificate is known for it.
    pub fn bipartite_for_cut(&self, cut: Cut, tol: &Tolerances) -> Result<(QuantumState, StateCertificate)> {
        match self {
            BuiltinState::PureBipartite { psi } => {
                if cut != Cut::AB {
                    return Err(Error::Usage(
                        "bipartite builtins only expose the AB cut".into(),
                    ));
                }
                Ok((psi.projector(), StateCertificate::None))
            }
            BuiltinState::PureTripartite { psi, cut_certificate } => {
                let rho = psi.marginal(cut.keep(), tol)?;
                Ok((rho, cut_certificate.clone()))
            }
            BuiltinState::MixedBipartite { rho, certificate } => {
                if cut != Cut::AB {
                    return Err(Error::Usage(
                        "bipartite builtins only expose the AB cut".into(),
                    ));
                }
                Ok((rho.clone(), certificate.clone()))
            }
        }
    }

    /// The underlying tripartite vector, when there is one.
    pub fn tripartite(&self) -> Option<&PureVector> {
        match self {
            BuiltinState::PureTripartite { psi, .. } => Some(psi),
            _ => None,
        }
    }
}
