//! The nine separability-criterion classifiers as three-valued verdicts with
//! machine-readable witnesses, plus propagation along the implication chains
//!
//!   SEP ⇒ PPT ⇒ UND ⇒ RED ⇒ MAJ ⇒ CEN
//!   SEP ⇒ PPT ⇒ UND ⇒ UND→ ⇒ CEN→
//!
//! Membership in UND (and hence SEP) is not decidable in general, so Unknown
//! is a first-class verdict and is never silently coerced.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_spectrum, majorizes, tensor_product, ComplexMatrix, QuantumState, Spectrum,
};
use crate::states::StateCertificate;

pub const REPORT_SCHEMA: &str = "entangle-hierarchy/report/v1";

/// The nine classes of the hierarchy. `CenLeft` compares the joint entropy
/// against the first marginal, `CenRight` against the second; `UndOneWay` is
/// one-way undistillability with classical communication from the first
/// subsystem to the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriterionClass {
    Sep,
    Ppt,
    Und,
    UndOneWay,
    Red,
    Maj,
    Cen,
    CenLeft,
    CenRight,
}

impl CriterionClass {
    pub const ALL: [CriterionClass; 9] = [
        CriterionClass::Sep,
        CriterionClass::Ppt,
        CriterionClass::Und,
        CriterionClass::UndOneWay,
        CriterionClass::Red,
        CriterionClass::Maj,
        CriterionClass::Cen,
        CriterionClass::CenLeft,
        CriterionClass::CenRight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CriterionClass::Sep => "SEP",
            CriterionClass::Ppt => "PPT",
            CriterionClass::Und => "UND",
            CriterionClass::UndOneWay => "UND_ONEWAY",
            CriterionClass::Red => "RED",
            CriterionClass::Maj => "MAJ",
            CriterionClass::Cen => "CEN",
            CriterionClass::CenLeft => "CEN_LEFT",
            CriterionClass::CenRight => "CEN_RIGHT",
        }
    }

    fn index(self) -> usize {
        Self::ALL.iter().position(|&c| c == self).expect("member of ALL")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictValue {
    Yes,
    No,
    Unknown,
}

/// Numeric record backing a verdict.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    MinEigenvalue { value: f64 },
    EntropyGap { gap: f64 },
    EntropyGaps { left: f64, right: f64 },
    RankPair { joint: usize, max_marginal: usize },
    MajorizationMargin { margin: f64 },
    ViolatedPrefix { side: String, prefix: usize, deficit: f64 },
    CoherentInformation { value: f64, direction: String },
    Certificate { kind: String },
    Chain { from: String },
    RulesTried { rules: Vec<String> },
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub value: VerdictValue,
    pub witness: Witness,
    /// Which rule fired: `direct:*`, `chain:*`, `certificate:*`,
    /// `propagation:*` or `unknown:*`.
    pub provenance: String,
}

impl Verdict {
    fn new(value: VerdictValue, witness: Witness, provenance: &str) -> Self {
        Verdict {
            value,
            witness,
            provenance: provenance.to_string(),
        }
    }
}

/// Shared numerics for one bipartite state: spectra, entropies, ranks, and
/// the minimum eigenvalues of the partial transpose and the two reduction
/// operators.
struct Numerics {
    dims: [usize; 2],
    spec_joint: Spectrum,
    spec_a: Spectrum,
    spec_b: Spectrum,
    s_joint: f64,
    s_a: f64,
    s_b: f64,
    rank_joint: usize,
    rank_a: usize,
    rank_b: usize,
    pt_min: f64,
    red_min_left: f64,
    red_min_right: f64,
}

impl Numerics {
    fn compute(rho: &QuantumState, tol: &Tolerances) -> Result<Numerics> {
        if !rho.is_bipartite() {
            return Err(Error::Usage(format!(
                "classification requires a bipartite state, got {} subsystems",
                rho.num_subsystems()
            )));
        }
        let dims = [rho.dims()[0], rho.dims()[1]];
        let a = rho.partial_trace(&[0], tol)?;
        let b = rho.partial_trace(&[1], tol)?;
        let spec_joint = rho.spectrum(tol)?;
        let spec_a = a.spectrum(tol)?;
        let spec_b = b.spectrum(tol)?;

        let pt = rho.partial_transpose(1)?;
        let pt_min = hermitian_spectrum(&pt, tol)?.min();

        let left_op = tensor_product(a.matrix(), &ComplexMatrix::identity(dims[1]), tol.max_dim)?
            .sub(rho.matrix())?;
        let right_op = tensor_product(&ComplexMatrix::identity(dims[0]), b.matrix(), tol.max_dim)?
            .sub(rho.matrix())?;
        let red_min_left = hermitian_spectrum(&left_op, tol)?.min();
        let red_min_right = hermitian_spectrum(&right_op, tol)?.min();

        Ok(Numerics {
            dims,
            s_joint: spec_joint.entropy_bits(tol),
            s_a: spec_a.entropy_bits(tol),
            s_b: spec_b.entropy_bits(tol),
            rank_joint: spec_joint.rank(tol),
            rank_a: spec_a.rank(tol),
            rank_b: spec_b.rank(tol),
            spec_joint,
            spec_a,
            spec_b,
            pt_min,
            red_min_left,
            red_min_right,
        })
    }

    fn max_marginal_rank(&self) -> usize {
        self.rank_a.max(self.rank_b)
    }

    /// −S(A|B) = S(B) − S(AB), the one-way hashing rate A→B.
    fn coherent_a_to_b(&self) -> f64 {
        self.s_b - self.s_joint
    }

    fn coherent_b_to_a(&self) -> f64 {
        self.s_a - self.s_joint
    }
}

fn ppt_verdict(n: &Numerics, tol: &Tolerances) -> Verdict {
    let value = if n.pt_min >= -tol.psd {
        VerdictValue::Yes
    } else {
        VerdictValue::No
    };
    Verdict::new(
        value,
        Witness::MinEigenvalue { value: n.pt_min },
        "direct:ppt_min_eigenvalue",
    )
}

fn red_verdict(n: &Numerics, tol: &Tolerances) -> Verdict {
    let min = n.red_min_left.min(n.red_min_right);
    let value = if min >= -tol.psd {
        VerdictValue::Yes
    } else {
        VerdictValue::No
    };
    Verdict::new(
        value,
        Witness::MinEigenvalue { value: min },
        "direct:reduction_operators",
    )
}

fn maj_verdict(n: &Numerics, tol: &Tolerances) -> Verdict {
    let a = majorizes(&n.spec_a, &n.spec_joint, tol);
    if !a.holds {
        return Verdict::new(
            VerdictValue::No,
            Witness::ViolatedPrefix {
                side: "a".into(),
                prefix: a.violated_prefix.unwrap_or(0),
                deficit: -a.margin,
            },
            "direct:majorization",
        );
    }
    let b = majorizes(&n.spec_b, &n.spec_joint, tol);
    if !b.holds {
        return Verdict::new(
            VerdictValue::No,
            Witness::ViolatedPrefix {
                side: "b".into(),
                prefix: b.violated_prefix.unwrap_or(0),
                deficit: -b.margin,
            },
            "direct:majorization",
        );
    }
    Verdict::new(
        VerdictValue::Yes,
        Witness::MajorizationMargin {
            margin: a.margin.min(b.margin),
        },
        "direct:majorization",
    )
}

fn cen_verdicts(n: &Numerics, tol: &Tolerances) -> (Verdict, Verdict, Verdict) {
    let left_gap = n.s_joint - n.s_a;
    let right_gap = n.s_joint - n.s_b;
    let decide = |gap: f64| {
        if gap >= -tol.ent {
            VerdictValue::Yes
        } else {
            VerdictValue::No
        }
    };
    let left = Verdict::new(
        decide(left_gap),
        Witness::EntropyGap { gap: left_gap },
        "direct:entropy_comparison",
    );
    let right = Verdict::new(
        decide(right_gap),
        Witness::EntropyGap { gap: right_gap },
        "direct:entropy_comparison",
    );
    let both = if left.value == VerdictValue::Yes && right.value == VerdictValue::Yes {
        VerdictValue::Yes
    } else {
        VerdictValue::No
    };
    let cen = Verdict::new(
        both,
        Witness::EntropyGaps {
            left: left_gap,
            right: right_gap,
        },
        "direct:entropy_conjunction",
    );
    (left, right, cen)
}

fn und_verdict(n: &Numerics, cert: &StateCertificate, ppt: &Verdict, tol: &Tolerances) -> Verdict {
    if ppt.value == VerdictValue::Yes {
        return Verdict::new(VerdictValue::Yes, ppt.witness.clone(), "chain:ppt_implies_und");
    }
    let max_marginal = n.max_marginal_rank();
    if n.rank_joint < max_marginal {
        return Verdict::new(
            VerdictValue::No,
            Witness::RankPair {
                joint: n.rank_joint,
                max_marginal,
            },
            "direct:rank_deficit",
        );
    }
    let ic_ab = n.coherent_a_to_b();
    if ic_ab > tol.ent {
        return Verdict::new(
            VerdictValue::No,
            Witness::CoherentInformation {
                value: ic_ab,
                direction: "a_to_b".into(),
            },
            "direct:hashing_bound",
        );
    }
    let ic_ba = n.coherent_b_to_a();
    if ic_ba > tol.ent {
        return Verdict::new(
            VerdictValue::No,
            Witness::CoherentInformation {
                value: ic_ba,
                direction: "b_to_a".into(),
            },
            "direct:hashing_bound",
        );
    }
    // An NPT state whose rank matches the largest marginal rank cannot be
    // undistillable: undistillability plus rank equality would force
    // separability, contradicting the negative partial transpose.
    if ppt.value == VerdictValue::No && n.rank_joint == max_marginal {
        return Verdict::new(
            VerdictValue::No,
            Witness::RankPair {
                joint: n.rank_joint,
                max_marginal,
            },
            "direct:prop4_contradiction",
        );
    }
    if matches!(cert, StateCertificate::KnownOneWayDistillable) {
        return Verdict::new(
            VerdictValue::No,
            Witness::Certificate {
                kind: cert.kind_name().into(),
            },
            "certificate:known_one_way_distillable",
        );
    }
    Verdict::new(
        VerdictValue::Unknown,
        Witness::RulesTried {
            rules: vec![
                "ppt_chain".into(),
                "rank_deficit".into(),
                "hashing_bound".into(),
                "prop4_contradiction".into(),
                "certificate".into(),
            ],
        },
        "unknown:rules_exhausted",
    )
}

fn und_oneway_verdict(
    n: &Numerics,
    cert: &StateCertificate,
    und: &Verdict,
    tol: &Tolerances,
) -> Verdict {
    if und.value == VerdictValue::Yes {
        return Verdict::new(
            VerdictValue::Yes,
            Witness::Chain { from: "UND".into() },
            "chain:und_implies_und_oneway",
        );
    }
    let ic_ab = n.coherent_a_to_b();
    if ic_ab > tol.ent {
        return Verdict::new(
            VerdictValue::No,
            Witness::CoherentInformation {
                value: ic_ab,
                direction: "a_to_b".into(),
            },
            "direct:hashing_bound_oneway",
        );
    }
    if matches!(cert, StateCertificate::KnownOneWayDistillable) {
        return Verdict::new(
            VerdictValue::No,
            Witness::Certificate {
                kind: cert.kind_name().into(),
            },
            "certificate:known_one_way_distillable",
        );
    }
    Verdict::new(
        VerdictValue::Unknown,
        Witness::RulesTried {
            rules: vec![
                "und_chain".into(),
                "hashing_bound_oneway".into(),
                "certificate".into(),
            ],
        },
        "unknown:rules_exhausted",
    )
}

fn sep_verdict(
    n: &Numerics,
    cert: &StateCertificate,
    ppt: &Verdict,
    und: &Verdict,
    tol: &Tolerances,
) -> Verdict {
    let _ = tol;
    if matches!(cert, StateCertificate::SeparableDecomposition(_)) {
        return Verdict::new(
            VerdictValue::Yes,
            Witness::Certificate {
                kind: cert.kind_name().into(),
            },
            "certificate:separable_decomposition",
        );
    }
    let (lo, hi) = (n.dims[0].min(n.dims[1]), n.dims[0].max(n.dims[1]));
    if ppt.value == VerdictValue::Yes && lo == 2 && hi <= 3 {
        return Verdict::new(
            VerdictValue::Yes,
            Witness::MinEigenvalue { value: n.pt_min },
            "direct:ppt_sufficient_low_dim",
        );
    }
    if und.value == VerdictValue::Yes && n.rank_joint == n.max_marginal_rank() {
        return Verdict::new(
            VerdictValue::Yes,
            Witness::RankPair {
                joint: n.rank_joint,
                max_marginal: n.max_marginal_rank(),
            },
            "direct:prop4_rank_equality",
        );
    }
    if ppt.value == VerdictValue::No {
        return Verdict::new(
            VerdictValue::No,
            Witness::MinEigenvalue { value: n.pt_min },
            "direct:ppt_violation",
        );
    }
    if matches!(cert, StateCertificate::KnownEntangled) {
        return Verdict::new(
            VerdictValue::No,
            Witness::Certificate {
                kind: cert.kind_name().into(),
            },
            "certificate:known_entangled",
        );
    }
    Verdict::new(
        VerdictValue::Unknown,
        Witness::RulesTried {
            rules: vec![
                "certificate".into(),
                "ppt_sufficient_low_dim".into(),
                "prop4_rank_equality".into(),
                "ppt_violation".into(),
            ],
        },
        "unknown:rules_exhausted",
    )
}

/// Positivity of the partial transpose; never Unknown.
pub fn check_ppt(rho: &QuantumState, tol: &Tolerances) -> Result<Verdict> {
    Ok(ppt_verdict(&Numerics::compute(rho, tol)?, tol))
}

/// Reduction criterion ρ_A⊗I ⪰ ρ and I⊗ρ_B ⪰ ρ; never Unknown.
pub fn check_red(rho: &QuantumState, tol: &Tolerances) -> Result<Verdict> {
    Ok(red_verdict(&Numerics::compute(rho, tol)?, tol))
}

/// Majorization criterion: both marginal spectra majorize the joint spectrum.
pub fn check_maj(rho: &QuantumState, tol: &Tolerances) -> Result<Verdict> {
    Ok(maj_verdict(&Numerics::compute(rho, tol)?, tol))
}

/// Conditional-entropy verdicts (left, right, conjunction).
pub struct CenVerdicts {
    pub left: Verdict,
    pub right: Verdict,
    pub both: Verdict,
}

pub fn check_cen(rho: &QuantumState, tol: &Tolerances) -> Result<CenVerdicts> {
    let n = Numerics::compute(rho, tol)?;
    let (left, right, both) = cen_verdicts(&n, tol);
    Ok(CenVerdicts { left, right, both })
}

/// Undistillability: Yes only through PPT; No through the rank certificate,
/// the hashing bound in either direction, the rank-equality contradiction, or
/// a distillability certificate; otherwise Unknown.
pub fn check_und(rho: &QuantumState, cert: &StateCertificate, tol: &Tolerances) -> Result<Verdict> {
    let n = Numerics::compute(rho, tol)?;
    let ppt = ppt_verdict(&n, tol);
    Ok(und_verdict(&n, cert, &ppt, tol))
}

/// One-way undistillability with respect to A→B.
pub fn check_und_oneway(
    rho: &QuantumState,
    cert: &StateCertificate,
    tol: &Tolerances,
) -> Result<Verdict> {
    let n = Numerics::compute(rho, tol)?;
    let ppt = ppt_verdict(&n, tol);
    let und = und_verdict(&n, cert, &ppt, tol);
    Ok(und_oneway_verdict(&n, cert, &und, tol))
}

/// Separability.
pub fn check_sep(rho: &QuantumState, cert: &StateCertificate, tol: &Tolerances) -> Result<Verdict> {
    let n = Numerics::compute(rho, tol)?;
    let ppt = ppt_verdict(&n, tol);
    let und = und_verdict(&n, cert, &ppt, tol);
    Ok(sep_verdict(&n, cert, &ppt, &und, tol))
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportSpectra {
    pub joint: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportEntropies {
    pub joint: f64,
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportRanks {
    pub joint: usize,
    pub a: usize,
    pub b: usize,
}

/// All nine verdicts for one bipartite state plus the raw numerics and the
/// propagation trace. Serialized key order is lexicographic, so identical
/// inputs produce byte-identical JSON.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub schema: String,
    pub dims: Vec<usize>,
    pub verdicts: BTreeMap<String, Verdict>,
    pub spectra: ReportSpectra,
    pub entropies: ReportEntropies,
    pub ranks: ReportRanks,
    pub propagation: Vec<String>,
}

impl ClassificationReport {
    pub fn verdict(&self, class: CriterionClass) -> &Verdict {
        &self.verdicts[class.name()]
    }

    pub fn value(&self, class: CriterionClass) -> VerdictValue {
        self.verdict(class).value
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// The implication edges of the two chains, plus the definitional edges from
/// the conjunction CEN to its two halves.
const EDGES: [(CriterionClass, CriterionClass); 9] = [
    (CriterionClass::Sep, CriterionClass::Ppt),
    (CriterionClass::Ppt, CriterionClass::Und),
    (CriterionClass::Und, CriterionClass::Red),
    (CriterionClass::Red, CriterionClass::Maj),
    (CriterionClass::Maj, CriterionClass::Cen),
    (CriterionClass::Und, CriterionClass::UndOneWay),
    (CriterionClass::UndOneWay, CriterionClass::CenRight),
    (CriterionClass::Cen, CriterionClass::CenLeft),
    (CriterionClass::Cen, CriterionClass::CenRight),
];

fn set_propagated(
    verdicts: &mut [Verdict; 9],
    trace: &mut Vec<String>,
    target: CriterionClass,
    value: VerdictValue,
    reason: &str,
) -> Result<bool> {
    let current = &verdicts[target.index()];
    if current.value == value {
        return Ok(false);
    }
    if current.value != VerdictValue::Unknown {
        return Err(Error::Consistency {
            class: target.name().to_string(),
            direct: serde_json::to_string(current)?,
            propagated: format!("{value:?} via {reason}"),
        });
    }
    let from = reason.to_string();
    verdicts[target.index()] = Verdict::new(
        value,
        Witness::Chain { from: from.clone() },
        &format!("propagation:{from}"),
    );
    trace.push(format!("{}: Unknown -> {:?} ({})", target.name(), value, reason));
    Ok(true)
}

fn propagate(verdicts: &mut [Verdict; 9], trace: &mut Vec<String>) -> Result<()> {
    loop {
        let mut changed = false;
        for &(x, y) in &EDGES {
            let vx = verdicts[x.index()].value;
            let vy = verdicts[y.index()].value;
            if vx == VerdictValue::Yes && vy != VerdictValue::Yes {
                changed |= set_propagated(
                    verdicts,
                    trace,
                    y,
                    VerdictValue::Yes,
                    &format!("{}=Yes", x.name()),
                )?;
            }
            let vy = verdicts[y.index()].value;
            if vy == VerdictValue::No && verdicts[x.index()].value != VerdictValue::No {
                changed |= set_propagated(
                    verdicts,
                    trace,
                    x,
                    VerdictValue::No,
                    &format!("{}=No", y.name()),
                )?;
            }
        }
        // conjunction upward: CEN = CEN_LEFT ∧ CEN_RIGHT
        let left = verdicts[CriterionClass::CenLeft.index()].value;
        let right = verdicts[CriterionClass::CenRight.index()].value;
        let cen = verdicts[CriterionClass::Cen.index()].value;
        if left == VerdictValue::Yes && right == VerdictValue::Yes && cen != VerdictValue::Yes {
            changed |= set_propagated(
                verdicts,
                trace,
                CriterionClass::Cen,
                VerdictValue::Yes,
                "CEN_LEFT=Yes,CEN_RIGHT=Yes",
            )?;
        }
        if (left == VerdictValue::No || right == VerdictValue::No) && cen != VerdictValue::No {
            changed |= set_propagated(
                verdicts,
                trace,
                CriterionClass::Cen,
                VerdictValue::No,
                "CEN_LEFT/CEN_RIGHT=No",
            )?;
        }
        if !changed {
            return Ok(());
        }
    }
}

/// Run all nine checks and propagate. A contradiction between a direct
/// verdict and a propagated one aborts with [`Error::Consistency`].
pub fn classify(
    rho: &QuantumState,
    cert: &StateCertificate,
    tol: &Tolerances,
) -> Result<ClassificationReport> {
    let n = Numerics::compute(rho, tol)?;
    let ppt = ppt_verdict(&n, tol);
    let red = red_verdict(&n, tol);
    let maj = maj_verdict(&n, tol);
    let (cen_left, cen_right, cen) = cen_verdicts(&n, tol);
    let und = und_verdict(&n, cert, &ppt, tol);
    let und_oneway = und_oneway_verdict(&n, cert, &und, tol);
    let sep = sep_verdict(&n, cert, &ppt, &und, tol);

    let mut verdicts = [sep, ppt, und, und_oneway, red, maj, cen, cen_left, cen_right];
    let mut trace = Vec::new();
    propagate(&mut verdicts, &mut trace)?;

    let mut map = BTreeMap::new();
    for (class, verdict) in CriterionClass::ALL.iter().zip(verdicts.into_iter()) {
        map.insert(class.name().to_string(), verdict);
    }

    Ok(ClassificationReport {
        schema: REPORT_SCHEMA.to_string(),
        dims: rho.dims().to_vec(),
        verdicts: map,
        spectra: ReportSpectra {
            joint: n.spec_joint.values().to_vec(),
            a: n.spec_a.values().to_vec(),
            b: n.spec_b.values().to_vec(),
        },
        entropies: ReportEntropies {
            joint: n.s_joint,
            a: n.s_a,
            b: n.s_b,
        },
        ranks: ReportRanks {
            joint: n.rank_joint,
            a: n.rank_a,
            b: n.rank_b,
        },
        propagation: trace,
    })
}

/// Re-check the implication chains on a finished report. Returns one line per
/// violated edge; empty on every sound report. This is the oracle the sweep
/// suites and the acceptance tests run over every classified state.
pub fn chain_violations(report: &ClassificationReport) -> Vec<String> {
    let mut violations = Vec::new();
    for &(x, y) in &EDGES {
        if report.value(x) == VerdictValue::Yes && report.value(y) == VerdictValue::No {
            violations.push(format!("{} = Yes but {} = No", x.name(), y.name()));
        }
    }
    let left = report.value(CriterionClass::CenLeft);
    let right = report.value(CriterionClass::CenRight);
    let cen = report.value(CriterionClass::Cen);
    let expected = if left == VerdictValue::Yes && right == VerdictValue::Yes {
        VerdictValue::Yes
    } else if left == VerdictValue::No || right == VerdictValue::No {
        VerdictValue::No
    } else {
        VerdictValue::Unknown
    };
    if cen != expected {
        violations.push(format!(
            "CEN = {cen:?} but CEN_LEFT ∧ CEN_RIGHT = {expected:?}"
        ));
    }
    violations
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{
        antisymmetric_tripartite, bell, ghz3, horodecki_locking, locking_purification,
        random_density, random_separable, reduce_all, tiles_bound_entangled, Seed,
    };

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn none() -> StateCertificate {
        StateCertificate::None
    }

    fn bell_state() -> QuantumState {
        bell().projector()
    }

    #[test]
    fn ppt_examples() {
        let (sep, _) = random_separable(2, 2, 3, Seed(1)).unwrap();
        assert_eq!(check_ppt(&sep, &tol()).unwrap().value, VerdictValue::Yes);

        let v = check_ppt(&bell_state(), &tol()).unwrap();
        assert_eq!(v.value, VerdictValue::No);
        match v.witness {
            Witness::MinEigenvalue { value } => assert!((value + 0.5).abs() < 1e-12),
            ref w => panic!("unexpected witness {w:?}"),
        }

        let psi = antisymmetric_tripartite();
        let rho_ab = psi.marginal(&[0, 1], &tol()).unwrap();
        let v = check_ppt(&rho_ab, &tol()).unwrap();
        assert_eq!(v.value, VerdictValue::No);
        match v.witness {
            Witness::MinEigenvalue { value } => assert!((value + 1.0 / 3.0).abs() < 1e-12),
            ref w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn red_examples() {
        let uniform = QuantumState::new(
            ComplexMatrix::identity(4).scale(num_complex::Complex64::new(0.25, 0.0)),
            vec![2, 2],
        )
        .unwrap();
        assert_eq!(check_red(&uniform, &tol()).unwrap().value, VerdictValue::Yes);

        let psi = antisymmetric_tripartite();
        let rho_ab = psi.marginal(&[0, 1], &tol()).unwrap();
        assert_eq!(check_red(&rho_ab, &tol()).unwrap().value, VerdictValue::Yes);

        let v = check_red(&bell_state(), &tol()).unwrap();
        assert_eq!(v.value, VerdictValue::No);
        match v.witness {
            Witness::MinEigenvalue { value } => assert!((value + 0.5).abs() < 1e-12),
            ref w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn maj_examples() {
        let (sep, _) = random_separable(2, 3, 2, Seed(2)).unwrap();
        assert_eq!(check_maj(&sep, &tol()).unwrap().value, VerdictValue::Yes);

        assert_eq!(check_maj(&bell_state(), &tol()).unwrap().value, VerdictValue::No);

        let (locking, _) = horodecki_locking(2).unwrap();
        let v = check_maj(&locking, &tol()).unwrap();
        assert_eq!(v.value, VerdictValue::No);
    }

    #[test]
    fn cen_examples() {
        let (locking, _) = horodecki_locking(2).unwrap();
        let cen = check_cen(&locking, &tol()).unwrap();
        assert_eq!(cen.right.value, VerdictValue::Yes);
        assert_eq!(cen.left.value, VerdictValue::Yes);
        match cen.right.witness {
            Witness::EntropyGap { gap } => assert!((gap - 1.0).abs() < 1e-9),
            ref w => panic!("unexpected witness {w:?}"),
        }
        match cen.left.witness {
            Witness::EntropyGap { gap } => assert!(gap.abs() < 1e-9),
            ref w => panic!("unexpected witness {w:?}"),
        }

        let cen = check_cen(&bell_state(), &tol()).unwrap();
        assert_eq!(cen.left.value, VerdictValue::No);
        assert_eq!(cen.right.value, VerdictValue::No);
        assert_eq!(cen.both.value, VerdictValue::No);
    }

    #[test]
    fn und_examples() {
        let (tiles, _) = tiles_bound_entangled();
        assert_eq!(check_und(&tiles, &none(), &tol()).unwrap().value, VerdictValue::Yes);

        let v = check_und(&bell_state(), &none(), &tol()).unwrap();
        assert_eq!(v.value, VerdictValue::No);

        // the complement of the locking state in its purification: distillable
        // by the rank certificate, rank d < max{2d, d²+1}
        let psi = locking_purification(2, &tol()).unwrap();
        let m = reduce_all(&psi, &tol()).unwrap();
        let v = check_und(&m.ab, &none(), &tol()).unwrap();
        assert_eq!(v.value, VerdictValue::No);
        match v.witness {
            Witness::RankPair { joint, max_marginal } => {
                assert_eq!(joint, 2);
                assert_eq!(max_marginal, 5);
            }
            ref w => panic!("unexpected witness {w:?}"),
        }
        assert_eq!(v.provenance, "direct:rank_deficit");
    }

    #[test]
    fn und_oneway_examples() {
        let (locking, cert) = horodecki_locking(2).unwrap();
        let v = check_und_oneway(&locking, &cert, &tol()).unwrap();
        assert_eq!(v.value, VerdictValue::No);
        assert_eq!(v.provenance, "certificate:known_one_way_distillable");

        assert_eq!(
            check_und_oneway(&bell_state(), &none(), &tol()).unwrap().value,
            VerdictValue::No
        );

        let psi = antisymmetric_tripartite();
        let rho_ab = psi.marginal(&[0, 1], &tol()).unwrap();
        assert_eq!(
            check_und_oneway(&rho_ab, &none(), &tol()).unwrap().value,
            VerdictValue::Unknown
        );
    }

    #[test]
    fn sep_examples() {
        let ghz_ab = ghz3().marginal(&[0, 1], &tol()).unwrap();
        let v = check_sep(&ghz_ab, &none(), &tol()).unwrap();
        assert_eq!(v.value, VerdictValue::Yes);
        assert_eq!(v.provenance, "direct:ppt_sufficient_low_dim");

        let (tiles, cert) = tiles_bound_entangled();
        assert_eq!(check_sep(&tiles, &none(), &tol()).unwrap().value, VerdictValue::Unknown);
        let v = check_sep(&tiles, &cert, &tol()).unwrap();
        assert_eq!(v.value, VerdictValue::No);
        assert_eq!(v.provenance, "certificate:known_entangled");

        let psi = antisymmetric_tripartite();
        let rho_ab = psi.marginal(&[0, 1], &tol()).unwrap();
        assert_eq!(check_sep(&rho_ab, &none(), &tol()).unwrap().value, VerdictValue::No);
    }

    #[test]
    fn classify_separable_sample_is_all_yes() {
        let (sep, cert) = random_separable(2, 2, 3, Seed(4)).unwrap();
        let report = classify(&sep, &cert, &tol()).unwrap();
        for class in CriterionClass::ALL {
            assert_eq!(report.value(class), VerdictValue::Yes, "{}", class.name());
        }
        assert!(chain_violations(&report).is_empty());
    }

    #[test]
    fn classify_bell_is_all_no() {
        let report = classify(&bell_state(), &none(), &tol()).unwrap();
        for class in CriterionClass::ALL {
            assert_eq!(report.value(class), VerdictValue::No, "{}", class.name());
        }
        assert!(chain_violations(&report).is_empty());
    }

    #[test]
    fn classify_antisymmetric_marginal() {
        let psi = antisymmetric_tripartite();
        let rho_ab = psi.marginal(&[0, 1], &tol()).unwrap();
        let report = classify(&rho_ab, &none(), &tol()).unwrap();
        assert_eq!(report.value(CriterionClass::Sep), VerdictValue::No);
        assert_eq!(report.value(CriterionClass::Ppt), VerdictValue::No);
        assert_eq!(report.value(CriterionClass::Und), VerdictValue::No);
        assert_eq!(report.verdict(CriterionClass::Und).provenance, "direct:prop4_contradiction");
        assert_eq!(report.value(CriterionClass::UndOneWay), VerdictValue::Unknown);
        assert_eq!(report.value(CriterionClass::Red), VerdictValue::Yes);
        assert_eq!(report.value(CriterionClass::Maj), VerdictValue::Yes);
        assert_eq!(report.value(CriterionClass::Cen), VerdictValue::Yes);
        assert!(chain_violations(&report).is_empty());
    }

    #[test]
    fn certificates_only_resolve_unknowns() {
        let (tiles, cert) = tiles_bound_entangled();
        let without = classify(&tiles, &none(), &tol()).unwrap();
        let with = classify(&tiles, &cert, &tol()).unwrap();
        for class in CriterionClass::ALL {
            let (a, b) = (without.value(class), with.value(class));
            if a != VerdictValue::Unknown {
                assert_eq!(a, b, "certificate flipped {}", class.name());
            }
        }
        assert_eq!(without.value(CriterionClass::Sep), VerdictValue::Unknown);
        assert_eq!(with.value(CriterionClass::Sep), VerdictValue::No);
    }

    #[test]
    fn chain_soundness_over_random_states() {
        let mut checked = 0;
        for i in 0..120u64 {
            let dims = [(2, 2), (2, 3), (3, 3)][(i % 3) as usize];
            let dim = dims.0 * dims.1;
            let rank = (i as usize % dim) + 1;
            let rho = random_density(dim, rank, Seed(100).derive(i))
                .unwrap()
                .regroup(vec![dims.0, dims.1])
                .unwrap();
            let report = classify(&rho, &none(), &tol()).unwrap();
            assert!(chain_violations(&report).is_empty(), "sample {i}");
            checked += 1;
        }
        assert_eq!(checked, 120);
    }
}
