//! Checkers for the hierarchical-collapse statements on tripartite pure
//! states: when one two-party marginal is weakly entangled (undistillable, or
//! merely with non-negative conditional entropy), the complementary marginal's
//! verdicts must collapse into a single consistent class.
//!
//! Every checker separates hypothesis from conclusion. A hypothesis that does
//! not hold makes the conclusion `Vacuous`; a hypothesis resting on an Unknown
//! verdict makes it `Undecidable` rather than guessing. `Violated` never
//! occurs on sound inputs and is treated by the suites as a build-breaking
//! bug, so it always carries a full replay record.

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Tolerances;
use crate::criteria::{classify, ClassificationReport, CriterionClass, VerdictValue};
use crate::error::Result;
use crate::linalg::{reduce_all, Marginals, PureVector, QuantumState};
use crate::states::StateCertificate;

pub const CHECK_SCHEMA: &str = "entangle-hierarchy/check/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HypothesisStatus {
    Satisfied,
    NotSatisfied,
    Undecidable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConclusionStatus {
    Verified,
    Violated,
    Vacuous,
    Undecidable,
}

/// Result of evaluating one theorem on one input.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremCheck {
    pub schema: String,
    pub theorem: String,
    pub hypothesis: HypothesisStatus,
    pub conclusion: ConclusionStatus,
    pub evidence: Value,
}

impl TheoremCheck {
    fn new(theorem: &str, hypothesis: HypothesisStatus, conclusion: ConclusionStatus, evidence: Value) -> Self {
        TheoremCheck {
            schema: CHECK_SCHEMA.to_string(),
            theorem: theorem.to_string(),
            hypothesis,
            conclusion,
            evidence,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("check serializes")
    }
}

/// Certificates known for the three two-party marginals of a tripartite state.
#[derive(Debug, Clone, Default)]
pub struct MarginalCerts {
    pub ab: StateCertificate,
    pub ac: StateCertificate,
    pub bc: StateCertificate,
}

fn verdict_summary(report: &ClassificationReport) -> Value {
    let mut map = serde_json::Map::new();
    for class in CriterionClass::ALL {
        map.insert(
            class.name().to_string(),
            json!(format!("{:?}", report.value(class))),
        );
    }
    Value::Object(map)
}

/// Full record for a Violated status: enough to replay the run.
fn replay_record(psi: &PureVector, reports: &[(&str, &ClassificationReport)]) -> Value {
    let re: Vec<f64> = psi.amplitudes().iter().map(|z| z.re).collect();
    let im: Vec<f64> = psi.amplitudes().iter().map(|z| z.im).collect();
    let mut reports_map = serde_json::Map::new();
    for (name, report) in reports {
        reports_map.insert(name.to_string(), serde_json::to_value(report).unwrap_or(Value::Null));
    }
    json!({
        "state": { "dims": psi.dims(), "re": re, "im": im, "kind": "pure" },
        "reports": Value::Object(reports_map),
    })
}

fn hypothesis_from(v: VerdictValue) -> HypothesisStatus {
    match v {
        VerdictValue::Yes => HypothesisStatus::Satisfied,
        VerdictValue::No => HypothesisStatus::NotSatisfied,
        VerdictValue::Unknown => HypothesisStatus::Undecidable,
    }
}

/// "No Yes coexists with a No": the strongest equivalence claim testable with
/// Unknown verdicts in play.
fn pairwise_consistent(report: &ClassificationReport, classes: &[CriterionClass]) -> bool {
    let values: Vec<VerdictValue> = classes.iter().map(|&c| report.value(c)).collect();
    let any_yes = values.iter().any(|&v| v == VerdictValue::Yes);
    let any_no = values.iter().any(|&v| v == VerdictValue::No);
    !(any_yes && any_no)
}

fn and3(a: VerdictValue, b: VerdictValue) -> VerdictValue {
    use VerdictValue::*;
    match (a, b) {
        (No, _) | (_, No) => No,
        (Yes, Yes) => Yes,
        _ => Unknown,
    }
}

fn or3(a: VerdictValue, b: VerdictValue) -> VerdictValue {
    use VerdictValue::*;
    match (a, b) {
        (Yes, _) | (_, Yes) => Yes,
        (No, No) => No,
        _ => Unknown,
    }
}

struct TripartiteRun {
    marginals: Marginals,
    report_ab: ClassificationReport,
    report_ac: ClassificationReport,
}

impl TripartiteRun {
    fn new(psi: &PureVector, certs: &MarginalCerts, tol: &Tolerances) -> Result<Self> {
        let marginals = reduce_all(psi, tol)?;
        let report_ab = classify(&marginals.ab, &certs.ab, tol)?;
        let report_ac = classify(&marginals.ac, &certs.ac, tol)?;
        Ok(TripartiteRun {
            marginals,
            report_ab,
            report_ac,
        })
    }
}

/// Collapse of the full hierarchy on ρ_AB when ρ_AC is undistillable: the
/// eight verdicts SEP, PPT, UND, UND→, RED, MAJ, CEN, CEN→ must agree.
///
/// When CEN→(ρ_AB) holds the proof forces S(ρ_C) = S(ρ_AC), isospectrality of
/// ρ_C and ρ_AC, and equality of their ranks; the checker replays those steps.
pub fn verify_theorem1(psi: &PureVector, certs: &MarginalCerts, tol: &Tolerances) -> Result<TheoremCheck> {
    const CLASSES: [CriterionClass; 8] = [
        CriterionClass::Sep,
        CriterionClass::Ppt,
        CriterionClass::Und,
        CriterionClass::UndOneWay,
        CriterionClass::Red,
        CriterionClass::Maj,
        CriterionClass::Cen,
        CriterionClass::CenRight,
    ];
    let run = TripartiteRun::new(psi, certs, tol)?;
    let hyp_verdict = run.report_ac.value(CriterionClass::Und);
    let hypothesis = hypothesis_from(hyp_verdict);

    // restricted runs: PPT(ρ_AC) hypothesis reproduces the original collapse
    // statement, UND(ρ_AC) the distillability-based one
    let mut covers = vec!["theorem1"];
    if hypothesis == HypothesisStatus::Satisfied {
        covers.push("prop3");
        if run.report_ac.value(CriterionClass::Ppt) == VerdictValue::Yes {
            covers.push("prop1");
        }
    }

    let mut evidence = json!({
        "covers": covers,
        "hypothesis_verdict": format!("{hyp_verdict:?}"),
        "verdicts_ab": verdict_summary(&run.report_ab),
        "verdicts_ac": verdict_summary(&run.report_ac),
    });

    if hypothesis != HypothesisStatus::Satisfied {
        return Ok(TheoremCheck::new("theorem1", hypothesis, ConclusionStatus::Vacuous, evidence));
    }

    let consistent = pairwise_consistent(&run.report_ab, &CLASSES);
    let mut violated = !consistent;
    if run.report_ab.value(CriterionClass::CenRight) == VerdictValue::Yes {
        let s_c = run.marginals.c.entropy_bits(tol)?;
        let s_ac = run.marginals.ac.entropy_bits(tol)?;
        let spec_c = run.marginals.c.spectrum(tol)?;
        let spec_ac = run.marginals.ac.spectrum(tol)?;
        let iso_residual = spec_c.sup_distance(&spec_ac);
        let rank_c = spec_c.rank(tol);
        let rank_ac = spec_ac.rank(tol);
        let entropy_ok = (s_c - s_ac).abs() <= tol.ent;
        let iso_ok = iso_residual <= tol.eig;
        let rank_ok = rank_c == rank_ac;
        evidence["replay"] = json!({
            "s_c": s_c,
            "s_ac": s_ac,
            "isospectrality_residual": iso_residual,
            "rank_c": rank_c,
            "rank_ac": rank_ac,
            "entropy_ok": entropy_ok,
            "isospectral_ok": iso_ok,
            "rank_ok": rank_ok,
        });
        violated |= !(entropy_ok && iso_ok && rank_ok);
    }

    let conclusion = if violated {
        evidence["violation"] = replay_record(psi, &[("ab", &run.report_ab), ("ac", &run.report_ac)]);
        ConclusionStatus::Violated
    } else {
        ConclusionStatus::Verified
    };
    Ok(TheoremCheck::new("theorem1", hypothesis, conclusion, evidence))
}

/// Collapse of SEP/PPT/UND on ρ_AB when ρ_AC has non-negative conditional
/// entropy toward C. When UND(ρ_AB) holds the proof forces S(ρ_B) = S(ρ_AB),
/// rank(ρ_AB) = rank(ρ_B), and a separability verdict.
pub fn verify_theorem2(psi: &PureVector, certs: &MarginalCerts, tol: &Tolerances) -> Result<TheoremCheck> {
    const CLASSES: [CriterionClass; 3] = [CriterionClass::Sep, CriterionClass::Ppt, CriterionClass::Und];
    let run = TripartiteRun::new(psi, certs, tol)?;
    let hyp_verdict = run.report_ac.value(CriterionClass::CenRight);
    let hypothesis = hypothesis_from(hyp_verdict);

    let mut covers = vec!["theorem2"];
    if hypothesis == HypothesisStatus::Satisfied
        && run.report_ac.value(CriterionClass::UndOneWay) == VerdictValue::Yes
    {
        covers.push("prop2");
    }

    let mut evidence = json!({
        "covers": covers,
        "hypothesis_verdict": format!("{hyp_verdict:?}"),
        "verdicts_ab": verdict_summary(&run.report_ab),
        "verdicts_ac": verdict_summary(&run.report_ac),
    });

    if hypothesis != HypothesisStatus::Satisfied {
        return Ok(TheoremCheck::new("theorem2", hypothesis, ConclusionStatus::Vacuous, evidence));
    }

    let mut violated = !pairwise_consistent(&run.report_ab, &CLASSES);
    if run.report_ab.value(CriterionClass::Und) == VerdictValue::Yes {
        let s_b = run.marginals.b.entropy_bits(tol)?;
        let s_ab = run.marginals.ab.entropy_bits(tol)?;
        let rank_ab = run.marginals.ab.rank(tol)?;
        let rank_b = run.marginals.b.rank(tol)?;
        let sep_ab = run.report_ab.value(CriterionClass::Sep);
        let entropy_ok = (s_b - s_ab).abs() <= tol.ent;
        let rank_ok = rank_ab == rank_b;
        let sep_ok = sep_ab == VerdictValue::Yes;
        evidence["replay"] = json!({
            "s_b": s_b,
            "s_ab": s_ab,
            "rank_ab": rank_ab,
            "rank_b": rank_b,
            "sep_verdict": format!("{sep_ab:?}"),
            "entropy_ok": entropy_ok,
            "rank_ok": rank_ok,
            "sep_resolved_yes": sep_ok,
        });
        violated |= !(entropy_ok && rank_ok && sep_ok);
    }

    let conclusion = if violated {
        evidence["violation"] = replay_record(psi, &[("ab", &run.report_ab), ("ac", &run.report_ac)]);
        ConclusionStatus::Violated
    } else {
        ConclusionStatus::Verified
    };
    Ok(TheoremCheck::new("theorem2", hypothesis, conclusion, evidence))
}

/// When ρ_AC is separable, ρ_AB is separable exactly when S(ρ_AB) = S(ρ_B).
pub fn verify_prop_sep_entropy(psi: &PureVector, certs: &MarginalCerts, tol: &Tolerances) -> Result<TheoremCheck> {
    let run = TripartiteRun::new(psi, certs, tol)?;
    let hyp_verdict = run.report_ac.value(CriterionClass::Sep);
    let hypothesis = hypothesis_from(hyp_verdict);

    let s_b = run.marginals.b.entropy_bits(tol)?;
    let s_ab = run.marginals.ab.entropy_bits(tol)?;
    let sep_ab = run.report_ab.value(CriterionClass::Sep);
    let entropies_equal = (s_ab - s_b).abs() <= tol.ent;

    let mut evidence = json!({
        "covers": ["prop5"],
        "hypothesis_verdict": format!("{hyp_verdict:?}"),
        "s_ab": s_ab,
        "s_b": s_b,
        "entropies_equal": entropies_equal,
        "sep_ab": format!("{sep_ab:?}"),
        "verdicts_ab": verdict_summary(&run.report_ab),
    });

    if hypothesis != HypothesisStatus::Satisfied {
        return Ok(TheoremCheck::new("prop5", hypothesis, ConclusionStatus::Vacuous, evidence));
    }
    let conclusion = match sep_ab {
        VerdictValue::Unknown => ConclusionStatus::Undecidable,
        VerdictValue::Yes if entropies_equal => ConclusionStatus::Verified,
        VerdictValue::No if !entropies_equal => ConclusionStatus::Verified,
        _ => {
            evidence["violation"] = replay_record(psi, &[("ab", &run.report_ab), ("ac", &run.report_ac)]);
            ConclusionStatus::Violated
        }
    };
    Ok(TheoremCheck::new("prop5", hypothesis, conclusion, evidence))
}

/// The maximal-extension summary, for states whose AC and BC marginals are
/// both entangled: (i) CEN→(ρ_AB) forces both complements distillable;
/// (ii) UND(ρ_AB) forces both complements one-way distillable.
pub fn verify_theorem3(psi: &PureVector, certs: &MarginalCerts, tol: &Tolerances) -> Result<TheoremCheck> {
    let run = TripartiteRun::new(psi, certs, tol)?;
    let report_bc = classify(&run.marginals.bc, &certs.bc, tol)?;

    let sep_ac = run.report_ac.value(CriterionClass::Sep);
    let sep_bc = report_bc.value(CriterionClass::Sep);
    let outer = match (sep_ac, sep_bc) {
        (VerdictValue::No, VerdictValue::No) => HypothesisStatus::Satisfied,
        (VerdictValue::Yes, _) | (_, VerdictValue::Yes) => HypothesisStatus::NotSatisfied,
        _ => HypothesisStatus::Undecidable,
    };

    // clause status given its inner hypothesis verdict and the two conclusion
    // verdicts that must read No
    let clause = |inner: VerdictValue, c1: VerdictValue, c2: VerdictValue| -> &'static str {
        match inner {
            VerdictValue::No => "vacuous",
            VerdictValue::Unknown => "undecidable",
            VerdictValue::Yes => {
                if c1 == VerdictValue::Yes || c2 == VerdictValue::Yes {
                    "violated"
                } else if c1 == VerdictValue::No && c2 == VerdictValue::No {
                    "verified"
                } else {
                    "undecidable"
                }
            }
        }
    };

    let cen_ab = run.report_ab.value(CriterionClass::CenRight);
    let und_ac = run.report_ac.value(CriterionClass::Und);
    let und_bc = report_bc.value(CriterionClass::Und);
    let clause_i = clause(cen_ab, und_ac, und_bc);

    let und_ab = run.report_ab.value(CriterionClass::Und);
    let ow_ac = run.report_ac.value(CriterionClass::UndOneWay);
    let ow_bc = report_bc.value(CriterionClass::UndOneWay);
    let clause_ii = clause(und_ab, ow_ac, ow_bc);

    let mut evidence = json!({
        "covers": ["theorem3"],
        "sep_ac": format!("{sep_ac:?}"),
        "sep_bc": format!("{sep_bc:?}"),
        "clauses": {
            "i": {
                "hypothesis_cen_right_ab": format!("{cen_ab:?}"),
                "und_ac": format!("{und_ac:?}"),
                "und_bc": format!("{und_bc:?}"),
                "status": clause_i,
            },
            "ii": {
                "hypothesis_und_ab": format!("{und_ab:?}"),
                "und_oneway_ac": format!("{ow_ac:?}"),
                "und_oneway_bc": format!("{ow_bc:?}"),
                "status": clause_ii,
            },
        },
        "verdicts_ab": verdict_summary(&run.report_ab),
    });

    if outer != HypothesisStatus::Satisfied {
        return Ok(TheoremCheck::new("theorem3", outer, ConclusionStatus::Vacuous, evidence));
    }
    let conclusion = if clause_i == "violated" || clause_ii == "violated" {
        evidence["violation"] = replay_record(
            psi,
            &[("ab", &run.report_ab), ("ac", &run.report_ac), ("bc", &report_bc)],
        );
        ConclusionStatus::Violated
    } else if clause_i == "undecidable" || clause_ii == "undecidable" {
        ConclusionStatus::Undecidable
    } else {
        ConclusionStatus::Verified
    };
    Ok(TheoremCheck::new("theorem3", outer, conclusion, evidence))
}

/// Bound entanglement forces negative conditional entropy toward the
/// purifying system: for PPT-entangled ρ_AB, S(A|C) < 0 on any purification.
pub fn verify_corollary1(rho_ab: &QuantumState, cert: &StateCertificate, tol: &Tolerances) -> Result<TheoremCheck> {
    let report = classify(rho_ab, cert, tol)?;
    let ppt = report.value(CriterionClass::Ppt);
    let sep = report.value(CriterionClass::Sep);
    let hypothesis = match (ppt, sep) {
        (VerdictValue::Yes, VerdictValue::No) => HypothesisStatus::Satisfied,
        (VerdictValue::No, _) | (_, VerdictValue::Yes) => HypothesisStatus::NotSatisfied,
        _ => HypothesisStatus::Undecidable,
    };

    let mut evidence = json!({
        "covers": ["corollary1"],
        "ppt": format!("{ppt:?}"),
        "sep": format!("{sep:?}"),
    });
    if hypothesis != HypothesisStatus::Satisfied {
        return Ok(TheoremCheck::new("corollary1", hypothesis, ConclusionStatus::Vacuous, evidence));
    }

    let psi = rho_ab.purify(tol)?; // dims (A, B, C) with C the purifying system
    let s_ac = psi.marginal(&[0, 2], tol)?.entropy_bits(tol)?;
    let s_c = psi.marginal(&[2], tol)?.entropy_bits(tol)?;
    let conditional = s_ac - s_c;
    evidence["s_conditional_a_given_c"] = json!(conditional);
    evidence["s_ac"] = json!(s_ac);
    evidence["s_c"] = json!(s_c);

    let conclusion = if conditional < -tol.ent {
        ConclusionStatus::Verified
    } else {
        evidence["violation"] = replay_record(&psi, &[("ab", &report)]);
        ConclusionStatus::Violated
    };
    Ok(TheoremCheck::new("corollary1", hypothesis, conclusion, evidence))
}

/// Five-way equivalence between joint membership patterns of ρ_AB and ρ_AC.
/// Verified when no decidable condition disagrees with another.
pub fn verify_corollary3(psi: &PureVector, certs: &MarginalCerts, tol: &Tolerances) -> Result<TheoremCheck> {
    let run = TripartiteRun::new(psi, certs, tol)?;
    let ab = &run.report_ab;
    let ac = &run.report_ac;
    let v = |r: &ClassificationReport, c: CriterionClass| r.value(c);
    use CriterionClass::*;

    let conditions = [
        and3(v(ab, Sep), v(ac, Sep)),
        and3(v(ab, Ppt), v(ac, Ppt)),
        and3(v(ab, Und), v(ac, Und)),
        or3(
            and3(v(ab, Und), v(ac, UndOneWay)),
            and3(v(ab, UndOneWay), v(ac, Und)),
        ),
        or3(
            and3(v(ab, Und), v(ac, CenRight)),
            and3(v(ab, CenRight), v(ac, Und)),
        ),
    ];

    let any_yes = conditions.iter().any(|&c| c == VerdictValue::Yes);
    let any_no = conditions.iter().any(|&c| c == VerdictValue::No);
    let consistent = !(any_yes && any_no);

    let mut evidence = json!({
        "covers": ["corollary3"],
        "conditions": conditions.iter().map(|c| format!("{c:?}")).collect::<Vec<_>>(),
        "verdicts_ab": verdict_summary(ab),
        "verdicts_ac": verdict_summary(ac),
    });

    let conclusion = if consistent {
        ConclusionStatus::Verified
    } else {
        evidence["violation"] = replay_record(psi, &[("ab", ab), ("ac", ac)]);
        ConclusionStatus::Violated
    };
    Ok(TheoremCheck::new(
        "corollary3",
        HypothesisStatus::Satisfied,
        conclusion,
        evidence,
    ))
}
