//! The verification sweeps behind `verify` and the ensemble scan behind
//! `sample`. Construction is fully determined by (suite, index, seed), so
//! identical invocations emit byte-identical JSONL.

use std::collections::BTreeMap;

use serde_json::json;

use entangle::cmoe::{
    verify_corollary1, verify_corollary3, verify_prop_sep_entropy, verify_theorem1,
    verify_theorem2, verify_theorem3, ConclusionStatus, HypothesisStatus, MarginalCerts,
    TheoremCheck,
};
use entangle::criteria::{chain_violations, classify, CriterionClass, VerdictValue};
use entangle::linalg::PureVector;
use entangle::states::{
    antisymmetric_tripartite, bell, builtin, ghz3, ghz3_cut_certificate, locking_purification,
    random_density, random_pure, random_separable, tiles_bound_entangled, Cut, Seed,
    StateCertificate,
};
use entangle::{Error, Result, Tolerances};

const THEOREM_SUITES: [&str; 6] = [
    "theorem1",
    "theorem2",
    "theorem3",
    "prop5",
    "corollary1",
    "corollary3",
];

pub fn cmd_verify(suite: &str, samples: usize, seed: u64, tol: &Tolerances) -> Result<bool> {
    if samples == 0 {
        return Err(Error::Usage("verify needs samples >= 1".into()));
    }
    let names: Vec<&str> = match suite {
        "all" => {
            let mut v = vec!["hierarchy"];
            v.extend(THEOREM_SUITES);
            v
        }
        "hierarchy" => vec!["hierarchy"],
        s if THEOREM_SUITES.contains(&s) => vec![s],
        other => {
            return Err(Error::Usage(format!(
                "unknown suite {other}; expected hierarchy, theorem1, theorem2, theorem3, prop5, corollary1, corollary3 or all"
            )))
        }
    };
    let mut ok = true;
    for name in names {
        ok &= if name == "hierarchy" {
            hierarchy_suite(samples, Seed(seed), tol)?
        } else {
            theorem_suite(name, samples, Seed(seed), tol)?
        };
    }
    Ok(ok)
}

/// Every builtin bipartite view the hierarchy sweep always includes.
fn builtin_entries(tol: &Tolerances) -> Result<Vec<(String, entangle::linalg::QuantumState, StateCertificate)>> {
    let mut entries = Vec::new();
    for name in ["bell", "maxent:3", "locking:2", "locking:3", "tiles"] {
        let (rho, cert) = builtin(name)?.bipartite_for_cut(Cut::AB, tol)?;
        entries.push((name.to_string(), rho, cert));
    }
    for name in ["ghz3", "antisym3"] {
        let state = builtin(name)?;
        for cut in [Cut::AB, Cut::AC, Cut::BC] {
            let (rho, cert) = state.bipartite_for_cut(cut, tol)?;
            entries.push((format!("{name}:{}", cut.name()), rho, cert));
        }
    }
    Ok(entries)
}

const RANDOM_DIMS: [(usize, usize); 3] = [(2, 2), (2, 3), (3, 3)];

fn random_entry(
    i: usize,
    seed: Seed,
    tol: &Tolerances,
) -> Result<(String, entangle::linalg::QuantumState, StateCertificate)> {
    let _ = tol;
    let (da, db) = RANDOM_DIMS[i % 3];
    let sample_seed = seed.derive(i as u64);
    if i % 2 == 0 {
        let dim = da * db;
        let rank = (i / 2) % dim + 1;
        let rho = random_density(dim, rank, sample_seed)?.regroup(vec![da, db])?;
        Ok((format!("density:{da}x{db}:r{rank}"), rho, StateCertificate::None))
    } else {
        let terms = (i / 2) % 4 + 1;
        let (rho, cert) = random_separable(da, db, terms, sample_seed)?;
        Ok((format!("separable:{da}x{db}:t{terms}"), rho, cert))
    }
}

fn hierarchy_suite(samples: usize, seed: Seed, tol: &Tolerances) -> Result<bool> {
    let mut total = 0usize;
    let mut chain_violation_count = 0usize;
    let mut consistency_errors = 0usize;

    let mut run_one = |label: String,
                       rho: entangle::linalg::QuantumState,
                       cert: StateCertificate|
     -> Result<()> {
        total += 1;
        match classify(&rho, &cert, tol) {
            Ok(report) => {
                let violations = chain_violations(&report);
                let ok = violations.is_empty();
                if !ok {
                    chain_violation_count += violations.len();
                }
                let mut verdicts = BTreeMap::new();
                for class in CriterionClass::ALL {
                    verdicts.insert(class.name(), format!("{:?}", report.value(class)));
                }
                println!(
                    "{}",
                    json!({
                        "suite": "hierarchy",
                        "source": label,
                        "dims": rho.dims(),
                        "verdicts": verdicts,
                        "chain_violations": violations,
                        "ok": ok,
                    })
                );
            }
            Err(Error::Consistency { class, direct, propagated }) => {
                consistency_errors += 1;
                println!(
                    "{}",
                    json!({
                        "suite": "hierarchy",
                        "source": label,
                        "dims": rho.dims(),
                        "consistency_error": { "class": class, "direct": direct, "propagated": propagated },
                        "ok": false,
                    })
                );
            }
            Err(other) => return Err(other),
        }
        Ok(())
    };

    for (label, rho, cert) in builtin_entries(tol)? {
        run_one(label, rho, cert)?;
    }
    for i in 0..samples {
        let (label, rho, cert) = random_entry(i, seed, tol)?;
        run_one(format!("{i}:{label}"), rho, cert)?;
    }

    let ok = chain_violation_count == 0 && consistency_errors == 0;
    println!(
        "{}",
        json!({
            "suite": "hierarchy",
            "summary": true,
            "total": total,
            "chain_violations": chain_violation_count,
            "consistency_errors": consistency_errors,
            "ok": ok,
        })
    );
    Ok(ok)
}

struct TriSample {
    label: String,
    psi: PureVector,
    certs: MarginalCerts,
}

/// Purification of a separable state, relabeled (A, ancilla, B) so that the
/// separable input sits on the AC cut.
fn separable_purification(da: usize, db: usize, terms: usize, seed: Seed, tol: &Tolerances) -> Result<TriSample> {
    let (rho, cert) = random_separable(da, db, terms, seed)?;
    let psi = rho.purify(tol)?.permute_subsystems(&[0, 2, 1])?;
    Ok(TriSample {
        label: format!("sep_purification:{da}x{db}:t{terms}"),
        psi,
        certs: MarginalCerts {
            ac: cert,
            ..MarginalCerts::default()
        },
    })
}

fn density_purification(da: usize, db: usize, rank: usize, seed: Seed, tol: &Tolerances) -> Result<TriSample> {
    let rho = random_density(da * db, rank, seed)?.regroup(vec![da, db])?;
    Ok(TriSample {
        label: format!("density_purification:{da}x{db}:r{rank}"),
        psi: rho.purify(tol)?,
        certs: MarginalCerts::default(),
    })
}

fn tiles_purification(tol: &Tolerances) -> Result<TriSample> {
    let (tiles, cert) = tiles_bound_entangled();
    Ok(TriSample {
        label: "tiles_purification".into(),
        psi: tiles.purify(tol)?,
        certs: MarginalCerts {
            ab: cert,
            ..MarginalCerts::default()
        },
    })
}

fn locking_sample(d: usize, tol: &Tolerances) -> Result<TriSample> {
    Ok(TriSample {
        label: format!("locking_purification:{d}"),
        psi: locking_purification(d, tol)?,
        certs: MarginalCerts {
            ac: StateCertificate::KnownOneWayDistillable,
            ..MarginalCerts::default()
        },
    })
}

fn ghz_sample() -> TriSample {
    TriSample {
        label: "ghz3".into(),
        psi: ghz3(),
        certs: MarginalCerts {
            ab: ghz3_cut_certificate(),
            ac: ghz3_cut_certificate(),
            bc: ghz3_cut_certificate(),
        },
    }
}

fn antisym_sample() -> TriSample {
    TriSample {
        label: "antisym3".into(),
        psi: antisymmetric_tripartite(),
        certs: MarginalCerts::default(),
    }
}

const PURE_DIMS: [[usize; 3]; 4] = [[2, 2, 2], [3, 2, 2], [2, 3, 2], [2, 2, 3]];
const SEP_DIMS: [(usize, usize); 3] = [(2, 2), (2, 3), (3, 2)];

/// Sample plan for theorem1/theorem2/prop5/corollary3: half guaranteed
/// non-vacuous separable purifications, the rest a mix of random pure states,
/// generic mixed purifications, and the builtin constructions.
fn collapse_sample(i: usize, seed: Seed, tol: &Tolerances) -> Result<TriSample> {
    let sample_seed = seed.derive(i as u64);
    match i % 4 {
        0 | 2 => {
            let (da, db) = SEP_DIMS[(i / 4) % 3];
            let terms = (i / 12) % 3 + 1;
            separable_purification(da, db, terms, sample_seed, tol)
        }
        1 => {
            let dims = PURE_DIMS[(i / 4) % 4];
            Ok(TriSample {
                label: format!("random_pure:{}x{}x{}", dims[0], dims[1], dims[2]),
                psi: random_pure(&dims, sample_seed)?,
                certs: MarginalCerts::default(),
            })
        }
        _ => match (i / 4) % 4 {
            0 => Ok(ghz_sample()),
            1 => Ok(antisym_sample()),
            2 => locking_sample(2, tol),
            _ => {
                let rank = (i / 16) % 4 + 1;
                density_purification(2, 2, rank, sample_seed, tol)
            }
        },
    }
}

/// Sample plan for theorem3: the tiles purification and the antisymmetric
/// state make both clauses non-vacuous; random inputs cover the rest.
fn theorem3_sample(i: usize, seed: Seed, tol: &Tolerances) -> Result<TriSample> {
    let sample_seed = seed.derive(i as u64);
    match i % 4 {
        0 => tiles_purification(tol),
        1 => Ok(antisym_sample()),
        2 => {
            let dims = PURE_DIMS[(i / 4) % 4];
            Ok(TriSample {
                label: format!("random_pure:{}x{}x{}", dims[0], dims[1], dims[2]),
                psi: random_pure(&dims, sample_seed)?,
                certs: MarginalCerts::default(),
            })
        }
        _ => {
            let rank = (i / 4) % 4 + 1;
            density_purification(2, 2, rank, sample_seed, tol)
        }
    }
}

fn theorem_suite(name: &str, samples: usize, seed: Seed, tol: &Tolerances) -> Result<bool> {
    let mut verified = 0usize;
    let mut violated = 0usize;
    let mut vacuous = 0usize;
    let mut undecidable = 0usize;
    let mut satisfied = 0usize;

    for i in 0..samples {
        let (label, check): (String, TheoremCheck) = if name == "corollary1" {
            let sample_seed = seed.derive(i as u64);
            let (label, rho, cert) = match i % 4 {
                0 => {
                    let (rho, cert) = tiles_bound_entangled();
                    ("tiles".to_string(), rho, cert)
                }
                1 => ("bell".to_string(), bell().projector(), StateCertificate::None),
                2 => {
                    let terms = (i / 4) % 3 + 1;
                    let (rho, cert) = random_separable(2, 2, terms, sample_seed)?;
                    (format!("separable:2x2:t{terms}"), rho, cert)
                }
                _ => {
                    let rank = (i / 4) % 9 + 1;
                    let rho = random_density(9, rank, sample_seed)?.regroup(vec![3, 3])?;
                    (format!("density:3x3:r{rank}"), rho, StateCertificate::None)
                }
            };
            (label, verify_corollary1(&rho, &cert, tol)?)
        } else {
            let sample = if name == "theorem3" {
                theorem3_sample(i, seed, tol)?
            } else {
                collapse_sample(i, seed, tol)?
            };
            let check = match name {
                "theorem1" => verify_theorem1(&sample.psi, &sample.certs, tol)?,
                "theorem2" => verify_theorem2(&sample.psi, &sample.certs, tol)?,
                "theorem3" => verify_theorem3(&sample.psi, &sample.certs, tol)?,
                "prop5" => verify_prop_sep_entropy(&sample.psi, &sample.certs, tol)?,
                "corollary3" => verify_corollary3(&sample.psi, &sample.certs, tol)?,
                other => return Err(Error::Usage(format!("unknown suite {other}"))),
            };
            (sample.label, check)
        };

        if check.hypothesis == HypothesisStatus::Satisfied {
            satisfied += 1;
        }
        match check.conclusion {
            ConclusionStatus::Verified => verified += 1,
            ConclusionStatus::Violated => violated += 1,
            ConclusionStatus::Vacuous => vacuous += 1,
            ConclusionStatus::Undecidable => undecidable += 1,
        }

        let mut line = json!({
            "suite": name,
            "index": i,
            "source": label,
            "hypothesis": check.hypothesis,
            "conclusion": check.conclusion,
        });
        if check.conclusion == ConclusionStatus::Violated {
            line["check"] = serde_json::to_value(&check)?;
        }
        println!("{line}");
    }

    let ok = violated == 0;
    println!(
        "{}",
        json!({
            "suite": name,
            "summary": true,
            "samples": samples,
            "verified": verified,
            "violated": violated,
            "vacuous": vacuous,
            "undecidable": undecidable,
            "hypothesis_satisfied": satisfied,
            "ok": ok,
        })
    );
    Ok(ok)
}

pub fn cmd_sample(dims: &[usize], samples: usize, seed: u64, ensemble: &str, tol: &Tolerances) -> Result<bool> {
    if dims.len() != 2 {
        return Err(Error::Usage(format!(
            "sample needs bipartite dims, got {dims:?}"
        )));
    }
    if samples == 0 {
        return Err(Error::Usage("sample needs samples >= 1".into()));
    }
    let (da, db) = (dims[0], dims[1]);
    let dim = da * db;
    if dim > tol.max_dim {
        return Err(Error::Dimension(format!(
            "total dimension {dim} exceeds the configured maximum {}",
            tol.max_dim
        )));
    }
    if !matches!(ensemble, "mixed" | "separable" | "density") {
        return Err(Error::Usage(format!(
            "unknown ensemble {ensemble}; expected mixed, separable or density"
        )));
    }

    let root = Seed(seed);
    let mut counts: BTreeMap<&str, [usize; 3]> = BTreeMap::new();
    for class in CriterionClass::ALL {
        counts.insert(class.name(), [0, 0, 0]);
    }

    for i in 0..samples {
        let sample_seed = root.derive(i as u64);
        let use_density = match ensemble {
            "separable" => false,
            "density" => true,
            _ => i % 2 == 0,
        };
        let (rho, cert) = if use_density {
            let rank = (i / 2) % dim + 1;
            (
                random_density(dim, rank, sample_seed)?.regroup(vec![da, db])?,
                StateCertificate::None,
            )
        } else {
            let terms = (i / 2) % 4 + 1;
            random_separable(da, db, terms, sample_seed)?
        };
        let report = classify(&rho, &cert, tol)?;
        for class in CriterionClass::ALL {
            let slot = counts.get_mut(class.name()).expect("all classes present");
            match report.value(class) {
                VerdictValue::Yes => slot[0] += 1,
                VerdictValue::No => slot[1] += 1,
                VerdictValue::Unknown => slot[2] += 1,
            }
        }
    }

    let mut fractions = serde_json::Map::new();
    for (class, [yes, no, unknown]) in &counts {
        fractions.insert(
            class.to_string(),
            json!({
                "yes": *yes as f64 / samples as f64,
                "no": *no as f64 / samples as f64,
                "unknown": *unknown as f64 / samples as f64,
            }),
        );
    }
    println!(
        "{}",
        json!({
            "schema": "entangle-hierarchy/sample/v1",
            "dims": dims,
            "samples": samples,
            "seed": seed,
            "ensemble": ensemble,
            "fractions": fractions,
        })
    );
    Ok(true)
}
