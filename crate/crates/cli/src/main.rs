mod demo;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use entangle::criteria::classify;
use entangle::linalg::{Complex64, ComplexMatrix, PureVector, QuantumState};
use entangle::states::{builtin, Cut, StateCertificate};
use entangle::{Error, Result, Tolerances};

/// Classify bipartite states against the entanglement hierarchy, verify the
/// collapse theorems on tripartite pure states, and reproduce the worked
/// examples.
#[derive(Parser)]
#[command(name = "entangle", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Tolerance overrides, exposed so boundary sensitivity can be probed from
/// the command line.
#[derive(Args, Clone)]
struct TolArgs {
    #[arg(long = "tol.herm", value_name = "V")]
    tol_herm: Option<f64>,
    #[arg(long = "tol.psd", value_name = "V")]
    tol_psd: Option<f64>,
    #[arg(long = "tol.trace", value_name = "V")]
    tol_trace: Option<f64>,
    #[arg(long = "tol.eig", value_name = "V")]
    tol_eig: Option<f64>,
    #[arg(long = "tol.rank", value_name = "V")]
    tol_rank: Option<f64>,
    #[arg(long = "tol.maj", value_name = "V")]
    tol_maj: Option<f64>,
    #[arg(long = "tol.ent", value_name = "V")]
    tol_ent: Option<f64>,
}

impl TolArgs {
    fn build(&self) -> Result<Tolerances> {
        let mut tol = Tolerances::default();
        for (name, value) in [
            ("herm", self.tol_herm),
            ("psd", self.tol_psd),
            ("trace", self.tol_trace),
            ("eig", self.tol_eig),
            ("rank", self.tol_rank),
            ("maj", self.tol_maj),
            ("ent", self.tol_ent),
        ] {
            if let Some(v) = value {
                tol.set(name, v)?;
            }
        }
        Ok(tol)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit the nine-verdict classification report for one state as JSON.
    Classify {
        /// Builtin state name: bell, maxent:d, ghz3, locking:d, antisym3, tiles.
        #[arg(long, conflicts_with = "state")]
        builtin: Option<String>,
        /// Path to a JSON state file with dims, re, im and optional kind.
        #[arg(long)]
        state: Option<PathBuf>,
        /// Bipartition of a tripartite state: AB, AC or BC.
        #[arg(long, default_value = "AB")]
        cut: String,
        /// Override the subsystem grouping of a loaded state, e.g. 2,3.
        #[arg(long)]
        dims: Option<String>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Run a verification suite and emit one JSONL record per run.
    Verify {
        /// hierarchy, theorem1, theorem2, theorem3, prop5, corollary1,
        /// corollary3, or all.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Reproduce the worked-example table and check every printed constant.
    Demo {
        /// Emit the table as JSON instead of text.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Classify a seeded random ensemble and report verdict fractions.
    Sample {
        /// Bipartite dimensions, e.g. 2,2.
        #[arg(long)]
        dims: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// mixed (default), separable, or density.
        #[arg(long, default_value = "mixed")]
        ensemble: String,
        #[command(flatten)]
        tol: TolArgs,
    },
}

/// JSON state file: row-major re/im arrays over `dims`, `kind` one of
/// "density" (default for square lengths) or "pure".
#[derive(Deserialize)]
struct StateFile {
    dims: Vec<usize>,
    re: Vec<f64>,
    im: Vec<f64>,
    kind: Option<String>,
}

enum LoadedState {
    Density(QuantumState),
    Pure(PureVector),
}

fn parse_dims(spec: &str) -> Result<Vec<usize>> {
    spec.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Error::Usage(format!("invalid dimension list {spec}")))
        })
        .collect()
}

fn load_state_file(path: &PathBuf, dims_override: Option<Vec<usize>>, tol: &Tolerances) -> Result<LoadedState> {
    let data = std::fs::read_to_string(path)?;
    let file: StateFile = serde_json::from_str(&data)?;
    if file.re.len() != file.im.len() {
        return Err(Error::InvalidState("re and im arrays differ in length".into()));
    }
    let dims = dims_override.unwrap_or(file.dims);
    let total: usize = dims.iter().product();
    let entries: Vec<Complex64> = file
        .re
        .iter()
        .zip(file.im.iter())
        .map(|(&re, &im)| Complex64::new(re, im))
        .collect();
    let kind = match file.kind.as_deref() {
        Some(k) => k.to_string(),
        None if entries.len() == total * total => "density".to_string(),
        None if entries.len() == total => "pure".to_string(),
        None => {
            return Err(Error::InvalidState(format!(
                "array length {} matches neither a vector nor a matrix over dims {dims:?}",
                entries.len()
            )))
        }
    };
    match kind.as_str() {
        "density" => {
            let matrix = ComplexMatrix::new(total, total, entries)?;
            Ok(LoadedState::Density(QuantumState::with_tolerances(matrix, dims, tol)?))
        }
        "pure" => Ok(LoadedState::Pure(PureVector::with_tolerances(entries, dims, tol)?)),
        other => Err(Error::InvalidState(format!("unknown state kind {other}"))),
    }
}

fn cmd_classify(
    builtin_name: Option<String>,
    state_path: Option<PathBuf>,
    cut_name: &str,
    dims_override: Option<String>,
    tol: &Tolerances,
) -> Result<()> {
    let cut: Cut = cut_name.parse()?;
    let dims_override = dims_override.map(|d| parse_dims(&d)).transpose()?;
    let (rho, cert) = match (builtin_name, state_path) {
        (Some(name), None) => builtin(&name)?.bipartite_for_cut(cut, tol)?,
        (None, Some(path)) => {
            let loaded = load_state_file(&path, dims_override, tol)?;
            let rho = match loaded {
                LoadedState::Density(rho) => rho,
                LoadedState::Pure(psi) => psi.projector(),
            };
            let rho = match rho.num_subsystems() {
                2 if cut == Cut::AB => rho,
                2 => return Err(Error::Usage("loaded bipartite states only expose the AB cut".into())),
                3 => rho.partial_trace(cut.keep(), tol)?,
                n => {
                    return Err(Error::Usage(format!(
                        "classification needs 2 or 3 subsystems, file has {n}"
                    )))
                }
            };
            (rho, StateCertificate::None)
        }
        _ => {
            return Err(Error::Usage(
                "exactly one of --builtin or --state is required".into(),
            ))
        }
    };
    let report = classify(&rho, &cert, tol)?;
    println!("{}", report.to_json_pretty());
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Classify {
            builtin,
            state,
            cut,
            dims,
            tol,
        } => {
            cmd_classify(builtin, state, &cut, dims, &tol.build()?)?;
            Ok(true)
        }
        Command::Verify {
            suite,
            samples,
            seed,
            tol,
        } => suites::cmd_verify(&suite, samples, seed, &tol.build()?),
        Command::Demo { json, tol } => demo::cmd_demo(json, &tol.build()?),
        Command::Sample {
            dims,
            samples,
            seed,
            ensemble,
            tol,
        } => {
            let dims = parse_dims(&dims)?;
            suites::cmd_sample(&dims, samples, seed, &ensemble, &tol.build()?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        // suite or demo checks failed: the contract is a nonzero exit
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Consistency { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
