//! `seqspace`: norms, duality, operator norms, positivity scans and verdicts
//! for finite-dimensional Lorentz and Orlicz sequence spaces.

mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use seqspace::acceptance;
use seqspace::duality::{norming_extremes, norming_functional, DEFAULT_EXTREME_CAP};
use seqspace::operators::{build_projection, minimal_projection_search, operator_norm, LinearOperator};
use seqspace::positivity::{positivity_scan, Verdict, NORM_TOL};
use seqspace::spaces::young_conjugate;
use seqspace::theorems::{
    classify_orlicz_phi, lorentz_hyperplane_verdict, orlicz_subspace_verdict, refute_lorentz_hyperplane,
    HyperplaneVerdict, SubspaceVerdict, DEFAULT_A_POINTS,
};
use seqspace::{SearchBudget, SpaceSpec};

use config::{load_json, parse_vector, ConfigError, RunConfig};
use report::{Format, Report};

#[derive(Parser)]
#[command(
    name = "seqspace",
    version,
    about = "Norm-one projections in Lorentz and Orlicz sequence spaces"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Space spec or `seqspace/1` config file (JSON).
    #[arg(long, global = true)]
    space: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Random restarts of the searches.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Ascent steps per restart.
    #[arg(long, global = true)]
    steps: Option<usize>,
    /// Verdict tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Exit with status 2 on a Refuted / Incompatible / Impossible verdict.
    #[arg(long, global = true)]
    expect_compatible: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Human,
}

#[derive(Subcommand)]
enum Command {
    /// Norm of a vector.
    Norm {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Young conjugate of φ (Orlicz spaces) on a grid of slopes.
    Conjugate {
        /// Comma-separated `u` values; default 0, 0.25, …, 4.
        #[arg(long)]
        points: Option<String>,
        /// Orlicz function (piece list) or space; defaults to `--space`.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Canonical norming functional and the enumerated extremes.
    Norming {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Lower-bound estimate of an operator norm.
    Opnorm(OperatorArgs),
    /// Numerical positivity scan.
    Positivity(OperatorArgs),
    /// Least-norm projection onto `∩ ker f`.
    Minproj {
        /// A kernel functional; repeat for several.
        #[arg(long = "f", required = true, allow_hyphen_values = true)]
        fs: Vec<String>,
    },
    Classify {
        #[command(subcommand)]
        what: Classify,
    },
    /// Run acceptance criteria.
    Verify {
        /// Criterion id or case name; all when omitted.
        #[arg(long)]
        case: Vec<String>,
    },
}

#[derive(Args)]
struct OperatorArgs {
    /// Row-major matrix JSON.
    #[arg(long, conflicts_with = "projection")]
    operator: Option<PathBuf>,
    /// `{"fs": [...], "us": [...]}`; the operator is `P = Id − Σ f⊗u`.
    #[arg(long)]
    projection: Option<PathBuf>,
    /// Use `Id − P` instead of `P` with `--projection`.
    #[arg(long)]
    complement: bool,
}

#[derive(Subcommand)]
enum Classify {
    /// Whether `ker f` can be 1-complemented in a Lorentz space.
    LorentzHyperplane {
        #[arg(long = "f", allow_hyphen_values = true)]
        f: String,
        /// Also search for a witness against `P = Id − f⊗u`; `u` is rescaled to `f(u) = 1`.
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
    },
    /// Whether `∩ ker f_j` can be 1-complemented in an Orlicz space.
    OrliczSubspace {
        #[arg(long = "f", required = true, allow_hyphen_values = true)]
        fs: Vec<String>,
        #[arg(long)]
        contains_basis_vector: bool,
    },
    /// Behaviour of φ near 0.
    Phi {
        /// Orlicz function (piece list) or space; defaults to `--space`.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
}

struct Outcome {
    command: &'static str,
    inputs: Value,
    result: Value,
    adverse: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8, ConfigError> {
    let cfg = RunConfig::resolve(&cli.common)?;
    let outcome = dispatch(&cli.command, &cfg)?;
    let report = Report::new(outcome.command, &cfg, outcome.inputs, outcome.result);
    let format = match cli.common.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
        FormatArg::Human => Format::Human,
    };
    let text = report.render(format);
    match &cli.common.out {
        Some(path) => std::fs::write(path, text).map_err(|e| ConfigError::Io(path.clone(), e))?,
        None => print!("{text}"),
    }
    Ok(if cli.common.expect_compatible && outcome.adverse {
        2
    } else {
        0
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn vectors(raw: &[String]) -> Result<Vec<Vec<f64>>, ConfigError> {
    raw.iter().map(|s| parse_vector(s)).collect()
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Outcome, ConfigError> {
    let budget = SearchBudget::new(cfg.restarts, cfg.steps);
    Ok(match cmd {
        Command::Norm { x } => {
            let s = cfg.space()?;
            let x = parse_vector(x)?;
            let norm = s.norm(&x)?;
            Outcome {
                command: "norm",
                inputs: json!({ "x": x }),
                result: json!({ "norm": norm }),
                adverse: false,
            }
        }
        Command::Conjugate { points, spec } => {
            let phi = phi_of(spec.as_deref(), cfg)?;
            let us = match points {
                Some(p) => parse_vector(p)?,
                None => (0..=16).map(|k| k as f64 * 0.25).collect(),
            };
            let c = young_conjugate(&phi);
            let table: Vec<Value> = us
                .iter()
                .map(|&u| {
                    let v = c.eval(u);
                    json!({ "u": u, "phi_star": if v.is_finite() { json!(v) } else { json!("inf") } })
                })
                .collect();
            Outcome {
                command: "conjugate",
                inputs: json!({ "points": us }),
                result: json!({ "table": table, "pieces": to_value(&c.pieces()) }),
                adverse: false,
            }
        }
        Command::Norming { x } => {
            let s = cfg.space()?;
            let x = parse_vector(x)?;
            let g = norming_functional(&s, &x)?;
            let extremes = norming_extremes(&s, &x, DEFAULT_EXTREME_CAP, cfg.seed)?;
            Outcome {
                command: "norming",
                inputs: json!({ "x": x }),
                result: json!({ "functional": g, "extremes": extremes }),
                adverse: false,
            }
        }
        Command::Opnorm(args) => {
            let s = cfg.space()?;
            let (t, inputs) = operator(args, s.dim())?;
            let r = operator_norm(&s, &t, budget, cfg.seed)?;
            Outcome {
                command: "opnorm",
                inputs,
                result: to_value(&r),
                adverse: false,
            }
        }
        Command::Positivity(args) => {
            let s = cfg.space()?;
            let (t, inputs) = operator(args, s.dim())?;
            let r = positivity_scan(&s, &t, budget, cfg.seed, cfg.tol)?;
            let adverse = r.verdict == Verdict::Refuted;
            Outcome {
                command: "positivity",
                inputs,
                result: to_value(&r),
                adverse,
            }
        }
        Command::Minproj { fs } => {
            let s = cfg.space()?;
            let fs = vectors(fs)?;
            let r = minimal_projection_search(&s, &fs, budget, cfg.seed)?;
            let adverse = r.norm.estimate > 1.0 + NORM_TOL;
            Outcome {
                command: "minproj",
                inputs: json!({ "fs": fs }),
                result: to_value(&r),
                adverse,
            }
        }
        Command::Classify { what } => classify(what, cfg)?,
        Command::Verify { case } => {
            let selected: Vec<&acceptance::Criterion> = if case.is_empty() {
                acceptance::CRITERIA.iter().collect()
            } else {
                case.iter()
                    .map(|c| acceptance::find(c).ok_or_else(|| ConfigError::Invalid(format!("unknown case '{c}'"))))
                    .collect::<Result<_, _>>()?
            };
            let outcomes: Vec<acceptance::Outcome> = selected.iter().map(|c| c.run(cfg.seed)).collect();
            let adverse = outcomes.iter().any(|o| !o.passed);
            let ids: Vec<&str> = selected.iter().map(|c| c.id).collect();
            Outcome {
                command: "verify",
                inputs: json!({ "cases": ids }),
                result: json!({ "criteria": outcomes }),
                adverse,
            }
        }
    })
}

fn operator(args: &OperatorArgs, dim: usize) -> Result<(LinearOperator, Value), ConfigError> {
    match (&args.operator, &args.projection) {
        (Some(path), _) => {
            let t: LinearOperator = load_json(path)?;
            if t.dim() != dim {
                return Err(seqspace::Error::DimensionMismatch {
                    expected: dim,
                    found: t.dim(),
                }
                .into());
            }
            let inputs = json!({ "operator": t });
            Ok((t, inputs))
        }
        (None, Some(path)) => {
            let ps: seqspace::operators::ProjectionSpec = load_json(path)?;
            let p = build_projection(&ps, dim)?;
            let t = if args.complement { p.complement() } else { p };
            Ok((t, json!({ "projection": ps, "complement": args.complement })))
        }
        (None, None) => Err(ConfigError::Invalid("give --operator or --projection".into())),
    }
}

fn classify(what: &Classify, cfg: &RunConfig) -> Result<Outcome, ConfigError> {
    Ok(match what {
        Classify::LorentzHyperplane { f, u } => {
            let SpaceSpec::Lorentz(l) = cfg.space()? else {
                return Err(ConfigError::Invalid("lorentz-hyperplane needs a Lorentz space".into()));
            };
            let f = parse_vector(f)?;
            let verdict = lorentz_hyperplane_verdict(&l, &f)?;
            let mut adverse = matches!(verdict, HyperplaneVerdict::Impossible { .. });
            let mut result = json!({ "verdict": verdict });
            let mut inputs = json!({ "f": f });
            if let Some(u) = u {
                let u = parse_vector(u)?;
                if u.len() != f.len() {
                    return Err(seqspace::Error::DimensionMismatch {
                        expected: f.len(),
                        found: u.len(),
                    }
                    .into());
                }
                let fu: f64 = f.iter().zip(&u).map(|(a, b)| a * b).sum();
                if fu.abs() < 1e-12 {
                    return Err(ConfigError::Invalid("f(u) = 0, so Id − f⊗u is not a projection".into()));
                }
                let u: Vec<f64> = u.iter().map(|v| v / fu).collect();
                let w = refute_lorentz_hyperplane(&l, &f, &u, DEFAULT_A_POINTS, cfg.tol)?;
                adverse |= w.is_some();
                result["witness"] = to_value(&w);
                inputs["u"] = json!(u);
            }
            Outcome {
                command: "classify lorentz-hyperplane",
                inputs,
                result,
                adverse,
            }
        }
        Classify::OrliczSubspace {
            fs,
            contains_basis_vector,
        } => {
            let SpaceSpec::Orlicz(o) = cfg.space()? else {
                return Err(ConfigError::Invalid("orlicz-subspace needs an Orlicz space".into()));
            };
            let fs = vectors(fs)?;
            let v = orlicz_subspace_verdict(&o, &fs, *contains_basis_vector)?;
            let adverse = matches!(v, SubspaceVerdict::Incompatible { .. });
            Outcome {
                command: "classify orlicz-subspace",
                inputs: json!({ "fs": fs, "contains_basis_vector": contains_basis_vector }),
                result: to_value(&v),
                adverse,
            }
        }
        Classify::Phi { spec } => {
            let phi = phi_of(spec.as_deref(), cfg)?;
            let class = classify_orlicz_phi(&phi);
            Outcome {
                command: "classify phi",
                inputs: json!({ "phi": phi }),
                result: to_value(&class),
                adverse: false,
            }
        }
    })
}

fn phi_of(spec: Option<&std::path::Path>, cfg: &RunConfig) -> Result<seqspace::OrliczFunction, ConfigError> {
    match spec {
        Some(path) => config::load_phi(path),
        None => match cfg.space()? {
            SpaceSpec::Orlicz(o) => Ok(o.phi),
            SpaceSpec::Lorentz(_) => Err(ConfigError::Invalid("needs an Orlicz function; give --spec".into())),
        },
    }
}
