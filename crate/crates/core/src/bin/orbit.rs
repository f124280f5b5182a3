//! Command-line front end. Exit codes: 0 success, 2 malformed input,
//! 3 non-dominant map, 4 failed verification, 1 anything else.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use orbit_core::classify::{classify, VerdictKind, WitnessPoint};
use orbit_core::io::{
    density_report_to_json, growth_report_to_json, invariant_check_to_json, orbit_point_to_json, parse_point,
    split_point, verdict_from_json, verdict_to_json, witness_point_from, Options, ProblemSpec,
};
use orbit_core::linalg::ZMatrix;
use orbit_core::symbolic::evaluate_orbit;
use orbit_core::symbolic::OrbitPoint;
use orbit_core::verify::{
    density_check_with, growth_check, monomials_up_to, verify_invariant, DensityOptions, DensityOutcome,
    GrowthVerdict,
};
use orbit_core::Error;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "orbit", version, about = "Classify dominant endomorphisms of G_a^k x G_m^l")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args)]
struct Common {
    /// Problem file with `additive`, `torus` and `options`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Print a dense-orbit point or an invariant rational function.
    Classify {
        #[command(flatten)]
        common: Common,
        /// Height bound for multiplicative dependence searches.
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Check a verdict file against a problem.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        verdict: PathBuf,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// List the first orbit points.
    Orbit {
        #[command(flatten)]
        common: Common,
        /// Comma-separated coordinates, additive first.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Growth of `A^n v` for the integer matrix of the problem.
    Growth {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Rank test for polynomials vanishing on an orbit.
    DensityCheck {
        #[command(flatten)]
        common: Common,
        /// Defaults to the classifier's dense witness.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        steps: Option<usize>,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::DimensionMismatch(_) | Error::NotSquare { .. } => 2,
            Error::DominanceViolation(_) => 3,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Printed output and whether verification passed.
struct Outcome {
    json: Value,
    text: String,
    passed: bool,
}

fn load(path: &Path) -> CliResult<ProblemSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure { code: 2, message: format!("cannot read {}: {e}", path.display()) })?;
    Ok(ProblemSpec::from_json(&text)?)
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure { code: 2, message: format!("cannot read {}: {e}", path.display()) })?;
    serde_json::from_str(&text).map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })
}

fn density_options(opts: &Options) -> DensityOptions {
    let mut d = DensityOptions::default();
    if let Some(seed) = opts.seed {
        d.seed = seed;
    }
    d
}

/// Raises `steps` so that the orbit has at least as many points as there are monomials.
fn sufficient_steps(dim: usize, degree: u32, steps: usize) -> (usize, Option<Value>) {
    let needed = monomials_up_to(dim, degree).len().saturating_sub(1);
    if steps >= needed {
        (steps, None)
    } else {
        (needed, Some(json!({ "requested": steps, "used": needed })))
    }
}

fn density(spec: &ProblemSpec, point: &WitnessPoint, degree: u32, steps: usize) -> CliResult<Outcome> {
    let dim = spec.space().additive + spec.space().torus;
    let (steps, adjusted) = sufficient_steps(dim, degree, steps);
    let report = density_check_with(&spec.endomorphism, point, degree, steps, &density_options(&spec.options))?;
    let mut json = density_report_to_json(&report);
    json["steps_adjusted"] = adjusted.unwrap_or(Value::Null);
    let text = match &report.outcome {
        DensityOutcome::FullRank => format!("full rank {} of {} monomials (degree {degree}, {steps} steps)", report.matrix_rank, report.monomial_count),
        DensityOutcome::VanishingPolynomial(p) => format!("orbit lies on {p} = 0"),
        DensityOutcome::Inconclusive => "inconclusive".to_string(),
    };
    Ok(Outcome { json, text, passed: report.outcome == DensityOutcome::FullRank })
}

fn run(cmd: Command) -> CliResult<(Format, Outcome)> {
    match cmd {
        Command::Classify { common, bound } => {
            let spec = load(&common.input)?;
            let verdict = classify(&spec.endomorphism, bound.unwrap_or(spec.options.bound))?;
            let json = verdict_to_json(&verdict);
            let mut text = match &verdict.kind {
                VerdictKind::Fibration(w) => format!("fibration {}\nprovenance {}", w.function, verdict.provenance),
                VerdictKind::Dense(p) => format!(
                    "dense {}\nprovenance {}",
                    orbit_point_to_json(&p.to_orbit_point()?),
                    verdict.provenance
                ),
            };
            for c in &verdict.caveats {
                text.push_str(&format!("\ncaveat {c}"));
            }
            Ok((common.format, Outcome { json, text, passed: true }))
        }
        Command::Verify { common, verdict, degree, steps } => {
            let spec = load(&common.input)?;
            let raw = read_json(&verdict)?;
            let verdict = verdict_from_json(&raw, spec.space())
                .map_err(|e| Failure { code: 2, message: format!("{}: {e}", verdict.display()) })?;
            let outcome = match &verdict.kind {
                VerdictKind::Fibration(w) => match verify_invariant(&spec.endomorphism, &w.function) {
                    Ok(c) => Outcome {
                        json: json!({ "kind": "fibration", "invariant": invariant_check_to_json(&c), "passed": c.holds }),
                        text: if c.holds { "invariant".to_string() } else { format!("not invariant: {}", c.certificate) },
                        passed: c.holds,
                    },
                    Err(Error::InvalidWitness(m)) => Outcome {
                        json: json!({ "kind": "fibration", "error": m, "passed": false }),
                        text: format!("invalid witness: {m}"),
                        passed: false,
                    },
                    Err(e) => return Err(e.into()),
                },
                VerdictKind::Dense(p) => {
                    let mut o = density(
                        &spec,
                        p,
                        degree.unwrap_or(spec.options.degree),
                        steps.unwrap_or(spec.options.steps),
                    )?;
                    o.json = json!({ "kind": "dense", "density": o.json, "passed": o.passed });
                    o
                }
            };
            Ok((common.format, outcome))
        }
        Command::Orbit { common, point, steps } => {
            let spec = load(&common.input)?;
            let (additive, torus) = split_point(parse_point(&point)?, spec.space())?;
            let alpha = OrbitPoint::new(additive, torus)?;
            let points = evaluate_orbit(&spec.endomorphism, &alpha, steps.unwrap_or(spec.options.steps))?;
            let rows: Vec<Value> = points.iter().map(orbit_point_to_json).collect();
            let text = rows
                .iter()
                .map(|r| {
                    let coords: Vec<String> = ["additive", "torus"]
                        .iter()
                        .flat_map(|k| r[*k].as_array().cloned().unwrap_or_default())
                        .map(|v| v.as_str().map_or_else(|| v.to_string(), str::to_string))
                        .collect();
                    format!("({})", coords.join(","))
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok((common.format, Outcome { json: json!({ "orbit": rows }), text, passed: true }))
        }
        Command::Growth { common, vector, steps } => {
            let spec = load(&common.input)?;
            let a = growth_matrix(&spec)?;
            let v = parse_point(&vector)?
                .into_iter()
                .map(|q| {
                    q.is_integer()
                        .then(|| q.to_integer())
                        .ok_or_else(|| Failure { code: 2, message: format!("vector entry {q} is not an integer") })
                })
                .collect::<CliResult<Vec<BigInt>>>()?;
            let r = growth_check(&a, &v, steps.unwrap_or(spec.options.steps))?;
            let text = match r.verdict {
                GrowthVerdict::LinearlyBounded => format!("linearly bounded over {} steps", r.steps),
                GrowthVerdict::ExceedsLinear(n) => format!("exceeds linear growth at step {n}"),
            };
            Ok((common.format, Outcome { json: growth_report_to_json(&r), text, passed: true }))
        }
        Command::DensityCheck { common, point, degree, steps } => {
            let spec = load(&common.input)?;
            let alpha = match point {
                Some(p) => witness_point_from(parse_point(&p)?, spec.space())?,
                None => match classify(&spec.endomorphism, spec.options.bound)?.kind {
                    VerdictKind::Dense(p) => p,
                    VerdictKind::Fibration(_) => {
                        return Err(Failure { code: 4, message: "map has an invariant fibration; pass --point".into() })
                    }
                },
            };
            let o = density(&spec, &alpha, degree.unwrap_or(spec.options.degree), steps.unwrap_or(spec.options.steps))?;
            Ok((common.format, o))
        }
    }
}

/// The torus matrix if present, otherwise an integral additive matrix.
fn growth_matrix(spec: &ProblemSpec) -> CliResult<ZMatrix> {
    let phi = &spec.endomorphism;
    if phi.torus().rows() > 0 {
        return Ok(phi.torus().clone());
    }
    let a = phi.additive();
    let rows = (0..a.rows())
        .map(|i| {
            (0..a.cols())
                .map(|j| {
                    let q = a.get(i, j);
                    q.is_integer()
                        .then(|| q.to_integer())
                        .ok_or_else(|| Failure { code: 2, message: "growth needs an integer matrix".into() })
                })
                .collect()
        })
        .collect::<CliResult<Vec<Vec<BigInt>>>>()?;
    Ok(ZMatrix::from_rows(rows)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((format, o)) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&o.json).expect("JSON values serialize")),
                Format::Text => println!("{}", o.text),
            }
            if o.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
        Err(f) => {
            eprintln!("orbit: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
